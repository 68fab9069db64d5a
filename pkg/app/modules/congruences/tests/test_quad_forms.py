import pytest
import sympy

from app.modules.congruences.config import QuadForm
from app.modules.congruences.core.exceptions import NotRepresentable
from app.modules.congruences.core.services.quad_form_service import (
    brute_force,
    cornacchia,
    represent,
    sqrt_mod,
    thm56_u,
    thm59_c,
)


@pytest.mark.parametrize(
    "p, form, xy",
    [
        (13, QuadForm.F1, (-3, 2)),
        (5, QuadForm.F1, (1, 2)),
        (11, QuadForm.F2, (-3, 1)),
        (13, QuadForm.F3, (-5, 1)),
        (7, QuadForm.F4, (-2, 1)),
    ],
)
def test_known_representations(p, form, xy):
    rep = represent(p, form)
    assert (rep.x, rep.y) == xy
    assert rep.holds()


@pytest.mark.parametrize("p, form", [(7, QuadForm.F1), (5, QuadForm.F2), (11, QuadForm.F3), (5, QuadForm.F4)])
def test_wrong_class_is_not_representable(p, form):
    with pytest.raises(NotRepresentable):
        represent(p, form)


def test_normalizations_hold_over_a_range():
    for p in sympy.primerange(5, 2000):
        p = int(p)
        if p % 4 == 1:
            rep = represent(p, QuadForm.F1)
            assert rep.holds() and rep.x % 4 == 1 and rep.y > 0
        if p % 8 in (1, 3):
            rep = represent(p, QuadForm.F2)
            assert rep.holds() and rep.x % 4 == 1
            if p % 8 == 1:
                assert rep.y > 0 and rep.y % 2 == 0
            else:
                assert rep.y % 4 == 1
        if p % 3 == 1:
            rep = represent(p, QuadForm.F3)
            assert rep.holds() and rep.x % 3 == 1
            rep = represent(p, QuadForm.F4)
            assert rep.holds() and rep.x % 3 == 1
            assert rep.y > 0 if rep.y % 3 == 0 else rep.y % 3 == 1


FORM_CLASSES = [
    (QuadForm.F1, 1, 1, lambda p: p % 4 == 1),
    (QuadForm.F2, 2, 1, lambda p: p % 8 in (1, 3)),
    (QuadForm.F3, 3, 1, lambda p: p % 3 == 1),
    (QuadForm.F4, 27, 4, lambda p: p % 3 == 1),
]


@pytest.mark.parametrize("form, d, mult, in_class", FORM_CLASSES, ids=lambda v: getattr(v, "value", None))
def test_normalized_representations_match_brute_force(form, d, mult, in_class):
    for p in sympy.primerange(5, 10**4):
        p = int(p)
        if not in_class(p):
            with pytest.raises(NotRepresentable):
                represent(p, form)
            continue
        rep = represent(p, form)
        assert rep.x**2 + d * rep.y**2 == mult * p
        x, y = brute_force(d, mult * p)
        if form == QuadForm.F1:
            assert {abs(rep.x), abs(rep.y)} == {x, y}
        else:
            assert (abs(rep.x), abs(rep.y)) == (x, y)


def test_cornacchia_agrees_with_search():
    for p in sympy.primerange(3, 600):
        p = int(p)
        for d in (1, 2, 3):
            if d >= p:
                continue
            fast, slow = cornacchia(d, p), brute_force(d, p)
            assert (fast is None) == (slow is None)
            if fast:
                assert fast[0] ** 2 + d * fast[1] ** 2 == p


def test_sqrt_mod():
    for p in (5, 13, 17, 41, 97, 193, 257):
        for a in range(1, p):
            if pow(a, (p - 1) // 2, p) == 1:
                assert sqrt_mod(a, p) ** 2 % p == a
    with pytest.raises(ValueError):
        sqrt_mod(2, 5)


def test_derived_parameters():
    assert thm56_u(represent(7, QuadForm.F4)) == -5
    assert thm59_c(5, represent(5, QuadForm.F1)) == -2
    assert thm59_c(13, represent(13, QuadForm.F1)) == 3
    with pytest.raises(NotRepresentable):
        thm59_c(7, represent(13, QuadForm.F1))
