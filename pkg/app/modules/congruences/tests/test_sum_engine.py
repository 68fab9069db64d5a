from fractions import Fraction

import pytest

from app.modules.congruences.core.exceptions import NotPAdicInteger, ZeroParameter
from app.modules.congruences.core.models.padic import PrimeContext, binom_rational, congruent_mod
from app.modules.congruences.core.services.sum_engine import (
    C_p,
    Q_p,
    S_p,
    SumSpec,
    catalan_sum,
    exact_catalan_sum,
    exact_s_sum,
    exact_weighted_sum,
    f_p,
    g_p,
    weighted_sum,
)

from .conftest import random_p_integral


def test_kernel_matches_exact_oracle(rng):
    for p in (5, 7, 11, 13):
        ctx = PrimeContext(p, 8)
        for _ in range(30):
            a = random_p_integral(rng, p)
            s = rng.randint(0, 5)
            if s and a.numerator % p == 0:
                continue
            spec = SumSpec(a, rng.randint(1, 4), s, rng.choice((1, -1)))
            assert congruent_mod(weighted_sum(spec, ctx), ctx.reduce(exact_weighted_sum(spec, p)), 7)


def test_kernel_does_not_depend_on_summation_order(rng):
    for p in (5, 7, 11):
        ctx = PrimeContext(p, 8)
        for _ in range(12):
            a = random_p_integral(rng, p)
            spec = SumSpec(a, rng.randint(1, 4), rng.randint(0, 3), rng.choice((1, -1)), homogenized=True)
            terms = [
                ctx.reduce(spec.sign**k) * binom_rational(a, k, ctx) ** spec.m * ctx.reduce(a - 2 * k) ** spec.s
                for k in range(p)
            ]
            shuffled = terms[:]
            rng.shuffle(shuffled)
            for order in (terms[::-1], shuffled):
                total = ctx.zero()
                for term in order:
                    total = total + term
                assert congruent_mod(total, weighted_sum(spec, ctx), 6)


def test_homogenized_sums_match_oracle(rng):
    for p in (5, 7, 11):
        ctx = PrimeContext(p, 8)
        for _ in range(15):
            a = random_p_integral(rng, p)
            cases = [
                (g_p(a, ctx), SumSpec(a, 2, 1, -1, homogenized=True)),
                (C_p(a, ctx), SumSpec(a, 3, 1, 1, homogenized=True)),
                (Q_p(a, ctx), SumSpec(a, 4, 1, 1, homogenized=True)),
                (f_p(a, ctx), SumSpec(a, 2, 0, -1)),
            ]
            for value, spec in cases:
                assert congruent_mod(value, ctx.reduce(exact_weighted_sum(spec, p)), 7)


def test_truncated_sum():
    # k = 0, 1, 2 of (4k+1) binom(-1/2,k)^4
    spec = SumSpec(Fraction(-1, 2), 4, 1, n=3)
    assert exact_weighted_sum(spec) == Fraction(6105, 4096)
    ctx = PrimeContext(5, 8)
    assert weighted_sum(spec, ctx).residue(4) == 5


def test_small_integer_parameter_stops_early(ctx5):
    # binom(2,k) vanishes from k = 3 on; the sum is 2 + 0 - 2
    value = g_p(Fraction(2), ctx5)
    assert value.is_zero
    assert g_p(Fraction(0), ctx5).is_zero


def test_zero_parameter_needs_homogenized_weight(ctx5):
    with pytest.raises(ZeroParameter):
        weighted_sum(SumSpec(Fraction(10), 2, 1), ctx5)
    weighted_sum(SumSpec(Fraction(10), 2, 0), ctx5)


def test_parameter_must_be_p_integral(ctx5):
    with pytest.raises(NotPAdicInteger):
        f_p(Fraction(1, 5), ctx5)
    with pytest.raises(NotPAdicInteger):
        S_p(Fraction(2, 15), ctx5)


@pytest.mark.parametrize(
    "kwargs",
    [dict(m=0), dict(m=7), dict(s=-1), dict(s=10), dict(sign=2), dict(n=0)],
)
def test_sum_spec_validation(kwargs):
    args = dict(a=Fraction(1, 3), m=2, s=0, sign=1, n=None)
    args.update(kwargs)
    with pytest.raises(ValueError):
        SumSpec(**args)


def test_s_sum_and_catalan_sum_match_oracles(rng):
    for p in (5, 7, 11, 13):
        ctx = PrimeContext(p, 8)
        for _ in range(8):
            x = random_p_integral(rng, p)
            assert congruent_mod(S_p(x, ctx), ctx.reduce(exact_s_sum(x, p)), 7)
        n = (p + 1) // 2
        assert congruent_mod(catalan_sum(n, ctx), ctx.reduce(exact_catalan_sum(n)), 7)


def test_results_are_cached(ctx7):
    spec = SumSpec(Fraction(-1, 3), 3, 1)
    assert weighted_sum(spec, ctx7) is weighted_sum(spec, ctx7)
