from fractions import Fraction

import pytest
import sympy

from app.modules.congruences.core.exceptions import PoleAtPoint
from app.modules.congruences.core.models.polynomial import A, K, ONE, MultiPoly, RatFunc, poly_arith, ratfunc_arith

POINTS = [(Fraction(1, 3), Fraction(2)), (Fraction(-5, 2), Fraction(7)), (Fraction(4), Fraction(-1, 5))]


def _sympy_value(expr, a0, k0):
    a, k = sympy.symbols("a k")
    value = sympy.Rational(expr.subs({a: sympy.Rational(a0.numerator, a0.denominator), k: sympy.Rational(k0.numerator, k0.denominator)}))
    return Fraction(int(value.p), int(value.q))


def test_expansion_matches_sympy():
    a, k = sympy.symbols("a k")
    poly = (2 * A - 3 * K + 1) ** 4 * (A + K)
    expr = sympy.expand((2 * a - 3 * k + 1) ** 4 * (a + k))
    for a0, k0 in POINTS:
        assert poly.evaluate(a0, k0) == _sympy_value(expr, a0, k0)
    assert poly.degree() == 5


def test_ring_identities():
    assert (A + K) ** 2 == A**2 + 2 * A * K + K**2
    assert (A - K) * (A + K) - A**2 + K**2 == MultiPoly()
    assert (A - A).is_zero()
    assert poly_arith("sub", A * K, K * A).is_zero()
    with pytest.raises(ValueError):
        poly_arith("div", A, K)


def test_translate_is_substitution():
    poly = 3 * A**2 * K - 2 * K**3 + A - 7
    shifted = poly.translate(2, -1)
    for a0, k0 in POINTS:
        assert shifted.evaluate(a0, k0) == poly.evaluate(a0 + 2, k0 - 1)


def test_at_k_leaves_polynomial_in_a():
    poly = A * K**2 + K - A
    assert poly.at_k(3) == 9 * A + 3 - A


def test_repr_is_canonical():
    assert repr(2 * A * K - 1) == "2*a*k - 1"
    assert repr(MultiPoly()) == "0"
    assert repr(-(A**2)) == "-a^2"


def test_ratfunc_equality_by_cross_multiplication():
    quotient = RatFunc(A**2 - K**2, A - K)
    assert quotient.equals(A + K)
    assert not quotient.equals(A - K)
    assert (RatFunc(ONE, A) + RatFunc(ONE, K)).equals(RatFunc(A + K, A * K))
    assert ratfunc_arith("div", RatFunc(A), RatFunc(A)).equals(1)


def test_ratfunc_evaluation_and_poles():
    rf = RatFunc(A + 1, A - 2 * K)
    assert rf.evaluate(Fraction(1), Fraction(1, 4)) == Fraction(4)
    with pytest.raises(PoleAtPoint):
        rf.evaluate(2, 1)
    with pytest.raises(ZeroDivisionError):
        RatFunc(A, MultiPoly())
    with pytest.raises(ZeroDivisionError):
        RatFunc(A) / RatFunc(0)


def test_ratfunc_at_k_raises_at_a_pole():
    with pytest.raises(PoleAtPoint):
        RatFunc(A, K - 2).at_k(2)
    assert RatFunc(A, A + K).at_k(1).equals(RatFunc(A, A + 1))


def test_negative_power_inverts():
    rf = RatFunc(A + 1, K)
    assert (rf**-2).equals(RatFunc(K**2, (A + 1) ** 2))
