from fractions import Fraction

import pytest
from sympy.ntheory import jacobi_symbol

from app.modules.congruences.core.exceptions import (
    BaseDivisibleByP,
    DivisionByZero,
    InsufficientPrecision,
    InvalidPrime,
    NotPAdicInteger,
    PrecisionExhausted,
)
from app.modules.congruences.core.models.padic import (
    PrimeContext,
    a_prime,
    binom_rational,
    canonical_residue,
    congruent_mod,
    exact_binomial,
    fermat_quotient,
    jacobi,
    padic_arith,
    parse_rational,
    p_valuation,
)

from .conftest import random_p_integral


@pytest.mark.parametrize("p", [1, 2, 4, 9, 15, -7])
def test_context_rejects_non_odd_primes(p):
    with pytest.raises(InvalidPrime):
        PrimeContext(p, 4)


def test_context_rejects_huge_prime_without_override():
    with pytest.raises(InvalidPrime):
        PrimeContext(2**89 - 1, 2)
    assert PrimeContext(2**89 - 1, 2, allow_big=True).p == 2**89 - 1


def test_reduce_tracks_valuation_and_precision(ctx5):
    x = ctx5.reduce(50)
    assert (x.v, x.u % 5) == (2, 2)
    assert x.known_to == 2 + ctx5.e
    assert ctx5.reduce(Fraction(1, 2)).residue(2) == 13
    assert ctx5.reduce(Fraction(3, 25)).v == -2


def test_p_valuation():
    assert p_valuation(250, 5) == (3, 2)
    assert p_valuation(7, 5) == (0, 7)


def test_residue_refuses_extra_digits(ctx5):
    x = ctx5.from_residue(123, known_to=2)
    assert x.residue(2) == 123 % 25
    with pytest.raises(InsufficientPrecision):
        x.residue(3)


def test_residue_of_non_integral_value_raises(ctx5):
    with pytest.raises(NotPAdicInteger):
        ctx5.reduce(Fraction(1, 5)).residue(1)


def test_ring_operations_match_rationals(rng):
    for p in (5, 7, 11, 13):
        ctx = PrimeContext(p, 6)
        for _ in range(40):
            a, b = random_p_integral(rng, p), random_p_integral(rng, p)
            ra, rb = ctx.reduce(a), ctx.reduce(b)
            assert congruent_mod(ra + rb, ctx.reduce(a + b), 6)
            assert congruent_mod(ra - rb, ctx.reduce(a - b), 6)
            assert congruent_mod(ra * rb, ctx.reduce(a * b), 6)
            assert congruent_mod(padic_arith("mul", ra, rb), ctx.reduce(a * b), 6)
            if b.numerator % p:
                assert congruent_mod(ra / rb, ctx.reduce(a / b), 6)


def test_mixed_operands_coerce(ctx7):
    x = ctx7.reduce(Fraction(2, 3))
    assert congruent_mod(1 - x, ctx7.reduce(Fraction(1, 3)), 8)
    assert congruent_mod(3 * x, ctx7.reduce(2), 8)
    assert congruent_mod(Fraction(3, 2) * x, ctx7.one(), 8)


def test_exact_zero_absorbs_and_cannot_divide(ctx5):
    zero = ctx5.zero()
    x = ctx5.reduce(Fraction(7, 3))
    assert (zero * x).is_zero and (zero * x).is_exact
    with pytest.raises(DivisionByZero):
        x / zero


def test_cancellation_loses_absolute_precision(ctx5):
    # 1 - (1 - 5^3) leaves 5^3 known only to the operands' precision
    diff = ctx5.one() - ctx5.reduce(1 - 125)
    assert diff.v == 3
    assert diff.known_to == ctx5.e


def test_cancellation_below_p_is_exhausted():
    ctx = PrimeContext(5, 3)
    x = ctx.reduce(Fraction(1, 125))  # known only modulo 5^0
    with pytest.raises(PrecisionExhausted):
        x - x
    y = ctx.reduce(Fraction(1, 25))
    zero = y - y
    assert zero.is_zero and zero.known_to == 1
    with pytest.raises(PrecisionExhausted):
        zero * ctx.reduce(Fraction(1, 5))
    with pytest.raises(PrecisionExhausted):
        zero / ctx.reduce(5)
    assert (zero * ctx.reduce(5)).known_to == 2


def test_congruent_mod_refuses_beyond_known_digits(ctx5):
    x = ctx5.from_residue(3, known_to=2)
    with pytest.raises(InsufficientPrecision):
        congruent_mod(x, ctx5.reduce(3), 3)
    assert congruent_mod(x, ctx5.reduce(28), 2)


def test_congruent_mod_is_an_equivalence_monotone_in_t(rng):
    for p in (5, 7, 13):
        ctx = PrimeContext(p, 8)
        for _ in range(20):
            a = random_p_integral(rng, p)
            j, i = rng.randint(1, 6), rng.randint(1, 6)
            b = a + p**j * random_p_integral(rng, p)
            c = b + p**i * random_p_integral(rng, p)
            x, y, z = ctx.reduce(a), ctx.reduce(b), ctx.reduce(c)
            for t in range(1, 7):
                assert congruent_mod(x, x, t)
                assert congruent_mod(x, y, t) == congruent_mod(y, x, t)
                if congruent_mod(x, y, t) and congruent_mod(y, z, t):
                    assert congruent_mod(x, z, t)
                if congruent_mod(x, y, t):
                    assert all(congruent_mod(x, y, s) for s in range(1, t))
            assert congruent_mod(x, y, j) and congruent_mod(x, z, min(i, j))


@pytest.mark.parametrize(
    "a, p, expected",
    [(Fraction(-1, 4), 13, 3), (Fraction(-1, 2), 7, 3), (Fraction(1, 3), 5, 2), (Fraction(0), 11, 0), (Fraction(-1), 5, 4)],
)
def test_canonical_residue(a, p, expected):
    assert canonical_residue(a, p) == expected


def test_canonical_residue_needs_p_integral():
    with pytest.raises(NotPAdicInteger):
        canonical_residue(Fraction(1, 5), 5)


def test_a_prime_splits_a(ctx13):
    a = Fraction(-1, 4)
    r = canonical_residue(a, 13)
    assert congruent_mod(r + 13 * a_prime(a, ctx13), ctx13.reduce(a), 8)
    assert congruent_mod(a_prime(a, ctx13), ctx13.reduce(Fraction(-1, 4)), 7)


def test_fermat_quotient(ctx5):
    assert fermat_quotient(2, ctx5).residue(1) == 3  # (2^4 - 1)/5
    with pytest.raises(BaseDivisibleByP):
        fermat_quotient(10, ctx5)


def test_jacobi_matches_sympy():
    for m in range(1, 120, 2):
        for a in range(-20, 40):
            assert jacobi(a, m) == jacobi_symbol(a, m)


def test_binom_rational_matches_exact(rng):
    for p in (5, 7, 11):
        ctx = PrimeContext(p, 6)
        for _ in range(25):
            a = random_p_integral(rng, p)
            k = rng.randint(0, 2 * p)
            assert congruent_mod(binom_rational(a, k, ctx), ctx.reduce(exact_binomial(a, k)), 5)


def test_binom_rational_satisfies_pascals_rule(rng):
    for p in (5, 7, 11, 13):
        ctx = PrimeContext(p, 8)
        for _ in range(10):
            a = random_p_integral(rng, p)
            for k in range(1, p):
                left = binom_rational(a + 1, k, ctx)
                right = binom_rational(a, k, ctx) + binom_rational(a, k - 1, ctx)
                assert congruent_mod(left, right, 6), (p, a, k)


def test_exact_binomial_small_cases():
    assert exact_binomial(Fraction(-1, 2), 2) == Fraction(3, 8)
    assert exact_binomial(Fraction(5), 7) == 0
    assert exact_binomial(Fraction(3), -1) == 0


@pytest.mark.parametrize("text", ["", "1.5", "2e3", "abc", "1/0"])
def test_parse_rational_rejects_junk(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(text)


def test_parse_rational():
    assert parse_rational(" -3/12 ") == Fraction(-1, 4)
