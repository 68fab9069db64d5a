# app/modules/congruences/core/services/sum_engine.py
"""Finite binomial sums as p-adic values.

Every named sum goes through weighted_sum:

    W(a; m, s, sign, n) = sum_{k<n} sign^k * binom(a,k)^m * w_k^s

with w_k = 1 - 2k/a, or w_k = a - 2k for the homogenized variant used by
g, C and Q (which stays defined at a = 0).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from app.modules.congruences.core.exceptions import NotPAdicInteger, PrecisionExhausted, ZeroParameter
from app.modules.congruences.core.models.padic import PadicValue, PrimeContext, exact_binomial
from app.modules.congruences.core.services.sequence_service import catalan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SumSpec:
    a: Fraction
    m: int
    s: int = 0
    sign: int = 1
    n: Optional[int] = None  # None: n = p
    homogenized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if not 1 <= self.m <= 6:
            raise ValueError(f"binomial exponent m must be in 1..6, got {self.m}")
        if not 0 <= self.s <= 9:
            raise ValueError(f"weight exponent s must be in 0..9, got {self.s}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.n is not None and self.n < 1:
            raise ValueError(f"number of terms must be positive, got {self.n}")

    def terms(self, p: int) -> int:
        return p if self.n is None else self.n


def _check_parameter(spec: SumSpec, ctx: PrimeContext) -> None:
    if spec.a.denominator % ctx.p == 0:
        raise NotPAdicInteger(f"a = {spec.a} is not a {ctx.p}-adic integer")
    if spec.s >= 1 and not spec.homogenized and spec.a.numerator % ctx.p == 0:
        raise ZeroParameter(f"weight 1 - 2k/a is undefined for a = {spec.a} = 0 (mod {ctx.p})")


def _kernel(spec: SumSpec, ctx: PrimeContext) -> PadicValue:
    a = spec.a
    total = ctx.zero()
    binom = ctx.one()
    sign = ctx.one()
    minus_one = ctx.reduce(-1)
    for k in range(spec.terms(ctx.p)):
        if k:
            binom = binom * ctx.reduce((a - (k - 1)) / k)
            if spec.sign < 0:
                sign = sign * minus_one
        if binom.is_zero and binom.is_exact:
            # binom(a, k) = 0 from here on (a a small nonnegative integer)
            break
        term = sign * binom**spec.m
        if spec.s:
            weight = ctx.reduce(a - 2 * k) if spec.homogenized else ctx.reduce(1 - Fraction(2 * k) / a)
            term = term * weight**spec.s
        total = total + term
    return total


@lru_cache(maxsize=8192)
def weighted_sum(spec: SumSpec, ctx: PrimeContext) -> PadicValue:
    _check_parameter(spec, ctx)
    try:
        return _kernel(spec, ctx)
    except PrecisionExhausted:
        wider = ctx.with_precision(2 * ctx.e)
        logger.debug(f"{spec} at p={ctx.p}: retrying at e={wider.e}")
        return _kernel(spec, wider).rebase(ctx)


def f_p(a: Fraction, ctx: PrimeContext, n: Optional[int] = None) -> PadicValue:
    """f_n(a) = sum_{k<n} binom(a,k)^2 (-1)^k"""
    return weighted_sum(SumSpec(a, 2, 0, -1, n), ctx)


def g_p(a: Fraction, ctx: PrimeContext, n: Optional[int] = None) -> PadicValue:
    """g_n(a) = sum_{k<n} binom(a,k)^2 (-1)^k (a - 2k)"""
    return weighted_sum(SumSpec(a, 2, 1, -1, n, homogenized=True), ctx)


def C_p(a: Fraction, ctx: PrimeContext, n: Optional[int] = None) -> PadicValue:
    """C_n(a) = sum_{k<n} (a - 2k) binom(a,k)^3"""
    return weighted_sum(SumSpec(a, 3, 1, 1, n, homogenized=True), ctx)


def Q_p(a: Fraction, ctx: PrimeContext, n: Optional[int] = None) -> PadicValue:
    """Q_n(a) = sum_{k<n} (a - 2k) binom(a,k)^4"""
    return weighted_sum(SumSpec(a, 4, 1, 1, n, homogenized=True), ctx)


@lru_cache(maxsize=2048)
def S_p(x: Fraction, ctx: PrimeContext, n: Optional[int] = None) -> PadicValue:
    """S_n(x) = sum_{k<n} binom(2k,k) binom(x,k) binom(-1-x,k) / 4^k."""
    x = Fraction(x)
    if x.denominator % ctx.p == 0:
        raise NotPAdicInteger(f"x = {x} is not a {ctx.p}-adic integer")
    total = ctx.zero()
    term = ctx.one()
    for k in range(ctx.p if n is None else n):
        if k:
            j = k - 1
            term = term * ctx.reduce(Fraction((2 * j + 1) * (x - j) * (-1 - x - j), 2 * (j + 1) ** 3))
            if term.is_zero and term.is_exact:
                break
        total = total + term
    return total


def catalan_sum(n: int, ctx: PrimeContext) -> PadicValue:
    """sum_{k<n} (4k+3) C_k^4 / 256^k"""
    total = ctx.zero()
    for k in range(n):
        total = total + ctx.reduce(4 * k + 3) * ctx.reduce(catalan(k)) ** 4 / ctx.reduce(256**k)
    return total


# --- exact oracles ---
def exact_weighted_sum(spec: SumSpec, p: Optional[int] = None) -> Fraction:
    """The same sum over the rationals; n defaults to p."""
    n = spec.n if spec.n is not None else p
    if n is None:
        raise ValueError("exact_weighted_sum needs n or p")
    a = spec.a
    if spec.s and not spec.homogenized and a == 0:
        raise ZeroParameter("weight 1 - 2k/a is undefined at a = 0")
    total = Fraction(0)
    for k in range(n):
        term = Fraction(spec.sign) ** k * exact_binomial(a, k) ** spec.m
        if spec.s:
            weight = (a - 2 * k) if spec.homogenized else 1 - Fraction(2 * k) / a
            term *= weight**spec.s
        total += term
    return total


def exact_s_sum(x: Fraction, n: int) -> Fraction:
    x = Fraction(x)
    return sum(
        (exact_binomial(Fraction(2 * k), k) * exact_binomial(x, k) * exact_binomial(-1 - x, k) / 4**k for k in range(n)),
        Fraction(0),
    )


def exact_catalan_sum(n: int) -> Fraction:
    return sum((Fraction((4 * k + 3) * catalan(k) ** 4, 256**k) for k in range(n)), Fraction(0))
