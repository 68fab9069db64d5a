# app/modules/congruences/core/services/sequence_service.py
"""Euler, Bernoulli and U numbers, Euler/Bernoulli polynomials, harmonic numbers,
Catalan numbers and the p-adic Gamma function."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Tuple, Union

from app.modules.congruences.config import SequenceId
from app.modules.congruences.core.exceptions import BernoulliDenominatorDivisibleByP, NotPAdicInteger
from app.modules.congruences.core.models.padic import PadicValue, PrimeContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequenceTable:
    id: SequenceId
    n_max: int
    values: Tuple[Union[int, Fraction], ...]
    modulus: Optional[int] = None

    def __getitem__(self, n: int) -> Union[int, Fraction]:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _even_recurrence(n_max: int, factor: int, modulus: Optional[int]) -> Tuple[int, ...]:
    # X_0 = 1, X_odd = 0, X_2n = -factor * sum_{k=1}^{n} C(2n,2k) X_{2n-2k}
    values = [0] * (n_max + 1)
    values[0] = 1
    for n2 in range(2, n_max + 1, 2):
        acc = 0
        for k2 in range(2, n2 + 1, 2):
            acc += comb(n2, k2) * values[n2 - k2]
        acc = -factor * acc
        values[n2] = acc % modulus if modulus else acc
    return tuple(values)


@lru_cache(maxsize=512)
def euler_numbers(n_max: int, ctx: Optional[PrimeContext] = None) -> SequenceTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    modulus = ctx.modulus if ctx else None
    return SequenceTable(SequenceId.EULER, n_max, _even_recurrence(n_max, 1, modulus), modulus)


@lru_cache(maxsize=512)
def u_numbers(n_max: int, ctx: Optional[PrimeContext] = None) -> SequenceTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    modulus = ctx.modulus if ctx else None
    return SequenceTable(SequenceId.U_SEQ, n_max, _even_recurrence(n_max, 2, modulus), modulus)


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    # sum_{k<=n} C(n+1,k) B_k = 0; callers go upward so every B_k, k < n, is already cached
    if n == 0:
        return Fraction(1)
    if n % 2 == 1 and n > 1:
        return Fraction(0)
    return -sum(comb(n + 1, k) * _bernoulli(k) for k in range(n)) / (n + 1)


@lru_cache(maxsize=512)
def bernoulli_numbers(n_max: int) -> SequenceTable:
    """Exact B_0..B_{n_max} from sum_{k<n} C(n,k) B_k = 0, so B_1 = -1/2."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return SequenceTable(SequenceId.BERNOULLI, n_max, tuple(_bernoulli(n) for n in range(n_max + 1)))


def _integral(x: Fraction, ctx: PrimeContext) -> Fraction:
    x = Fraction(x)
    if x.denominator % ctx.p == 0:
        raise NotPAdicInteger(f"{x} is not a {ctx.p}-adic integer")
    return x


def euler_poly(n: int, x: Fraction, ctx: PrimeContext) -> PadicValue:
    """E_n(x) = 2^-n sum_k C(n,k) (2x-1)^(n-k) E_k."""
    x = _integral(x, ctx)
    table = euler_numbers(n, ctx)
    base = ctx.reduce(2 * x - 1)
    # powers[j] = (2x-1)^j, built once
    powers = [ctx.one()]
    for _ in range(n):
        powers.append(powers[-1] * base)
    total = ctx.zero()
    for k in range(0, n + 1, 2):
        if table[k]:
            total = total + powers[n - k] * ctx.from_residue(comb(n, k) * table[k])
    return total / 2**n


def bernoulli_poly(n: int, x: Fraction, ctx: PrimeContext) -> PadicValue:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k)."""
    x = _integral(x, ctx)
    table = bernoulli_numbers(n)
    base = ctx.reduce(x)
    total = ctx.zero()
    power = ctx.one()
    # walk k downward so x^(n-k) grows by one factor per step
    for k in range(n, -1, -1):
        b_k = table[k]
        if b_k:
            if b_k.denominator % ctx.p == 0:
                raise BernoulliDenominatorDivisibleByP(f"B_{k} = {b_k} has denominator divisible by {ctx.p}")
            total = total + power * ctx.reduce(comb(n, k) * b_k)
        power = power * base
    return total


@lru_cache(maxsize=1024)
def _harmonic_prefix(ctx: PrimeContext, order: int) -> Tuple[int, ...]:
    # H_0..H_{p-1} modulo p^e; every denominator is a unit
    mod = ctx.modulus
    values = [0]
    acc = 0
    for k in range(1, ctx.p):
        acc = (acc + pow(pow(k, order, mod), -1, mod)) % mod
        values.append(acc)
    return tuple(values)


def harmonic_exact(n: int, order: int = 1) -> Fraction:
    return sum((Fraction(1, k**order) for k in range(1, n + 1)), Fraction(0))


def harmonic(n: int, order: int, ctx: PrimeContext) -> PadicValue:
    if order not in (1, 2):
        raise ValueError(f"harmonic order must be 1 or 2, got {order}")
    if n < 0:
        raise ValueError("harmonic index must be nonnegative")
    if n < ctx.p:
        return ctx.from_residue(_harmonic_prefix(ctx, order)[n])
    logger.debug(f"H_{n}^({order}) at p={ctx.p} via exact rationals")
    return ctx.reduce(harmonic_exact(n, order))


def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("Catalan index must be nonnegative")
    return comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=256)
def _block_polynomial(p: int, e: int) -> Tuple[int, ...]:
    """Coefficients of prod_{i=1}^{p-1} (X + i) modulo (p^e, X^e)."""
    mod = p**e
    coeffs = [1] + [0] * (e - 1)
    for i in range(1, p):
        # multiply by (X + i), dropping degree >= e
        for d in range(e - 1, 0, -1):
            coeffs[d] = (coeffs[d] * i + coeffs[d - 1]) % mod
        coeffs[0] = coeffs[0] * i % mod
    return tuple(coeffs)


@lru_cache(maxsize=1024)
def _gamma_at_integer(n0: int, p: int, e: int) -> int:
    mod = p**e
    coeffs = _block_polynomial(p, e)
    blocks, tail = divmod(n0, p)
    product = 1
    # block j covers jp+1 .. jp+p-1; X = jp makes X^e vanish modulo p^e
    for j in range(blocks):
        x = j * p
        value = 0
        for c in reversed(coeffs):
            value = (value * x + c) % mod
        product = product * value % mod
    start = blocks * p
    for k in range(start + 1, start + tail):
        product = product * k % mod
    return (-product) % mod if n0 % 2 else product


def padic_gamma(x: Fraction, ctx: PrimeContext) -> PadicValue:
    """Morita's Gamma_p(x) modulo p^e, via Gamma_p(n0) with n0 = x mod p^e."""
    x = _integral(x, ctx)
    mod = ctx.modulus
    n0 = (x.numerator * pow(x.denominator, -1, mod)) % mod
    return ctx.from_residue(_gamma_at_integer(n0, ctx.p, ctx.e))
