# app/modules/congruences/core/models/padic.py
"""p-adic numbers p^v * u with capped relative precision.

A nonzero PadicValue stores its valuation v, a unit residue u and the absolute
precision N ("known_to"): the value is determined modulo p^N and u is kept
modulo p^(N - v), never more than p^e digits.  Zero carries the absolute
precision at which zero-ness is guaranteed; an exact zero has known_to None.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Tuple, Union

import sympy

from app.modules.congruences.config import ModuleConfig
from app.modules.congruences.core.exceptions import (
    BaseDivisibleByP,
    DivisionByZero,
    InsufficientPrecision,
    InvalidPrime,
    NotPAdicInteger,
    PadicError,
    PrecisionExhausted,
)

logger = logging.getLogger(__name__)

# The parameter a of every sum; Fraction keeps num/den reduced with den >= 1
RationalArg = Fraction
Operand = Union["PadicValue", int, Fraction]


@lru_cache(maxsize=4096)
def _is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def p_valuation(n: int, p: int) -> Tuple[int, int]:
    """Split a nonzero integer as p^v * rest; returns (v, rest)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def parse_rational(text: str) -> Fraction:
    """Parse "r", "-r/s" style input; raises ValueError on junk."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    value = Fraction(text)
    if "." in text or "e" in text.lower():
        raise ValueError(f"not a rational of the form r/s: {text!r}")
    return value


@dataclass(frozen=True)
class PrimeContext:
    p: int
    e: int = ModuleConfig.DEFAULT_PRECISION
    allow_big: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3:
            raise InvalidPrime(f"p must be an odd prime >= 3, got {self.p!r}")
        if self.p > ModuleConfig.MAX_PRIME and not self.allow_big:
            raise InvalidPrime(f"p = {self.p} exceeds the 64-bit range; pass allow_big to override")
        if not _is_prime(self.p):
            raise InvalidPrime(f"{self.p} is not prime")
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError(f"precision e must be a positive integer, got {self.e!r}")

    @cached_property
    def modulus(self) -> int:
        return self.p**self.e

    def with_precision(self, e: int) -> "PrimeContext":
        return PrimeContext(self.p, e, self.allow_big)

    # --- constructors ---
    def zero(self, known_to: Optional[int] = None) -> "PadicValue":
        return PadicValue(self, None, 0, known_to)

    def one(self) -> "PadicValue":
        return PadicValue(self, 0, 1, self.e)

    def reduce(self, q: Union[int, Fraction]) -> "PadicValue":
        return reduce_rational(Fraction(q), self)

    def from_residue(self, n: int, known_to: Optional[int] = None) -> "PadicValue":
        """The integer n, trusted only modulo p^known_to (default p^e)."""
        return _from_parts(self, 0, n, self.e if known_to is None else known_to)


def _vanishing(ctx: PrimeContext, n: Optional[int]) -> "PadicValue":
    """A zero known modulo p^n; below p^1 nothing at all is known."""
    if n is not None and n < 1:
        raise PrecisionExhausted(f"result is not determined modulo {ctx.p} (known only modulo {ctx.p}^{n})")
    return PadicValue(ctx, None, 0, n)


def _from_parts(ctx: PrimeContext, v: int, w: int, n: Optional[int]) -> "PadicValue":
    """Normalize p^v * w known modulo p^n (n None: w is exact) into a PadicValue.

    Raises PrecisionExhausted when the digits cancel to a zero that is not even
    known modulo p.
    """
    p = ctx.p
    if n is not None:
        room = n - v
        if room <= 0:
            return _vanishing(ctx, n)
        w %= p**room
    if w == 0:
        return _vanishing(ctx, n)
    extra, w = p_valuation(w, p)
    v += extra
    if n is None:
        n = v + ctx.e
    r = min(n - v, ctx.e)
    return PadicValue(ctx, v, w % p**r, v + r)


def _min_known(x: Optional[int], y: Optional[int]) -> Optional[int]:
    if x is None:
        return y
    if y is None:
        return x
    return min(x, y)


@dataclass(frozen=True, slots=True)
class PadicValue:
    ctx: PrimeContext
    v: Optional[int]
    u: int
    known_to: Optional[int]

    # --- inspection ---
    @property
    def is_zero(self) -> bool:
        return self.v is None

    @property
    def is_exact(self) -> bool:
        return self.known_to is None

    @property
    def relative_precision(self) -> int:
        if self.v is None:
            return 0
        return self.known_to - self.v

    def residue(self, t: int) -> int:
        """The value modulo p^t as an integer in [0, p^t)."""
        if self.known_to is not None and self.known_to < t:
            raise InsufficientPrecision(
                f"value known modulo p^{self.known_to}, asked for p^{t}", needed=t, available=self.known_to
            )
        if self.v is None:
            return 0
        if self.v < 0:
            raise NotPAdicInteger(f"value has valuation {self.v}; no residue modulo p^{t}")
        mod = self.ctx.p**t
        return (self.u * self.ctx.p**self.v) % mod

    def rebase(self, ctx: PrimeContext) -> "PadicValue":
        """Move into another context of the same prime, capping relative precision."""
        if ctx == self.ctx:
            return self
        if ctx.p != self.ctx.p:
            raise PadicError(f"cannot move a {self.ctx.p}-adic value to p = {ctx.p}")
        if self.v is None:
            return PadicValue(ctx, None, 0, self.known_to)
        r = min(self.relative_precision, ctx.e)
        return PadicValue(ctx, self.v, self.u % ctx.p**r, self.v + r)

    def __str__(self) -> str:
        p = self.ctx.p
        if self.v is None:
            return "0 (exact)" if self.known_to is None else f"0 (mod {p}^{self.known_to})"
        return f"{p}^{self.v} * {self.u} (mod {p}^{self.known_to})"

    # --- arithmetic ---
    def _coerce(self, other: Operand) -> "PadicValue":
        if isinstance(other, PadicValue):
            return other
        if isinstance(other, (int, Fraction)):
            return reduce_rational(Fraction(other), self.ctx)
        return NotImplemented

    def __add__(self, other: Operand) -> "PadicValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(*_align(self, other))

    __radd__ = __add__

    def __neg__(self) -> "PadicValue":
        if self.v is None:
            return self
        mod = self.ctx.p**self.relative_precision
        return PadicValue(self.ctx, self.v, (-self.u) % mod, self.known_to)

    def __sub__(self, other: Operand) -> "PadicValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(*_align(self, -other))

    def __rsub__(self, other: Operand) -> "PadicValue":
        return (-self) + other

    def __mul__(self, other: Operand) -> "PadicValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _mul(*_align(self, other))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "PadicValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _div(*_align(self, other))

    def __rtruediv__(self, other: Operand) -> "PadicValue":
        return _div(*_align(self._coerce(other), self))

    def __pow__(self, n: int) -> "PadicValue":
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return self.ctx.one()
        if n < 0:
            return _div(self.ctx.one(), self ** (-n))
        if self.v is None:
            if self.known_to is None:
                return self
            return _vanishing(self.ctx, self.known_to * n)
        r = self.relative_precision
        mod = self.ctx.p**r
        return PadicValue(self.ctx, self.v * n, pow(self.u, n, mod), self.v * n + r)


def _align(x: PadicValue, y: PadicValue) -> Tuple[PadicValue, PadicValue]:
    # values from a lower-precision context move up losslessly
    if x.ctx == y.ctx:
        return x, y
    if x.ctx.p != y.ctx.p:
        raise PadicError(f"mixed primes {x.ctx.p} and {y.ctx.p}")
    if x.ctx.e >= y.ctx.e:
        return x, y.rebase(x.ctx)
    return x.rebase(y.ctx), y


def _add(x: PadicValue, y: PadicValue) -> PadicValue:
    ctx = x.ctx
    n = _min_known(x.known_to, y.known_to)
    if x.v is None and y.v is None:
        return _vanishing(ctx, n)
    if x.v is None:
        return _from_parts(ctx, y.v, y.u, n)
    if y.v is None:
        return _from_parts(ctx, x.v, x.u, n)
    p = ctx.p
    vm = min(x.v, y.v)
    w = x.u * p ** (x.v - vm) + y.u * p ** (y.v - vm)
    return _from_parts(ctx, vm, w, n)


def _mul(x: PadicValue, y: PadicValue) -> PadicValue:
    ctx = x.ctx
    if (x.v is None and x.known_to is None) or (y.v is None and y.known_to is None):
        return ctx.zero()
    if x.v is None or y.v is None:
        zero, other = (x, y) if x.v is None else (y, x)
        bound = other.known_to if other.v is None else other.v
        return _vanishing(ctx, zero.known_to + bound)
    r = min(x.relative_precision, y.relative_precision)
    v = x.v + y.v
    return PadicValue(ctx, v, (x.u * y.u) % ctx.p**r, v + r)


def _div(x: PadicValue, y: PadicValue) -> PadicValue:
    ctx = x.ctx
    if y.v is None:
        if y.known_to is None:
            raise DivisionByZero("division by an exact zero")
        raise PrecisionExhausted(f"divisor is only known to vanish modulo p^{y.known_to}")
    if x.v is None:
        if x.known_to is None:
            return x
        return _vanishing(ctx, x.known_to - y.v)
    r = min(x.relative_precision, y.relative_precision)
    mod = ctx.p**r
    v = x.v - y.v
    return PadicValue(ctx, v, (x.u * pow(y.u, -1, mod)) % mod, v + r)


# --- module-level operations ---
def reduce_rational(q: Fraction, ctx: PrimeContext) -> PadicValue:
    q = Fraction(q)
    if q == 0:
        return ctx.zero()
    p = ctx.p
    vn, num = p_valuation(q.numerator, p)
    vd, den = p_valuation(q.denominator, p)
    mod = ctx.modulus
    v = vn - vd
    return PadicValue(ctx, v, (num * pow(den, -1, mod)) % mod, v + ctx.e)


def padic_arith(op: str, x: PadicValue, y: PadicValue) -> PadicValue:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def congruent_mod(x: PadicValue, y: PadicValue, t: int) -> bool:
    """True iff x == y (mod p^t); refuses to answer beyond the known digits."""
    for side in (x, y):
        if side.known_to is not None and side.known_to < t:
            raise InsufficientPrecision(
                f"operand known modulo p^{side.known_to} cannot decide a congruence modulo p^{t}",
                needed=t,
                available=side.known_to,
            )
    diff = x - y
    return diff.v is None or diff.v >= t


def canonical_residue(a: Fraction, p: int) -> int:
    a = Fraction(a)
    if a.denominator % p == 0:
        raise NotPAdicInteger(f"{a} is not a {p}-adic integer")
    return (a.numerator * pow(a.denominator, -1, p)) % p


def a_prime(a: Fraction, ctx: PrimeContext) -> PadicValue:
    a = Fraction(a)
    r = canonical_residue(a, ctx.p)
    return ctx.reduce((a - r) / ctx.p)


def fermat_quotient(b: int, ctx: PrimeContext) -> PadicValue:
    p = ctx.p
    if b % p == 0:
        raise BaseDivisibleByP(f"{b} is divisible by {p}")
    mod = p ** (ctx.e + 1)
    return ctx.from_residue(((pow(b, p - 1, mod) - 1) % mod) // p, ctx.e)


def jacobi(a: int, m: int) -> int:
    if m < 1 or m % 2 == 0:
        raise ValueError(f"Jacobi symbol needs a positive odd modulus, got {m}")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def exact_binomial(a: Fraction, k: int) -> Fraction:
    """Falling-factorial binomial over the rationals; zero for k < 0."""
    if k < 0:
        return Fraction(0)
    value = Fraction(1)
    for i in range(k):
        value = value * (a - i) / (i + 1)
    return value


def binom_rational(a: Fraction, k: int, ctx: PrimeContext) -> PadicValue:
    a = Fraction(a)
    if k < 0:
        return ctx.zero()
    if k == 0:
        return ctx.one()
    if a.denominator == 1 and 0 <= a < k:
        return ctx.zero()
    if k >= ctx.p:
        # slow path: k! is no longer a unit
        logger.debug(f"binom({a}, {k}) at p={ctx.p} via exact rationals")
        return ctx.reduce(exact_binomial(a, k))
    value = ctx.one()
    for i in range(k):
        value = value * ctx.reduce((a - i) / (i + 1))
    return value
