# app/modules/congruences/core/models/polynomial.py
"""Sparse integer polynomials in the two symbols a, k and their quotients.

No gcd is ever taken: rational functions are compared by cross-multiplying
and expanding, which is cheap at certificate degrees.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterator, Tuple, Union

from app.modules.congruences.core.exceptions import PoleAtPoint

Monomial = Tuple[int, int]  # (deg_a, deg_k)
Scalar = Union[int, Fraction]


class MultiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, int] = None):
        self.terms: Dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                self.add_term(coeff, mono)

    @classmethod
    def constant(cls, c: int) -> "MultiPoly":
        return cls({(0, 0): c})

    def add_term(self, coeff: int, mono: Monomial) -> None:
        if coeff == 0:
            return
        total = self.terms.get(mono, 0) + coeff
        if total:
            self.terms[mono] = total
        else:
            del self.terms[mono]

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        """Terms in canonical order: descending total degree, then descending a-degree."""
        return iter(sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    # --- ring operations ---
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        result = MultiPoly(self.terms)
        for mono, coeff in other.terms.items():
            result.add_term(coeff, mono)
        return result

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        result = MultiPoly()
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                result.add_term(c1 * c2, (i1 + i2, j1 + j2))
        return result

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # --- substitution ---
    def translate(self, da: int, dk: int) -> "MultiPoly":
        """p(a + da, k + dk), expanded."""
        if da == 0 and dk == 0:
            return MultiPoly(self.terms)
        result = MultiPoly()
        for (i, j), c in self.terms.items():
            for r in range(i + 1):
                ca = c * comb(i, r) * da ** (i - r)
                if ca == 0:
                    continue
                for s in range(j + 1):
                    result.add_term(ca * comb(j, s) * dk ** (j - s), (r, s))
        return result

    def at_k(self, k0: int) -> "MultiPoly":
        """Substitute an integer for k, leaving a polynomial in a."""
        result = MultiPoly()
        for (i, j), c in self.terms.items():
            result.add_term(c * k0**j, (i, 0))
        return result

    def evaluate(self, a0: Scalar, k0: Scalar) -> Fraction:
        a0, k0 = Fraction(a0), Fraction(k0)
        return sum((c * a0**i * k0**j for (i, j), c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.items():
            factors = [name if d == 1 else f"{name}^{d}" for name, d in (("a", i), ("k", j)) if d]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


A = MultiPoly({(1, 0): 1})
K = MultiPoly({(0, 1): 1})
ONE = MultiPoly.constant(1)


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num if isinstance(num, MultiPoly) else MultiPoly.constant(num)
        den = ONE if den is None else den
        self.den = den if isinstance(den, MultiPoly) else MultiPoly.constant(den)
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (MultiPoly, int)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def equals(self, other) -> bool:
        other = self._lift(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def translate(self, da: int, dk: int) -> "RatFunc":
        return RatFunc(self.num.translate(da, dk), self.den.translate(da, dk))

    def at_k(self, k0: int) -> "RatFunc":
        den = self.den.at_k(k0)
        if den.is_zero():
            raise PoleAtPoint(f"denominator vanishes identically at k = {k0}")
        return RatFunc(self.num.at_k(k0), den)

    def evaluate(self, a0: Scalar, k0: Scalar) -> Fraction:
        den = self.den.evaluate(a0, k0)
        if den == 0:
            raise PoleAtPoint(f"denominator vanishes at (a, k) = ({a0}, {k0})")
        return self.num.evaluate(a0, k0) / den

    def __repr__(self) -> str:
        if self.den == ONE:
            return f"{self.num!r}"
        return f"({self.num!r}) / ({self.den!r})"


def poly_arith(op: str, f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def ratfunc_arith(op: str, f: RatFunc, g: RatFunc) -> RatFunc:
    if op == "div":
        return f / g
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def numeric_probe(rf: RatFunc, a0: Scalar, k0: Scalar) -> Fraction:
    return rf.evaluate(a0, k0)
