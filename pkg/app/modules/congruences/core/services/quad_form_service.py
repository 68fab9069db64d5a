# app/modules/congruences/core/services/quad_form_service.py
"""Representations of p (or 4p) by x^2 + d*y^2 with theorem-specific sign normalization"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional, Tuple

import sympy

from app.modules.congruences.config import ModuleConfig, QuadForm
from app.modules.congruences.core.exceptions import NotRepresentable
from app.modules.congruences.core.models.padic import jacobi

logger = logging.getLogger(__name__)

# form -> (d, multiplier): multiplier * p = x^2 + d * y^2
FORM_EQUATIONS = {
    QuadForm.F1: (1, 1),
    QuadForm.F2: (2, 1),
    QuadForm.F3: (27, 4),
    QuadForm.F4: (3, 1),
}


@dataclass(frozen=True)
class QuadRep:
    form: QuadForm
    x: int
    y: int
    p: int

    def holds(self) -> bool:
        d, mult = FORM_EQUATIONS[self.form]
        return self.x * self.x + d * self.y * self.y == mult * self.p


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo the odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue modulo {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)

    # p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        # lowest i with t^(2^i) = 1
        t2i, i = t, 0
        for i in range(1, m):
            t2i = t2i * t2i % p
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def brute_force(d: int, m: int) -> Optional[Tuple[int, int]]:
    """Smallest nonnegative (x, y) with x^2 + d*y^2 = m, or None."""
    for y in range(isqrt(m // d) + 1):
        rest = m - d * y * y
        x = isqrt(rest)
        if x * x == rest:
            return x, y
    return None


def cornacchia(d: int, m: int) -> Optional[Tuple[int, int]]:
    """Primitive nonnegative (x, y) with x^2 + d*y^2 = m, or None."""
    if m <= 0 or not 0 < d < m:
        raise ValueError(f"cornacchia needs m > 0 and 0 < d < m, got d={d}, m={m}")
    if not sympy.isprime(m):
        found = brute_force(d, m)
        logger.debug(f"cornacchia({d}, {m}): composite modulus, exhaustive search gave {found}")
        return found
    if m == 2 or jacobi(-d, m) != 1:
        return brute_force(d, m) if m == 2 else None
    x0 = sqrt_mod(-d, m)
    if 2 * x0 < m:
        x0 = m - x0
    a, b = m, x0
    limit = isqrt(m)
    while b > limit:
        a, b = b, a % b
    rest = m - b * b
    if rest % d:
        return None
    y = isqrt(rest // d)
    if y * y != rest // d:
        return None
    return b, y


def cornacchia_4p(d: int, p: int) -> Optional[Tuple[int, int]]:
    """(x, y) with x^2 + d*y^2 = 4p for -d = 1 (mod 4), or None."""
    if jacobi(-d, p) != 1:
        return None
    x0 = sqrt_mod(-d, p)
    if (x0 - d) % 2:
        x0 = p - x0
    a, b = 2 * p, x0
    limit = isqrt(4 * p)
    while b > limit:
        a, b = b, a % b
    rest = 4 * p - b * b
    if rest % d:
        return None
    y = isqrt(rest // d)
    if y * y != rest // d:
        return None
    return b, y


def _require_class(p: int, form: QuadForm) -> None:
    ok = {
        QuadForm.F1: p % 4 == 1,
        QuadForm.F2: p % 8 in (1, 3),
        QuadForm.F3: p % 3 == 1,
        QuadForm.F4: p % 3 == 1,
    }[form]
    if not ok:
        raise NotRepresentable(f"p = {p} is not represented by {form.value}")


def _normalize(form: QuadForm, p: int, x: int, y: int) -> Tuple[int, int]:
    if form == QuadForm.F1:
        # x is the odd coordinate
        if x % 2 == 0:
            x, y = y, x
        return (x if x % 4 == 1 else -x), abs(y)
    if form == QuadForm.F2:
        if p % 8 == 1:
            return (x if x % 4 == 1 else -x), abs(y)
        return (x if x % 4 == 1 else -x), (y if y % 4 == 1 else -y)
    if form == QuadForm.F3:
        return (x if x % 3 == 1 else -x), abs(y)
    # F4: x = 1 (mod 3); y = 1 (mod 3) when 3 does not divide y, else y > 0
    x = x if x % 3 == 1 else -x
    if y % 3 == 0:
        return x, abs(y)
    return x, (y if y % 3 == 1 else -y)


@lru_cache(maxsize=4096)
def represent(p: int, form: QuadForm) -> QuadRep:
    form = QuadForm(form)
    _require_class(p, form)
    d, mult = FORM_EQUATIONS[form]
    found = cornacchia_4p(d, p) if mult == 4 else cornacchia(d, p)
    if found is None and p <= ModuleConfig.ORACLE_SEARCH_LIMIT:
        found = brute_force(d, mult * p)
    if found is None:
        raise NotRepresentable(f"no solution of x^2 + {d}y^2 = {mult}p found for p = {p}")
    x, y = _normalize(form, p, *found)
    rep = QuadRep(form, x, y, p)
    logger.debug(f"represent({p}, {form.value}) -> x={x} y={y}")
    return rep


def thm56_u(rep: QuadRep) -> int:
    """u = -2x when 3 | y, and x - 3y when y = 1 (mod 3)."""
    if rep.y % 3 == 0:
        return -2 * rep.x
    return rep.x - 3 * rep.y


def thm59_c(p: int, rep: QuadRep) -> int:
    """c = x (3 does not divide x) or -x (3 | x) for p = 1 (mod 12); y with y = x (mod 3) for p = 5 (mod 12)."""
    if p % 12 == 1:
        return -rep.x if rep.x % 3 == 0 else rep.x
    if p % 12 == 5:
        return rep.y if (rep.x - rep.y) % 3 == 0 else -rep.y
    raise NotRepresentable(f"c is only defined for p = 1, 5 (mod 12), got p = {p}")
