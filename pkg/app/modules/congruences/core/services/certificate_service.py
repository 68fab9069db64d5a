# app/modules/congruences/core/services/certificate_service.py
"""Telescoping certificates checked as polynomial identities in (a, k).

A certificate states

    sum_i c_i(a,k) s^k binom(a+da_i, k+dk_i)^m = G(a,k+1) - G(a,k),
    G(a,k) = g(a,k) s^k binom(a+da_G, k+dk_G)^m.

Dividing through by s^k binom(a,k)^m leaves rational functions only, so the
identity holds iff one numerator expands to the zero polynomial.  Readings
whose terms carry different binomial powers cannot be reduced that way and
are decided by exact evaluation at sampled points instead.
"""
import logging
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from app.core.event_bus import EventBus
from app.modules.congruences.config import ModuleConfig, SuiteEventTypes
from app.modules.congruences.core.exceptions import PoleAtPoint, UnknownCertificate, UnsupportedShift
from app.modules.congruences.core.models.padic import exact_binomial
from app.modules.congruences.core.models.polynomial import A, K, MultiPoly, RatFunc, numeric_probe
from app.modules.congruences.core.schemas.congruence_schemas import CertificateVerdict

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def shift_quotient(da: int, dk: int) -> RatFunc:
    """binom(a+da, k+dk) / binom(a, k): a-steps at fixed k first, then k-steps at a+da."""
    if abs(da) > ModuleConfig.MAX_SHIFT or abs(dk) > ModuleConfig.MAX_SHIFT:
        raise UnsupportedShift(f"shift ({da}, {dk}) exceeds {ModuleConfig.MAX_SHIFT} in some direction")
    q = RatFunc(1)
    step = 1 if da > 0 else -1
    for i in range(0, da, step):
        top = A + i  # current a' = a + i
        if step > 0:
            q = q * RatFunc(top + 1, top + 1 - K)
        else:
            q = q * RatFunc(top - K, top)
    top = A + da
    step = 1 if dk > 0 else -1
    for j in range(0, dk, step):
        kk = K + j  # current k' = k + j
        if step > 0:
            q = q * RatFunc(top - kk, kk + 1)
        else:
            q = q * RatFunc(kk, top - kk + 1)
    return q


@dataclass(frozen=True)
class HyperTerm:
    """c(a,k) * sign^k * binom(a+da, k+dk)^power"""

    coeff: RatFunc
    da: int = 0
    dk: int = 0
    power: int = 1
    sign: int = 1

    def normalized(self, shift_k: int = 0) -> RatFunc:
        """This term at k + shift_k, over sign^k binom(a,k)^power."""
        c = self.coeff.translate(0, shift_k) if shift_k else self.coeff
        q = shift_quotient(self.da, self.dk + shift_k) ** self.power
        factor = self.sign**shift_k
        return c * q * factor

    def at(self, a0: Fraction, k0: int) -> Fraction:
        if k0 + self.dk < 0:
            return Fraction(0)
        return (
            self.coeff.evaluate(a0, k0)
            * Fraction(self.sign) ** k0
            * exact_binomial(Fraction(a0) + self.da, k0 + self.dk) ** self.power
        )


@dataclass(frozen=True)
class CertificateSpec:
    id: str
    statement: str
    lhs: Tuple[HyperTerm, ...]
    g: HyperTerm
    reading: str = ""
    # closed forms also need G(a, 0) = 0 for the sum to start at k = 0
    anchored: bool = False
    notice: Optional[str] = None

    @property
    def symbolic(self) -> bool:
        return all(t.power == self.g.power and t.sign == self.g.sign for t in self.lhs)


def _wz_f(power: int, reading: str) -> CertificateSpec:
    g_num = 2 * K**2 - (6 * (A + 2) - 2) * K + (A + 2) * (5 * A + 7)
    return CertificateSpec(
        id="WZ-F",
        statement="(a+2)binom(a+2,k)^m(-1)^k + 4(a+1)binom(a,k)^2(-1)^k = G(a,k+1) - G(a,k)",
        lhs=(
            HyperTerm(RatFunc(A + 2), da=2, power=power, sign=-1),
            HyperTerm(RatFunc(4 * (A + 1)), power=2, sign=-1),
        ),
        g=HyperTerm(RatFunc(-g_num, A + 1), da=1, dk=-1, power=2, sign=-1),
        reading=reading,
    )


def _wz_g() -> CertificateSpec:
    cubic = -4 * K**3 + (14 * A + 22) * K**2 - (A + 2) * (16 * A + 20) * K + (A + 1) * (5 * A**2 + 22 * A + 23)
    return CertificateSpec(
        id="WZ-G",
        statement="(a+1)F(a+2,k) + 4(a+2)F(a,k) = G(a,k+1) - G(a,k), F(a,k) = binom(a,k)^2(-1)^k(a-2k)",
        lhs=(
            HyperTerm(RatFunc((A + 1) * (A + 2 - 2 * K)), da=2, power=2, sign=-1),
            HyperTerm(RatFunc(4 * (A + 2) * (A - 2 * K)), power=2, sign=-1),
        ),
        g=HyperTerm(RatFunc(-(A + 2) * cubic, (A + 1) ** 2), da=1, dk=-1, power=2, sign=-1),
    )


def _wz_c() -> CertificateSpec:
    return CertificateSpec(
        id="WZ-C",
        statement="(a-2k)binom(a,k)^3 + (a+1-2k)binom(a+1,k)^3 = G(a,k+1) - G(a,k)",
        lhs=(
            HyperTerm(RatFunc(A - 2 * K), power=3),
            HyperTerm(RatFunc(A + 1 - 2 * K), da=1, power=3),
        ),
        g=HyperTerm(RatFunc((2 * A + 2 - K) * K**3, (A + 1 - K) ** 3), power=3),
    )


def _wz_q() -> CertificateSpec:
    return CertificateSpec(
        id="WZ-Q",
        statement="(a+1)F(a+1,k) + 2(2a+1)F(a,k) = G(a,k+1) - G(a,k), F(a,k) = (a-2k)binom(a,k)^4",
        lhs=(
            HyperTerm(RatFunc((A + 1) * (A + 1 - 2 * K)), da=1, power=4),
            HyperTerm(RatFunc(2 * (2 * A + 1) * (A - 2 * K)), power=4),
        ),
        g=HyperTerm(RatFunc(K**4 * (2 * K**2 - 6 * (A + 1) * K + 5 * (A + 1) ** 2), (A + 1 - K) ** 4), power=4),
    )


def _lemma21(m: int, alternating: bool) -> CertificateSpec:
    # weight (1 - 2k/a) = (a - 2k)/a
    weight = RatFunc(A - 2 * K, A)
    parity = 0 if alternating else 1
    combo = RatFunc(0)
    for s in range(parity, m + 1, 2):
        combo = combo + weight**s * comb(m, s)
    sign = -1 if alternating else 1
    suffix = "-ALT" if alternating else ""
    return CertificateSpec(
        id=f"LEM21-{m}{suffix}",
        statement=(
            f"(-1)^k binom(a,k)^{m} sum_r binom({m},2r)(1-2k/a)^(2r) = 2^{m - 1}((-1)^k binom(a-1,k)^{m} + (-1)^k binom(a-1,k-1)^{m})"
            if alternating
            else f"binom(a,k)^{m} sum_r binom({m},2r+1)(1-2k/a)^(2r+1) = 2^{m - 1}(binom(a-1,k)^{m} - binom(a-1,k-1)^{m})"
        ),
        lhs=(HyperTerm(combo, power=m, sign=sign),),
        g=HyperTerm(RatFunc(sign * 2 ** (m - 1)), da=-1, dk=-1, power=m, sign=sign),
        anchored=True,
    )


def _remark32_cubic() -> CertificateSpec:
    # RHS(n) = R(a,n) binom(a-1,n-1)^2 and binom(a-1,n-1) = (n/a) binom(a,n)
    closed = (4 * K**2 - 4 * (A + 1) * K + A * (A + 3)) * K**2
    return CertificateSpec(
        id="R32-3",
        statement="sum_{k<n} binom(a,k)^2(1-2k/a)^3 = (4n^2-4(a+1)n+a(a+3))/(a(a-1)) binom(a-1,n-1)^2",
        lhs=(HyperTerm(RatFunc(A - 2 * K, A) ** 3, power=2),),
        g=HyperTerm(RatFunc(closed, A**3 * (A - 1)), power=2),
        anchored=True,
    )


def _remark32_quintic() -> CertificateSpec:
    n = K
    bracket = (
        16 * (A - 1) * n**4
        - 32 * (A**2 - 1) * n**3
        + (24 * A**3 + 32 * A**2 - 48 * A - 16) * n**2
        + (-8 * A**4 - 24 * A**3 + 16 * A**2 + 32 * A) * n
        + A**5
        + 5 * A**4
        + 2 * A**3
        - 16 * A**2
    )
    return CertificateSpec(
        id="R32-5",
        statement="sum_{k<n} binom(a,k)^2(1-2k/a)^5 = n^2 binom(a,n)^2/(a^5(a-1)(a-2)) (16(a-1)n^4 - ... - 16a^2)",
        lhs=(HyperTerm(RatFunc(A - 2 * K, A) ** 5, power=2),),
        g=HyperTerm(RatFunc(n**2 * bracket, A**5 * (A - 1) * (A - 2)), power=2),
        anchored=True,
    )


def _build_registry() -> Dict[str, Tuple[CertificateSpec, ...]]:
    registry: Dict[str, Tuple[CertificateSpec, ...]] = {
        "WZ-F": (
            replace(_wz_f(1, "printed"), notice="first power on binom(a+2,k), as displayed"),
            replace(_wz_f(2, "squared"), notice="squared binom(a+2,k), matching f_n(a+2)"),
        ),
        "WZ-G": (_wz_g(),),
        "WZ-C": (_wz_c(),),
        "WZ-Q": (_wz_q(),),
    }
    for m in ModuleConfig.LEMMA21_M_RANGE:
        for alternating in (False, True):
            spec = _lemma21(m, alternating)
            registry[spec.id] = (spec,)
    registry["R32-3"] = (_remark32_cubic(),)
    registry["R32-5"] = (_remark32_quintic(),)
    return registry


CERTIFICATES: Dict[str, Tuple[CertificateSpec, ...]] = _build_registry()


def certificate_ids() -> List[str]:
    return list(CERTIFICATES)


def _readings(cert_id: str) -> Tuple[CertificateSpec, ...]:
    try:
        return CERTIFICATES[cert_id]
    except KeyError:
        raise UnknownCertificate(f"no certificate registered as {cert_id!r}") from None


def symbolic_residual(spec: CertificateSpec) -> RatFunc:
    """LHS - (G(a,k+1) - G(a,k)) divided by the base term."""
    total = RatFunc(0)
    for term in spec.lhs:
        total = total + term.normalized()
    return total - spec.g.normalized(1) + spec.g.normalized()


def _anchor_holds(spec: CertificateSpec) -> bool:
    if spec.g.dk < 0:
        return True  # binom(., -1) = 0
    return spec.g.coeff.num.at_k(0).is_zero()


def numeric_residual(spec: CertificateSpec, a0: Fraction, k0: int) -> Fraction:
    a0 = Fraction(a0)
    lhs = sum((t.at(a0, k0) for t in spec.lhs), Fraction(0))
    return lhs - (spec.g.at(a0, k0 + 1) - spec.g.at(a0, k0))


def _probe_points(attempts: int, seed: int = ModuleConfig.DEFAULT_SEED):
    rng = random.Random(f"{seed}:probe")
    for _ in range(attempts):
        den = rng.randint(2, 9)
        num = rng.randint(-40, 40)
        a0 = Fraction(num, den)
        if a0.denominator == 1:
            continue  # integer a would hit the (a+1-k) poles for some k
        yield a0, rng.randint(0, 12)


def _numeric_holds(spec: CertificateSpec, points: int = ModuleConfig.PROBE_POINTS) -> bool:
    checked = 0
    for a0, k0 in _probe_points(points * 4):
        try:
            if numeric_residual(spec, a0, k0) != 0:
                logger.debug(f"{spec.id} ({spec.reading}) residual nonzero at a={a0}, k={k0}")
                return False
        except PoleAtPoint:
            continue
        checked += 1
        if checked >= points:
            return True
    return checked > 0


def check_reading(spec: CertificateSpec) -> CertificateVerdict:
    if spec.symbolic:
        ok = symbolic_residual(spec).is_zero()
        if ok and spec.anchored:
            ok = _anchor_holds(spec)
        method = "symbolic"
    else:
        ok = _numeric_holds(spec)
        method = "numeric"
    return CertificateVerdict(cert_id=spec.id, reading=spec.reading, verified=ok, method=method, notice=spec.notice)


def verify_certificate(cert_id: str) -> bool:
    return any(check_reading(spec).verified for spec in _readings(cert_id))


def certificate_verdicts(cert_id: str) -> List[CertificateVerdict]:
    return [check_reading(spec) for spec in _readings(cert_id)]


def certificate_residual(cert_id: str, a0: Fraction, k0: int, reading: Optional[str] = None) -> Fraction:
    """Exact residual of the certificate equation at a rational a0 and integer k0 >= 0."""
    readings = _readings(cert_id)
    spec = next((s for s in readings if s.reading == reading), readings[-1]) if reading else readings[-1]
    return numeric_residual(spec, a0, k0)


def certificate_mutants(cert_id: str) -> List[CertificateSpec]:
    """One spec per monomial of G's numerator, that coefficient bumped by one."""
    mutants = []
    for spec in _readings(cert_id):
        if not spec.symbolic:
            continue
        num = spec.g.coeff.num
        for mono, _ in num.items():
            bumped = MultiPoly(num.terms)
            bumped.add_term(1, mono)
            g = replace(spec.g, coeff=RatFunc(bumped, spec.g.coeff.den))
            mutants.append(replace(spec, g=g, reading=f"mutant {mono}"))
    return mutants


def probe_residual(spec: CertificateSpec, a0: Fraction, k0: Fraction) -> Fraction:
    """The symbolic residual evaluated at a point; zero wherever the identity holds."""
    return numeric_probe(symbolic_residual(spec), a0, k0)


class CertificateService:
    def __init__(self, event_bus: Optional[EventBus] = None):
        self.event_bus = event_bus

    def verify(self, cert_id: str) -> List[CertificateVerdict]:
        verdicts = certificate_verdicts(cert_id)
        verified = any(v.verified for v in verdicts)
        if self.event_bus:
            event = SuiteEventTypes.CERTIFICATE_VERIFIED if verified else SuiteEventTypes.CERTIFICATE_REJECTED
            self.event_bus.publish(
                event,
                {"cert_id": cert_id, "readings": [v.model_dump() for v in verdicts]},
                source_module="congruences",
            )
        return verdicts

    def verify_all(self) -> Dict[str, List[CertificateVerdict]]:
        return {cert_id: self.verify(cert_id) for cert_id in certificate_ids()}
