from fractions import Fraction

import pytest

from app.modules.congruences.config import ModuleConfig, SuiteEventTypes
from app.modules.congruences.core.exceptions import UnknownCertificate, UnsupportedShift
from app.modules.congruences.core.models.padic import exact_binomial
from app.modules.congruences.core.services.certificate_service import (
    CertificateService,
    certificate_ids,
    certificate_mutants,
    certificate_residual,
    certificate_verdicts,
    check_reading,
    probe_residual,
    shift_quotient,
    symbolic_residual,
    verify_certificate,
    CERTIFICATES,
)

SYMBOLIC_IDS = (
    ["WZ-G", "WZ-C", "WZ-Q", "R32-3", "R32-5"]
    + [f"LEM21-{m}" for m in ModuleConfig.LEMMA21_M_RANGE]
    + [f"LEM21-{m}-ALT" for m in ModuleConfig.LEMMA21_M_RANGE]
)


def test_registry_contents():
    ids = certificate_ids()
    assert set(SYMBOLIC_IDS) | {"WZ-F"} == set(ids)
    assert len(ids) >= 10


@pytest.mark.parametrize("cert_id", SYMBOLIC_IDS)
def test_symbolic_certificates_verify(cert_id):
    assert verify_certificate(cert_id)
    (spec,) = CERTIFICATES[cert_id]
    assert spec.symbolic
    assert symbolic_residual(spec).is_zero()


def test_wz_f_resolves_the_ambiguous_reading():
    verdicts = certificate_verdicts("WZ-F")
    assert {v.reading for v in verdicts} == {"printed", "squared"}
    squared = next(v for v in verdicts if v.reading == "squared")
    assert squared.verified and squared.method == "symbolic"
    printed = next(v for v in verdicts if v.reading == "printed")
    assert printed.method == "numeric"
    assert all(v.notice for v in verdicts)
    assert verify_certificate("WZ-F")


@pytest.mark.parametrize("cert_id", SYMBOLIC_IDS + ["WZ-F"])
def test_every_mutation_is_rejected(cert_id):
    mutants = certificate_mutants(cert_id)
    assert mutants
    for spec in mutants:
        assert not check_reading(spec).verified, spec.reading


@pytest.mark.parametrize("cert_id", ["WZ-Q", "WZ-C", "LEM21-3", "R32-5"])
def test_numeric_residual_vanishes_where_symbolic_does(cert_id):
    (spec,) = CERTIFICATES[cert_id]
    for a0 in (Fraction(1, 3), Fraction(-7, 5), Fraction(11, 2)):
        for k0 in range(0, 6):
            assert certificate_residual(cert_id, a0, k0) == 0
            assert probe_residual(spec, a0, Fraction(2 * k0 + 1, 7)) == 0


def test_shift_quotient_matches_binomials():
    for da in range(-2, 3):
        for dk in range(-2, 3):
            rf = shift_quotient(da, dk)
            for a0 in (Fraction(7, 3), Fraction(-5, 2)):
                for k0 in range(2, 6):
                    expected = exact_binomial(a0 + da, k0 + dk) / exact_binomial(a0, k0)
                    assert rf.evaluate(a0, k0) == expected


def test_shift_limits():
    with pytest.raises(UnsupportedShift):
        shift_quotient(3, 0)
    with pytest.raises(UnknownCertificate):
        verify_certificate("NOPE")


def test_service_publishes_verdicts(recording_bus):
    service = CertificateService(recording_bus)
    verdicts = service.verify("WZ-Q")
    assert verdicts[0].verified
    assert recording_bus.seen[-1][0] == SuiteEventTypes.CERTIFICATE_VERIFIED
    assert recording_bus.seen[-1][1]["cert_id"] == "WZ-Q"
