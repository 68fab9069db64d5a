# app/modules/congruences/config.py
"""Configuration settings for the congruences module"""
from enum import Enum


class CheckKind(str, Enum):
    THEOREM = "theorem"
    LEMMA = "lemma"
    COROLLARY = "corollary"
    EQUATION = "equation"
    CONJECTURE = "conjecture"
    CITED_RESULT = "cited-result"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    CONSISTENT = "consistent"
    REFUTED = "refuted"


class ParamDomain(str, Enum):
    NONE = "none"
    SAMPLED_A = "sampled-a"
    INDEX_K = "index-k"


class QuadForm(str, Enum):
    F1 = "F1"  # p = x^2 + y^2
    F2 = "F2"  # p = x^2 + 2y^2
    F3 = "F3"  # 4p = x^2 + 27y^2
    F4 = "F4"  # p = x^2 + 3y^2


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class SequenceId(str, Enum):
    EULER = "euler"
    BERNOULLI = "bernoulli"
    U_SEQ = "u_seq"


class ComputeTarget(str, Enum):
    BINOM = "binom"
    FP = "fp"
    GP = "gp"
    CP = "Cp"
    QP = "Qp"
    SP = "Sp"
    EULER = "euler"
    EULERPOLY = "eulerpoly"
    BERNOULLI = "bernoulli"
    USEQ = "useq"
    HARMONIC = "harmonic"
    GAMMA = "gamma"
    QP_FERMAT = "qp"
    JACOBI = "jacobi"
    QF = "qf"
    RESIDUE = "residue"
    APRIME = "aprime"


class SuiteEventTypes:
    """Event types for the congruences module"""

    RUN_STARTED = "congruences.run.started"
    RUN_COMPLETED = "congruences.run.completed"

    CHECK_COMPLETED = "congruences.check.completed"
    CHECK_FAILED = "congruences.check.failed"
    CONJECTURE_REFUTED = "congruences.conjecture.refuted"
    PRECISION_RETRIED = "congruences.check.precision_retried"

    CERTIFICATE_VERIFIED = "congruences.certificate.verified"
    CERTIFICATE_REJECTED = "congruences.certificate.rejected"


class ModuleConfig:
    """Configuration constants for the congruences module"""

    # Precision
    DEFAULT_PRECISION = 8
    MIN_RUN_PRECISION = 4
    PRECISION_RETRY_STEP = 4
    GAMMA_PRECISION = 3

    # Primes
    MAX_PRIME = 2**64
    DEFAULT_P_MIN = 5
    DEFAULT_P_MAX = 199
    ORACLE_SEARCH_LIMIT = 10**4

    # Parameter sampling
    DEFAULT_SAMPLE_COUNT = 3
    DEFAULT_DEN_MAX = 12
    DEFAULT_NUM_MAX = 24
    DEFAULT_SEED = 1
    SAMPLE_ATTEMPT_FACTOR = 50

    # Registry families
    HE_M_RANGE = range(3, 13)
    R32_CONJ_MAX_R = 4
    THM21_M_RANGE = range(1, 5)

    # Certificates
    MAX_SHIFT = 2
    LEMMA21_M_RANGE = range(1, 7)
    PROBE_POINTS = 50

    # Report columns, in output order
    REPORT_FIELDS = ["check_id", "kind", "p", "a", "t", "lhs", "rhs", "pass", "status", "micros"]


# Kinds whose failures make a run fail (exit 1); conjectures only ever refute
ASSERTED_KINDS = {
    CheckKind.THEOREM,
    CheckKind.LEMMA,
    CheckKind.COROLLARY,
    CheckKind.EQUATION,
    CheckKind.CITED_RESULT,
}

EXIT_CODES = {
    "ok": 0,
    "failure": 1,
    "usage": 2,
    "refuted": 3,
}
