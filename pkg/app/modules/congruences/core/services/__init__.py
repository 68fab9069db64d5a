"""
Congruences module business logic services
"""
from .certificate_service import CertificateService
from .suite_service import SuiteService

__all__ = [
    "CertificateService",
    "SuiteService",
]
