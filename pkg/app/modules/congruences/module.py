# app/modules/congruences/module.py
"""Main Congruences Module Class"""
import logging
from typing import List, Optional

from app.core.event_bus import EventBus

from .config import SuiteEventTypes
from .core.schemas.congruence_schemas import CertificateVerdict, CheckResult, Report, RunConfig
from .core.services.certificate_service import CertificateService
from .core.services.check_registry import list_checks
from .core.services.suite_service import SuiteService
from .events.handlers import SuiteEventHandlers


class CongruenceModule:
    """Supercongruence checks, certificates and the suite runner behind one facade"""

    def __init__(self, event_bus: Optional[EventBus] = None):
        self._event_bus = event_bus if event_bus is not None else EventBus()
        self._logger = logging.getLogger(__name__)
        self._event_handlers: Optional[SuiteEventHandlers] = None
        self.suite = SuiteService(self._event_bus)
        self.certificates = CertificateService(self._event_bus)
        self._subscribe_to_events()

    @property
    def name(self) -> str:
        return "congruences"

    @property
    def version(self) -> str:
        return "1.0.0"

    @property
    def event_bus(self) -> EventBus:
        return self._event_bus

    @property
    def handlers(self) -> SuiteEventHandlers:
        return self._event_handlers

    def check_ids(self) -> List[str]:
        return [spec.id for spec in list_checks()]

    def _subscribe_to_events(self) -> None:
        """Hook the logging handlers onto the suite's lifecycle events"""
        self._event_handlers = SuiteEventHandlers(service=self.suite)
        subscriptions = {
            SuiteEventTypes.RUN_STARTED: self._event_handlers.handle_run_started,
            SuiteEventTypes.RUN_COMPLETED: self._event_handlers.handle_run_completed,
            SuiteEventTypes.CHECK_COMPLETED: self._event_handlers.handle_check_completed,
            SuiteEventTypes.CHECK_FAILED: self._event_handlers.handle_check_failed,
            SuiteEventTypes.CONJECTURE_REFUTED: self._event_handlers.handle_conjecture_refuted,
            SuiteEventTypes.PRECISION_RETRIED: self._event_handlers.handle_precision_retried,
            SuiteEventTypes.CERTIFICATE_VERIFIED: self._event_handlers.handle_certificate_verified,
            SuiteEventTypes.CERTIFICATE_REJECTED: self._event_handlers.handle_certificate_rejected,
        }
        for event_type, handler in subscriptions.items():
            self._event_bus.subscribe(event_type, handler)

    def run(self, config: RunConfig) -> Report:
        self._logger.info(f"Congruences module {self.version}: running {', '.join(config.checks)}")
        return self.suite.run_range(config)

    def run_check(self, check_id: str, p: int, param=None, e: Optional[int] = None) -> CheckResult:
        if e is None:
            return self.suite.run_check(check_id, p, param)
        return self.suite.run_check(check_id, p, param, e)

    def verify_certificate(self, cert_id: str) -> List[CertificateVerdict]:
        return self.certificates.verify(cert_id)
