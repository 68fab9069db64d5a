# app/modules/congruences/events/handlers.py
"""Event handlers for the congruences module"""
import logging
from typing import Any, Dict

logger = logging.getLogger(__name__)


class SuiteEventHandlers:
    """Log suite lifecycle events; keeps running tallies for the module"""

    def __init__(self, service=None):
        self.service = service
        self.failures = 0
        self.refutations = 0

    def handle_run_started(self, event_data: Dict[str, Any]):
        logger.info(
            f"Run started: {event_data.get('checks')} checks over {event_data.get('primes')} primes "
            f"({event_data.get('tasks')} evaluations, jobs={event_data.get('jobs')})"
        )
        self.failures = 0
        self.refutations = 0

    def handle_check_completed(self, event_data: Dict[str, Any]):
        logger.debug(
            f"{event_data.get('check_id')} p={event_data.get('p')} a={event_data.get('a') or '-'}: {event_data.get('status')}"
        )

    def handle_check_failed(self, event_data: Dict[str, Any]):
        self.failures += 1
        logger.warning(
            f"Check failed: {event_data.get('check_id')} at p={event_data.get('p')} a={event_data.get('a') or '-'} "
            f"(lhs={event_data.get('lhs')}, rhs={event_data.get('rhs')}, mod p^{event_data.get('t')})"
        )

    def handle_conjecture_refuted(self, event_data: Dict[str, Any]):
        self.refutations += 1
        logger.warning(
            f"Conjecture refuted: {event_data.get('check_id')} at p={event_data.get('p')} "
            f"a={event_data.get('a') or '-'} (lhs={event_data.get('lhs')}, rhs={event_data.get('rhs')})"
        )

    def handle_precision_retried(self, event_data: Dict[str, Any]):
        logger.debug(f"Precision raised for {event_data.get('check_id')} at p={event_data.get('p')}")

    def handle_run_completed(self, event_data: Dict[str, Any]):
        logger.info(
            f"Run completed: {event_data.get('total')} results, {event_data.get('passed')} passed, "
            f"{event_data.get('failed')} failed, {event_data.get('consistent')} consistent, "
            f"{event_data.get('refuted')} refuted, {event_data.get('skipped')} skipped"
        )

    def handle_certificate_verified(self, event_data: Dict[str, Any]):
        logger.info(f"Certificate verified: {event_data.get('cert_id')}")

    def handle_certificate_rejected(self, event_data: Dict[str, Any]):
        logger.warning(f"Certificate rejected: {event_data.get('cert_id')}")
