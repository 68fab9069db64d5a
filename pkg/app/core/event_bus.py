"""In-process event bus used by the suite runner"""
import logging
from collections import defaultdict
from typing import Any, Callable, Dict, List, Optional

logger = logging.getLogger(__name__)

Handler = Callable[[Dict[str, Any]], None]


class EventBus:
    """Synchronous publish/subscribe; handlers run in the publisher's thread"""

    def __init__(self):
        self._handlers: Dict[str, List[Handler]] = defaultdict(list)

    def subscribe(self, event_type: str, handler: Handler) -> None:
        self._handlers[event_type].append(handler)
        logger.debug(f"Subscribed {getattr(handler, '__name__', handler)} to {event_type}")

    def publish(self, event_type: str, data: Dict[str, Any], source_module: Optional[str] = None) -> int:
        """Deliver to every subscriber; returns the number of handlers called"""
        handlers = self._handlers.get(event_type, [])
        for handler in handlers:
            try:
                handler({**data, "event_type": event_type, "source_module": source_module})
            except Exception:
                logger.exception(f"Handler failed for {event_type} from {source_module}")
        return len(handlers)
