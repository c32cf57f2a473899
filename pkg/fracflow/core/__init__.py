"""Core runtime services: the progress event bus."""

from .events import Event, EventBus, EventType, event_bus

__all__ = ["Event", "EventBus", "EventType", "event_bus"]
