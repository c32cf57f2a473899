"""Event bus for solver progress events."""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Dict, List

from loguru import logger


class EventType(Enum):
    """Types of events the solvers can emit."""

    RUN_START = "run_start"
    STEP_END = "step_end"
    PICARD_STAGNATION = "picard_stagnation"
    SUBDOMAIN_SOLVED = "subdomain_solved"
    ROW_DONE = "row_done"
    RUN_END = "run_end"


@dataclass
class Event:
    """An event in the solver."""

    type: EventType
    data: Dict[str, Any]
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    source: str = "solver"


class EventBus:
    """Simple publish/subscribe event bus."""

    def __init__(self) -> None:
        self._subscribers: Dict[EventType, List[Callable[[Event], None]]] = {}
        self._all_subscribers: List[Callable[[Event], None]] = []
        self._enabled = True

    def subscribe(self, event_type: EventType, callback: Callable[[Event], None]) -> None:
        """Subscribe to a specific event type."""
        self._subscribers.setdefault(event_type, []).append(callback)

    def subscribe_all(self, callback: Callable[[Event], None]) -> None:
        """Subscribe to all events."""
        self._all_subscribers.append(callback)

    def unsubscribe(self, event_type: EventType, callback: Callable[[Event], None]) -> None:
        """Unsubscribe from an event type."""
        callbacks = self._subscribers.get(event_type, [])
        if callback in callbacks:
            callbacks.remove(callback)

    def unsubscribe_all(self, callback: Callable[[Event], None]) -> None:
        if callback in self._all_subscribers:
            self._all_subscribers.remove(callback)

    def emit(self, event: Event) -> None:
        """Publish an event to all subscribers."""
        if not self._enabled:
            return

        for callback in self._subscribers.get(event.type, []) + self._all_subscribers:
            try:
                callback(event)
            except Exception as e:
                logger.debug(f"Subscriber failed on {event.type.value}: {e}")

    def disable(self) -> None:
        """Disable event emission."""
        self._enabled = False

    def enable(self) -> None:
        """Enable event emission."""
        self._enabled = True


# Global event bus instance
event_bus = EventBus()


def emit_run_start(name: str, algorithm: str, n_steps: int, h: float) -> None:
    """Emit run start event."""
    event_bus.emit(
        Event(
            type=EventType.RUN_START,
            data={"name": name, "algorithm": algorithm, "n_steps": n_steps, "h": h},
        )
    )


def emit_step_end(step: int, t: float, picard_iterations: int, converged: bool) -> None:
    """Emit end of a time step."""
    event_bus.emit(
        Event(
            type=EventType.STEP_END,
            data={
                "step": step,
                "t": t,
                "picard_iterations": picard_iterations,
                "converged": converged,
            },
        )
    )


def emit_picard_stagnation(t: float, iterations: int, increment: float) -> None:
    """Emit Picard stagnation event."""
    event_bus.emit(
        Event(
            type=EventType.PICARD_STAGNATION,
            data={"t": t, "iterations": iterations, "increment": increment},
        )
    )


def emit_subdomain_solved(index: int, region: str, t: float, correction_norm: float) -> None:
    """Emit local correction event."""
    event_bus.emit(
        Event(
            type=EventType.SUBDOMAIN_SOLVED,
            data={"index": index, "region": region, "t": t, "correction_norm": correction_norm},
        )
    )


def emit_row_done(label: str, values: Dict[str, float]) -> None:
    """Emit a finished table row (convergence level or k_F sample)."""
    event_bus.emit(Event(type=EventType.ROW_DONE, data={"label": label, "values": values}))


def emit_run_end(name: str, wall_s: float) -> None:
    """Emit run end event."""
    event_bus.emit(Event(type=EventType.RUN_END, data={"name": name, "wall_s": wall_s}))
