"""Console subscriber that prints solver progress."""

from rich.console import Console

from fracflow.core.events import Event, EventBus, EventType

console = Console(stderr=True)


def format_values(values: dict) -> str:
    return ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in values.items())


def on_run_start(event: Event) -> None:
    data = event.data
    console.print(
        f"[cyan]Run:[/] [yellow]{data['name']}[/] {data['algorithm']} "
        f"({data['n_steps']} steps, h={data['h']:.4g})"
    )


def on_step_end(event: Event) -> None:
    data = event.data
    status = "" if data["converged"] else " [red](not converged)[/]"
    console.print(
        f"[cyan]Step {data['step']}:[/] t={data['t']:.4g}, "
        f"picard {data['picard_iterations']}{status}"
    )


def on_picard_stagnation(event: Event) -> None:
    data = event.data
    console.print(
        f"[red]Picard:[/] no convergence at t={data['t']:.4g} after {data['iterations']} "
        f"iterations (increment {data['increment']:.3e})"
    )


def on_subdomain_solved(event: Event) -> None:
    data = event.data
    console.print(
        f"[cyan]Subdomain:[/] [green]{data['region']} {data['index']}[/] "
        f"|e|={data['correction_norm']:.3e}"
    )


def on_row_done(event: Event) -> None:
    data = event.data
    console.print(f"[cyan]Row:[/] [yellow]{data['label']}[/] {format_values(data['values'])}")


def on_run_end(event: Event) -> None:
    data = event.data
    console.print(f"[cyan]Run:[/] [yellow]{data['name']}[/] done in {data['wall_s']:.2f}s")


HANDLERS = {
    EventType.RUN_START: on_run_start,
    EventType.STEP_END: on_step_end,
    EventType.PICARD_STAGNATION: on_picard_stagnation,
    EventType.SUBDOMAIN_SOLVED: on_subdomain_solved,
    EventType.ROW_DONE: on_row_done,
    EventType.RUN_END: on_run_end,
}


def setup_console_subscriber(bus: EventBus, steps: bool = False) -> None:
    """Register console subscribers; per-step and per-subdomain lines only with ``steps``."""
    for event_type, handler in HANDLERS.items():
        if not steps and event_type in (EventType.STEP_END, EventType.SUBDOMAIN_SOLVED):
            continue
        bus.subscribe(event_type, handler)


def remove_console_subscriber(bus: EventBus) -> None:
    """Remove console subscribers."""
    for event_type, handler in HANDLERS.items():
        bus.unsubscribe(event_type, handler)
