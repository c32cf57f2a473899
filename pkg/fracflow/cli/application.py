"""Object-oriented CLI application for fracflow."""

import sys
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

import click
import typer
from loguru import logger
from rich.console import Console
from rich.table import Table
from typing_extensions import Annotated

from fracflow.config.settings import settings
from fracflow.core import event_bus
from fracflow.core.console_subscriber import remove_console_subscriber, setup_console_subscriber
from fracflow.errors import FracflowError, InvariantViolation
from fracflow.io import (
    ProblemKind,
    RunConfig,
    defaults_text,
    load_config,
    picard_statistics,
    serialize_config,
    write_csv,
    write_mesh_vtk,
    write_summary,
    write_vtk,
)
from fracflow.mesh import (
    EdgeTag,
    Mesh,
    Rect,
    Region,
    SubdomainLayout,
    build_rect_mesh,
    example1_domain,
    partition_subdomains,
)
from fracflow.mms import (
    ConvergenceLevel,
    ErrorTable,
    Simulation,
    composite_errors,
    convergence_sweep,
    example1_case,
    simulate,
    state_errors,
)
from fracflow.twogrid import Algorithm, compare_states, speedup
from fracflow.utils import ensure_dir, format_seconds, safe_filename
from fracflow.wellbore import RateCurve, WellboreRun, build_wellbore_problem, run_wellbore, sweep_kF

MIN_SPEEDUP = 1.2


class AlgorithmChoice(str, Enum):
    """Algorithm names accepted on the command line."""

    TRADITIONAL = "traditional"
    LOCAL_PARALLEL = "local-parallel"

    @property
    def algorithm(self) -> Algorithm:
        return Algorithm(self.value.replace("-", "_"))


class FracflowCLI:
    """Loads a run configuration and drives the solvers for one command."""

    def __init__(
        self,
        config_path: Optional[Path] = None,
        verbose: bool = False,
        workers: Optional[int] = None,
        output_dir: Optional[Path] = None,
        steps: bool = False,
    ) -> None:
        """Initialize CLI application.

        Args:
            config_path: Run configuration file; defaults when None.
            verbose: Enable verbose logging and progress output.
            workers: Worker threads; overrides the config and FRACFLOW_WORKERS.
            output_dir: Output directory; overrides the config and FRACFLOW_OUTPUT_DIR.
            steps: Also print per-step and per-subdomain progress.
        """
        self._verbose = verbose
        self._steps = steps
        self._console = Console()
        self._configure_logging()
        self.config = load_config(config_path) if config_path else RunConfig()
        self.config_text = serialize_config(self.config)
        explicit = self.config.run.model_fields_set
        self.workers = workers or (
            self.config.run.workers if "workers" in explicit else settings.WORKERS
        )
        self.output_dir = Path(
            output_dir
            or (self.config.run.output_dir if "output_dir" in explicit else settings.OUTPUT_DIR)
        )

    def _configure_logging(self) -> None:
        """Configure logging based on verbose setting."""
        logger.remove()
        logger.add(sys.stderr, level=settings.LOG_LEVEL if self._verbose else "WARNING")
        if settings.LOG_FILE:
            logger.add(settings.LOG_FILE, level="DEBUG", rotation="10 MB")
        if self._verbose:
            setup_console_subscriber(event_bus, steps=self._steps)

    def close(self) -> None:
        if self._verbose:
            remove_console_subscriber(event_bus)

    @property
    def is_wellbore(self) -> bool:
        return self.config.problem.kind is ProblemKind.WELLBORE

    def _summary(self, command: str, results: Dict) -> Path:
        return write_summary(self.output_dir, command, self.config_text, results)

    # Manufactured case

    def _mms_level(self, algorithm: Algorithm) -> ConvergenceLevel:
        d = self.config.discretization
        H = d.h if algorithm is Algorithm.TRADITIONAL else d.H
        return ConvergenceLevel(h=d.h, H=H, dt=d.dt)

    def _simulate_mms(self, algorithm: Algorithm) -> Simulation:
        cfg = self.config
        case = example1_case(cfg.model_params(), convection=cfg.discretization.convection)
        return simulate(
            self._mms_level(algorithm),
            case,
            algorithm,
            cfg.step_config(self.workers),
            cfg.subdomain_layout(),
            cfg.discretization.T,
        )

    def _mms_errors(self, sim: Simulation) -> Dict[str, float]:
        cfg = self.config
        case = example1_case(cfg.model_params(), convection=cfg.discretization.convection)
        if sim.composite is not None:
            return composite_errors(sim.composite, case, sim.composite.t)
        return state_errors(sim.state, case, sim.state.t)

    def converge(self, algorithm: Optional[Algorithm] = None) -> ErrorTable:
        """Convergence table of the manufactured case, written as CSV."""
        if self.is_wellbore:
            raise InvariantViolation("converge needs [problem] kind = mms_example1")
        cfg = self.config
        algorithm = algorithm or cfg.discretization.algorithm
        table = convergence_sweep(
            cfg.convergence_levels(),
            algorithm,
            cfg.model_params(),
            step=cfg.step_config(self.workers),
            layout=cfg.subdomain_layout(),
            T=cfg.converge.T,
        )
        path = write_csv(table, self.output_dir / f"convergence_{algorithm.value}.csv")
        self._print_error_table(table)
        self._summary(
            "converge",
            {
                "algorithm": algorithm.value,
                "csv": path,
                "rows": [
                    {
                        "h": row.h,
                        "H": row.H,
                        "dt": row.dt,
                        "errors": row.errors,
                        "coarse_errors": row.coarse_errors,
                        "cpu_s": row.cpu_s,
                    }
                    for row in table.rows
                ],
            },
        )
        return table

    def _print_error_table(self, table: ErrorTable) -> None:
        columns = ("uc_h1", "pF_h1", "pf_l2", "pm_l2")
        view = Table(title=f"Convergence ({table.algorithm.value})")
        for name in ("h", "H", "dt") + columns + ("cpu_s",):
            view.add_column(name, justify="right")
        rates = {c: table.rates(c) for c in columns}
        for i, row in enumerate(table.rows):
            cells = [f"{row.h:.4g}", f"{row.H:.4g}", f"{row.dt:.4g}"]
            for c in columns:
                r = rates[c][i]
                cells.append(f"{row.errors[c]:.4e}" + (f" ({r:.2f})" if r is not None else ""))
            cells.append(format_seconds(row.cpu_s))
            view.add_row(*cells)
        self._console.print(view)

    # Single runs

    def _run_wellbore(self, algorithm: Algorithm) -> WellboreRun:
        return run_wellbore(self.config.wellbore_config(), None, algorithm, self.workers)

    def run(self) -> Dict:
        """One simulation of the configured problem with VTK output of the final fields."""
        algorithm = self.config.discretization.algorithm
        ensure_dir(self.output_dir)
        if self.is_wellbore:
            result = self._run_wellbore(algorithm)
            fields = result.composite or result.state
            results = {"Q": result.Q, "wall_s": result.wall_s, "k_F": result.k_F}
            history = result.history
        else:
            sim = self._simulate_mms(algorithm)
            fields = sim.composite or sim.state
            results = {"errors": self._mms_errors(sim), "wall_s": sim.wall_s}
            history = sim.history
        if self.config.run.vtk:
            results["vtk"] = write_vtk(fields, self.output_dir / f"{algorithm.value}.vtk")
        results["algorithm"] = algorithm.value
        results["picard"] = picard_statistics(history)
        self._summary("run", results)
        self._print_mapping("Run", results)
        return results

    def compare(self) -> Dict:
        """Run both algorithms; report speedup and per-field relative differences."""
        if self.is_wellbore:
            runs = {a: self._run_wellbore(a) for a in Algorithm}
            states = {a: r.state for a, r in runs.items()}
            walls = {a: r.wall_s for a, r in runs.items()}
            extra = {f"Q_{a.value}": r.Q for a, r in runs.items()}
        else:
            sims = {a: self._simulate_mms(a) for a in Algorithm}
            states = {a: s.state for a, s in sims.items()}
            walls = {a: s.wall_s for a, s in sims.items()}
            extra = {f"errors_{a.value}": self._mms_errors(s) for a, s in sims.items()}
        diffs = compare_states(states[Algorithm.TRADITIONAL], states[Algorithm.LOCAL_PARALLEL])
        results = {
            "wall_traditional_s": walls[Algorithm.TRADITIONAL],
            "wall_local_parallel_s": walls[Algorithm.LOCAL_PARALLEL],
            "speedup": speedup(walls[Algorithm.TRADITIONAL], walls[Algorithm.LOCAL_PARALLEL]),
            "max_abs_difference": max(d.max_abs for d in diffs.values()),
            "relative_l2": {name: d.relative_l2 for name, d in diffs.items()},
            **extra,
        }
        if results["speedup"] < MIN_SPEEDUP:
            logger.warning(
                f"Local parallel speedup {results['speedup']:.2f} is below {MIN_SPEEDUP:g}"
            )
        self._summary("compare", results)
        view = Table(title="Traditional vs local parallel")
        view.add_column("field")
        view.add_column("max |diff|", justify="right")
        view.add_column("relative l2", justify="right")
        for name, d in diffs.items():
            view.add_row(name, f"{d.max_abs:.3e}", f"{d.relative_l2:.3e}")
        self._console.print(view)
        self._console.print(
            f"[bold]Speedup:[/] {results['speedup']:.3f} "
            f"({format_seconds(results['wall_traditional_s'])} vs "
            f"{format_seconds(results['wall_local_parallel_s'])})"
        )
        return results

    def wellbore(self, algorithms: List[Algorithm]) -> Dict[Algorithm, RateCurve]:
        """Production rate against k_F for each algorithm, written as CSV."""
        wb = self.config.wellbore_config()
        write_fields = self.config.run.vtk

        def export(run: WellboreRun) -> None:
            if write_fields:
                name = safe_filename(f"wellbore_{run.algorithm.value}_kF_{run.k_F:g}.vtk")
                write_vtk(run.composite or run.state, self.output_dir / name)

        curves = {}
        for algorithm in algorithms:
            curve = sweep_kF(wb, None, algorithm, workers=self.workers, on_run=export)
            write_csv(curve, self.output_dir / f"rate_{algorithm.value}.csv")
            curves[algorithm] = curve

        view = Table(title="Production rate")
        view.add_column("k_F", justify="right")
        for algorithm in curves:
            view.add_column(f"Q ({algorithm.value})", justify="right")
        for i, k in enumerate(wb.k_F_values):
            view.add_row(f"{k:g}", *(f"{c.Q[i]:.6g}" for c in curves.values()))
        self._console.print(view)

        results: Dict = {
            a.value: {"k_F": c.k_F, "Q": c.Q, "increasing": c.is_increasing()}
            for a, c in curves.items()
        }
        if len(curves) == 2:
            trad, lp = (curves[a].Q for a in (Algorithm.TRADITIONAL, Algorithm.LOCAL_PARALLEL))
            results["max_relative_Q_difference"] = max(
                abs(a - b) / abs(a) if a else abs(b) for a, b in zip(trad, lp)
            )
        self._summary("wellbore", results)
        return curves

    # Mesh inspection

    def _mesh_and_layout(self) -> tuple[Mesh, SubdomainLayout]:
        if self.is_wellbore:
            wb = self.config.wellbore_config()
            return build_wellbore_problem(wb, wb.h).mesh, wb.layout
        mesh = build_rect_mesh(example1_domain(), self.config.discretization.h)
        return mesh, self.config.subdomain_layout()

    def mesh_info(self, vtk_path: Optional[Path] = None) -> Mesh:
        """Print vertex, cell and edge-tag counts and the subdomain rectangles."""
        mesh, layout = self._mesh_and_layout()
        decomposition = partition_subdomains(mesh, layout)

        counts = Table(title=f"Mesh h={mesh.h:g}")
        counts.add_column("entity")
        counts.add_column("count", justify="right")
        counts.add_row("vertices", str(mesh.n_vertices))
        for region in Region:
            counts.add_row(f"{region.name.lower()} cells", str(mesh.region_cells(region).size))
        for tag in EdgeTag:
            counts.add_row(f"{tag.name} edges", str(mesh.edges_with_tag(tag).size))
        self._console.print(counts)

        subs = Table(title="Subdomains")
        for name in ("index", "region", "disjoint", "extended", "cells", "owned"):
            subs.add_column(name)
        for s in decomposition.subdomains:
            subs.add_row(
                str(s.index),
                s.region.name.lower(),
                _rect(s.disjoint),
                _rect(s.extended),
                str(s.cells.size),
                str(s.owned.size),
            )
        self._console.print(subs)
        if vtk_path is not None:
            write_mesh_vtk(mesh, vtk_path, owner=decomposition.owner)
            self._console.print(f"[green]Mesh written to {vtk_path}[/]")
        return mesh

    def _print_mapping(self, title: str, values: Dict) -> None:
        self._console.print(f"[bold blue]{title}:[/]")
        for key, value in values.items():
            if isinstance(value, dict):
                value = ", ".join(f"{k}={v:.4g}" for k, v in value.items())
            elif isinstance(value, float):
                value = f"{value:.6g}"
            self._console.print(f"  - {key}: {value}")


def _rect(rect: Rect) -> str:
    return "[" + ", ".join(f"{v:.4g}" for v in rect) + "]"


# Typer app instance
app = typer.Typer(
    name="fracflow",
    help="Triple-porosity / free-flow solver with two-grid local parallel stepping",
    no_args_is_help=True,
)
_console = Console()
_err_console = Console(stderr=True)

ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", exists=True, dir_okay=False, help="Run configuration file"),
]
WorkersOption = Annotated[
    Optional[int], typer.Option("--workers", "-w", min=1, help="Worker threads")
]
OutputOption = Annotated[Optional[Path], typer.Option("--output", "-o", help="Output directory")]
VerboseOption = Annotated[bool, typer.Option("--verbose", "-v", help="Show detailed logs")]
StepsOption = Annotated[bool, typer.Option("--steps", help="Print every time step")]


def _print_defaults(value: bool) -> None:
    if value:
        _console.print(defaults_text(), markup=False, highlight=False)
        raise typer.Exit()


@app.callback()
def _root(
    print_defaults: Annotated[
        bool,
        typer.Option(
            "--print-defaults",
            is_eager=True,
            callback=_print_defaults,
            help="Print the default configuration and exit",
        ),
    ] = False,
) -> None:
    """Triple-porosity / free-flow solver with two-grid local parallel stepping."""


def _with_cli(
    config: Optional[Path],
    verbose: bool,
    workers: Optional[int],
    output: Optional[Path],
    steps: bool = False,
) -> FracflowCLI:
    return FracflowCLI(config, verbose=verbose, workers=workers, output_dir=output, steps=steps)


@app.command()
def converge(
    config: ConfigOption = None,
    algorithm: Annotated[
        Optional[AlgorithmChoice],
        typer.Option("--algorithm", "-a", help="Override the configured algorithm"),
    ] = None,
    workers: WorkersOption = None,
    output: OutputOption = None,
    verbose: VerboseOption = False,
):
    """Convergence rates of the manufactured solution."""
    cli = _with_cli(config, verbose, workers, output)
    try:
        cli.converge(algorithm.algorithm if algorithm else None)
    finally:
        cli.close()


@app.command()
def run(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    output: OutputOption = None,
    verbose: VerboseOption = False,
    steps: StepsOption = False,
):
    """Run the configured problem once and export the final fields."""
    cli = _with_cli(config, verbose, workers, output, steps)
    try:
        cli.run()
    finally:
        cli.close()


@app.command()
def compare(
    config: ConfigOption = None,
    workers: WorkersOption = None,
    output: OutputOption = None,
    verbose: VerboseOption = False,
):
    """Run both algorithms and report field differences and wall times."""
    cli = _with_cli(config, verbose, workers, output)
    try:
        cli.compare()
    finally:
        cli.close()


@app.command()
def wellbore(
    config: ConfigOption = None,
    algorithm: Annotated[
        Optional[AlgorithmChoice],
        typer.Option("--algorithm", "-a", help="Algorithm of the sweep"),
    ] = None,
    both: Annotated[bool, typer.Option("--both", help="Sweep with both algorithms")] = False,
    workers: WorkersOption = None,
    output: OutputOption = None,
    verbose: VerboseOption = False,
):
    """Production rate of the fractured wellbore over the k_F values."""
    cli = _with_cli(config, verbose, workers, output)
    if both:
        algorithms = list(Algorithm)
    elif algorithm is not None:
        algorithms = [algorithm.algorithm]
    else:
        algorithms = [cli.config.discretization.algorithm]
    try:
        cli.wellbore(algorithms)
    finally:
        cli.close()


@app.command("mesh-info")
def mesh_info(
    config: ConfigOption = None,
    vtk: Annotated[Optional[Path], typer.Option("--vtk", help="Export the mesh to VTK")] = None,
    verbose: VerboseOption = False,
):
    """Mesh statistics and subdomain rectangles."""
    cli = _with_cli(config, verbose, None, None)
    try:
        cli.mesh_info(vtk)
    finally:
        cli.close()


@app.command()
def defaults():
    """Print the default configuration."""
    _console.print(defaults_text(), markup=False, highlight=False)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and map failures to exit codes (2 usage, 1 runtime)."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="fracflow", standalone_mode=False)
    except click.UsageError as e:
        _err_console.print(f"[red]Usage error:[/] {e.format_message()}", highlight=False)
        return 2
    except (FracflowError, ValueError) as e:
        _err_console.print(f"[red]Error:[/] {e}", highlight=False)
        return 1
    except click.ClickException as e:
        _err_console.print(f"[red]Error:[/] {e.format_message()}", highlight=False)
        return e.exit_code
    except click.Abort:
        return 1
    return result if isinstance(result, int) else 0


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
