"""Line-based run configuration.

Grammar::

    # comment
    [section]
    key = value

Numbers accept fractions (``h = 1/16``), lists are comma separated and
booleans are ``true``/``false``. Omitted keys take their defaults; the
``[params]`` section only overrides the problem's own parameter set.
"""

import enum
import re
import typing
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from fracflow.assembly import ModelParams
from fracflow.errors import InvariantViolation, IoError, ParseError, TypeMismatch, UnknownKey
from fracflow.mesh import SubdomainLayout
from fracflow.mms import ConvergenceLevel
from fracflow.stepping import StepConfig
from fracflow.twogrid import Algorithm, TwoGridConfig
from fracflow.wellbore import DEFAULT_KF_VALUES, WellboreConfig, wellbore_params

SECTION_RE = re.compile(r"^\[\s*([A-Za-z_]\w*)\s*\]$")
KEY_RE = re.compile(r"^[A-Za-z_]\w*$")
TRUE_WORDS = {"true", "yes", "on", "1"}
FALSE_WORDS = {"false", "no", "off", "0"}


class ProblemKind(enum.Enum):
    """Scenarios a run can select."""

    MMS_EXAMPLE1 = "mms_example1"
    WELLBORE = "wellbore"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ProblemSection(_Section):
    kind: ProblemKind = ProblemKind.MMS_EXAMPLE1


class ParamsSection(_Section):
    """Explicit coefficient overrides; None keeps the problem's value."""

    phi_F: Optional[float] = Field(None, gt=0)
    phi_f: Optional[float] = Field(None, gt=0)
    phi_m: Optional[float] = Field(None, gt=0)
    C_F: Optional[float] = Field(None, gt=0)
    C_f: Optional[float] = Field(None, gt=0)
    C_m: Optional[float] = Field(None, gt=0)
    k_F: Optional[float] = Field(None, gt=0)
    k_f: Optional[float] = Field(None, gt=0)
    k_m: Optional[float] = Field(None, gt=0)
    sigma: Optional[float] = Field(None, gt=0)
    sigma_star: Optional[float] = Field(None, gt=0)
    mu_tilde: Optional[float] = Field(None, gt=0)
    nu: Optional[float] = Field(None, gt=0)
    rho: Optional[float] = Field(None, gt=0)
    alpha: Optional[float] = Field(None, gt=0)
    eta: Optional[float] = Field(None, gt=0)

    def overrides(self) -> Dict[str, float]:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class DiscretizationSection(_Section):
    H: float = Field(0.25, gt=0)
    h: float = Field(1.0 / 16.0, gt=0)
    dt: float = Field(1.0 / 16.0, gt=0)
    T: float = Field(1.0, gt=0)
    algorithm: Algorithm = Algorithm.LOCAL_PARALLEL
    convection: bool = True
    skew: bool = True
    picard_tol: float = Field(1e-10, gt=0)
    picard_max: int = Field(50, ge=1)
    strict_picard: bool = False
    pressure_pin: bool = False

    @model_validator(mode="after")
    def _check_nesting(self) -> "DiscretizationSection":
        if self.h > self.H:
            raise ValueError(f"h={self.h!r} must not exceed H={self.H!r}")
        return self


class LayoutSection(_Section):
    counts: Tuple[int, int] = (2, 2)
    overlap: float = Field(0.25, ge=0)
    conduit_counts: Optional[Tuple[int, int]] = None

    @model_validator(mode="after")
    def _check_counts(self) -> "LayoutSection":
        for c in (self.counts, self.conduit_counts or self.counts):
            if min(c) < 1:
                raise ValueError(f"Subdomain counts must be >= 1, got {c}")
        return self


class ConvergeSection(_Section):
    h: Tuple[float, ...] = (1.0 / 4.0, 1.0 / 16.0)
    H: Tuple[float, ...] = (1.0 / 2.0, 1.0 / 4.0)
    dt: Tuple[float, ...] = (1.0 / 16.0, 1.0 / 256.0)
    T: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _check_levels(self) -> "ConvergeSection":
        if not (len(self.h) == len(self.H) == len(self.dt)) or not self.h:
            raise ValueError("h, H and dt lists must be nonempty and of equal length")
        if min(self.h + self.H + self.dt) <= 0:
            raise ValueError("Level sizes must be positive")
        if any(b >= a for a, b in zip(self.h, self.h[1:])):
            raise ValueError(f"h must be strictly decreasing, got {self.h}")
        return self


class WellboreSection(_Section):
    conduit: Tuple[float, float, float, float] = (1.9, 2.4, 4.4, 3.6)
    outlet: Tuple[float, float] = (2.7, 3.3)
    interface_sides: Tuple[str, ...] = ("top", "bottom")
    p_m_in: float = 4.0e3
    p_f_in: float = 1.6e3
    p_F_in: float = 1.0e3
    H: float = Field(1.0 / 3.0, gt=0)
    h: float = Field(1.0 / 12.0, gt=0)
    dt: float = Field(0.05, gt=0)
    T: float = Field(10.0, gt=0)
    convection: bool = False
    k_F_values: Tuple[float, ...] = DEFAULT_KF_VALUES
    overlap: float = Field(1.0 / 3.0, ge=0)

    @model_validator(mode="after")
    def _check_values(self) -> "WellboreSection":
        k = self.k_F_values
        if not k or min(k) <= 0 or any(b <= a for a, b in zip(k, k[1:])):
            raise ValueError(f"k_F_values must be positive and strictly increasing, got {k}")
        unknown = set(self.interface_sides) - {"top", "bottom", "left"}
        if unknown:
            raise ValueError(f"interface_sides must be top, bottom or left, got {sorted(unknown)}")
        return self


class RunSection(_Section):
    output_dir: Path = Path("output")
    workers: int = Field(1, ge=1)
    seed: int = 0
    vtk: bool = True


class RunConfig(BaseModel):
    """Every section of a run configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    problem: ProblemSection = Field(default_factory=ProblemSection)
    params: ParamsSection = Field(default_factory=ParamsSection)
    discretization: DiscretizationSection = Field(default_factory=DiscretizationSection)
    layout: LayoutSection = Field(default_factory=LayoutSection)
    converge: ConvergeSection = Field(default_factory=ConvergeSection)
    wellbore: WellboreSection = Field(default_factory=WellboreSection)
    run: RunSection = Field(default_factory=RunSection)

    def model_params(self) -> ModelParams:
        """The problem's parameter set with the ``[params]`` overrides applied."""
        base = wellbore_params() if self.problem.kind is ProblemKind.WELLBORE else ModelParams()
        return base.model_copy(update=self.params.overrides())

    def step_config(self, workers: Optional[int] = None) -> StepConfig:
        d = self.discretization
        return StepConfig(
            dt=d.dt,
            picard_tol=d.picard_tol,
            picard_max=d.picard_max,
            skew=d.skew,
            convection=d.convection,
            strict_picard=d.strict_picard,
            pressure_pin=d.pressure_pin,
            workers=workers or self.run.workers,
        )

    def subdomain_layout(self) -> SubdomainLayout:
        return SubdomainLayout(
            counts=self.layout.counts,
            overlap=self.layout.overlap,
            conduit_counts=self.layout.conduit_counts,
        )

    def twogrid_config(self, workers: Optional[int] = None) -> TwoGridConfig:
        d = self.discretization
        return TwoGridConfig(
            H=d.H,
            h=d.h,
            layout=self.subdomain_layout(),
            step=self.step_config(workers),
            algorithm=d.algorithm,
        )

    def convergence_levels(self) -> List[ConvergenceLevel]:
        c = self.converge
        return [ConvergenceLevel(h=h, H=H, dt=dt) for h, H, dt in zip(c.h, c.H, c.dt)]

    def wellbore_config(self) -> WellboreConfig:
        w = self.wellbore
        return WellboreConfig(
            conduit=w.conduit,
            outlet=w.outlet,
            interface_sides=w.interface_sides,
            p_m_in=w.p_m_in,
            p_f_in=w.p_f_in,
            p_F_in=w.p_F_in,
            params=self.model_params(),
            H=w.H,
            h=w.h,
            dt=w.dt,
            T=w.T,
            convection=w.convection,
            k_F_values=w.k_F_values,
            layout=SubdomainLayout(counts=(2, 2), overlap=w.overlap, conduit_counts=(1, 1)),
        )


# Parsing


def _parse_number(text: str, kind: type, line: int) -> Any:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise TypeMismatch(f"Expected a number, got {text.strip()!r}", line) from None
    if kind is int:
        if value.denominator != 1:
            raise TypeMismatch(f"Expected an integer, got {text.strip()!r}", line)
        return int(value)
    return float(value)


def _parse_bool(text: str, line: int) -> bool:
    word = text.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise TypeMismatch(f"Expected true or false, got {text.strip()!r}", line)


def _convert(text: str, annotation: Any, line: int) -> Any:
    origin = typing.get_origin(annotation)
    args = typing.get_args(annotation)
    if origin is typing.Union:
        inner = [a for a in args if a is not type(None)]
        return _convert(text, inner[0], line)
    if origin in (tuple, Tuple):
        items = [item.strip() for item in text.split(",") if item.strip()]
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_convert(item, args[0], line) for item in items)
        if len(items) != len(args):
            raise TypeMismatch(f"Expected {len(args)} values, got {len(items)}", line)
        return tuple(_convert(item, a, line) for item, a in zip(items, args))
    if annotation is bool:
        return _parse_bool(text, line)
    if annotation in (int, float):
        return _parse_number(text, annotation, line)
    if isinstance(annotation, type) and issubclass(annotation, enum.Enum):
        word = text.strip().lower().replace("-", "_")
        for member in annotation:
            if member.value == word:
                return member
        choices = ", ".join(m.value for m in annotation)
        raise TypeMismatch(f"Expected one of {choices}, got {text.strip()!r}", line)
    if annotation is Path:
        return Path(text.strip())
    return text.strip()


def _section_models() -> Dict[str, Type[BaseModel]]:
    return {name: f.annotation for name, f in RunConfig.model_fields.items()}


def _read_lines(text: str) -> Dict[str, Dict[str, Tuple[str, int]]]:
    """Section -> key -> (raw value, line number)."""
    models = _section_models()
    raw: Dict[str, Dict[str, Tuple[str, int]]] = {}
    section: Optional[str] = None
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        match = SECTION_RE.match(content)
        if match:
            section = match.group(1)
            if section not in models:
                raise UnknownKey(f"Unknown section [{section}]", number)
            raw.setdefault(section, {})
            continue
        if "=" not in content:
            raise ParseError(f"Expected 'key = value' or '[section]', got {content!r}", number)
        if section is None:
            raise ParseError("Key outside of any [section]", number)
        key, value = (part.strip() for part in content.split("=", 1))
        if not KEY_RE.match(key):
            raise ParseError(f"Invalid key {key!r}", number)
        if key not in models[section].model_fields:
            raise UnknownKey(f"Unknown key {key!r} in [{section}]", number)
        if key in raw[section]:
            raise ParseError(f"Duplicate key {key!r} in [{section}]", number)
        if not value:
            raise ParseError(f"Missing value for {key!r}", number)
        raw[section][key] = (value, number)
    return raw


def _first_line(error: ValidationError, lines: Dict[str, int]) -> Optional[int]:
    for detail in error.errors():
        loc = detail.get("loc") or ()
        if loc and loc[0] in lines:
            return lines[loc[0]]
    return min(lines.values()) if lines else None


def parse_config(text: str) -> RunConfig:
    """Parse configuration text into a validated RunConfig.

    Raises:
        ParseError: Malformed line.
        UnknownKey: Unknown section or key.
        TypeMismatch: Value of the wrong type.
        InvariantViolation: Value violating a constraint.
    """
    models = _section_models()
    sections: Dict[str, BaseModel] = {}
    for name, entries in _read_lines(text).items():
        model = models[name]
        values = {
            key: _convert(value, model.model_fields[key].annotation, line)
            for key, (value, line) in entries.items()
        }
        lines = {key: line for key, (_, line) in entries.items()}
        try:
            sections[name] = model(**values)
        except ValidationError as e:
            message = e.errors()[0].get("msg", str(e))
            raise InvariantViolation(f"[{name}] {message}", _first_line(e, lines)) from None
    return RunConfig(**sections)


def load_config(path: Path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoError(f"Cannot read config {path}: {e.strerror or e}") from e
    return parse_config(text)


# Serialization


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, tuple):
        return ", ".join(_format(v) for v in value)
    return str(value)


def serialize_config(config: RunConfig) -> str:
    """Text that ``parse_config`` maps back to an equal RunConfig."""
    lines: List[str] = []
    for name in RunConfig.model_fields:
        section = getattr(config, name)
        lines.append(f"[{name}]")
        for key in type(section).model_fields:
            value = getattr(section, key)
            if value is not None:
                lines.append(f"{key} = {_format(value)}")
        lines.append("")
    return "\n".join(lines)


def defaults_text() -> str:
    """Default configuration, with the effective parameters as comments."""
    config = RunConfig()
    text = serialize_config(config)
    effective = "\n".join(
        f"# {key} = {_format(value)}" for key, value in config.model_params().model_dump().items()
    )
    return text.replace("[params]\n", f"[params]\n{effective}\n", 1)
