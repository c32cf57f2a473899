"""Manufactured solution on the unit porous square below a unit conduit square.

Forcing terms and interface loads are derived symbolically with sympy from
the exact fields, for any parameter set, and compiled to numpy callables.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

import numpy as np
import sympy as sp
from loguru import logger

from fracflow.assembly import ModelParams, SpaceTimeFunction
from fracflow.mesh import RectDomain, example1_domain
from fracflow.stepping import Problem

x, y, t = sp.symbols("x y t", real=True)

SIDE_NORMALS = {"top": (0.0, 1.0), "bottom": (0.0, -1.0), "right": (1.0, 0.0), "left": (-1.0, 0.0)}

GradientFunction = Callable[[np.ndarray, np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class ExactField:
    """Closed-form field with its spatial gradient.

    ``gradient`` returns ``(..., 2)`` for scalars and ``(..., 2, 2)`` with
    ``[i, j] = d u_i / d x_j`` for vectors.
    """

    value: SpaceTimeFunction
    gradient: GradientFunction
    vector: bool = False


def exact_expressions() -> Dict[str, sp.Expr]:
    """Symbolic exact fields; ``u_x`` and ``u_y`` are the velocity components."""
    s = 2 - sp.pi * sp.sin(sp.pi * x)
    return {
        "p_m": s * sp.sin(sp.pi * (3 * y**3 - 2 * y**2) / 2) * sp.cos(t),
        "p_f": s * sp.cos(sp.pi * (1 - y)) * sp.cos(t),
        "p_F": s * (1 - y - sp.cos(sp.pi * y)) * sp.cos(t),
        "u_x": (x**2 * (y - 1) ** 2 + y) * sp.cos(t),
        "u_y": (-sp.Rational(2, 3) * x * (y - 1) ** 3 + s) * sp.cos(t),
        "p": s * sp.sin(sp.pi * y / 2) * sp.cos(t),
    }


def _compile(expr: sp.Expr) -> SpaceTimeFunction:
    func = sp.lambdify((x, y, t), expr, "numpy")

    def evaluate(X: np.ndarray, Y: np.ndarray, T: float) -> np.ndarray:
        return np.broadcast_to(np.asarray(func(X, Y, T), dtype=np.float64), np.shape(X)).copy()

    return evaluate


def _compile_vector(exprs: Sequence[sp.Expr]) -> SpaceTimeFunction:
    parts = [_compile(e) for e in exprs]

    def evaluate(X: np.ndarray, Y: np.ndarray, T: float) -> Tuple[np.ndarray, ...]:
        return tuple(p(X, Y, T) for p in parts)

    return evaluate


def _compile_gradient(exprs: Sequence[Sequence[sp.Expr]]) -> GradientFunction:
    rows = [[_compile(e) for e in row] for row in exprs]

    def evaluate(X: np.ndarray, Y: np.ndarray, T: float) -> np.ndarray:
        out = np.stack([np.stack([c(X, Y, T) for c in row], axis=-1) for row in rows], axis=-2)
        return out[..., 0, :] if len(rows) == 1 else out

    return evaluate


def _grad(f: sp.Expr) -> sp.Matrix:
    return sp.Matrix([sp.diff(f, x), sp.diff(f, y)])


def _laplacian(f: sp.Expr) -> sp.Expr:
    return sp.diff(f, x, 2) + sp.diff(f, y, 2)


@dataclass(frozen=True, eq=False)
class ManufacturedCase:
    """Exact fields, forcings and interface data of the manufactured problem.

    Attributes:
        params: Model coefficients the forcings were derived for.
        domain: Porous and conduit rectangles.
        convection: Whether ``f_c`` contains the convective term.
        exact: Field name -> exact value and gradient.
        forcing: ``q_F``, ``q_f``, ``q_m`` and ``f_c`` evaluators.
        interface: ``gamma_F``, ``gamma_f``, ``gamma_m``, ``gamma_c`` and
            ``gamma_convective`` evaluators on the interface.
        expressions: Symbolic forms of everything above.
    """

    params: ModelParams
    domain: RectDomain
    convection: bool
    exact: Dict[str, ExactField]
    forcing: Dict[str, SpaceTimeFunction]
    interface: Dict[str, SpaceTimeFunction]
    expressions: Dict[str, object]

    def problem(self, t0: float = 0.0) -> Problem:
        """Stepping data: exact boundary and initial values plus derived loads."""
        e = self.exact
        return Problem(
            name="example1",
            params=self.params,
            q_F=self.forcing["q_F"],
            q_f=self.forcing["q_f"],
            q_m=self.forcing["q_m"],
            f_c=self.forcing["f_c"],
            p_F_bc=e["p_F"].value,
            p_f_bc=e["p_f"].value,
            p_m_bc=e["p_m"].value,
            u_c_bc=e["u_c"].value,
            p_F0=e["p_F"].value,
            p_f0=e["p_f"].value,
            p_m0=e["p_m"].value,
            u_c0=e["u_c"].value,
            p0=e["p"].value,
            gamma_F=self.interface["gamma_F"],
            gamma_f=self.interface["gamma_f"],
            gamma_m=self.interface["gamma_m"],
            gamma_c=self.interface["gamma_c"],
            gamma_convective=self.interface["gamma_convective"],
            pressure_reference=e["p"].value,
            t0=t0,
        )


def example1_case(
    params: ModelParams = ModelParams(),
    convection: bool = True,
    domain: RectDomain = example1_domain(),
) -> ManufacturedCase:
    """Build the manufactured case for ``params``.

    Args:
        params: Model coefficients.
        convection: Include ``(u . grad) u`` in the momentum forcing.
        domain: Rectangles; only the interface orientation is used.
    """
    p = params
    ex = exact_expressions()
    pF, pf, pm, pc = ex["p_F"], ex["p_f"], ex["p_m"], ex["p"]
    u = sp.Matrix([ex["u_x"], ex["u_y"]])
    mu = p.mu_tilde
    c_Ff = p.exchange_Ff
    c_fm = p.exchange_fm

    q_F = p.phi_F * p.C_F * sp.diff(pF, t) - p.k_F / mu * _laplacian(pF) + c_Ff * (pF - pf)
    q_f = (
        p.phi_f * p.C_f * sp.diff(pf, t)
        - p.k_f / mu * _laplacian(pf)
        + c_Ff * (pf - pF)
        + c_fm * (pf - pm)
    )
    q_m = p.phi_m * p.C_m * sp.diff(pm, t) - p.k_m / mu * _laplacian(pm) + c_fm * (pm - pf)

    G = u.jacobian([x, y])  # G[i, j] = d u_i / d x_j
    stress = p.nu * (G + G.T) - pc * sp.eye(2)
    div_stress = sp.Matrix([sp.diff(stress[i, 0], x) + sp.diff(stress[i, 1], y) for i in range(2)])
    f_c = sp.diff(u, t) - div_stress
    if convection:
        f_c = f_c + G * u

    n_p = sp.Matrix(SIDE_NORMALS[domain.interface_side()])
    n_c = -n_p
    tau = sp.Matrix([-n_c[1], n_c[0]])
    grad_pF = _grad(pF)
    gamma_F = p.k_F / mu * grad_pF.dot(n_p) - u.dot(n_c)
    gamma_f = p.k_f / mu * _grad(pf).dot(n_p)
    gamma_m = p.k_m / mu * _grad(pm).dot(n_p)
    slip = (u + p.k_F / mu * grad_pF).dot(tau)
    interface_traction = pF / p.rho * n_c + p.alpha * p.nu / sp.sqrt(p.k_F) * slip * tau
    gamma_c = interface_traction + stress * n_c
    gamma_convective = -sp.Rational(1, 2) * u.dot(n_c) * u

    scalar_exact = {name: ex[name] for name in ("p_F", "p_f", "p_m", "p")}
    exact = {
        name: ExactField(_compile(expr), _compile_gradient([[sp.diff(expr, x), sp.diff(expr, y)]]))
        for name, expr in scalar_exact.items()
    }
    exact["u_c"] = ExactField(
        _compile_vector(list(u)),
        _compile_gradient([[G[i, 0], G[i, 1]] for i in range(2)]),
        vector=True,
    )
    forcing = {
        "q_F": _compile(q_F),
        "q_f": _compile(q_f),
        "q_m": _compile(q_m),
        "f_c": _compile_vector(list(f_c)),
    }
    interface = {
        "gamma_F": _compile(gamma_F),
        "gamma_f": _compile(gamma_f),
        "gamma_m": _compile(gamma_m),
        "gamma_c": _compile_vector(list(gamma_c)),
        "gamma_convective": _compile_vector(list(gamma_convective)),
    }
    expressions = dict(ex, q_F=q_F, q_f=q_f, q_m=q_m, f_c=f_c, gamma_c=gamma_c)
    logger.debug(f"Derived manufactured forcings (convection={convection})")
    return ManufacturedCase(
        params=params,
        domain=domain,
        convection=convection,
        exact=exact,
        forcing=forcing,
        interface=interface,
        expressions=expressions,
    )


def forcing_residuals(
    case: ManufacturedCase, X: np.ndarray, Y: np.ndarray, T: np.ndarray, step: float = 1e-5
) -> Dict[str, np.ndarray]:
    """Strong-form residuals of the four equations by central finite differences.

    Uses only the compiled exact values, so it checks the derived forcings
    independently of the symbolic derivation.
    """
    p = case.params
    mu = p.mu_tilde
    e = case.exact

    def val(name: str, dx: float = 0.0, dy: float = 0.0, dt: float = 0.0) -> np.ndarray:
        out = e[name].value(X + dx, Y + dy, T + dt)
        return np.stack(out, axis=-1) if e[name].vector else out

    def d_t(name: str) -> np.ndarray:
        return (val(name, dt=step) - val(name, dt=-step)) / (2 * step)

    def d_x(name: str) -> np.ndarray:
        return (val(name, dx=step) - val(name, dx=-step)) / (2 * step)

    def d_y(name: str) -> np.ndarray:
        return (val(name, dy=step) - val(name, dy=-step)) / (2 * step)

    def d_xx(name: str) -> np.ndarray:
        return (val(name, dx=step) - 2 * val(name) + val(name, dx=-step)) / step**2

    def d_yy(name: str) -> np.ndarray:
        return (val(name, dy=step) - 2 * val(name) + val(name, dy=-step)) / step**2

    def d_xy(name: str) -> np.ndarray:
        s = step
        return (
            val(name, s, s) - val(name, s, -s) - val(name, -s, s) + val(name, -s, -s)
        ) / (4 * s * s)

    def lap(name: str) -> np.ndarray:
        return d_xx(name) + d_yy(name)

    pF, pf, pm = val("p_F"), val("p_f"), val("p_m")
    c_Ff, c_fm = p.exchange_Ff, p.exchange_fm
    res_F = p.phi_F * p.C_F * d_t("p_F") - p.k_F / mu * lap("p_F") + c_Ff * (pF - pf)
    res_f = (
        p.phi_f * p.C_f * d_t("p_f")
        - p.k_f / mu * lap("p_f")
        + c_Ff * (pf - pF)
        + c_fm * (pf - pm)
    )
    res_m = p.phi_m * p.C_m * d_t("p_m") - p.k_m / mu * lap("p_m") + c_fm * (pm - pf)

    # div(2 nu D(u)) = nu (lap u + grad div u)
    u = val("u_c")
    ux, uy = d_x("u_c"), d_y("u_c")
    div_x = d_xx("u_c")[..., 0] + d_xy("u_c")[..., 1]
    div_y = d_xy("u_c")[..., 0] + d_yy("u_c")[..., 1]
    viscous = p.nu * (lap("u_c") + np.stack([div_x, div_y], axis=-1))
    grad_p = np.stack([d_x("p"), d_y("p")], axis=-1)
    momentum = d_t("u_c") - viscous + grad_p
    if case.convection:
        momentum = momentum + u[..., :1] * ux + u[..., 1:] * uy

    f_c = np.stack(case.forcing["f_c"](X, Y, T), axis=-1)
    return {
        "q_F": res_F - case.forcing["q_F"](X, Y, T),
        "q_f": res_f - case.forcing["q_f"](X, Y, T),
        "q_m": res_m - case.forcing["q_m"](X, Y, T),
        "f_c": np.linalg.norm(momentum - f_c, axis=-1),
        "div": ux[..., 0] + uy[..., 1],
    }
