"""Gait-cycle pipeline: interpolation, frame changes, torque regression, knee ODE."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import data
from .groodsuntay import (
    EulerParams,
    JointAngles,
    composite_rotation,
    femoral_rotation_vector,
    solve_angles,
    to_tibial_frame,
)
from .vectorfield import Monomial, PolyVectorField, Polynomial, eval_field

AXES = ("x", "y", "z")
TORQUE_ROWS = ("Mx'", "My'", "Mz'")


@dataclass(frozen=True)
class GaitSeries:
    times: tuple[float, ...]
    values: tuple[float, ...]
    channel: str = ""
    unit: str = ""

    def __post_init__(self):
        t = tuple(float(v) for v in self.times)
        y = tuple(float(v) for v in self.values)
        if len(t) != 5 or len(y) != 5:
            raise ValueError(f"a gait series has exactly 5 nodes, got {len(t)} times and {len(y)} values")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError("gait node times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", y)


class LagrangeInterpolant:
    """Interpolating polynomial through ``(nodes, values)`` in barycentric form."""

    def __init__(self, nodes, values):
        x = np.asarray(nodes, dtype=float)
        y = np.asarray(values, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or x.size < 1:
            raise ValueError("nodes and values must be 1-D arrays of equal length")
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        if np.any(diff == 0.0):
            raise ValueError("interpolation nodes must be distinct")
        self.nodes = x
        self.values = y
        self.weights = 1.0 / diff.prod(axis=1)
        # closer than this to a node, t is treated as the node (avoids w/d overflow)
        self._snap = 4 * np.finfo(float).eps * max(1.0, float(np.abs(x).max()))

    @property
    def degree_bound(self) -> int:
        return self.nodes.size - 1

    def differentiation_matrix(self) -> np.ndarray:
        x, w = self.nodes, self.weights
        with np.errstate(divide="ignore"):
            D = (w[None, :] / w[:, None]) / (x[:, None] - x[None, :])
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -D.sum(axis=1))
        return D

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape)
        for idx, tv in np.ndenumerate(t):
            out[idx] = self._value(tv)
        return out if out.ndim else float(out)

    def _value(self, t: float) -> float:
        d = t - self.nodes
        hit = np.flatnonzero(np.abs(d) <= self._snap)
        if hit.size:
            return float(self.values[hit[0]])
        c = self.weights / d
        return float(c @ self.values / c.sum())

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape)
        D = None
        for idx, tv in np.ndenumerate(t):
            d = tv - self.nodes
            hit = np.flatnonzero(np.abs(d) <= self._snap)
            if hit.size:
                if D is None:
                    D = self.differentiation_matrix()
                out[idx] = D[hit[0]] @ self.values
            else:
                c = self.weights / d
                p = c @ self.values / c.sum()
                out[idx] = (c / d) @ (p - self.values) / c.sum()
        return out if out.ndim else float(out)


def lagrange_interpolant(series: GaitSeries) -> LagrangeInterpolant:
    return LagrangeInterpolant(series.times, series.values)


def node_derivatives(series: GaitSeries) -> np.ndarray:
    interp = lagrange_interpolant(series)
    return interp.differentiation_matrix() @ interp.values


@dataclass(frozen=True)
class RegressionModel:
    """Affine model ``M = coeffs @ omega + intercepts``."""

    coeffs: np.ndarray
    intercepts: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        d = np.array(self.intercepts, dtype=float)
        if c.shape != (3, 3) or d.shape != (3,):
            raise ValueError("expected a 3x3 coefficient matrix and 3 intercepts")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(d))):
            raise ValueError("regression parameters must be finite")
        c.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "intercepts", d)

    def __call__(self, omega) -> np.ndarray:
        return np.asarray(omega, dtype=float) @ self.coeffs.T + self.intercepts

    @classmethod
    def published(cls) -> RegressionModel:
        return cls(data.REGRESSION_COEFFS, data.REGRESSION_INTERCEPTS)


def fit_torque_model(omega_rows, torque_rows) -> RegressionModel:
    """Ordinary least squares with intercept, one fit per torque component."""
    X = np.asarray(omega_rows, dtype=float)
    Y = np.asarray(torque_rows, dtype=float)
    if X.ndim != 2 or X.shape[1] != 3 or Y.shape != X.shape:
        raise ValueError(f"expected matching (m, 3) arrays, got {X.shape} and {Y.shape}")
    design = np.column_stack([X, np.ones(len(X))])
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise np.linalg.LinAlgError("design matrix is rank deficient")
    beta, *_ = np.linalg.lstsq(design, Y, rcond=None)
    return RegressionModel(beta[:3].T, beta[3])


def assemble_knee_ode(p: EulerParams, m: RegressionModel) -> PolyVectorField:
    """Solve the Euler rigid-body equations for the angular accelerations.

    ``I_xx dw_x = M_x(w) - (I_zz - I_yy) w_y w_z`` and cyclic analogues, with
    the torque ``M`` given by the affine regression model.
    """
    inertia = (p.ixx, p.iyy, p.izz)
    comps = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        gyro = (inertia[k] - inertia[j]) / inertia[i]
        exps = [0, 0, 0]
        exps[j] = exps[k] = 1
        terms = [Monomial(-gyro, exps)]
        for v in range(3):
            e = [0, 0, 0]
            e[v] = 1
            terms.append(Monomial(m.coeffs[i, v] / inertia[i], e))
        terms.append(Monomial(m.intercepts[i] / inertia[i], (0, 0, 0)))
        comps.append(Polynomial(3, terms))
    return PolyVectorField(tuple(comps), ("wx", "wy", "wz"))


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if len(self.times) < 2 or len(self.times) != len(self.states):
            raise ValueError("trajectory needs at least 2 samples matching the grid")


def integrate(field: PolyVectorField | Callable, x0, dt: float, steps: int, t0: float = 0.0) -> Trajectory:
    """Classical fixed-step fourth-order Runge-Kutta."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    f = (lambda x: eval_field(field, x)) if isinstance(field, PolyVectorField) else field
    x = np.asarray(x0, dtype=float).copy()
    out = np.empty((steps + 1, x.size))
    out[0] = x
    for n in range(steps):
        k1 = f(x)
        k2 = f(x + 0.5 * dt * k1)
        k3 = f(x + 0.5 * dt * k2)
        k4 = f(x + dt * k3)
        x = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise FloatingPointError(f"non-finite state at step {n + 1}")
        out[n + 1] = x
    return Trajectory(t0 + dt * np.arange(steps + 1), out)


# --- end-to-end pipeline -----------------------------------------------------

@dataclass
class Tolerances:
    """Acceptance tolerances; ``regression`` and ``ode`` are relative, the rest absolute."""

    angles: float = 1e-3
    omega_femoral: float = 1e-3
    omega_tibial: float = 2e-3
    torque_tibial: float = 2e-2
    regression: float = 1e-2
    ode: float = 5e-4


@dataclass
class PipelineConfig:
    izz: float = data.INERTIA[2]
    tolerances: Tolerances = field(default_factory=Tolerances)
    # Fit the torque model on the published tibial tables ("published") or
    # on the tables recomputed here ("computed").
    regression_source: str = "published"
    # Replace the per-node rotation matrices, e.g. identities for a sanity run.
    rotations: Sequence[np.ndarray] | None = None
    angle_guess: JointAngles = field(default_factory=lambda: JointAngles(-0.3, 0.5, 0.3))


@dataclass
class Check:
    name: str
    deviation: float
    tolerance: float
    relative: bool = False

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class Table:
    name: str
    unit: str
    columns: tuple[str, ...]
    values: np.ndarray
    reference: np.ndarray | None = None
    rows: tuple[str, ...] | None = None

    @property
    def deviation(self) -> np.ndarray | None:
        if self.reference is None:
            return None
        return self.values - self.reference


@dataclass
class KneeReport:
    config: PipelineConfig
    tables: dict[str, Table]
    regression: RegressionModel
    regression_computed: RegressionModel
    ode: PolyVectorField
    checks: list[Check]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _max_rel(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b) / np.abs(b)))


def published_series() -> dict[str, GaitSeries]:
    return {
        f"theta_{ax}": GaitSeries(data.TIMES, data.THETA[:, i], f"theta_{ax}", "rad")
        for i, ax in enumerate(AXES)
    }


def ode_coefficient_table(ode: PolyVectorField) -> tuple[np.ndarray, np.ndarray]:
    keys = list(data.ODE_COEFFS)
    got = np.array([ode.components[c].coefficient(e) for c, e in keys])
    ref = np.array([data.ODE_COEFFS[k] for k in keys])
    return got, ref


def run_knee_pipeline(config: PipelineConfig | None = None) -> KneeReport:
    """Recompute every intermediate table of the knee case study."""
    cfg = config or PipelineConfig()
    tol = cfg.tolerances
    tables: dict[str, Table] = {}
    checks: list[Check] = []
    notes: list[str] = []

    # 1. Grood-Suntay angles at each node.
    if cfg.rotations is None:
        angles = np.array([solve_angles(th, cfg.angle_guess).as_array() for th in data.THETA])
        rotations = [composite_rotation(JointAngles(*a)) for a in angles]
        tables["grood_suntay_angles"] = Table(
            "grood_suntay_angles", "rad", ("alpha", "beta", "gamma"), angles, data.ANGLES
        )
        checks.append(Check("angles", _max_abs(angles, data.ANGLES), tol.angles))
        theta_back = np.array([femoral_rotation_vector(JointAngles(*a)) for a in angles])
        notes.append(f"angle-system residual max |theta(angles) - theta| = {_max_abs(theta_back, data.THETA):.3e}")
    else:
        rotations = [np.asarray(R, dtype=float) for R in cfg.rotations]
        if len(rotations) != len(data.TIMES):
            raise ValueError(f"need {len(data.TIMES)} rotation matrices, got {len(rotations)}")
        notes.append("rotation matrices supplied by the caller; angle table skipped")

    # 2. Femoral angular velocity from the interpolated rotation vector.
    series = published_series()
    omega = np.column_stack([node_derivatives(series[f"theta_{ax}"]) for ax in AXES])
    tables["omega_femoral"] = Table("omega_femoral", "rad/s", AXES, omega, data.OMEGA_FEMORAL)
    checks.append(Check("omega_femoral", _max_abs(omega, data.OMEGA_FEMORAL), tol.omega_femoral))

    # 3. Rotate torque and angular velocity into the tibial axes.
    omega_t = np.array([to_tibial_frame(w, R) for w, R in zip(omega, rotations)])
    torque_t = np.array([to_tibial_frame(m, R) for m, R in zip(data.TORQUE_FEMORAL, rotations)])
    primed = ("x'", "y'", "z'")
    tables["omega_tibial"] = Table("omega_tibial", "rad/s", primed, omega_t, data.OMEGA_TIBIAL)
    tables["torque_tibial"] = Table("torque_tibial", "N*m", primed, torque_t, data.TORQUE_TIBIAL)
    checks.append(Check("omega_tibial", _max_abs(omega_t, data.OMEGA_TIBIAL), tol.omega_tibial))
    checks.append(Check("torque_tibial", _max_abs(torque_t, data.TORQUE_TIBIAL), tol.torque_tibial))

    # 4. Torque regression.
    reg_published = fit_torque_model(data.OMEGA_TIBIAL, data.TORQUE_TIBIAL)
    reg_computed = fit_torque_model(omega_t, torque_t)
    if cfg.regression_source == "published":
        reg = reg_published
    elif cfg.regression_source == "computed":
        reg = reg_computed
    else:
        raise ValueError(f"unknown regression source {cfg.regression_source!r}")
    ref_params = np.column_stack([data.REGRESSION_COEFFS, data.REGRESSION_INTERCEPTS])
    params = np.column_stack([reg.coeffs, reg.intercepts])
    tables["regression"] = Table(
        "regression", "N*m per rad/s; N*m", ("wx'", "wy'", "wz'", "intercept"), params, ref_params,
        rows=TORQUE_ROWS,
    )
    tables["regression_computed"] = Table(
        "regression_computed", "N*m per rad/s; N*m", ("wx'", "wy'", "wz'", "intercept"),
        np.column_stack([reg_computed.coeffs, reg_computed.intercepts]), ref_params,
        rows=TORQUE_ROWS,
    )
    checks.append(Check("regression", _max_rel(params, ref_params), tol.regression, relative=True))

    # 5. Knee ODE from the Euler equations.
    inertia = EulerParams(data.INERTIA[0], data.INERTIA[1], cfg.izz)
    ode = assemble_knee_ode(inertia, reg)
    got, ref = ode_coefficient_table(ode)
    labels = tuple(f"X{c + 1}[{''.join(map(str, e))}]" for c, e in data.ODE_COEFFS)
    tables["ode_coefficients"] = Table("ode_coefficients", "1/s; rad/s^2", labels, got[None, :], ref[None, :])
    checks.append(Check("ode", _max_rel(got, ref), tol.ode, relative=True))
    if not math.isclose(cfg.izz, data.INERTIA[2]):
        notes.append(f"I_zz = {cfg.izz} differs from the 0.0053 used for the printed ODE coefficients")
    notes.append(
        f"I_zz anthropometric estimate is {data.IZZ_ANTHROPOMETRIC}; printed ODE coefficients require 0.0053"
    )
    return KneeReport(cfg, tables, reg, reg_computed, ode, checks, notes)
