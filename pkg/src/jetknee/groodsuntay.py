"""Grood-Suntay joint coordinate kinematics for the right knee.

Angles are in radians: ``alpha`` flexion-extension about the femoral x axis,
``beta`` varus-valgus about the floating axis (adduction-abduction is
``beta - pi/2``), ``gamma`` internal-external rotation about the tibial z' axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class JointAngles:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma])


@dataclass(frozen=True)
class EulerParams:
    """Principal moments of inertia of the leg (kg m^2)."""

    ixx: float = 0.0672
    iyy: float = 0.0672
    izz: float = 0.0053

    def __post_init__(self):
        for name in ("ixx", "iyy", "izz"):
            if not getattr(self, name) > 0:
                raise ValueError(f"moment of inertia {name} must be positive")


def elementary_rotations(a: JointAngles) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The femoral-x, floating-axis and tibial-z' rotation matrices."""
    ca, sa = math.cos(a.alpha), math.sin(a.alpha)
    cb, sb = math.cos(a.beta), math.sin(a.beta)
    cg, sg = math.cos(a.gamma), math.sin(a.gamma)
    r_alpha = np.array([[1.0, 0.0, 0.0], [0.0, ca, sa], [0.0, -sa, ca]])
    r_beta = np.array([[sb, 0.0, cb], [0.0, 1.0, 0.0], [-cb, 0.0, sb]])
    r_gamma = np.array([[cg, sg, 0.0], [-sg, cg, 0.0], [0.0, 0.0, 1.0]])
    return r_alpha, r_beta, r_gamma


def composite_rotation(a: JointAngles) -> np.ndarray:
    r_alpha, r_beta, r_gamma = elementary_rotations(a)
    return r_alpha @ r_beta @ r_gamma


def closed_form_rotation(a: JointAngles) -> np.ndarray:
    """Entries of the composite rotation written out in closed form."""
    ca, sa = math.cos(a.alpha), math.sin(a.alpha)
    cb, sb = math.cos(a.beta), math.sin(a.beta)
    cg, sg = math.cos(a.gamma), math.sin(a.gamma)
    return np.array([
        [sb * cg, sb * sg, cb],
        [-ca * sg - sa * cb * cg, ca * cg - sa * cb * sg, sa * sb],
        [sa * sg - ca * cb * cg, -sa * cg - ca * cb * sg, ca * sb],
    ])


def femoral_rotation_vector(a: JointAngles) -> np.ndarray:
    """Rotation vector theta expressed in the femoral axes."""
    al, be, ga = a.alpha, a.beta, a.gamma
    return np.array([
        -al - ga * math.cos(be),
        -be * math.cos(al) - ga * math.sin(al) * math.sin(be),
        be * math.sin(al) - ga * math.cos(al) * math.sin(be),
    ])


def _theta_jacobian(v: np.ndarray) -> np.ndarray:
    al, be, ga = v
    ca, sa = math.cos(al), math.sin(al)
    cb, sb = math.cos(be), math.sin(be)
    return np.array([
        [-1.0, ga * sb, -cb],
        [be * sa - ga * ca * sb, -ca - ga * sa * cb, -sa * sb],
        [be * ca + ga * sa * sb, sa - ga * ca * cb, -ca * sb],
    ])


DEFAULT_GUESS = JointAngles(-0.3, 0.5, 0.3)


def solve_angles(theta, guess: JointAngles = DEFAULT_GUESS, tol: float = 1e-12,
                 max_iter: int = 100) -> JointAngles:
    """Invert :func:`femoral_rotation_vector` by damped Newton iteration.

    The step is halved while it fails to reduce the residual norm. The
    branch returned is the one reached from ``guess``; ``beta`` must land in
    (0, pi) or :class:`ConvergenceError` is raised.
    """
    theta = np.asarray(theta, dtype=float)
    v = guess.as_array()

    def residual(u):
        return femoral_rotation_vector(JointAngles(*u)) - theta

    r = residual(v)
    rnorm = np.linalg.norm(r)
    for _ in range(max_iter):
        if np.max(np.abs(r)) < tol:
            break
        try:
            step = np.linalg.solve(_theta_jacobian(v), -r)
        except np.linalg.LinAlgError:
            raise ConvergenceError(f"singular Jacobian at {v}") from None
        lam = 1.0
        while True:
            trial = v + lam * step
            rt = residual(trial)
            if np.linalg.norm(rt) < rnorm or lam < 1e-10:
                break
            lam *= 0.5
        v, r, rnorm = trial, rt, np.linalg.norm(rt)
    else:
        if np.max(np.abs(r)) >= tol:
            raise ConvergenceError(
                f"no convergence after {max_iter} iterations (residual {np.max(np.abs(r)):.3e})"
            )
    if np.max(np.abs(r)) >= max(tol, 1e-10):
        raise ConvergenceError(f"stalled with residual {np.max(np.abs(r)):.3e}")
    if not 0.0 < v[1] < math.pi:
        raise ConvergenceError(f"converged to beta = {v[1]:.6f}, outside (0, pi)")
    return JointAngles(*v)


def to_tibial_frame(v, R: np.ndarray) -> np.ndarray:
    """Components in the tibial axes: the row vector ``v`` times ``R``."""
    return np.asarray(v, dtype=float) @ np.asarray(R, dtype=float)


def angular_velocity_tibial_closed_form(a: JointAngles, rates) -> np.ndarray:
    """Tibial angular velocity from angle rates, using the textbook expansion.

    This is the expansion as commonly quoted for the Grood-Suntay system; it
    keeps the rate-times-angle terms and is not an exact rotation of the
    differentiated rotation vector.
    """
    da, db, dg = (float(r) for r in rates)
    be, ga = a.beta, a.gamma
    cb, sb = math.cos(be), math.sin(be)
    cg, sg = math.cos(ga), math.sin(ga)
    wx = -da * sb * cg - da * be * cb * cg + da * ga * sb * sg + db * sg + db * ga * cg
    wy = -da * sb * sg - da * be * cb * sg - da * ga * sb * cg - db * cg + db * ga * sg
    wz = -da * cb + da * be * sb - dg
    return np.array([wx, wy, wz])
