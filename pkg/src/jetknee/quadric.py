"""Constant-level sets of the Yang-Mills energy viewed as a quadric."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .jetcore import SkewField
from .vectorfield import Polynomial

POINT_TOL = 1e-9


@dataclass(frozen=True)
class Quadric:
    """``Q(x) = x^T A x + b^T x + c``."""

    A: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        b = np.array(self.b, dtype=float)
        n = b.size
        if A.shape != (n, n):
            raise ValueError(f"A has shape {A.shape}, expected ({n}, {n})")
        if not np.allclose(A, A.T, rtol=0, atol=1e-12):
            raise ValueError("A must be symmetric")
        A.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", float(self.c))

    @property
    def dim(self) -> int:
        return self.b.size

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.einsum("...i,ij,...j->...", x, self.A, x) + x @ self.b + self.c

    def translated(self, shift) -> Quadric:
        """The quadric ``x -> Q(x - shift)``."""
        s = np.asarray(shift, dtype=float)
        return Quadric(self.A, self.b - 2 * self.A @ s, s @ self.A @ s - self.b @ s + self.c)


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class SinglePoint:
    center: np.ndarray


@dataclass(frozen=True)
class Ellipsoid:
    center: np.ndarray
    semi_axes: np.ndarray  # descending
    axes: np.ndarray  # columns are unit principal directions

    @property
    def is_spheroid(self) -> bool:
        a = self.semi_axes
        return a.size == 3 and (np.isclose(a[0], a[1], rtol=1e-9) or np.isclose(a[1], a[2], rtol=1e-9))

    @property
    def is_oblate(self) -> bool:
        a = self.semi_axes
        return a.size == 3 and np.isclose(a[0], a[1], rtol=1e-9) and a[2] < a[1]


LevelSet = Empty | SinglePoint | Ellipsoid


def _affine_parts(p: Polynomial) -> tuple[np.ndarray, float]:
    if p.degree > 1:
        raise ValueError(f"entry of degree {p.degree} is not affine")
    g = np.zeros(p.nvars)
    for v in range(p.nvars):
        e = [0] * p.nvars
        e[v] = 1
        g[v] = p.coefficient(e)
    return g, p.coefficient([0] * p.nvars)


def em_energy_quadric(F: SkewField) -> Quadric:
    """Expand ``sum_{i<j} F_ij(x)^2`` for affine entries into ``(A, b, c)``."""
    n = F.nvars
    A = np.zeros((n, n))
    b = np.zeros(n)
    c = 0.0
    for p in F.upper().values():
        g, h = _affine_parts(p)
        A += np.outer(g, g)
        b += 2.0 * h * g
        c += h * h
    return Quadric(A, b, c)


def classify_level_set(q: Quadric, k: float, point_tol: float = POINT_TOL) -> LevelSet:
    """Classify ``{x : Q(x) = k}`` for positive-definite ``A``.

    After completing the square, ``Q(x) = (x - x0)^T A (x - x0) + c - b^T A^-1 b / 4``
    and the level set is decided by the sign of ``k - min Q``. The point band is
    ``point_tol * max(1, |k|)`` widened by the rounding floor of that subtraction.
    """
    if k < 0:
        raise ValueError("energy levels are non-negative")
    lam, V = np.linalg.eigh(q.A)
    if lam[0] <= 1e-14 * max(1.0, abs(lam[-1])):
        raise ValueError(f"A is not positive definite (eigenvalues {lam})")
    Ainv_b = V @ ((V.T @ q.b) / lam)
    center = -0.5 * Ainv_b
    quad = 0.25 * (q.b @ Ainv_b)
    resid = k - q.c + quad
    band = point_tol * max(1.0, abs(k)) + 64 * np.finfo(float).eps * (abs(q.c) + abs(quad))
    if abs(resid) <= band:
        return SinglePoint(center)
    if resid < 0:
        return Empty()
    semi = np.sqrt(resid / lam)
    order = np.argsort(-semi, kind="stable")
    return Ellipsoid(center, semi[order], V[:, order])


def sample_surface(ls: LevelSet, resolution: tuple[int, int] = (16, 32)) -> np.ndarray:
    """Points on an ellipsoid from a (polar, azimuth) grid, shape ``(n_polar * n_azimuth, 3)``."""
    if not isinstance(ls, Ellipsoid):
        raise ValueError(f"can only sample an ellipsoid, got {type(ls).__name__}")
    if ls.center.size != 3:
        raise ValueError("surface sampling is implemented for 3-D ellipsoids")
    n_pol, n_az = resolution
    if n_pol < 2 or n_az < 3:
        raise ValueError("resolution must be at least 2x3")
    pol = np.linspace(0.0, np.pi, n_pol)
    az = np.linspace(0.0, 2 * np.pi, n_az, endpoint=False)
    P, Z = np.meshgrid(pol, az, indexing="ij")
    unit = np.stack([np.sin(P) * np.cos(Z), np.sin(P) * np.sin(Z), np.cos(P)], axis=-1).reshape(-1, 3)
    return ls.center + (unit * ls.semi_axes) @ ls.axes.T


def surface_faces(resolution: tuple[int, int]) -> list[tuple[int, int, int]]:
    """Triangles (0-based vertex indices) over the grid used by :func:`sample_surface`."""
    n_pol, n_az = resolution
    faces = []
    for i in range(n_pol - 1):
        for j in range(n_az):
            a = i * n_az + j
            b = i * n_az + (j + 1) % n_az
            c = (i + 1) * n_az + j
            d = (i + 1) * n_az + (j + 1) % n_az
            faces.append((a, c, d))
            faces.append((a, d, b))
    return faces


def write_point_cloud_csv(points: np.ndarray, path) -> None:
    lines = ["x,y,z"] + [f"{x:.10g},{y:.10g},{z:.10g}" for x, y, z in points]
    Path(path).write_text("\n".join(lines) + "\n")


def write_mesh(points: np.ndarray, faces, path) -> None:
    """Vertex/face listing (Wavefront OBJ subset, 1-based face indices)."""
    lines = [f"v {x:.10g} {y:.10g} {z:.10g}" for x, y, z in points]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in faces]
    Path(path).write_text("\n".join(lines) + "\n")


def level_set_to_dict(ls: LevelSet, k: float) -> dict:
    if isinstance(ls, Empty):
        return {"k": k, "kind": "empty"}
    if isinstance(ls, SinglePoint):
        return {"k": k, "kind": "point", "center": ls.center.tolist()}
    return {
        "k": k,
        "kind": "ellipsoid",
        "center": ls.center.tolist(),
        "semi_axes": ls.semi_axes.tolist(),
        "axes": ls.axes.T.tolist(),
        "oblate_spheroid": bool(ls.is_oblate),
    }
