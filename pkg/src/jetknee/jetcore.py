"""Geometric objects on the 1-jet space J1(R, R^n) induced by a first-order ODE.

For ``dx/dt = X(x)`` with Jacobian ``J``:

* nonlinear connection   N = -(J - J^T)/2  (temporal components M are 0)
* Cartan connection      identically zero
* torsion                T_k = dN/dx^k
* curvature              identically zero
* electromagnetic field  F = -N
* Yang-Mills energy      EYM = sum_{i<j} F_ij^2 = Tr(F F^T)/2
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .vectorfield import PolyMatrix, PolyVectorField, Polynomial, eval_field, symbolic_jacobian


class SkewField(PolyMatrix):
    """Square polynomial matrix with ``S[i, j] == -S[j, i]`` as polynomials."""

    def __post_init__(self):
        super().__post_init__()
        n, m = self.shape
        if n != m:
            raise ValueError(f"skew field must be square, got {n}x{m}")
        for i in range(n):
            if not self.entries[i][i].is_zero():
                raise ValueError(f"diagonal entry ({i}, {i}) is not identically zero")
            for j in range(i + 1, n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"entries ({i}, {j}) and ({j}, {i}) are not opposite")

    @property
    def dim(self) -> int:
        return self.shape[0]

    @classmethod
    def from_upper(cls, n: int, upper: dict[tuple[int, int], Polynomial], nvars: int | None = None) -> SkewField:
        """Build from the strictly upper triangle ``{(i, j): poly}`` with ``i < j``."""
        nvars = n if nvars is None else nvars
        rows = [[Polynomial(nvars) for _ in range(n)] for _ in range(n)]
        for (i, j), p in upper.items():
            if not i < j:
                raise ValueError(f"expected i < j, got ({i}, {j})")
            rows[i][j] = p
            rows[j][i] = -p
        return cls(tuple(tuple(r) for r in rows))

    def upper(self) -> dict[tuple[int, int], Polynomial]:
        n = self.dim
        return {(i, j): self.entries[i][j] for i in range(n) for j in range(i + 1, n)}

    def __neg__(self) -> SkewField:
        return SkewField(tuple(tuple(-p for p in row) for row in self.entries))


@dataclass(frozen=True)
class TorsionTensor:
    """Slices ``T_k = dN/dx^k``, one skew matrix per base coordinate."""

    slices: tuple[SkewField, ...]

    def __getitem__(self, k: int) -> SkewField:
        return self.slices[k]

    def __len__(self):
        return len(self.slices)

    def __call__(self, x) -> np.ndarray:
        return np.array([s(x) for s in self.slices])


@dataclass(frozen=True)
class ZeroStructure:
    """Marker for objects that vanish identically for every jet dynamical system.

    Indexing returns 0.0 for any index, so code written against a general
    tensor still reads correct values without a dense array being built.
    """

    name: str
    dim: int

    def __getitem__(self, index) -> float:
        return 0.0

    def is_zero(self) -> bool:
        return True

    def to_array(self, rank: int) -> np.ndarray:
        return np.zeros((self.dim,) * rank)


@dataclass(frozen=True)
class JetState:
    t: float
    x: tuple[float, ...]
    x1: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "x1", tuple(float(v) for v in self.x1))
        if len(self.x) != len(self.x1):
            raise ValueError(f"position has {len(self.x)} coordinates, velocity {len(self.x1)}")


def nonlinear_connection(J: PolyMatrix) -> SkewField:
    n, m = J.shape
    if n != m:
        raise ValueError(f"Jacobian must be square, got {n}x{m}")
    return SkewField(
        tuple(
            tuple((J[i, j] - J[j, i]) * -0.5 for j in range(n))
            for i in range(n)
        )
    )


def temporal_connection(dim: int) -> ZeroStructure:
    """The M_(1)1^(i) components of the nonlinear connection (all zero)."""
    return ZeroStructure("temporal nonlinear connection", dim)


def cartan_connection(dim: int = 3) -> ZeroStructure:
    return ZeroStructure("Cartan linear connection", dim)


def curvature(dim: int = 3) -> ZeroStructure:
    return ZeroStructure("Cartan curvature", dim)


def torsion(N: SkewField) -> TorsionTensor:
    return TorsionTensor(tuple(SkewField(N.deriv(k).entries) for k in range(N.nvars)))


def em_field(N: SkewField) -> SkewField:
    return -N


def yang_mills_energy(F: SkewField, x) -> float:
    """Yang-Mills energy of ``F`` at ``x``.

    The upper-triangle sum of squares is returned after checking it against
    half the trace of ``F F^T``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (F.nvars,):
        raise ValueError(f"expected a point of dimension {F.nvars}, got shape {x.shape}")
    Fx = F(x)
    n = F.dim
    upper = math.fsum(Fx[i, j] ** 2 for i in range(n) for j in range(i + 1, n))
    trace = 0.5 * math.fsum(np.einsum("ij,ij->i", Fx, Fx))
    if not math.isclose(upper, trace, rel_tol=1e-12, abs_tol=1e-300):
        raise FloatingPointError(f"energy formulas disagree: {upper!r} vs {trace!r}")
    return upper


def energy_polynomial(F: SkewField) -> Polynomial:
    """``sum_{i<j} F_ij^2`` expanded as a polynomial."""
    total = Polynomial(F.nvars)
    for p in F.upper().values():
        total = total + p * p
    return total


def maxwell_residual(F: SkewField, triple: Sequence[int], x) -> float:
    """Cyclic sum ``dF_ij/dx^k + dF_jk/dx^i + dF_ki/dx^j`` at ``x`` (0-based indices)."""
    i, j, k = triple
    if len({i, j, k}) != 3:
        raise ValueError(f"indices must be distinct, got {tuple(triple)}")
    n = F.dim
    if not all(0 <= a < n for a in (i, j, k)):
        raise IndexError(f"indices {tuple(triple)} out of range for dimension {n}")
    x = np.asarray(x, dtype=float)
    return F[i, j].deriv(k)(x) + F[j, k].deriv(i)(x) + F[k, i].deriv(j)(x)


def maxwell_polynomials(F: SkewField) -> dict[tuple[int, int, int], Polynomial]:
    """Symbolic cyclic sums for every increasing index triple."""
    out = {}
    for i, j, k in itertools.combinations(range(F.dim), 3):
        out[(i, j, k)] = F[i, j].deriv(k) + F[j, k].deriv(i) + F[k, i].deriv(j)
    return out


def jls_lagrangian(field: PolyVectorField, s: JetState) -> float:
    """Jet least-squares Lagrangian ``sum_i (x1_i - X_i(x))^2``."""
    if len(s.x) != field.dim:
        raise ValueError(f"state has dimension {len(s.x)}, field {field.dim}")
    r = np.asarray(s.x1) - eval_field(field, s.x)
    return math.fsum(r * r)


def _uniform_step(times) -> float:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 3:
        raise ValueError("need at least 3 samples on the time grid")
    d = np.diff(t)
    if np.any(d <= 0) or not np.allclose(d, d[0], rtol=1e-9, atol=0):
        raise ValueError("time grid must be uniform and increasing")
    return float(d[0])


def euler_lagrange_residual(field: PolyVectorField, times, path, i: int) -> np.ndarray:
    """Residual of the i-th Euler-Lagrange equation of JLS along a sampled path.

    ``dJLS/dx^i`` uses the symbolic Jacobian; the velocity and the outer time
    derivative are second-order finite differences (one-sided at the ends).
    """
    h = _uniform_step(times)
    path = np.asarray(path, dtype=float)
    if path.shape != (len(times), field.dim):
        raise ValueError(f"path shape {path.shape} does not match {len(times)} x {field.dim}")
    jac = symbolic_jacobian(field)
    xdot = np.gradient(path, h, axis=0, edge_order=2)
    resid = xdot - np.array([eval_field(field, x) for x in path])
    dL_dx = np.array(
        [-2.0 * sum(r[j] * jac[j, i](x) for j in range(field.dim)) for x, r in zip(path, resid)]
    )
    dL_dv = 2.0 * resid[:, i]
    return dL_dx - np.gradient(dL_dv, h, edge_order=2)


@dataclass(frozen=True)
class JetGeometry:
    """Everything the jet geometry attaches to one polynomial field."""

    field: PolyVectorField
    jacobian: PolyMatrix
    connection: SkewField
    torsion: TorsionTensor
    em: SkewField
    energy: Polynomial

    @property
    def cartan(self) -> ZeroStructure:
        return cartan_connection(self.field.dim)

    @property
    def curvature(self) -> ZeroStructure:
        return curvature(self.field.dim)


def analyze_field(field: PolyVectorField) -> JetGeometry:
    J = symbolic_jacobian(field)
    N = nonlinear_connection(J)
    F = em_field(N)
    return JetGeometry(field, J, N, torsion(N), F, energy_polynomial(F))
