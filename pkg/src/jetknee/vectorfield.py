"""Sparse multivariate polynomials and polynomial vector fields.

A polynomial is stored as a canonical tuple of monomials in graded-lex
order (highest total degree first, lexicographically descending within a
degree), so ``0.9211*x2*x3 - 252.1279*x1 + ... - 45.6979`` comes out in the
order one would write it by hand.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from numbers import Real
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np


def _order_key(exponents):
    return (-sum(exponents), tuple(-e for e in exponents))


@dataclass(frozen=True)
class Monomial:
    coeff: float
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", float(self.coeff))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if not math.isfinite(self.coeff):
            raise ValueError(f"non-finite coefficient {self.coeff!r}")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __call__(self, x) -> float:
        v = self.coeff
        for xi, e in zip(x, self.exponents):
            if e:
                v *= xi**e
        return v


def canonicalize(nvars: int, terms: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Merge monomials sharing an exponent vector, drop exact zeros, sort."""
    acc: dict[tuple[int, ...], float] = {}
    for m in terms:
        if len(m.exponents) != nvars:
            raise ValueError(
                f"monomial has {len(m.exponents)} exponents, expected {nvars}"
            )
        acc[m.exponents] = acc.get(m.exponents, 0.0) + m.coeff
    return tuple(
        Monomial(c, e)
        for e, c in sorted(acc.items(), key=lambda kv: _order_key(kv[0]))
        if c != 0.0
    )


class Polynomial:
    """Immutable real polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Iterable[Monomial] = ()):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", canonicalize(self.nvars, terms))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors
    @classmethod
    def constant(cls, nvars: int, value: float) -> Polynomial:
        return cls(nvars, [Monomial(value, (0,) * nvars)])

    @classmethod
    def variable(cls, nvars: int, index: int, coeff: float = 1.0) -> Polynomial:
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, [Monomial(coeff, exps)])

    @classmethod
    def from_dict(cls, nvars: int, mapping: dict) -> Polynomial:
        return cls(nvars, [Monomial(c, e) for e, c in mapping.items()])

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return {m.exponents: m.coeff for m in self.terms}

    def coefficient(self, exponents: Sequence[int]) -> float:
        return self.as_dict().get(tuple(exponents), 0.0)

    # queries
    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((m.degree for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, x) -> float:
        if len(x) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(x)}")
        return math.fsum(m(x) for m in self.terms)

    def deriv(self, var: int) -> Polynomial:
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for {self.nvars}")
        out = []
        for m in self.terms:
            e = m.exponents[var]
            if e:
                exps = list(m.exponents)
                exps[var] -= 1
                out.append(Monomial(m.coeff * e, exps))
        return Polynomial(self.nvars, out)

    # arithmetic
    def _check(self, other: Polynomial):
        if other.nvars != self.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def _lift(self, other):
        if isinstance(other, Real):
            return Polynomial.constant(self.nvars, float(other))
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return Polynomial(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, [Monomial(-m.coeff, m.exponents) for m in self.terms])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Real):
            s = float(other)
            return Polynomial(self.nvars, [Monomial(m.coeff * s, m.exponents) for m in self.terms])
        self._check(other)
        prods = [
            Monomial(a.coeff * b.coeff, tuple(i + j for i, j in zip(a.exponents, b.exponents)))
            for a in self.terms
            for b in other.terms
        ]
        return Polynomial(self.nvars, prods)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None, digits: int = 4) -> str:
    """Human-readable rendering, e.g. ``0.9211*wz + 109.1644``."""
    names = list(names) if names is not None else [f"x{i + 1}" for i in range(p.nvars)]
    if not p.terms:
        return f"{0.0:.{digits}f}"
    parts = []
    for k, m in enumerate(p.terms):
        factors = []
        for name, e in zip(names, m.exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = f"{abs(m.coeff):.{digits}f}"
        body = "*".join([mag] + factors)
        sign = "-" if m.coeff < 0 else "+"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class PolyVectorField:
    """The vector field ``x -> (X1(x), ..., Xn(x))`` with polynomial components."""

    components: tuple[Polynomial, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("field needs at least one component")
        n = len(comps)
        for p in comps:
            if p.nvars != n:
                raise ValueError(
                    f"component has {p.nvars} variables but the field has dimension {n}"
                )
        object.__setattr__(self, "components", comps)
        names = tuple(self.names) or tuple(f"x{i + 1}" for i in range(n))
        if len(names) != n:
            raise ValueError(f"{len(names)} variable names for a {n}-dimensional field")
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.components)

    @classmethod
    def zero(cls, dim: int) -> PolyVectorField:
        return cls(tuple(Polynomial(dim) for _ in range(dim)))

    def __call__(self, x) -> np.ndarray:
        return eval_field(self, x)

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        return PolyVectorField(
            tuple(a + b for a, b in zip(self.components, other.components)), self.names
        )

    def scale(self, s: float) -> PolyVectorField:
        return PolyVectorField(tuple(p * s for p in self.components), self.names)


def eval_field(field: PolyVectorField, x) -> np.ndarray:
    """Evaluate every component at ``x`` by direct monomial summation."""
    x = np.asarray(x, dtype=float)
    if x.shape != (field.dim,):
        raise ValueError(f"expected a point of dimension {field.dim}, got shape {x.shape}")
    return np.array([p(x) for p in field.components])


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        nv = {p.nvars for r in rows for p in r}
        if len(nv) != 1:
            raise ValueError(f"entries disagree on variable count: {sorted(nv)}")
        object.__setattr__(self, "entries", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def nvars(self) -> int:
        return self.entries[0][0].nvars

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.array([[p(x) for p in row] for row in self.entries])

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(tuple(zip(*self.entries)))

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> PolyMatrix:
        return PolyMatrix(tuple(tuple(fn(p) for p in row) for row in self.entries))

    def deriv(self, var: int) -> PolyMatrix:
        return self.map(lambda p: p.deriv(var))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)


def symbolic_jacobian(field: PolyVectorField) -> PolyMatrix:
    """Entry ``(i, j)`` is the exact partial of component ``i`` w.r.t. variable ``j``."""
    return PolyMatrix(
        tuple(tuple(p.deriv(j) for j in range(field.dim)) for p in field.components)
    )


def numeric_jacobian(f: Callable, x, h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of a black-box map.

    The step for column ``j`` is ``h * max(1, |x_j|)``.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x, dtype=float)
    cols = []
    for j in range(x.size):
        hj = h * max(1.0, abs(x[j]))
        e = np.zeros_like(x)
        e[j] = hj
        fp = np.atleast_1d(np.asarray(f(x + e), dtype=float))
        fm = np.atleast_1d(np.asarray(f(x - e), dtype=float))
        if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(fm))):
            raise FloatingPointError(f"non-finite function value near x[{j}]")
        cols.append((fp - fm) / (2 * hj))
    return np.column_stack(cols)


# --- field files -------------------------------------------------------------

class FieldFileError(ValueError):
    """Malformed vector-field document."""


def field_to_dict(field: PolyVectorField) -> dict:
    return {
        "dim": field.dim,
        "variables": list(field.names),
        "components": [
            [{"coeff": m.coeff, "exponents": list(m.exponents)} for m in p.terms]
            for p in field.components
        ],
    }


def field_from_dict(doc: dict, where: str = "<field>") -> PolyVectorField:
    try:
        dim = doc["dim"]
        comps = doc["components"]
    except (KeyError, TypeError) as exc:
        raise FieldFileError(f"{where}: missing key {exc}") from None
    if not isinstance(dim, int) or dim < 1:
        raise FieldFileError(f"{where}: 'dim' must be a positive integer, got {dim!r}")
    if not isinstance(comps, list) or len(comps) != dim:
        raise FieldFileError(f"{where}: expected {dim} components")
    polys = []
    for i, terms in enumerate(comps):
        monos = []
        for k, t in enumerate(terms):
            loc = f"{where}: components[{i}][{k}]"
            try:
                m = Monomial(t["coeff"], t["exponents"])
            except (KeyError, TypeError, ValueError) as exc:
                raise FieldFileError(f"{loc}: {exc}") from None
            if len(m.exponents) != dim:
                raise FieldFileError(f"{loc}: exponents length {len(m.exponents)} != dim {dim}")
            monos.append(m)
        polys.append(Polynomial(dim, monos))
    names = tuple(doc.get("variables", ()))
    try:
        return PolyVectorField(tuple(polys), names)
    except ValueError as exc:
        raise FieldFileError(f"{where}: {exc}") from None


def load_field(path) -> PolyVectorField:
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldFileError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return field_from_dict(doc, str(path))


def save_field(field: PolyVectorField, path) -> None:
    Path(path).write_text(json.dumps(field_to_dict(field), indent=2) + "\n")


def bundled_field_path(name: str = "knee_field") -> Path:
    return Path(__file__).parent / "data" / f"{name}.json"


def knee_field() -> PolyVectorField:
    """The knee Euler system for subject (A), as printed (4-decimal coefficients)."""
    return load_field(bundled_field_path("knee_field"))
