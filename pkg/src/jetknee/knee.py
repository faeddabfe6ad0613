"""Shortcuts for the subject (A) knee system."""
from __future__ import annotations

from . import data
from .jetcore import JetGeometry, SkewField, analyze_field
from .quadric import Quadric, em_energy_quadric
from .vectorfield import Monomial, Polynomial, knee_field

__all__ = ["knee_field", "knee_geometry", "printed_em_field", "knee_quadric"]


def knee_geometry() -> JetGeometry:
    return analyze_field(knee_field())


def printed_em_field() -> SkewField:
    """Electromagnetic field built from the 4-decimal entries as published.

    The published energy surfaces (center, 0.2120 / 0.8484 diagonal) were
    computed from these rounded entries, where 0.4605 stands for 0.46055.
    """
    upper = {}
    for (i, j), (lin, const) in data.EM_ENTRIES.items():
        terms = [Monomial(const, (0, 0, 0))]
        for v, a in enumerate(lin):
            e = [0, 0, 0]
            e[v] = 1
            terms.append(Monomial(a, e))
        upper[(i, j)] = Polynomial(3, terms)
    return SkewField.from_upper(3, upper)


def knee_quadric(printed: bool = False) -> Quadric:
    """Energy quadric of the knee field; ``printed=True`` uses the published entries."""
    F = printed_em_field() if printed else knee_geometry().em
    return em_energy_quadric(F)
