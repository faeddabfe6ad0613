"""Plain-text, JSON and CSV renderings of analysis and pipeline results.

Structured files carry numbers at 6 significant digits; text reports print
coefficients with 4 decimals. Key order is fixed so output is reproducible
byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__, data
from .gaitpipeline import KneeReport, Table
from .jetcore import JetGeometry, maxwell_polynomials
from .vectorfield import PolyMatrix, Polynomial, format_polynomial

SIG = 6


def sig(x: float, digits: int = SIG) -> float:
    return float(f"{float(x):.{digits}g}")


def sig_array(a) -> list:
    return np.vectorize(sig, otypes=[float])(np.asarray(a, dtype=float)).tolist()


def poly_to_dict(p: Polynomial, names) -> dict:
    return {
        "text": format_polynomial(p, names),
        "terms": [{"coeff": sig(m.coeff), "exponents": list(m.exponents)} for m in p.terms],
    }


def matrix_strings(M: PolyMatrix, names) -> list[list[str]]:
    return [[format_polynomial(p, names) for p in row] for row in M.entries]


def maxwell_summary(geom: JetGeometry) -> dict:
    polys = maxwell_polynomials(geom.em)
    worst = max((abs(m.coeff) for p in polys.values() for m in p.terms), default=0.0)
    return {"triples": len(polys), "max_abs_coefficient": sig(worst)}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def geometry_to_dict(geom: JetGeometry) -> dict:
    names = geom.field.names
    n = geom.field.dim
    return {
        "dim": n,
        "variables": list(names),
        "field": [poly_to_dict(p, names) for p in geom.field.components],
        "jacobian": matrix_strings(geom.jacobian, names),
        "nonlinear_connection": matrix_strings(geom.connection, names),
        "temporal_connection": "zero",
        "cartan_connection": "zero",
        "torsion": [matrix_strings(s, names) for s in geom.torsion.slices],
        "curvature": "zero",
        "em_field": matrix_strings(geom.em, names),
        "em_upper": [
            {"i": i + 1, "j": j + 1, **poly_to_dict(p, names)}
            for (i, j), p in geom.em.upper().items()
        ],
        "yang_mills_energy": poly_to_dict(geom.energy, names),
        "maxwell": maxwell_summary(geom),
    }


def _matrix_block(title: str, rows: list[list[str]]) -> list[str]:
    width = max((len(s) for r in rows for s in r), default=1)
    out = [title]
    for r in rows:
        out.append("  [ " + " | ".join(s.rjust(width) for s in r) + " ]")
    return out


def geometry_text(geom: JetGeometry) -> str:
    d = geometry_to_dict(geom)
    names = d["variables"]
    lines = [f"jetknee {__version__}: jet geometry of a {d['dim']}-dimensional field", ""]
    lines.append("Field:")
    for i, p in enumerate(d["field"]):
        lines.append(f"  d{names[i]}/dt = {p['text']}")
    lines.append("")
    lines += _matrix_block("Jacobian:", d["jacobian"])
    lines.append("")
    lines += _matrix_block("Nonlinear connection N (temporal part M = 0):", d["nonlinear_connection"])
    lines.append("")
    lines.append("Cartan connection: all components zero")
    lines.append("Curvature: all components zero")
    lines.append("")
    for k, s in enumerate(d["torsion"]):
        lines += _matrix_block(f"Torsion T_{k + 1} = dN/d{names[k]}:", s)
    lines.append("")
    lines += _matrix_block("Electromagnetic field F = -N:", d["em_field"])
    for e in d["em_upper"]:
        lines.append(f"  F_{e['i']}{e['j']} = {e['text']}")
    lines.append("")
    lines.append(f"Yang-Mills energy: {d['yang_mills_energy']['text']}")
    mx = d["maxwell"]
    lines.append(f"Maxwell cyclic sums: {mx['triples']} triples, max |coefficient| = {mx['max_abs_coefficient']:.3e}")
    return "\n".join(lines) + "\n"


def table_to_dict(t: Table) -> dict:
    out = {"unit": t.unit, "columns": list(t.columns), "values": sig_array(t.values)}
    if t.rows:
        out["rows"] = list(t.rows)
    if t.reference is not None:
        out["reference"] = sig_array(t.reference)
        out["deviation"] = sig_array(t.deviation)
    return out


def knee_report_to_dict(rep: KneeReport) -> dict:
    return {
        "inertia": {"ixx": data.INERTIA[0], "iyy": data.INERTIA[1], "izz": rep.config.izz},
        "regression_source": rep.config.regression_source,
        "times": sig_array(data.TIMES),
        "tables": {name: table_to_dict(t) for name, t in rep.tables.items()},
        "ode": [poly_to_dict(p, rep.ode.names) for p in rep.ode.components],
        "checks": [
            {
                "name": c.name,
                "deviation": sig(c.deviation),
                "tolerance": c.tolerance,
                "relative": c.relative,
                "passed": c.passed,
            }
            for c in rep.checks
        ],
        "passed": rep.passed,
        "notes": list(rep.notes),
    }


def _table_text(t: Table) -> list[str]:
    lines = [f"{t.name} [{t.unit}]"]
    vals = np.atleast_2d(t.values)
    if vals.shape[0] == 1 and len(t.columns) > 4:
        ref = None if t.reference is None else np.atleast_2d(t.reference)[0]
        for j, col in enumerate(t.columns):
            s = f"  {col:>12} {vals[0, j]:14.4f}"
            if ref is not None:
                s += f"   published {ref[j]:14.4f}   dev {vals[0, j] - ref[j]:+.2e}"
            lines.append(s)
        return lines
    lines.append("  row  " + "".join(f"{c:>12}" for c in t.columns) + ("   max|dev|" if t.reference is not None else ""))
    for r in range(vals.shape[0]):
        label = t.rows[r] if t.rows else f"t{r}"
        s = f"  {label:<5}" + "".join(f"{v:12.4f}" for v in vals[r])
        if t.reference is not None:
            s += f"   {np.max(np.abs(t.deviation[r])):.2e}"
        lines.append(s)
    return lines


def knee_report_text(rep: KneeReport) -> str:
    lines = [f"jetknee {__version__}: knee pipeline report", ""]
    for t in rep.tables.values():
        lines += _table_text(t)
        lines.append("")
    lines.append("Knee ODE:")
    for name, p in zip(rep.ode.names, rep.ode.components):
        lines.append(f"  d{name}/dt = {format_polynomial(p, rep.ode.names)}")
    lines.append("")
    lines.append("Checks:")
    for c in rep.checks:
        kind = "rel" if c.relative else "abs"
        lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name:<14} {kind} dev {c.deviation:.3e} <= {c.tolerance:.1e}")
    lines.append("")
    for note in rep.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def write_table_csv(t: Table, path) -> None:
    vals = np.atleast_2d(t.values)
    header = ["node", "time_s"] + [f"{c} [{t.unit}]" for c in t.columns]
    lines = [",".join(header)]
    if vals.shape[0] == len(data.TIMES):
        for r, row in enumerate(vals):
            lines.append(",".join([f"t{r}", f"{data.TIMES[r]:.4f}"] + [f"{v:.6g}" for v in row]))
    else:
        lines[0] = ",".join(["row"] + [f"{c} [{t.unit}]" for c in t.columns])
        for r, row in enumerate(vals):
            label = t.rows[r] if t.rows else str(r)
            lines.append(",".join([label] + [f"{v:.6g}" for v in row]))
    Path(path).write_text("\n".join(lines) + "\n")


def export_published_tables(outdir) -> list[Path]:
    """Write each embedded gait table to ``<outdir>/<name>.csv``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, (values, unit) in data.TABLES.items():
        cols = ("alpha", "beta", "gamma") if name == "grood_suntay_angles" else ("x", "y", "z")
        p = outdir / f"{name}.csv"
        write_table_csv(Table(name, unit, cols, values), p)
        paths.append(p)
    return paths
