"""Jet geometry of polynomial ODE fields and the knee gait pipeline, from the command line.

Exit status: 0 when every check passes, 1 on a tolerance violation, 2 on
input or usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields
from dataclasses import field as dc_field
from pathlib import Path

import numpy as np

from . import data, report
from .gaitpipeline import PipelineConfig, Tolerances, run_knee_pipeline
from .jetcore import analyze_field
from .knee import printed_em_field
from .quadric import (
    POINT_TOL,
    Ellipsoid,
    classify_level_set,
    em_energy_quadric,
    level_set_to_dict,
    sample_surface,
    surface_faces,
    write_mesh,
    write_point_cloud_csv,
)
from .vectorfield import FieldFileError, bundled_field_path, load_field

EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    out: Path
    field: Path | None = None
    k: float = 1.0
    res: tuple[int, int] = (16, 32)
    izz_variant: bool = False
    printed: bool = False
    tolerances: dict[str, float] = dc_field(default_factory=dict)


def _nonneg_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"level must be >= 0, got {s}")
    return v


def _resolution(s: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in s.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <int>x<int>, got {s!r}") from None
    if a < 2 or b < 3:
        raise argparse.ArgumentTypeError("resolution must be at least 2x3")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetknee", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="jet geometry of a polynomial field file")
    p.add_argument("--field", type=Path, default=bundled_field_path("knee_field"))
    p.add_argument("--out", type=Path, default=Path("out"))

    p = sub.add_parser("knee-report", help="recompute the knee case-study tables")
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--izz-variant", action="store_true",
                   help=f"use I_zz = {data.IZZ_ANTHROPOMETRIC} instead of {data.INERTIA[2]}")
    for f in fields(Tolerances):
        p.add_argument(f"--tol-{f.name.replace('_', '-')}", dest=f"tol_{f.name}", type=float,
                       default=None, metavar="REAL")

    p = sub.add_parser("surface", help="classify and sample a constant-energy surface")
    p.add_argument("--field", type=Path, default=bundled_field_path("knee_field"))
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--k", type=_nonneg_float, default=1.0)
    p.add_argument("--res", type=_resolution, default=(16, 32))
    p.add_argument("--printed", action="store_true",
                   help="use the published 4-decimal knee energy instead of --field")
    p.add_argument("--tol-point", dest="tol_point", type=float, default=None, metavar="REAL")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    tols = {k[4:]: v for k, v in vars(ns).items() if k.startswith("tol_") and v is not None}
    return RunConfig(
        command=ns.command,
        out=ns.out,
        field=getattr(ns, "field", None),
        k=getattr(ns, "k", 1.0),
        res=getattr(ns, "res", (16, 32)),
        izz_variant=getattr(ns, "izz_variant", False),
        printed=getattr(ns, "printed", False),
        tolerances=tols,
    )


def _prepare_out(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    probe = out / ".write-probe"
    probe.write_text("")
    probe.unlink()


def cmd_analyze(cfg: RunConfig) -> int:
    fld = load_field(cfg.field)
    geom = analyze_field(fld)
    _prepare_out(cfg.out)
    (cfg.out / "analysis.txt").write_text(report.geometry_text(geom))
    (cfg.out / "analysis.json").write_text(report.dumps(report.geometry_to_dict(geom)))
    print(report.geometry_text(geom), end="")
    return EXIT_OK


def cmd_knee_report(cfg: RunConfig) -> int:
    tol = Tolerances(**{k: v for k, v in cfg.tolerances.items()})
    pcfg = PipelineConfig(
        izz=data.IZZ_ANTHROPOMETRIC if cfg.izz_variant else data.INERTIA[2],
        tolerances=tol,
    )
    rep = run_knee_pipeline(pcfg)
    _prepare_out(cfg.out)
    (cfg.out / "knee_report.txt").write_text(report.knee_report_text(rep))
    (cfg.out / "knee_report.json").write_text(report.dumps(report.knee_report_to_dict(rep)))
    for name, t in rep.tables.items():
        report.write_table_csv(t, cfg.out / f"{name}.csv")
    report.export_published_tables(cfg.out / "published")
    print(report.knee_report_text(rep), end="")
    return EXIT_OK if rep.passed else EXIT_TOLERANCE


def cmd_surface(cfg: RunConfig) -> int:
    if cfg.printed:
        F = printed_em_field()
        source = "published knee energy"
    else:
        F = analyze_field(load_field(cfg.field)).em
        source = str(cfg.field)
    q = em_energy_quadric(F)
    ls = classify_level_set(q, cfg.k, cfg.tolerances.get("point", POINT_TOL))
    doc = {
        "source": source,
        "quadric": {"A": report.sig_array(q.A), "b": report.sig_array(q.b), "c": report.sig(q.c)},
        **level_set_to_dict(ls, cfg.k),
    }
    for key in ("center", "semi_axes", "axes"):
        if key in doc:
            doc[key] = report.sig_array(doc[key])
    _prepare_out(cfg.out)
    if isinstance(ls, Ellipsoid):
        pts = sample_surface(ls, cfg.res)
        write_point_cloud_csv(pts, cfg.out / "surface.csv")
        write_mesh(pts, surface_faces(cfg.res), cfg.out / "surface.obj")
        doc["resolution"] = list(cfg.res)
        doc["max_level_error"] = report.sig(np.max(np.abs(q(pts) - cfg.k)))
    (cfg.out / "surface.json").write_text(report.dumps(doc))
    print(report.dumps(doc), end="")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "knee-report": cmd_knee_report, "surface": cmd_surface}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except FieldFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
