"""Dump the embedded gait tables and their recomputed counterparts as CSV.

    python3 scripts/export_tables.py --out out/tables [--izz 0.005334]
"""
import argparse
from pathlib import Path

from jetknee import data
from jetknee.gaitpipeline import PipelineConfig, run_knee_pipeline
from jetknee.report import export_published_tables, knee_report_text, write_table_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("out/tables"))
    ap.add_argument("--izz", type=float, default=data.INERTIA[2])
    ap.add_argument("--regression", choices=("published", "computed"), default="published")
    args = ap.parse_args(argv)

    published = export_published_tables(args.out / "published")
    rep = run_knee_pipeline(PipelineConfig(izz=args.izz, regression_source=args.regression))
    (args.out / "recomputed").mkdir(parents=True, exist_ok=True)
    for name, t in rep.tables.items():
        write_table_csv(t, args.out / "recomputed" / f"{name}.csv")
    print(knee_report_text(rep), end="")
    print(f"wrote {len(published)} published and {len(rep.tables)} recomputed tables under {args.out}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
