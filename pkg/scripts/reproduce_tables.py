#!/usr/bin/env python3
"""Recompute every reference table as CSV and write the reproduction report.

    python scripts/reproduce_tables.py --out results/
"""
import argparse
import pathlib

from dirac_aim.angular import DEFAULT_READING, READINGS
from dirac_aim.tables import DOUBLET_Q, TABLE_IDS, reproduction_report, run_table


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="results")
    ap.add_argument("--reading", choices=READINGS, default=DEFAULT_READING)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for tid in TABLE_IDS:
        columns = sorted(DOUBLET_Q) if tid == "8" else [1.0]
        for q in columns:
            suffix = f"_q{q:.1f}" if tid == "8" else ""
            run = run_table(tid, args.reading, q=q)
            path = out / f"table{tid}{suffix}.csv"
            path.write_text(run.to_csv())
            print(f"{path}: {sum(run.matched())}/{len(run.results)} rows matched")
    report = out / "reproduction_report.md"
    report.write_text(reproduction_report())
    print(f"{report} written")


if __name__ == "__main__":
    main()
