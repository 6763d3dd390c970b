#!/usr/bin/env python3
"""Benchmark sweep over saturated worst-case inputs.

Runs the chart engine (always) and the recursive engine (while its
predicted work fits the budget) for each sequence length, writes the
counter CSV, and prints a measured-vs-predicted summary.

Example:
    python3 scripts/run_bench.py --n-from 2 --n-to 7 --valency 2 --out bench.csv
"""

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from iconparse.baseline import DEFAULT_WORK_BUDGET
from iconparse.chart import ParserConfig
from iconparse.cli import BENCH_COLUMNS, bench_rows
from iconparse.compatibility import FadingConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-from", type=int, default=2)
    ap.add_argument("--n-to", type=int, default=7)
    ap.add_argument("--valency", type=int, default=2)
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--threshold", type=float, default=0.1)
    ap.add_argument("--top-k", type=int, default=3)
    ap.add_argument("--top-m", type=int, default=10)
    ap.add_argument("--strict-fill", action="store_true")
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--b", type=int, default=1)
    ap.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)
    ap.add_argument("--out", default="bench.csv")
    args = ap.parse_args()

    config = ParserConfig(
        fading=FadingConfig(args.gamma),
        pair_threshold=args.threshold,
        top_k_assignments=args.top_k,
        top_m_interpretations=args.top_m,
        strict_fill=args.strict_fill,
    )
    rows = list(
        bench_rows(
            args.n_from, args.n_to, args.valency, config,
            engines="both", a=args.a, b=args.b, budget=args.budget,
        )
    )
    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")

    print(f"{'N':>3} {'engine':>10} {'evals':>10} {'wall_ms':>10} {'predicted_ops':>16}")
    for row in rows:
        print(f"{row[0]:>3} {row[2]:>10} {str(row[3]):>10} {str(row[6]):>10} {str(row[7]):>16}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
