#!/usr/bin/env python3
"""Cross-check the chart parser against the recursive baseline on random
instances (pruning disabled, strict fill) and report the waste the chart
avoids.

Example:
    python3 scripts/compare_engines.py --instances 50 --seed 7
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from iconparse.baseline import compare_engines
from iconparse.chart import ParserConfig
from iconparse.synth import random_instance

NO_PRUNING = ParserConfig(
    pair_threshold=float("-inf"),
    top_k_assignments=None,
    top_m_interpretations=None,
    strict_fill=True,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-valency", type=int, default=2)
    ap.add_argument("--max-work", type=int, default=20_000)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    mismatches = 0
    worst_ratio = 0.0
    for i in range(args.instances):
        lexicon, ids = random_instance(
            rng, max_n=args.max_n, max_valency=args.max_valency,
            config=NO_PRUNING, max_work=args.max_work,
        )
        result = compare_engines(lexicon, ids, NO_PRUNING)
        chart_evals = result.chart_counters.structure_compat_evals
        rec_evals = result.recursive_counters.structure_compat_evals
        ratio = rec_evals / chart_evals if chart_evals else 1.0
        worst_ratio = max(worst_ratio, ratio)
        verdict = "equal" if result.equal else f"MISMATCH: {result.divergence}"
        print(
            f"#{i:03d} n={len(ids)} chart_evals={chart_evals:>6} "
            f"recursive_evals={rec_evals:>8} ratio={ratio:>8.1f} {verdict}"
        )
        if not result.equal:
            mismatches += 1
    print(f"\n{args.instances} instances, {mismatches} mismatches, "
          f"worst recomputation ratio {worst_ratio:.1f}x")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
