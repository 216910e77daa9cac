#!/usr/bin/env python3
"""Random-model agreement sweep: algorithmic minima vs the exhaustive oracle.

For every sampled model the minimum-contrastive algorithms (tree leaf scan,
bounded branching, subset enumeration) are compared with the brute-force
oracle, and the greedy subset-minimal outputs are re-checked by single-removal
verification.  Any disagreement aborts with the offending instance printed.

    python3 scripts/oracle_agreement.py --models 200 --max-features 10
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from random import Random

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import xplain as x
from generators import (
    random_dl,
    random_ds,
    random_dt,
    random_ensemble,
    random_example,
    random_universe,
)


@dataclass
class SweepConfig:
    models: int = 200
    min_features: int = 2
    max_features: int = 10
    seed: int = 0


def sweep_family(cfg: SweepConfig, family: str) -> dict:
    rng = Random(cfg.seed)
    stats = {"models": 0, "with_witness": 0, "branch_nodes": 0}
    started = time.time()
    for index in range(cfg.models):
        u = random_universe(rng, rng.randint(cfg.min_features, cfg.max_features))
        e = random_example(rng, u)
        n = len(u)
        if family == "dt":
            model = random_dt(rng, u)
            found = x.lcxp_min(model, e)
        elif family == "ds":
            model = random_ds(rng, u)
            found = x.lcxp_card_branch(model, e, n)
        elif family == "dl":
            model = random_dl(rng, u)
            found = x.lcxp_card_branch(model, e, n)
        else:
            model = random_ensemble(rng, u, rng.choice(["ds", "dl"]), 3)
            branch_stats = x.BranchStats()
            found = x.lcxp_card_branch_ens(model, e, n, branch_stats)
            stats["branch_nodes"] += sum(c for _, c in branch_stats.per_target)
        expected = x.oracle_min(model, "lcxp", e)
        if (found is None) != (expected is None) or (
            found is not None and len(found) != expected[0]
        ):
            print(f"DISAGREEMENT in {family} #{index}: {found} vs {expected}")
            print(model)
            raise SystemExit(1)
        enum = x.lcxp_card_enum(model, e, n)
        assert (enum is None) == (found is None)
        if found is not None:
            stats["with_witness"] += 1
        if family in ("ds", "dl"):
            greedy = x.laxp_rules_subset_min(model, e)
            assert x.oracle_subset_min_check(model, "laxp", e, greedy)
        stats["models"] += 1
    stats["seconds"] = round(time.time() - started, 2)
    return stats


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--models", type=int, default=200, help="models per family")
    parser.add_argument("--max-features", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    cfg = SweepConfig(models=args.models, max_features=args.max_features,
                      seed=args.seed)
    print(f"{'family':<10} {'models':>7} {'witnesses':>10} {'seconds':>8}")
    for family in ("dt", "ds", "dl", "ens"):
        stats = sweep_family(cfg, family)
        print(
            f"{family:<10} {stats['models']:>7} {stats['with_witness']:>10}"
            f" {stats['seconds']:>8}"
        )
    print("all agreements hold")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
