#!/usr/bin/env python3
"""Generate reduction-instance batches and certify them against the naive
source-problem solvers.

Reports per-generator instance counts, truth splits, model sizes and wall
time; any truth disagreement aborts with the instance printed.

    python3 scripts/gadget_bench.py --instances 25 --seed 1
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
from generators import random_coloured_graph, random_dnf, random_hitting_set


@dataclass
class BenchConfig:
    instances: int = 25
    seed: int = 0
    max_vertices: int = 10
    max_colours: int = 4


def _certify(name: str, instances) -> dict:
    started = time.time()
    yes = 0
    size = 0
    count = 0
    for inst in instances:
        for q in inst.queries:
            got = x.answer_query(inst.model, q)
            if got != inst.truth:
                print(f"TRUTH MISMATCH in {name}: {inst.provenance} {q}")
                raise SystemExit(1)
        yes += int(inst.truth)
        size += x.measure(inst.model).model_size
        count += 1
    return {
        "generator": name,
        "instances": count,
        "yes": yes,
        "avg_size": round(size / max(count, 1), 1),
        "seconds": round(time.time() - started, 2),
    }


def run(cfg: BenchConfig) -> None:
    rng = Random(cfg.seed)
    rows = []

    graphs = []
    for i in range(cfg.instances):
        k = 2 + i % (cfg.max_colours - 1)
        n = rng.randint(k, cfg.max_vertices)
        graphs.append(random_coloured_graph(rng, n, k, edge_p=rng.random()))

    rows.append(_certify(
        "mcc-ensemble",
        (x.mcc_ensemble_gadget(g, g.k, ("set", "subset")[i % 2]) for i, g in enumerate(graphs)),
    ))
    rows.append(_certify(
        "mcc-unary",
        (x.mcc_unary_ensemble_gadget(g, g.k, ("set", "subset")[i % 2]) for i, g in enumerate(graphs)),
    ))
    rows.append(_certify(
        "mcc-odt-gaxp",
        (x.mcc_odt_gaxp_gadget(g, g.k) for g in graphs),
    ))

    hitting = []
    for i in range(cfg.instances):
        elements, sets = random_hitting_set(rng, rng.randint(1, 10), rng.randint(1, 5))
        mode = ("set-odt", "subset-ds", "subset-dl")[i % 3]
        hitting.append(x.hitting_set_gadget(elements, sets, rng.randint(0, 3), mode))
    rows.append(_certify("hitting-set", hitting))

    formulas = []
    for i in range(cfg.instances):
        terms, variables = random_dnf(rng, rng.randint(1, 10), rng.randint(1, 5))
        formulas.append(x.taut_ds_gadget(terms, variables))
    rows.append(_certify("taut-ds", formulas))

    print(f"{'generator':<14} {'instances':>9} {'yes':>5} {'avg size':>9} {'seconds':>8}")
    for row in rows:
        print(
            f"{row['generator']:<14} {row['instances']:>9} {row['yes']:>5}"
            f" {row['avg_size']:>9} {row['seconds']:>8}"
        )
    print("all truths certified")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--instances", type=int, default=25, help="per generator")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-vertices", type=int, default=10)
    args = parser.parse_args()
    run(BenchConfig(instances=args.instances, seed=args.seed,
                    max_vertices=args.max_vertices))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
