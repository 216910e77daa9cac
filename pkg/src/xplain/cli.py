"""Command line interface.

One executable, one subcommand per operation.  Results are printed as a
single JSON object on stdout (stable key order, so identical inputs give
byte-identical output); timing and diagnostics go to stderr.  Exit codes:
0 success / found / true, 1 false, 2 error, 3 no explanation exists.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import gadgets
from .circuits import (
    Circuit,
    circuit_hom_check,
    circuit_phom_check,
    translate,
)
from .config import BruteCaps, CapExceeded
from .core import (
    DecisionList,
    DecisionSet,
    DecisionTree,
    Ensemble,
    ModelError,
    classify,
    measure,
)
from .explain_dt import (
    card_xp_search,
    gaxp_subset_min,
    gcxp_subset_min,
    laxp_subset_min,
    lcxp_min,
    lcxp_subset_min,
    product_dt,
)
from .explain_rules import (
    laxp_rules_subset_min,
    lcxp_card_branch,
    lcxp_card_branch_ens,
    lcxp_card_enum,
)
from .modelio import (
    dump_model,
    dump_partial_example,
    load_example_file,
    load_model_file,
    load_partial_example_file,
)
from .verify import (
    ExplanationQuery,
    global_query,
    hom_check,
    local_query,
    oracle_min,
    phom_check,
)

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_NONE = 0, 1, 2, 3


def _witness_payload(witness, model) -> dict:
    if witness is None:
        return {"size": None, "witness": None}
    if isinstance(witness, frozenset):
        names = sorted(model.universe.name(f) for f in witness)
        return {"size": len(witness), "witness": names}
    return {
        "size": len(witness.assignments),
        "witness": dump_partial_example(witness)["assign"],
    }


def _load_target(args, model):
    if args.example is not None:
        return load_example_file(args.example, model.universe)
    if args.cls is not None:
        return args.cls
    raise ModelError("need --example (local kinds) or --class (global kinds)")


def _cmd_classify(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    e = load_example_file(args.example, model.universe)
    return EXIT_OK, {"class": classify(model, e)}


def _cmd_params(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    return EXIT_OK, measure(model).as_dict()


def _cmd_verify(args, caps) -> tuple[int, dict]:
    from .verify import verify

    model = load_model_file(args.model)
    if args.kind in ("laxp", "lcxp"):
        if args.example is None:
            raise ModelError(f"--kind {args.kind} needs --example")
        e = load_example_file(args.example, model.universe)
        with open(args.candidate) as fh:
            doc = json.load(fh)
        features = frozenset(model.universe.index(f) for f in doc["features"])
        q: ExplanationQuery = local_query(args.kind, e, features)
    else:
        if args.cls is None:
            raise ModelError(f"--kind {args.kind} needs --class")
        tau = load_partial_example_file(args.candidate, model.universe)
        q = global_query(args.kind, args.cls, tau)
    ok = verify(model, q, caps)
    return (EXIT_OK if ok else EXIT_FALSE), {"result": ok}


def _explain_subset(model, kind, target, args, caps):
    if isinstance(model, Ensemble) and model.family == "dt":
        model = product_dt(model)  # single-tree route for tree ensembles
    if isinstance(model, DecisionTree):
        if kind == "laxp":
            return laxp_subset_min(model, target)
        if kind == "lcxp":
            return lcxp_subset_min(model, target)
        if kind == "gaxp":
            return gaxp_subset_min(model, target)
        return gcxp_subset_min(model, target)
    if kind == "laxp":
        return laxp_rules_subset_min(model, target, caps)
    if kind == "lcxp":
        # a minimum-cardinality contrastive set is inclusion-minimal
        return _explain_card(model, kind, target, args, caps)
    # ditto for the global kinds: the oracle minimum cannot shrink
    found = oracle_min(model, kind, target, caps)
    return None if found is None else found[1]


def _explain_card(model, kind, target, args, caps):
    k = args.k if args.k is not None else len(model.universe)
    if isinstance(model, Ensemble) and model.family == "dt" and kind != "lcxp":
        model = product_dt(model)
    if kind == "lcxp":
        if args.algo == "enum":
            return lcxp_card_enum(model, target, k)
        if isinstance(model, DecisionTree):
            witness = lcxp_min(model, target)
            return witness if witness is not None and len(witness) <= k else None
        if isinstance(model, (DecisionSet, DecisionList)):
            return lcxp_card_branch(model, target, k)
        if isinstance(model, Ensemble) and model.family in ("ds", "dl"):
            return lcxp_card_branch_ens(model, target, k)
        return lcxp_card_enum(model, target, k)
    if isinstance(model, DecisionTree):
        return card_xp_search(model, kind, target, k)
    # no dedicated algorithm: exhaustive oracle at desk scale
    found = oracle_min(model, kind, target, caps)
    return found[1] if found is not None and found[0] <= k else None


def _cmd_explain(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    target = _load_target(args, model)
    if args.min == "subset":
        witness = _explain_subset(model, args.kind, target, args, caps)
    else:
        witness = _explain_card(model, args.kind, target, args, caps)
    payload = _witness_payload(witness, model)
    return (EXIT_OK if witness is not None else EXIT_NONE), payload


def _cmd_oracle(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    target = _load_target(args, model)
    found = oracle_min(model, args.kind, target, caps)
    if found is None:
        return EXIT_NONE, {"size": None, "witness": None}
    return EXIT_OK, _witness_payload(found[1], model)


def _cmd_translate(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    circuit, cert = translate(model, args.cls)
    doc = dump_model(circuit)
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return EXIT_OK, {
        "gates": len(circuit.gates),
        "maj_gates": circuit.maj_count,
        "width_bound": cert.bound,
        "bound_formula": cert.formula,
        "deletion_set": sorted(cert.deletion),
    }


def _cmd_hom(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    if isinstance(model, Circuit):
        result = (
            circuit_phom_check(model, args.k, caps)
            if args.k is not None
            else circuit_hom_check(model, caps)
        )
    else:
        result = (
            phom_check(model, args.k, caps)
            if args.k is not None
            else hom_check(model, caps)
        )
    return (EXIT_OK if result else EXIT_FALSE), {"result": result}


def _cmd_hom_suite(args, caps) -> tuple[int, dict]:
    model = load_model_file(args.model)
    report = gadgets.hom_equivalence_suite(model, caps)
    ok = report.all_equal and report.khom_equal
    return (EXIT_OK if ok else EXIT_FALSE), report.as_dict()


def _gadget_from_args(args) -> gadgets.GadgetInstance:
    with open(args.infile) as fh:
        doc = json.load(fh)
    if args.kind == "hitting-set":
        sets = [frozenset(s) for s in doc["sets"]]
        return gadgets.hitting_set_gadget(
            doc["universe"], sets, int(doc["k"]), args.mode or "subset-ds"
        )
    if args.kind == "taut":
        terms = [[(v, int(b)) for v, b in term] for term in doc["terms"]]
        return gadgets.taut_ds_gadget(terms, doc["vars"])
    graph = gadgets.ColouredGraph(
        tuple(tuple(c) for c in doc["classes"]),
        tuple((u, v) for u, v in doc["edges"]),
    )
    k = int(doc.get("k", graph.k))
    if args.kind == "mcc-ens":
        return gadgets.mcc_ensemble_gadget(graph, k, args.mode or "set", args.family)
    if args.kind == "mcc-unary":
        return gadgets.mcc_unary_ensemble_gadget(
            graph, k, args.mode or "set", args.family
        )
    if args.kind == "mcc-odt":
        return gadgets.mcc_odt_gaxp_gadget(graph, k)
    raise ModelError(f"unknown gadget kind {args.kind!r}")


def _query_to_json(q: gadgets.Query, model) -> dict:
    out: dict = {"kind": q.kind}
    if q.k is not None:
        out["k"] = q.k
    if q.kind in ("laxp", "lcxp"):
        out["example"] = {
            model.universe.name(i): b for i, b in enumerate(q.target.bits)
        }
    elif q.kind in ("gaxp", "gcxp"):
        out["class"] = q.target
    return out


def _cmd_gen_gadget(args, caps) -> tuple[int, dict]:
    instance = _gadget_from_args(args)
    doc = {
        "model": dump_model(instance.model),
        "queries": [_query_to_json(q, instance.model) for q in instance.queries],
        "truth": instance.truth,
        "provenance": instance.provenance,
        "meta": instance.meta,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return EXIT_OK, {
        "truth": instance.truth,
        "queries": len(instance.queries),
        "provenance": instance.provenance,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xplain",
        description="Compute, verify and brute-force-certify formal "
        "explanations for transparent classifiers; generate reduction "
        "instances as benchmark gadgets.",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized test-data generation; "
                        "algorithmic outputs do not depend on it")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker cap (results never depend on it)")
    parser.add_argument("--quiet", action="store_true", help="suppress timing")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("classify", _cmd_classify, help="classify an example")
    p.add_argument("--model", required=True)
    p.add_argument("--example", required=True)

    p = add("params", _cmd_params, help="measure model parameters")
    p.add_argument("--model", required=True)

    p = add("verify", _cmd_verify,
            help="check an explanation candidate (exit 0 yes / 1 no)")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", required=True, choices=["laxp", "lcxp", "gaxp", "gcxp"])
    p.add_argument("--example")
    p.add_argument("--class", dest="cls", type=int, choices=[0, 1])
    p.add_argument("--candidate", required=True)

    p = add("explain", _cmd_explain,
            help="compute an explanation (exit 0 found / 3 none exists)")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", required=True, choices=["laxp", "lcxp", "gaxp", "gcxp"])
    p.add_argument("--min", required=True, choices=["subset", "card"],
                   help="inclusion-minimal or cardinality-minimum")
    p.add_argument("--k", type=int, help="size budget for --min card")
    p.add_argument("--example")
    p.add_argument("--class", dest="cls", type=int, choices=[0, 1])
    p.add_argument("--algo", choices=["branch", "enum"], default="branch",
                   help="minimum-contrastive engine on rule models: "
                   "bounded-depth branching or subset enumeration")

    p = add("oracle", _cmd_oracle,
            help="exhaustive minimum explanation (ground truth, desk scale)")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", required=True, choices=["laxp", "lcxp", "gaxp", "gcxp"])
    p.add_argument("--example")
    p.add_argument("--class", dest="cls", type=int, choices=[0, 1])

    p = add("translate", _cmd_translate,
            help="compile a model into a majority-gate circuit")
    p.add_argument("--model", required=True)
    p.add_argument("--class", dest="cls", type=int, choices=[0, 1], required=True)
    p.add_argument("--out", required=True)

    p = add("hom", _cmd_hom,
            help="is some (weight-limited) example classified unlike all-zero")
    p.add_argument("--model", required=True)
    p.add_argument("--k", type=int)

    p = add("hom-suite", _cmd_hom_suite,
            help="evaluate the homogeneity/explanation equivalences")
    p.add_argument("--model", required=True)

    p = add("gen-gadget", _cmd_gen_gadget, help="generate a reduction instance")
    p.add_argument("--kind", required=True,
                   choices=["hitting-set", "mcc-ens", "mcc-unary", "mcc-odt", "taut"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode",
                   help="hitting-set: set-odt|subset-ds|subset-dl; "
                   "mcc-ens/mcc-unary: set|subset")
    p.add_argument("--family", choices=["ds", "dl"], default="ds",
                   help="rule family for subset-mode ensemble elements")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        caps = BruteCaps.from_env()
        code, payload = args.fn(args, caps)
    except (ModelError, CapExceeded, OSError, json.JSONDecodeError, KeyError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    if not args.quiet:
        elapsed = (time.perf_counter() - started) * 1000.0
        print(f"elapsed_ms={elapsed:.1f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
