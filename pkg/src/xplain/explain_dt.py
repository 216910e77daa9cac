"""Dedicated decision tree algorithms.

Everything here runs on the normalized tree (no path tests a feature twice);
inputs are normalized on entry, callers keep their raw trees.

* greedy subset-minimal explanations: start from a trivially valid candidate
  (the full feature set, or a seed leaf's path assignment for the global
  kinds) and drop features in ascending index order while the candidate still
  verifies.  Explanations are monotone under supersets, so one ascending pass
  is enough and the result is deterministic.
* minimum local contrastive explanations in polynomial time: for every leaf
  of the opposite class, the features on its path that disagree with the
  target example form a contrastive set; a smallest one is a global minimum.
* bounded-cardinality search: enumerate candidate subsets by increasing size
  (and, for global kinds, every assignment of the subset) and verify each
  with the tree fast path.
* ensemble-to-tree product: graft a copy of each successive tree onto every
  leaf, then relabel leaves with the majority of the votes collected along
  their path.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Union

from .config import CapExceeded
from .core import (
    DecisionTree,
    Ensemble,
    Example,
    Leaf,
    ModelError,
    PartialExample,
    Split,
    classify,
    normalize_dt,
)
from .verify import global_query, local_query, verify

CardWitness = Union[frozenset, PartialExample, None]


def leaf_assignments(t: DecisionTree) -> list[tuple[int, dict[int, int]]]:
    """(leaf node index, path assignment) in depth-first, 0-child-first order."""
    out: list[tuple[int, dict[int, int]]] = []

    def walk(i: int, assigned: dict[int, int]) -> None:
        node = t.nodes[i]
        if isinstance(node, Leaf):
            out.append((i, dict(assigned)))
            return
        assigned[node.feature] = 0
        walk(node.lo, assigned)
        assigned[node.feature] = 1
        walk(node.hi, assigned)
        del assigned[node.feature]

    walk(t.root, {})
    return out


def laxp_subset_min(t: DecisionTree, e: Example) -> frozenset:
    """Inclusion-minimal local abductive explanation (the full set always
    verifies; drop ascending while verification holds)."""
    t = normalize_dt(t)
    keep = set(range(len(t.universe)))
    for f in range(len(t.universe)):
        if verify(t, local_query("laxp", e, keep - {f})):
            keep.discard(f)
    return frozenset(keep)


def _greedy_restrict(t: DecisionTree, kind: str, c: int, seed: PartialExample) -> PartialExample:
    tau = seed
    for f in seed.domain:  # domains are sorted ascending
        smaller = tau.restricted_off(f)
        if verify(t, global_query(kind, c, smaller)):
            tau = smaller
    return tau


def gaxp_subset_min(t: DecisionTree, c: int) -> Optional[PartialExample]:
    """Inclusion-minimal global abductive explanation, or None when no leaf
    carries class c.  Seeded with the path assignment of the first c-leaf in
    depth-first order."""
    t = normalize_dt(t)
    for i, assigned in leaf_assignments(t):
        if t.nodes[i].label == c:
            seed = PartialExample(t.universe, tuple(assigned.items()))
            return _greedy_restrict(t, "gaxp", c, seed)
    return None


def gcxp_subset_min(t: DecisionTree, c: int) -> Optional[PartialExample]:
    """As gaxp_subset_min, seeded with the first leaf of class 1 - c."""
    t = normalize_dt(t)
    for i, assigned in leaf_assignments(t):
        if t.nodes[i].label == 1 - c:
            seed = PartialExample(t.universe, tuple(assigned.items()))
            return _greedy_restrict(t, "gcxp", c, seed)
    return None


def _conflict_sets(t: DecisionTree, e: Example) -> list[frozenset]:
    """Per opposite-class leaf: the path features disagreeing with e."""
    cls = classify(t, e)
    out = []
    for i, assigned in leaf_assignments(t):
        if t.nodes[i].label != cls:
            out.append(
                frozenset(f for f, b in assigned.items() if e.bits[f] != b)
            )
    return out


def lcxp_min(t: DecisionTree, e: Example) -> Optional[frozenset]:
    """Cardinality-minimum local contrastive explanation, or None on constant
    trees.  Ties break towards the earlier leaf in depth-first order."""
    t = normalize_dt(t)
    best: Optional[frozenset] = None
    for d in _conflict_sets(t, e):
        if best is None or len(d) < len(best):
            best = d
    return best


def lcxp_subset_min(t: DecisionTree, e: Example) -> Optional[frozenset]:
    """A conflict set that is inclusion-minimal among all conflict sets (the
    first such in depth-first leaf order)."""
    t = normalize_dt(t)
    sets = _conflict_sets(t, e)
    for d in sets:
        if not any(other < d for other in sets):
            return d
    return None


def card_xp_search(t: DecisionTree, kind: str, target, k: int) -> CardWitness:
    """First witness of size <= k in deterministic enumeration order, or None.

    Subsets are enumerated by increasing cardinality and lexicographically
    within one cardinality; for the global kinds every assignment of the
    subset is tried (ascending as binary counters).  Each candidate is checked
    with the tree fast path.
    """
    if kind not in ("laxp", "gaxp", "gcxp"):
        raise ModelError(f"card_xp_search does not handle {kind!r}")
    if k < 0:
        raise ModelError("k must be nonnegative")
    from .verify import _reachable_has_label

    t = normalize_dt(t)
    n = len(t.universe)
    if kind == "laxp":
        bad = 1 - classify(t, target)
    else:
        bad = 1 - target if kind == "gaxp" else target
    for size in range(min(k, n) + 1):
        for subset in combinations(range(n), size):
            if kind == "laxp":
                assigned = {f: target.bits[f] for f in subset}
                if not _reachable_has_label(t, assigned, bad):
                    return frozenset(subset)
                continue
            for m in range(1 << size):
                assigned = {f: (m >> j) & 1 for j, f in enumerate(subset)}
                if not _reachable_has_label(t, assigned, bad):
                    return PartialExample(t.universe, tuple(assigned.items()))
    return None


def product_dt(ens: Ensemble, max_leaves: int = 1_000_000) -> DecisionTree:
    """Single tree classifying exactly like the majority of a tree ensemble.

    Tree i+1 is grafted onto every leaf of the running product of trees
    1..i; each final leaf is labelled with the majority of the leaf labels
    collected on its path.  The projected leaf count is the product of the
    element leaf counts; construction aborts beyond ``max_leaves``.  The
    result is normalized.
    """
    if ens.family != "dt":
        raise ModelError("product_dt needs an ensemble of decision trees")
    trees: list[DecisionTree] = list(ens.elements)
    projected = 1
    for t in trees:
        projected *= t.leaf_count()
    if projected > max_leaves:
        raise CapExceeded(
            f"projected product size {projected} exceeds the ceiling {max_leaves}"
        )
    majority_at = len(trees) // 2 + 1
    nodes: list = []

    def graft(ti: int, i: int, votes: int) -> int:
        node = trees[ti].nodes[i]
        if isinstance(node, Leaf):
            votes += node.label
            if ti + 1 == len(trees):
                nodes.append(Leaf(1 if votes >= majority_at else 0))
                return len(nodes) - 1
            return graft(ti + 1, trees[ti + 1].root, votes)
        lo = graft(ti, node.lo, votes)
        hi = graft(ti, node.hi, votes)
        nodes.append(Split(node.feature, lo, hi))
        return len(nodes) - 1

    root = graft(0, trees[0].root, 0)
    product = normalize_dt(DecisionTree(ens.universe, tuple(nodes), root))
    assert product.leaf_count() <= projected
    return product
