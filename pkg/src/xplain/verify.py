"""Explanation verification and the exhaustive ground-truth oracle.

The four explanation kinds, for a model M:

* ``laxp``: feature set A such that every example agreeing with the target
  example e on A gets class M(e).
* ``lcxp``: feature set A such that some example differing from e only inside
  A gets a class other than M(e).
* ``gaxp``: partial example forcing every agreeing example to class c.
* ``gcxp``: partial example forcing every agreeing example to a class != c.

``verify`` answers "is this candidate an explanation?".  Decision trees get a
polynomial fast path through ``restrict_dt``; every other model is checked by
enumerating completions (``verify_by_enumeration``), which refuses to run
above the configured free-feature cap.

``oracle_min`` and ``oracle_subset_min_check`` are the brute-force ground
truth the rest of the test suite is measured against: candidates are
enumerated by increasing cardinality and lexicographically within one
cardinality, so witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union

from .config import DEFAULT_CAPS, BruteCaps, require_cap
from .core import (
    DecisionTree,
    Example,
    Leaf,
    ModelError,
    PartialExample,
    Split,
    classify,
    normalize_dt,
    truth_table,
)

LOCAL_KINDS = ("laxp", "lcxp")
GLOBAL_KINDS = ("gaxp", "gcxp")
KINDS = LOCAL_KINDS + GLOBAL_KINDS

Candidate = Union[frozenset, PartialExample]

# table-based enumeration is used up to this universe size, per-example
# classification beyond it
_TABLE_LIMIT = 16


def flip(e: Example, features: Iterable[int]) -> Example:
    """Example equal to e except that every listed feature is negated."""
    bits = list(e.bits)
    for f in features:
        bits[f] = 1 - bits[f]
    return Example(e.universe, tuple(bits))


@dataclass(frozen=True)
class ExplanationQuery:
    kind: str
    target: Union[Example, int]
    candidate: Candidate

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ModelError(f"unknown explanation kind {self.kind!r}")
        if self.kind in LOCAL_KINDS:
            if not isinstance(self.target, Example):
                raise ModelError("local kinds take an example as target")
            if isinstance(self.candidate, PartialExample):
                raise ModelError("local kinds take a feature set candidate")
            object.__setattr__(self, "candidate", frozenset(self.candidate))
            n = len(self.target.universe)
            if any(not 0 <= f < n for f in self.candidate):
                raise ModelError("candidate feature outside universe")
        else:
            if self.target not in (0, 1):
                raise ModelError("global kinds take a class bit as target")
            if not isinstance(self.candidate, PartialExample):
                raise ModelError("global kinds take a partial example candidate")


def local_query(kind: str, e: Example, features: Iterable[int]) -> ExplanationQuery:
    return ExplanationQuery(kind, e, frozenset(int(f) for f in features))


def global_query(kind: str, c: int, tau: PartialExample) -> ExplanationQuery:
    return ExplanationQuery(kind, int(c), tau)


# ---------------------------------------------------------------------------
# decision tree restriction and fast verification
# ---------------------------------------------------------------------------


def restrict_dt(t: DecisionTree, tau: PartialExample) -> DecisionTree:
    """The tree seen by examples extending tau: at every inner node testing an
    assigned feature, the inconsistent child is dropped and the node spliced
    out."""
    t = normalize_dt(t)
    assigned = tau.as_dict()
    nodes: list = []

    def build(i: int) -> int:
        node = t.nodes[i]
        if isinstance(node, Leaf):
            nodes.append(Leaf(node.label))
            return len(nodes) - 1
        b = assigned.get(node.feature)
        if b is not None:
            return build(node.hi if b else node.lo)
        lo = build(node.lo)
        hi = build(node.hi)
        nodes.append(Split(node.feature, lo, hi))
        return len(nodes) - 1

    root = build(t.root)
    return DecisionTree(t.universe, tuple(nodes), root)


def _reachable_has_label(t: DecisionTree, assigned: dict, label: int) -> bool:
    """Is some leaf of the restriction of t to `assigned` labelled `label`?

    Same predicate as inspecting restrict_dt(t, assigned), computed by
    traversal without materializing the restricted tree.
    """
    stack = [t.root]
    while stack:
        node = t.nodes[stack.pop()]
        if isinstance(node, Leaf):
            if node.label == label:
                return True
            continue
        b = assigned.get(node.feature)
        if b is None:
            stack.append(node.lo)
            stack.append(node.hi)
        else:
            stack.append(node.hi if b else node.lo)
    return False


def _verify_dt(t: DecisionTree, q: ExplanationQuery) -> bool:
    t = normalize_dt(t)
    if q.kind == "laxp":
        e = q.target
        assigned = {f: e.bits[f] for f in q.candidate}
        return not _reachable_has_label(t, assigned, 1 - classify(t, e))
    if q.kind == "lcxp":
        e = q.target
        assigned = {
            f: e.bits[f] for f in range(len(t.universe)) if f not in q.candidate
        }
        return _reachable_has_label(t, assigned, 1 - classify(t, e))
    assigned = q.candidate.as_dict()
    if q.kind == "gaxp":
        return not _reachable_has_label(t, assigned, 1 - q.target)
    return not _reachable_has_label(t, assigned, q.target)  # gcxp


# ---------------------------------------------------------------------------
# generic verification by enumeration
# ---------------------------------------------------------------------------


def _bit(table: int, mask: int) -> int:
    return (table >> mask) & 1


def _completions(base: int, free: list[int]) -> Iterator[int]:
    for x in range(1 << len(free)):
        m = base
        j = 0
        while x >> j:
            if (x >> j) & 1:
                m |= 1 << free[j]
            j += 1
        yield m


def _classify_mask(model, mask: int) -> int:
    u = model.universe
    return classify(model, Example.from_mask(u, mask))


def verify_by_enumeration(model, q: ExplanationQuery, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """The definition, checked directly over all relevant completions."""
    n = len(model.universe)
    table = truth_table(model) if n <= _TABLE_LIMIT else None
    look = (lambda m: _bit(table, m)) if table is not None else (
        lambda m: _classify_mask(model, m)
    )
    if q.kind in LOCAL_KINDS:
        e = q.target
        cls = look(e.mask())
        if q.kind == "laxp":
            free = [f for f in range(n) if f not in q.candidate]
            require_cap(len(free), caps.verify, "verify laxp")
            base = e.mask() & ~sum(1 << f for f in free)
            return all(look(m) == cls for m in _completions(base, free))
        # lcxp: a witness differing from e only inside A exists iff some
        # subset of A flipped on e changes the class
        require_cap(len(q.candidate), caps.verify, "verify lcxp")
        amask = sum(1 << f for f in q.candidate)
        emask = e.mask()
        sub = amask
        while True:
            if look(emask ^ sub) != cls:
                return True
            if sub == 0:
                return False
            sub = (sub - 1) & amask
    tau = q.candidate
    dom = set(tau.domain)
    free = [f for f in range(n) if f not in dom]
    require_cap(len(free), caps.verify, f"verify {q.kind}")
    base = sum(b << f for f, b in tau.assignments)
    if q.kind == "gaxp":
        return all(look(m) == q.target for m in _completions(base, free))
    return all(look(m) != q.target for m in _completions(base, free))


def verify(model, q: ExplanationQuery, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Is the candidate an explanation?  Trees use the restriction fast path,
    everything else falls back to enumeration."""
    if q.kind in LOCAL_KINDS and q.target.universe != model.universe:
        raise ModelError("target example universe differs from model universe")
    if isinstance(model, DecisionTree):
        return _verify_dt(model, q)
    return verify_by_enumeration(model, q, caps)


# ---------------------------------------------------------------------------
# exhaustive oracle
# ---------------------------------------------------------------------------


def oracle_min(
    model, kind: str, target, caps: BruteCaps = DEFAULT_CAPS
) -> Optional[tuple[int, Candidate]]:
    """Smallest explanation by direct enumeration: subsets by increasing
    cardinality (lexicographic within one), for global kinds additionally all
    assignments of the chosen subset.  Returns (size, witness) or None when
    no explanation exists."""
    if kind not in KINDS:
        raise ModelError(f"unknown explanation kind {kind!r}")
    n = len(model.universe)
    local = kind in LOCAL_KINDS
    require_cap(n, caps.oracle_local if local else caps.oracle_global, f"oracle {kind}")
    table = truth_table(model)
    full = (1 << (1 << n)) - 1
    if local:
        e: Example = target
        cls = _bit(table, e.mask())
        emask = e.mask()
        if kind == "lcxp" and table in (0, full):
            return None  # homogeneous: no flip ever changes the class
        for size in range(n + 1):
            for subset in combinations(range(n), size):
                if kind == "lcxp":
                    amask = sum(1 << f for f in subset)
                    if _bit(table, emask ^ amask) != cls:
                        return size, frozenset(subset)
                else:
                    if _laxp_holds(table, n, emask, cls, subset):
                        return size, frozenset(subset)
        return None  # lcxp only: laxp always holds at the full set
    # nonexistence is total: no example of the wanted class at all
    wanted = table if target == 1 else full ^ table
    if kind == "gcxp":
        wanted = full ^ wanted
    if wanted == 0:
        return None
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            for m in range(1 << size):
                assigned = {f: (m >> j) & 1 for j, f in enumerate(subset)}
                if _global_holds(table, n, assigned, target, kind):
                    return size, PartialExample(model.universe, tuple(assigned.items()))
    return None


def _laxp_holds(table: int, n: int, emask: int, cls: int, subset) -> bool:
    free = [f for f in range(n) if f not in subset]
    base = emask & ~sum(1 << f for f in free)
    return all(_bit(table, m) == cls for m in _completions(base, free))


def _global_holds(table: int, n: int, assigned: dict, c: int, kind: str) -> bool:
    free = [f for f in range(n) if f not in assigned]
    base = sum(b << f for f, b in assigned.items())
    if kind == "gaxp":
        return all(_bit(table, m) == c for m in _completions(base, free))
    return all(_bit(table, m) != c for m in _completions(base, free))


def oracle_subset_min_check(
    model, kind: str, target, candidate: Candidate, caps: BruteCaps = DEFAULT_CAPS
) -> bool:
    """True iff the candidate verifies and no single-element removal does."""
    if kind in LOCAL_KINDS:
        q = local_query(kind, target, candidate)
        if not verify(model, q, caps):
            return False
        for f in sorted(q.candidate):
            smaller = local_query(kind, target, q.candidate - {f})
            if verify(model, smaller, caps):
                return False
        return True
    tau: PartialExample = candidate
    if not verify(model, global_query(kind, target, tau), caps):
        return False
    for f in tau.domain:
        smaller = global_query(kind, target, tau.restricted_off(f))
        if verify(model, smaller, caps):
            return False
    return True


# ---------------------------------------------------------------------------
# homogeneity checks (model level)
# ---------------------------------------------------------------------------


def hom_check(model, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Is some example classified differently from the all-zero example?"""
    n = len(model.universe)
    require_cap(n, caps.verify, "hom")
    if n <= _TABLE_LIMIT:
        table = truth_table(model)
        full = (1 << (1 << n)) - 1
        return table != (full if table & 1 else 0)
    base = _classify_mask(model, 0)
    return any(_classify_mask(model, m) != base for m in range(1, 1 << n))


def phom_check(model, k: int, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Is some example with at most k ones classified differently from the
    all-zero example?"""
    n = len(model.universe)
    require_cap(min(k, n), caps.verify, "phom")
    table = truth_table(model) if n <= _TABLE_LIMIT else None
    look = (lambda m: _bit(table, m)) if table is not None else (
        lambda m: _classify_mask(model, m)
    )
    base = look(0)
    for size in range(1, min(k, n) + 1):
        for subset in combinations(range(n), size):
            if look(sum(1 << f for f in subset)) != base:
                return True
    return False
