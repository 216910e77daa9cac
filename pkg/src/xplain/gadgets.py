"""Constructive reductions emitted as models plus ground-truth metadata.

Two building blocks sit underneath everything here.

* ``odt_from_examples`` grows an ordered tree accepting exactly a given set
  of assignments of some feature subset, by grafting one feature chain per
  example onto the running tree.
* Set- and subset-recognizers: ``set_model_odt`` accepts the examples whose
  one-set *restricted to the family's domain* equals a member set;
  ``subset_model_rules`` accepts those whose one-set contains a member.

The generators assemble these into instances whose explanation/homogeneity
queries are equivalent, by construction, to a combinatorial source problem
(hitting set, clique in a vertex-coloured graph, DNF tautology).  Every
generated instance carries the source-problem answer computed by the naive
solvers in :mod:`xplain.truth`, which share no code with the constructions.

Generated universes are laid out in the declared feature order, so the order
tag of every emitted tree is the identity permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

from . import truth
from .config import DEFAULT_CAPS, BruteCaps
from .core import (
    DecisionList,
    DecisionSet,
    DecisionTree,
    Ensemble,
    Example,
    FeatureUniverse,
    Leaf,
    ModelError,
    PartialExample,
    Split,
    classify,
    measure,
    respects_order,
)
from .explain_rules import lcxp_card_enum
from .verify import hom_check, oracle_min, phom_check


# ---------------------------------------------------------------------------
# instance containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    """Family of feature subsets, with the feature set the recognizer reads.

    ``domain`` defaults to the union of the sets; a larger domain makes the
    set-recognizer reject examples that are positive anywhere else in it.
    """

    universe: FeatureUniverse
    sets: tuple[frozenset, ...]
    domain: Optional[frozenset] = None

    def __post_init__(self) -> None:
        seen: list[frozenset] = []
        for s in self.sets:
            fs = frozenset(int(f) for f in s)
            if fs not in seen:
                seen.append(fs)
        sets = tuple(seen)
        object.__setattr__(self, "sets", sets)
        union = frozenset().union(*sets) if sets else frozenset()
        domain = frozenset(int(f) for f in self.domain) if self.domain is not None else union
        object.__setattr__(self, "domain", domain)
        n = len(self.universe)
        if any(not 0 <= f < n for f in domain):
            raise ModelError("domain feature outside universe")
        if not union <= domain:
            raise ModelError("family sets must lie inside the domain")

    @property
    def max_set_size(self) -> int:
        return max((len(s) for s in self.sets), default=0)


@dataclass(frozen=True)
class ColouredGraph:
    """Vertices partitioned into colour classes; no edge inside a class."""

    classes: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        colour_of = {}
        for ci, cls in enumerate(classes):
            for v in cls:
                if v in colour_of:
                    raise ModelError(f"vertex {v!r} occurs twice")
                colour_of[v] = ci
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "edges", tuple(sorted(set(edges))))
        for u, v in self.edges:
            if u not in colour_of or v not in colour_of:
                raise ModelError("edge endpoint is not a vertex")
            if u == v:
                raise ModelError("self loops are not allowed")
            if colour_of[u] == colour_of[v]:
                raise ModelError("edge inside a colour class: colouring not proper")

    @property
    def k(self) -> int:
        return len(self.classes)

    def vertices(self) -> list[str]:
        return [v for cls in self.classes for v in cls]


@dataclass(frozen=True)
class Query:
    kind: str  # laxp | lcxp | gaxp | gcxp | hom | phom
    target: object = None  # Example for local kinds, class bit for global
    k: Optional[int] = None


@dataclass(frozen=True)
class GadgetInstance:
    model: object
    queries: tuple[Query, ...]
    truth: bool
    provenance: str
    meta: dict = field(default_factory=dict)


def answer_query(model, q: Query, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Answer a gadget query by brute force (oracle scale).  Large ordered
    trees fall back to exact bounded search instead of full enumeration."""
    if q.kind == "hom":
        return hom_check(model, caps)
    if q.kind == "phom":
        return phom_check(model, q.k, caps)
    n = len(model.universe)
    if q.kind in ("laxp", "lcxp"):
        if q.kind == "lcxp":
            return lcxp_card_enum(model, q.target, q.k) is not None
        found = oracle_min(model, "laxp", q.target, caps)
        return found is not None and found[0] <= q.k
    if q.kind in ("gaxp", "gcxp"):
        if n <= caps.oracle_global:
            found = oracle_min(model, q.kind, q.target, caps)
            return found is not None and found[0] <= q.k
        if isinstance(model, DecisionTree):
            return global_budget_search_dt(model, q.kind, q.target, q.k) is not None
        raise ModelError("global query too large for the oracle")
    raise ModelError(f"unknown query kind {q.kind!r}")


def global_budget_search_dt(
    t: DecisionTree, kind: str, c: int, k: int
) -> Optional[PartialExample]:
    """Exact bounded search for a small global explanation on a tree.

    A partial example forces class c (or forbids it, for the contrastive
    kind) exactly when it conflicts the path assignment of every leaf of the
    other class (of class c).  Branch over the ways to conflict some
    still-reachable offending leaf: at most depth-many choices, at most k
    deep.  Equivalent to the exhaustive search, exponentially cheaper when k
    is small.
    """
    if kind not in ("gaxp", "gcxp"):
        raise ModelError("budget search handles the global kinds")
    from .explain_dt import leaf_assignments
    from .core import normalize_dt

    t = normalize_dt(t)
    bad = 1 - c if kind == "gaxp" else c
    offending = [
        assigned for i, assigned in leaf_assignments(t) if t.nodes[i].label == bad
    ]

    def search(tau: dict[int, int]) -> Optional[dict[int, int]]:
        alive = next(
            (
                a
                for a in offending
                if all(tau.get(f, b) == b for f, b in a.items())
            ),
            None,
        )
        if alive is None:
            return dict(tau)
        if len(tau) >= k:
            return None
        best: Optional[dict[int, int]] = None
        for f, b in sorted(alive.items()):
            if f in tau:
                continue
            tau[f] = 1 - b
            found = search(tau)
            del tau[f]
            if found is not None and (best is None or len(found) < len(best)):
                best = found
        return best

    found = search({})
    if found is None:
        return None
    return PartialExample(t.universe, tuple(found.items()))


# ---------------------------------------------------------------------------
# ordered-tree builders
# ---------------------------------------------------------------------------


def odt_from_examples(
    u: FeatureUniverse,
    rows: Sequence[PartialExample],
    order: Sequence[int],
) -> DecisionTree:
    """Ordered tree accepting exactly the examples agreeing with some row.

    All rows must assign the same feature subset; the tree tests those
    features in the induced order, one chain per row grafted onto the running
    tree, so it has exactly ``len(rows)`` positive leaves.
    """
    order = tuple(int(f) for f in order)
    if sorted(order) != list(range(len(u))):
        raise ModelError("order must be a permutation of the universe")
    domains = {r.domain for r in rows}
    if len(domains) > 1:
        raise ModelError("rows must assign one common feature subset")
    assignments = [r.as_dict() for r in rows]
    if len({tuple(sorted(a.items())) for a in assignments}) != len(rows):
        raise ModelError("duplicate rows")
    domain = set(domains.pop()) if domains else set()
    seq = [f for f in order if f in domain]
    nodes: list = []

    def build(depth: int, member: list[dict[int, int]]) -> int:
        if not member:
            nodes.append(Leaf(0))
            return len(nodes) - 1
        if depth == len(seq):
            nodes.append(Leaf(1))
            return len(nodes) - 1
        f = seq[depth]
        lo = build(depth + 1, [a for a in member if a[f] == 0])
        hi = build(depth + 1, [a for a in member if a[f] == 1])
        nodes.append(Split(f, lo, hi))
        return len(nodes) - 1

    root = build(0, assignments)
    tree = DecisionTree(u, tuple(nodes), root, order)
    positives = sum(1 for n in tree.nodes if isinstance(n, Leaf) and n.label == 1)
    assert positives == len(rows)
    assert tree.leaf_count() <= 2 * max(1, len(rows)) * max(1, len(seq)) + 1
    assert respects_order(tree, order)
    return tree


def _flip_leaves(t: DecisionTree) -> DecisionTree:
    nodes = tuple(
        Leaf(1 - n.label) if isinstance(n, Leaf) else n for n in t.nodes
    )
    return DecisionTree(t.universe, nodes, t.root, t.order)


def set_model_odt(fam: SetFamily, c: int, order: Sequence[int]) -> DecisionTree:
    """Ordered tree c-classifying exactly the examples whose one-set within
    the family's domain equals a member set."""
    domain = sorted(fam.domain)
    rows = [
        PartialExample(fam.universe, tuple((f, 1 if f in s else 0) for f in domain))
        for s in fam.sets
    ]
    tree = odt_from_examples(fam.universe, rows, order)
    if c == 0:
        tree = _flip_leaves(tree)
    from .core import _dt_mnl

    assert _dt_mnl(tree) <= len(fam.sets)
    return tree


def subset_model_rules(
    fam: SetFamily, c: int, family: str = "ds"
) -> Union[DecisionSet, DecisionList]:
    """Rule model c-classifying exactly the examples whose one-set contains a
    member set (positive literals only)."""
    terms = tuple(tuple((f, 1) for f in sorted(s)) for s in fam.sets)
    if family == "ds":
        model: Union[DecisionSet, DecisionList] = DecisionSet(fam.universe, terms, 1 - c)
    elif family == "dl":
        rules = tuple((t, c) for t in terms) + (((), 1 - c),)
        model = DecisionList(fam.universe, rules)
    else:
        raise ModelError("family must be 'ds' or 'dl'")
    a, b = fam.max_set_size, len(fam.sets)
    report = measure(model)
    assert report.term_size <= max(a, 0)
    assert report.terms_elem <= b + 1
    assert report.size_elem <= a * b + b + 1
    return model


def _constant_model(u: FeatureUniverse, bit: int, family: str, order: Sequence[int]):
    if family == "odt":
        return DecisionTree(u, (Leaf(bit),), 0, tuple(order))
    if family == "ds":
        return DecisionSet(u, (), bit)
    if family == "dl":
        return DecisionList(u, (((), bit),))
    raise ModelError("family must be 'odt', 'ds' or 'dl'")


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def hitting_set_gadget(
    elements: Sequence, sets: Sequence, k: int, mode: str
) -> GadgetInstance:
    """Hitting-set instance encoded as explanation queries on a recognizer.

    set-odt mode asks for a small abductive explanation of the all-zero
    example; subset mode additionally carries the equivalent contrastive and
    global queries.  All queries answer yes exactly when a hitting set of
    size at most k exists.
    """
    if mode not in ("set-odt", "subset-ds", "subset-dl"):
        raise ModelError(f"unknown hitting set mode {mode!r}")
    if k < 0:
        raise ModelError("k must be nonnegative")
    fam_sets = [frozenset(s) for s in sets]
    element_set = set(elements)
    for s in fam_sets:
        if not s:
            raise ModelError("empty sets admit no hitting set; instance rejected")
        if not s <= element_set:
            raise ModelError("set member outside the universe")
    used = sorted(set().union(*fam_sets)) if fam_sets else []
    u = FeatureUniverse(tuple(f"f.{x}" for x in used))
    index_of = {x: i for i, x in enumerate(used)}
    fam = SetFamily(u, tuple(frozenset(index_of[x] for x in s) for s in fam_sets))
    order = tuple(range(len(u)))
    zero = Example(u, (0,) * len(u))
    if mode == "set-odt":
        model: object = set_model_odt(fam, 1, order)
        queries: tuple[Query, ...] = (Query("laxp", zero, k),)
    else:
        model = subset_model_rules(fam, 1, mode.split("-")[1])
        ones = Example(u, (1,) * len(u))
        queries = (
            Query("laxp", zero, k),
            Query("lcxp", ones, k),
            Query("gaxp", 0, k),
            Query("gcxp", 1, k),
        )
    size = truth.min_hitting_set_size(fam_sets)
    return GadgetInstance(
        model,
        queries,
        truth=size is not None and size <= k,
        provenance=f"hitting-set/{mode}",
        meta={"order": [u.name(f) for f in order], "min_hitting_set": size},
    )


def _graph_universe(g: ColouredGraph) -> tuple[FeatureUniverse, dict[str, int]]:
    names = []
    feature_of = {}
    for ci, cls in enumerate(g.classes):
        for vi, v in enumerate(cls):
            feature_of[v] = len(names)
            names.append(f"v.{ci}.{vi}")
    return FeatureUniverse(tuple(names)), feature_of


def _clique_truth(g: ColouredGraph, k: int) -> bool:
    return truth.has_clique(g.vertices(), g.edges, k)


def mcc_ensemble_gadget(
    g: ColouredGraph, k: int, mode: str, family: str = "ds"
) -> GadgetInstance:
    """Ensemble positive on some example iff the graph has a k-clique.

    set mode: one pair-recognizer per colour pair (reading both colour
    blocks) and constant-0 padders, so an example is accepted only when every
    pair model accepts.  subset mode: per-colour existence models, one
    rejector for non-edges and same-colour duplications, and constant-0
    padders up to 2k + 1 elements.
    """
    if k != g.k:
        raise ModelError("k must equal the number of colour classes")
    if mode not in ("set", "subset"):
        raise ModelError(f"unknown mode {mode!r}")
    u, feature_of = _graph_universe(g)
    colour_of = {v: ci for ci, cls in enumerate(g.classes) for v in cls}
    order = tuple(range(len(u)))
    elements: list = []
    if mode == "set":
        if k < 2:
            raise ModelError("set mode needs at least two colour classes")
        for i, j in combinations(range(k), 2):
            pairs = tuple(
                frozenset((feature_of[x], feature_of[y]))
                for x, y in g.edges
                if {colour_of[x], colour_of[y]} == {i, j}
            )
            # the recognizer reads both colour blocks, so a stray one
            # anywhere in them breaks set equality
            domain = frozenset(
                feature_of[v] for v in (*g.classes[i], *g.classes[j])
            )
            fam = SetFamily(u, pairs, domain)
            elements.append(set_model_odt(fam, 1, order))
        pair_checks = len(elements)
        elements.extend(
            _constant_model(u, 0, "odt", order) for _ in range(pair_checks - 1)
        )
    else:
        for cls in g.classes:
            fam = SetFamily(u, tuple(frozenset((feature_of[v],)) for v in cls))
            elements.append(subset_model_rules(fam, 1, family))
        non_edges = tuple(
            frozenset((feature_of[x], feature_of[y]))
            for x, y in combinations(g.vertices(), 2)
            if (min(x, y), max(x, y)) not in g.edges
        )
        elements.append(subset_model_rules(SetFamily(u, non_edges), 0, family))
        # k constant-0 padders lift the majority threshold to "every
        # non-padder element must accept"
        elements.extend(_constant_model(u, 0, family, order) for _ in range(k))
    ens = Ensemble(u, tuple(elements))
    zero = Example(u, (0,) * len(u))
    assert classify(ens, zero) == 0
    return GadgetInstance(
        ens,
        (Query("hom"), Query("phom", k=k)),
        truth=_clique_truth(g, k),
        provenance=f"mcc-ensemble/{mode}",
        meta={"order": [u.name(f) for f in order], "ens_size": len(elements)},
    )


def mcc_unary_ensemble_gadget(
    g: ColouredGraph, k: int, mode: str, family: str = "ds"
) -> GadgetInstance:
    """Clique encoding with constant-size elements: n copies of a rejector
    per non-edge, one supporter per vertex, and exactly enough constant-0
    padders that a k-clique example wins the vote by a single ballot."""
    if k != g.k:
        raise ModelError("k must equal the number of colour classes")
    if mode not in ("set", "subset"):
        raise ModelError(f"unknown mode {mode!r}")
    u, feature_of = _graph_universe(g)
    order = tuple(range(len(u)))
    vertices = g.vertices()
    n = len(vertices)
    if n == 0:
        raise ModelError("graph needs at least one vertex")
    non_edges = [
        (x, y)
        for x, y in combinations(vertices, 2)
        if (min(x, y), max(x, y)) not in g.edges
    ]
    builder = (
        (lambda fam, c: set_model_odt(fam, c, order))
        if mode == "set"
        else (lambda fam, c: subset_model_rules(fam, c, family))
    )
    elements: list = []
    for x, y in non_edges:
        fam = SetFamily(u, (frozenset((feature_of[x], feature_of[y])),))
        rejector = builder(fam, 0)
        elements.extend([rejector] * n)
    for v in vertices:
        elements.append(builder(SetFamily(u, (frozenset((feature_of[v],)),)), 1))
    padders = n * len(non_edges) - n + 2 * k - 1
    assert padders >= 0
    pad_family = "odt" if mode == "set" else family
    elements.extend(_constant_model(u, 0, pad_family, order) for _ in range(padders))
    ens = Ensemble(u, tuple(elements))
    zero = Example(u, (0,) * len(u))
    positive_votes = sum(classify(m, zero) for m in ens.elements)
    assert positive_votes == n * len(non_edges)
    assert classify(ens, zero) == 0
    return GadgetInstance(
        ens,
        (Query("hom"), Query("phom", k=k)),
        truth=_clique_truth(g, k),
        provenance=f"mcc-unary-ensemble/{mode}",
        meta={
            "order": [u.name(f) for f in order],
            "ens_size": len(elements),
            "padders": padders,
        },
    )


def _graft(t: DecisionTree, leaf_index: int, sub: DecisionTree) -> DecisionTree:
    """Replace a leaf with a copy of another tree over the same universe."""
    assert isinstance(t.nodes[leaf_index], Leaf)
    nodes = list(t.nodes)
    mapping = {}
    rest = [j for j in range(len(sub.nodes)) if j != sub.root]
    for pos, j in enumerate(rest):
        mapping[j] = len(nodes) + pos
    mapping[sub.root] = leaf_index

    def remap(node):
        if isinstance(node, Leaf):
            return node
        return Split(node.feature, mapping[node.lo], mapping[node.hi])

    nodes[leaf_index] = remap(sub.nodes[sub.root])
    for j in rest:
        nodes.append(remap(sub.nodes[j]))
    return DecisionTree(t.universe, tuple(nodes), t.root, t.order)


def _complete_zero_tree(
    u: FeatureUniverse, depth: int, first_feature: int, order
) -> DecisionTree:
    """Complete all-0-leaves tree of the given depth; every inner node tests
    its own feature.  Features are consumed level by level starting at
    ``first_feature``, matching a level-major universe layout."""
    nodes: list = []

    def build(level: int, pos: int) -> int:
        if level == depth:
            nodes.append(Leaf(0))
            return len(nodes) - 1
        feature = first_feature + (1 << level) - 1 + pos
        lo = build(level + 1, 2 * pos)
        hi = build(level + 1, 2 * pos + 1)
        nodes.append(Split(feature, lo, hi))
        return len(nodes) - 1

    root = build(0, 0)
    return DecisionTree(u, tuple(nodes), root, tuple(order))


def mcc_odt_gaxp_gadget(g: ColouredGraph, k: int, max_k: int = 10) -> GadgetInstance:
    """Single ordered tree whose class-0 global abductive explanations of
    size at most k correspond to k-cliques.

    Per colour pair (i, j), i < j, a block accepts an example iff colour i is
    all zero, or exactly one colour-i vertex v is set and v's colour-j
    neighbours are all zero; a per-colour block accepts iff that colour is
    all zero.  Silencing the per-colour blocks forces one set vertex in every
    colour (exactly one, by the size budget), and silencing the pair blocks
    then forces each chosen pair to be adjacent.  The blocks hang under a
    scaffold of auxiliary features wide enough that no k features can cover
    all of it, so a small explanation must silence every block with vertex
    features alone.
    """
    if k != g.k:
        raise ModelError("k must equal the number of colour classes")
    if k < 2:
        raise ModelError("the construction needs at least two colour classes")
    if k > max_k:
        raise ModelError(f"k={k} exceeds the auxiliary-feature ceiling {max_k}")
    block_count = k * (k - 1) // 2 + k
    depth_low = math.ceil(math.log2(block_count))
    copies = 1 << k
    # universe: scaffold features first (level by level), then per-copy
    # lower-scaffold features, then vertex features in colour-block order
    names: list[str] = []
    for level in range(k):
        names.extend(f"aux.u.{level}.{pos}" for pos in range(1 << level))
    for copy in range(copies):
        for level in range(depth_low):
            names.extend(f"aux.d.{copy}.{level}.{pos}" for pos in range(1 << level))
    vertex_offset = len(names)
    for ci, cls in enumerate(g.classes):
        names.extend(f"v.{ci}.{vi}" for vi in range(len(cls)))
    u = FeatureUniverse(tuple(names))
    order = tuple(range(len(u)))
    feature_of = {}
    pos = vertex_offset
    for cls in g.classes:
        for v in cls:
            feature_of[v] = pos
            pos += 1
    neighbours = {v: set() for v in g.vertices()}
    for x, y in g.edges:
        neighbours[x].add(y)
        neighbours[y].add(x)

    def pair_block(i: int, j: int) -> DecisionTree:
        f_i = [feature_of[v] for v in g.classes[i]]
        rows = [PartialExample(u, tuple((f, 0) for f in f_i))]
        for v in g.classes[i]:
            rows.append(
                PartialExample(
                    u, tuple((f, 1 if f == feature_of[v] else 0) for f in f_i)
                )
            )
        block = odt_from_examples(u, rows, order)
        for v in g.classes[i]:
            target = {f: (1 if f == feature_of[v] else 0) for f in f_i}
            leaf = _walk_to_leaf(block, target)
            assert isinstance(block.nodes[leaf], Leaf) and block.nodes[leaf].label == 1
            nbr = sorted(feature_of[w] for w in neighbours[v] if w in set(g.classes[j]))
            zero_row = [PartialExample(u, tuple((f, 0) for f in nbr))]
            accept_zero = odt_from_examples(u, zero_row, order)
            block = _graft(block, leaf, accept_zero)
        return block

    def colour_zero_block(i: int) -> DecisionTree:
        row = [PartialExample(u, tuple((feature_of[v], 0) for v in g.classes[i]))]
        return odt_from_examples(u, row, order)

    blocks = [pair_block(i, j) for i, j in combinations(range(k), 2)]
    blocks.extend(colour_zero_block(i) for i in range(k))
    assert len(blocks) == block_count
    # scaffold: complete tree over the upper features, then one lower copy
    # per upper leaf, then the pair blocks on the lower copies' own leaves
    tree = _complete_zero_tree(u, k, 0, order)
    upper_leaves = tree.leaves()
    lower_base = (1 << k) - 1
    lower_size = (1 << depth_low) - 1
    for copy, upper_leaf in enumerate(upper_leaves):
        lower = _complete_zero_tree(  # over this copy's private features
            u, depth_low, lower_base + copy * lower_size, order
        )
        # graft targets fixed before grafting: _graft keeps other node
        # indices valid, and searching afresh could land inside a block
        targets = lower.leaves()[: block_count]
        for target_leaf, block in zip(targets, blocks):
            lower = _graft(lower, target_leaf, block)
        tree = _graft(tree, upper_leaf, lower)
    assert respects_order(tree, order)
    n_vertices = len(g.vertices())
    assert tree.leaf_count() <= 4 * copies * max(1, k * k) * max(1, n_vertices) ** 2
    return GadgetInstance(
        tree,
        (Query("gaxp", 0, k),),
        truth=_clique_truth(g, k),
        provenance="mcc-odt-gaxp",
        meta={"order": [u.name(f) for f in order], "aux_features": vertex_offset},
    )


def _walk_to_leaf(t: DecisionTree, bits: dict[int, int]) -> int:
    i = t.root
    while isinstance(t.nodes[i], Split):
        node = t.nodes[i]
        i = node.hi if bits[node.feature] else node.lo
    return i


def taut_ds_gadget(
    terms: Sequence[Sequence[tuple[str, int]]], variables: Sequence[str]
) -> GadgetInstance:
    """Decision set whose homogeneity answer decides DNF tautology.

    Needs the all-zero assignment to satisfy the formula; otherwise the
    formula is trivially no tautology and the instance carries a marker and
    no query.  Unsatisfiable (contradictory) terms never fire and are
    dropped.
    """
    u = FeatureUniverse(tuple(variables))
    clean = []
    for term in terms:
        if len(term) > 3:
            raise ModelError("terms may have at most three literals")
        required: dict[str, int] = {}
        contradictory = False
        for v, b in term:
            if required.setdefault(v, int(b)) != int(b):
                contradictory = True
        if not contradictory:
            clean.append(tuple(sorted((u.index(v), b) for v, b in required.items())))
    model = DecisionSet(u, tuple(clean), 0)
    tautology = truth.is_tautology_dnf(terms, variables)
    zero_satisfies = any(all(b == 0 for _, b in t) for t in clean)
    if not zero_satisfies:
        return GadgetInstance(
            model,
            (),
            truth=not tautology,
            provenance="taut-ds",
            meta={"trivial_no": True},
        )
    assert measure(model).term_size <= 3
    return GadgetInstance(
        model,
        (Query("hom"),),
        truth=not tautology,
        provenance="taut-ds",
        meta={"trivial_no": False},
    )


# ---------------------------------------------------------------------------
# homogeneity equivalence report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomEquivalenceReport:
    """Nine equivalent phrasings of 'the model classifies everything like the
    all-zero example', each evaluated through a different code path, plus the
    bounded-weight variant for every budget."""

    statements: tuple[bool, ...]
    khom: tuple[tuple[int, bool, bool], ...]  # (k, weight-bounded hom, lcxp <= k)

    @property
    def all_equal(self) -> bool:
        return len(set(self.statements)) == 1

    @property
    def khom_equal(self) -> bool:
        return all(a == b for _, a, b in self.khom)

    def as_dict(self) -> dict:
        return {
            "statements": list(self.statements),
            "all_equal": self.all_equal,
            "khom": [list(row) for row in self.khom],
            "khom_equal": self.khom_equal,
        }


def hom_equivalence_suite(model, caps: BruteCaps = DEFAULT_CAPS) -> HomEquivalenceReport:
    from .verify import global_query, local_query, verify

    u = model.universe
    n = len(u)
    zero = Example(u, (0,) * n)
    c = classify(model, zero)
    empty_set: frozenset = frozenset()
    empty_tau = PartialExample(u, ())
    statements = (
        not hom_check(model, caps),
        verify(model, local_query("laxp", zero, empty_set), caps),
        oracle_min(model, "lcxp", zero, caps) is None,
        verify(model, global_query("gaxp", c, empty_tau), caps),
        verify(model, global_query("gcxp", 1 - c, empty_tau), caps),
        verify(model, local_query("laxp", zero, empty_set), caps),
        lcxp_card_enum(model, zero, n) is None,
        verify(model, global_query("gaxp", c, empty_tau), caps),
        verify(model, global_query("gcxp", 1 - c, empty_tau), caps),
    )
    khom = tuple(
        (k, phom_check(model, k, caps), lcxp_card_enum(model, zero, k) is not None)
        for k in range(n + 1)
    )
    return HomEquivalenceReport(statements, khom)
