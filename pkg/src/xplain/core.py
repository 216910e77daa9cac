"""Feature universes, examples, and the model families with their semantics.

Models are immutable after construction and validated eagerly: a value that
exists is well-formed.  All algorithms work on dense feature indices; feature
names only matter at the JSON boundary.

Classification semantics:

* decision tree    -- walk from the root, at an inner node testing feature
                      ``f`` continue with the 0-child if ``e(f) == 0`` and the
                      1-child otherwise; the leaf label is the class.
* decision set     -- class ``default`` if no term applies, else
                      ``1 - default``.
* decision list    -- class of the first rule whose term applies; the last
                      term is empty, so some rule always applies.
* ensemble         -- majority vote of the (odd number of) elements.
* circuit          -- gate evaluation, see :mod:`xplain.circuits`.

Besides the per-example ``classify`` there is ``truth_table``, which computes
the class of every example over an ``n``-feature universe at once as a
``2**n``-bit integer (bit ``m`` = class of the example whose feature ``i`` is
bit ``i`` of ``m``).  The exhaustive checkers are built on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union


class ModelError(ValueError):
    """A model, example or query violates a structural invariant."""


# ---------------------------------------------------------------------------
# universe and examples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeatureUniverse:
    """Ordered set of distinct feature names; position = dense index."""

    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise ModelError("feature names must be distinct")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown feature {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    @property
    def size(self) -> int:
        return len(self.names)


def universe(*names: str) -> FeatureUniverse:
    return FeatureUniverse(tuple(names))


@dataclass(frozen=True)
class Example:
    """Total 0/1 assignment of a universe's features."""

    universe: FeatureUniverse
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) != len(self.universe):
            raise ModelError("example length differs from universe size")
        if any(b not in (0, 1) for b in bits):
            raise ModelError("example bits must be 0 or 1")

    def __getitem__(self, feature: int) -> int:
        return self.bits[feature]

    def mask(self) -> int:
        m = 0
        for i, b in enumerate(self.bits):
            m |= b << i
        return m

    @staticmethod
    def from_mask(u: FeatureUniverse, mask: int) -> "Example":
        return Example(u, tuple((mask >> i) & 1 for i in range(len(u))))


@dataclass(frozen=True)
class PartialExample:
    """0/1 assignment of some subset of a universe's features."""

    universe: FeatureUniverse
    assignments: tuple[tuple[int, int], ...]  # (feature index, bit), sorted

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(f), int(b)) for f, b in self.assignments))
        object.__setattr__(self, "assignments", pairs)
        seen = set()
        for f, b in pairs:
            if not 0 <= f < len(self.universe):
                raise ModelError(f"feature index {f} outside universe")
            if b not in (0, 1):
                raise ModelError("assigned bits must be 0 or 1")
            if f in seen:
                raise ModelError(f"feature index {f} assigned twice")
            seen.add(f)

    @staticmethod
    def from_dict(u: FeatureUniverse, assign: Mapping[int, int]) -> "PartialExample":
        return PartialExample(u, tuple(assign.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignments)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.assignments)

    def get(self, feature: int) -> Optional[int]:
        for f, b in self.assignments:
            if f == feature:
                return b
        return None

    def restricted_off(self, feature: int) -> "PartialExample":
        return PartialExample(
            self.universe, tuple(p for p in self.assignments if p[0] != feature)
        )

    def agrees_with(self, e: Example) -> bool:
        return all(e.bits[f] == b for f, b in self.assignments)


# ---------------------------------------------------------------------------
# decision trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Split:
    feature: int
    lo: int  # child index followed when the feature is 0
    hi: int  # child index followed when the feature is 1


DTNode = Union[Leaf, Split]


@dataclass(frozen=True)
class DecisionTree:
    universe: FeatureUniverse
    nodes: tuple[DTNode, ...]
    root: int = 0
    order: Optional[tuple[int, ...]] = None  # declared feature order, if any

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise ModelError("decision tree needs at least one node")
        if not 0 <= self.root < len(nodes):
            raise ModelError("root index out of range")
        n = len(self.universe)
        seen: set[int] = set()
        stack = [self.root]
        while stack:
            i = stack.pop()
            if i in seen:
                raise ModelError("node reachable twice: not a tree")
            seen.add(i)
            node = nodes[i]
            if isinstance(node, Leaf):
                if node.label not in (0, 1):
                    raise ModelError("leaf labels must be 0 or 1")
            else:
                if not 0 <= node.feature < n:
                    raise ModelError(f"feature index {node.feature} outside universe")
                for c in (node.lo, node.hi):
                    if not 0 <= c < len(nodes):
                        raise ModelError("child index out of range")
                    stack.append(c)
        if len(seen) != len(nodes):
            raise ModelError("arena contains nodes unreachable from the root")
        if self.order is not None:
            order = tuple(self.order)
            object.__setattr__(self, "order", order)
            if sorted(order) != list(range(n)):
                raise ModelError("order tag must be a permutation of the features")

    def leaves(self) -> list[int]:
        """Leaf node indices in depth-first (0-child first) order."""
        out: list[int] = []
        stack = [self.root]
        while stack:
            i = stack.pop()
            node = self.nodes[i]
            if isinstance(node, Leaf):
                out.append(i)
            else:
                stack.append(node.hi)
                stack.append(node.lo)
        return out

    def leaf_count(self) -> int:
        return sum(1 for n in self.nodes if isinstance(n, Leaf))


def leaf_tree(u: FeatureUniverse, label: int) -> DecisionTree:
    return DecisionTree(u, (Leaf(label),), 0)


# ---------------------------------------------------------------------------
# rule models
# ---------------------------------------------------------------------------

Term = tuple[tuple[int, int], ...]  # ((feature index, required bit), ...), sorted


def make_term(literals: Iterable[tuple[int, int]]) -> Term:
    """Canonicalize a set of literals; contradictory terms are rejected."""
    required: dict[int, int] = {}
    for f, b in literals:
        f, b = int(f), int(b)
        if b not in (0, 1):
            raise ModelError("literal bit must be 0 or 1")
        if required.setdefault(f, b) != b:
            raise ModelError(f"contradictory term: feature {f} required 0 and 1")
    return tuple(sorted(required.items()))


def term_applies(term: Term, e: Example) -> bool:
    return all(e.bits[f] == b for f, b in term)


@dataclass(frozen=True)
class DecisionSet:
    universe: FeatureUniverse
    terms: tuple[Term, ...]
    default: int

    def __post_init__(self) -> None:
        terms = tuple(make_term(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if self.default not in (0, 1):
            raise ModelError("default class must be 0 or 1")
        n = len(self.universe)
        for t in terms:
            for f, _ in t:
                if not 0 <= f < n:
                    raise ModelError(f"feature index {f} outside universe")


@dataclass(frozen=True)
class DecisionList:
    universe: FeatureUniverse
    rules: tuple[tuple[Term, int], ...]

    def __post_init__(self) -> None:
        if not self.rules:
            raise ModelError("decision list needs at least one rule")
        rules = tuple((make_term(t), int(c)) for t, c in self.rules)
        object.__setattr__(self, "rules", rules)
        if rules[-1][0] != ():
            raise ModelError("last rule's term must be empty")
        n = len(self.universe)
        for t, c in rules:
            if c not in (0, 1):
                raise ModelError("rule class must be 0 or 1")
            for f, _ in t:
                if not 0 <= f < n:
                    raise ModelError(f"feature index {f} outside universe")


@dataclass(frozen=True)
class Ensemble:
    """Odd-sized majority vote over models of one family."""

    universe: FeatureUniverse
    elements: tuple  # DecisionTree | DecisionSet | DecisionList, homogeneous

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ModelError("ensemble needs at least one element")
        if len(elements) % 2 == 0:
            raise ModelError("ensemble size must be odd (majority must be total)")
        kinds = {type(m) for m in elements}
        if len(kinds) != 1:
            raise ModelError("ensemble elements must all be of one family")
        if not isinstance(elements[0], (DecisionTree, DecisionSet, DecisionList)):
            raise ModelError("ensemble elements must be trees, sets or lists")
        for m in elements:
            if m.universe != self.universe:
                raise ModelError("ensemble elements must share the universe")

    @property
    def family(self) -> str:
        return {DecisionTree: "dt", DecisionSet: "ds", DecisionList: "dl"}[
            type(self.elements[0])
        ]


Model = Union[DecisionTree, DecisionSet, DecisionList, Ensemble, "object"]


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def classify(model, e: Example) -> int:
    """Class of ``e`` under ``model``; total for every well-formed model."""
    if e.universe != _model_universe(model):
        raise ModelError("example universe differs from model universe")
    return _classify(model, e)


def _classify(model, e: Example) -> int:
    if isinstance(model, DecisionTree):
        i = model.root
        while True:
            node = model.nodes[i]
            if isinstance(node, Leaf):
                return node.label
            i = node.hi if e.bits[node.feature] else node.lo
    if isinstance(model, DecisionSet):
        for t in model.terms:
            if term_applies(t, e):
                return 1 - model.default
        return model.default
    if isinstance(model, DecisionList):
        for t, c in model.rules:
            if term_applies(t, e):
                return c
        raise AssertionError("unreachable: last rule applies to every example")
    if isinstance(model, Ensemble):
        votes = sum(_classify(m, e) for m in model.elements)
        return 1 if votes >= len(model.elements) // 2 + 1 else 0
    from . import circuits  # deferred: circuits imports core

    if isinstance(model, circuits.Circuit):
        return circuits.eval_circuit(model, e)
    raise ModelError(f"not a model: {model!r}")


def _model_universe(model) -> FeatureUniverse:
    u = getattr(model, "universe", None)
    if not isinstance(u, FeatureUniverse):
        raise ModelError(f"not a model: {model!r}")
    return u


# ---------------------------------------------------------------------------
# whole-universe truth tables (bit-parallel classification)
# ---------------------------------------------------------------------------


def feature_column(feature: int, n: int) -> int:
    """2**n-bit integer whose bit m is feature's value in example mask m."""
    period = 1 << feature
    block = (1 << period) - 1
    col = 0
    for start in range(period, 1 << n, period << 1):
        col |= block << start
    return col


def counter_ge(columns: Sequence[int], threshold: int, n: int) -> int:
    """Bitwise [number of set columns >= threshold] over 2**n positions."""
    full = (1 << (1 << n)) - 1
    if threshold <= 0:
        return full
    if threshold > len(columns):
        return 0
    planes: list[int] = []  # binary counter, least significant plane first
    for col in columns:
        carry = col
        for i, plane in enumerate(planes):
            planes[i], carry = plane ^ carry, plane & carry
            if not carry:
                break
        if carry:
            planes.append(carry)
    # compare the per-position counter against the constant threshold
    if threshold >> len(planes):
        return 0  # no position ever counted that high
    ge = 0
    eq = full
    for i in reversed(range(len(planes))):
        if (threshold >> i) & 1:
            eq &= planes[i]
        else:
            ge |= eq & planes[i]
    return ge | eq


def truth_table(model, n: Optional[int] = None) -> int:
    """Classes of all 2**n examples at once, packed into one integer."""
    u = _model_universe(model)
    if n is None:
        n = len(u)
    if n != len(u):
        raise ModelError("truth table width differs from universe size")
    return _table(model, n)


def _term_table(term: Term, n: int) -> int:
    full = (1 << (1 << n)) - 1
    t = full
    for f, b in term:
        col = feature_column(f, n)
        t &= col if b else (full ^ col)
    return t


def _table(model, n: int) -> int:
    full = (1 << (1 << n)) - 1
    if isinstance(model, DecisionTree):
        def rec(i: int) -> int:
            node = model.nodes[i]
            if isinstance(node, Leaf):
                return full if node.label else 0
            col = feature_column(node.feature, n)
            return (col & rec(node.hi)) | ((full ^ col) & rec(node.lo))

        return rec(model.root)
    if isinstance(model, DecisionSet):
        applied = 0
        for t in model.terms:
            applied |= _term_table(t, n)
        return (full ^ applied) if model.default else applied
    if isinstance(model, DecisionList):
        table = 0
        undecided = full
        for t, c in model.rules:
            fires = undecided & _term_table(t, n)
            if c:
                table |= fires
            undecided &= ~fires
        return table
    if isinstance(model, Ensemble):
        cols = [_table(m, n) for m in model.elements]
        return counter_ge(cols, len(cols) // 2 + 1, n)
    from . import circuits

    if isinstance(model, circuits.Circuit):
        return circuits.circuit_table(model, n)
    raise ModelError(f"not a model: {model!r}")


# ---------------------------------------------------------------------------
# tree normalization and ordering
# ---------------------------------------------------------------------------


def is_normalized(t: DecisionTree) -> bool:
    """Does no root-to-leaf path test a feature twice?"""

    def rec(i: int, on_path: set[int]) -> bool:
        node = t.nodes[i]
        if isinstance(node, Leaf):
            return True
        if node.feature in on_path:
            return False
        on_path.add(node.feature)
        ok = rec(node.lo, on_path) and rec(node.hi, on_path)
        on_path.discard(node.feature)
        return ok

    return rec(t.root, set())


def normalize_dt(t: DecisionTree) -> DecisionTree:
    """Equivalent tree in which no root-to-leaf path tests a feature twice.

    A repeated test is rerouted to the child consistent with the earlier
    decision, so the leaf count never grows.  Trees without repeats are
    returned unchanged.
    """
    if is_normalized(t):
        return t
    nodes: list[DTNode] = []

    def build(i: int, assigned: dict[int, int]) -> int:
        node = t.nodes[i]
        if isinstance(node, Leaf):
            nodes.append(Leaf(node.label))
            return len(nodes) - 1
        f = node.feature
        if f in assigned:
            return build(node.hi if assigned[f] else node.lo, assigned)
        assigned[f] = 0
        lo = build(node.lo, assigned)
        assigned[f] = 1
        hi = build(node.hi, assigned)
        del assigned[f]
        nodes.append(Split(f, lo, hi))
        return len(nodes) - 1

    root = build(t.root, {})
    out = DecisionTree(t.universe, tuple(nodes), root, t.order)
    assert out.leaf_count() <= t.leaf_count()
    return out


def respects_order(t: DecisionTree, order: Sequence[int]) -> bool:
    """True iff features occur strictly increasingly (per ``order``) on every
    root-to-leaf path."""
    rank = {int(f): pos for pos, f in enumerate(order)}
    if sorted(rank) != list(range(len(t.universe))):
        raise ModelError("order must be a permutation of the features")

    def rec(i: int, bound: int) -> bool:
        node = t.nodes[i]
        if isinstance(node, Leaf):
            return True
        r = rank[node.feature]
        if r <= bound:
            return False
        return rec(node.lo, r) and rec(node.hi, r)

    return rec(t.root, -1)


# ---------------------------------------------------------------------------
# parameter measurement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamReport:
    """Model parameters; fields that do not apply to the family are None.

    * tree size = number of leaves; mnl = the smaller of the two per-class
      leaf counts,
    * decision set size = sum of term sizes + 1 (the default rule),
    * decision list size = sum over rules of (term size + 1),
    * for ensembles the per-element parameters are maxima over the elements,
      ens_size is the element count and model_size the summed element sizes.
    """

    ens_size: Optional[int] = None
    mnl_size: Optional[int] = None
    terms_elem: Optional[int] = None
    term_size: Optional[int] = None
    size_elem: Optional[int] = None
    model_size: Optional[int] = None

    def as_dict(self) -> dict[str, int]:
        return {
            k: v
            for k, v in self.__dict__.items()
            if v is not None and not k.startswith("_")
        }


def _dt_mnl(t: DecisionTree) -> int:
    zeros = sum(1 for n in t.nodes if isinstance(n, Leaf) and n.label == 0)
    ones = sum(1 for n in t.nodes if isinstance(n, Leaf) and n.label == 1)
    return min(zeros, ones)


def _element_size(m) -> int:
    if isinstance(m, DecisionTree):
        return m.leaf_count()
    if isinstance(m, DecisionSet):
        return sum(len(t) for t in m.terms) + 1
    if isinstance(m, DecisionList):
        return sum(len(t) + 1 for t, _ in m.rules)
    raise ModelError(f"no size defined for {m!r}")


def measure(model) -> ParamReport:
    if isinstance(model, DecisionTree):
        size = model.leaf_count()
        return ParamReport(mnl_size=_dt_mnl(model), size_elem=size, model_size=size)
    if isinstance(model, DecisionSet):
        size = _element_size(model)
        return ParamReport(
            terms_elem=len(model.terms),
            term_size=max((len(t) for t in model.terms), default=0),
            size_elem=size,
            model_size=size,
        )
    if isinstance(model, DecisionList):
        size = _element_size(model)
        return ParamReport(
            terms_elem=len(model.rules),
            term_size=max(len(t) for t, _ in model.rules),
            size_elem=size,
            model_size=size,
        )
    if isinstance(model, Ensemble):
        reports = [measure(m) for m in model.elements]
        def agg(attr: str) -> Optional[int]:
            vals = [getattr(r, attr) for r in reports if getattr(r, attr) is not None]
            return max(vals) if vals else None
        return ParamReport(
            ens_size=len(model.elements),
            mnl_size=agg("mnl_size"),
            terms_elem=agg("terms_elem"),
            term_size=agg("term_size"),
            size_elem=max(r.size_elem for r in reports),
            model_size=sum(r.model_size for r in reports),
        )
    from . import circuits

    if isinstance(model, circuits.Circuit):
        return ParamReport(model_size=len(model.gates))
    raise ModelError(f"not a model: {model!r}")
