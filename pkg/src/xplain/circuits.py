"""Boolean circuits with majority gates, and model-to-circuit translations.

A circuit is a DAG of IN / AND / OR / NOT / MAJ gates with one output gate
(the unique sink).  Gates are stored topologically ordered with dense ids, so
acyclicity is a property of the representation.  A MAJ gate with threshold t
fires when at least t of its in-neighbours do.

Each translation targets a class c: the produced circuit is satisfied by an
input assignment exactly when the source model classifies it as c.

* A tree contributes one AND gate per leaf on its smaller class side (the
  gate recognizes the leaf's path assignment) plus an OR collector; when c is
  the other side's class, a complementing NOT is appended.
* A list is cut into maximal same-class rule blocks; a block fires when one
  of its rule terms applies, and the class-c blocks are guarded by the
  negations of all earlier other-class blocks.
* Ensembles take the union of their element circuits (input and per-feature
  NOT gates shared) under a single MAJ gate with threshold floor(n/2) + 1.

Every translation also returns a width certificate: a gate deletion set
whose removal (together with the input gates, the per-feature NOT gates and
the output) leaves a forest, plus the closed-form width bound that witness
supports.  Rank-width itself is never computed.

A leaf or rule whose path/term constrains nothing is encoded as a constant
gate pair over an arbitrary input: OR(g, NOT g) is constant true and
AND(g, NOT g) constant false.  Translation therefore needs a nonempty
universe.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Mapping, Optional, Sequence, Union

from .config import DEFAULT_CAPS, BruteCaps, require_cap
from .core import (
    DecisionList,
    DecisionSet,
    DecisionTree,
    Ensemble,
    Example,
    FeatureUniverse,
    ModelError,
    PartialExample,
    counter_ge,
    feature_column,
    normalize_dt,
)

IN, AND, OR, NOT, MAJ = "IN", "AND", "OR", "NOT", "MAJ"
_KINDS = (IN, AND, OR, NOT, MAJ)


@dataclass(frozen=True)
class Gate:
    kind: str
    ins: tuple[int, ...] = ()
    threshold: Optional[int] = None
    feature: Optional[int] = None  # IN gates only


@dataclass(frozen=True)
class Circuit:
    universe: FeatureUniverse
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self) -> None:
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        if not gates:
            raise ModelError("circuit needs at least one gate")
        if not 0 <= self.output < len(gates):
            raise ModelError("output gate index out of range")
        outdeg = [0] * len(gates)
        seen_features: set[int] = set()
        for i, g in enumerate(gates):
            if g.kind not in _KINDS:
                raise ModelError(f"unknown gate kind {g.kind!r}")
            for j in g.ins:
                if not 0 <= j < i:
                    raise ModelError("gates must be topologically ordered")
                outdeg[j] += 1
            if g.kind == IN:
                if g.ins:
                    raise ModelError("IN gates take no incoming arc")
                if g.feature is None or not 0 <= g.feature < len(self.universe):
                    raise ModelError("IN gate needs a feature in the universe")
                if g.feature in seen_features:
                    raise ModelError("feature mapped to two IN gates")
                seen_features.add(g.feature)
            else:
                if g.feature is not None:
                    raise ModelError("only IN gates carry a feature")
                if g.kind == NOT and len(g.ins) != 1:
                    raise ModelError("NOT gates take exactly one incoming arc")
                if g.kind in (AND, OR, MAJ) and not g.ins:
                    raise ModelError(f"{g.kind} gates need at least one incoming arc")
                if (g.kind == MAJ) != (g.threshold is not None):
                    raise ModelError("exactly MAJ gates carry a threshold")
        sinks = [i for i, d in enumerate(outdeg) if d == 0]
        if sinks != [self.output]:
            raise ModelError(f"output must be the unique sink, sinks are {sinks}")

    @property
    def maj_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == MAJ)

    def input_features(self) -> list[int]:
        return sorted(g.feature for g in self.gates if g.kind == IN)


@dataclass(frozen=True)
class WidthCertificate:
    """Deletion set witnessing the closed-form width bound: removing the set
    together with the IN gates, the IN-fed NOT gates and the output leaves a
    forest."""

    deletion: frozenset
    bound: int
    formula: str  # which translation's bound formula applies


def eval_circuit(circuit: Circuit, e: Example) -> int:
    """Output gate value under the input assignment, by topological order."""
    if e.universe != circuit.universe:
        raise ModelError("example universe differs from circuit universe")
    val = [0] * len(circuit.gates)
    for i, g in enumerate(circuit.gates):
        if g.kind == IN:
            val[i] = e.bits[g.feature]
        elif g.kind == AND:
            val[i] = int(all(val[j] for j in g.ins))
        elif g.kind == OR:
            val[i] = int(any(val[j] for j in g.ins))
        elif g.kind == NOT:
            val[i] = 1 - val[g.ins[0]]
        else:  # MAJ
            val[i] = int(g.threshold <= sum(val[j] for j in g.ins))
    return val[circuit.output]


def circuit_table(circuit: Circuit, n: int) -> int:
    """Truth table of the output over all 2**n universe assignments."""
    full = (1 << (1 << n)) - 1
    val = [0] * len(circuit.gates)
    for i, g in enumerate(circuit.gates):
        if g.kind == IN:
            val[i] = feature_column(g.feature, n)
        elif g.kind == AND:
            acc = full
            for j in g.ins:
                acc &= val[j]
            val[i] = acc
        elif g.kind == OR:
            acc = 0
            for j in g.ins:
                acc |= val[j]
            val[i] = acc
        elif g.kind == NOT:
            val[i] = full ^ val[g.ins[0]]
        else:  # MAJ
            val[i] = counter_ge([val[j] for j in g.ins], g.threshold, n)
    return val[circuit.output]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


class _Builder:
    """Arena builder; IN and per-feature NOT gates are created lazily and
    shared."""

    def __init__(self, universe: FeatureUniverse) -> None:
        if len(universe) == 0:
            raise ModelError("circuit translation needs at least one feature")
        self.universe = universe
        self.gates: list[Gate] = []
        self._in: dict[int, int] = {}
        self._not: dict[int, int] = {}

    def add(self, kind: str, ins: Sequence[int] = (), threshold: Optional[int] = None,
            feature: Optional[int] = None) -> int:
        self.gates.append(Gate(kind, tuple(ins), threshold, feature))
        return len(self.gates) - 1

    def in_gate(self, f: int) -> int:
        if f not in self._in:
            self._in[f] = self.add(IN, feature=f)
        return self._in[f]

    def not_gate(self, f: int) -> int:
        if f not in self._not:
            self._not[f] = self.add(NOT, (self.in_gate(f),))
        return self._not[f]

    def literal(self, f: int, bit: int) -> int:
        return self.in_gate(f) if bit else self.not_gate(f)

    def const_true(self) -> int:
        return self.add(OR, (self.in_gate(0), self.not_gate(0)))

    def const_false(self) -> int:
        return self.add(AND, (self.in_gate(0), self.not_gate(0)))

    def finish(self, output: int) -> Circuit:
        return Circuit(self.universe, tuple(self.gates), output)


def _leaf_sides(t: DecisionTree) -> tuple[list[dict[int, int]], list[dict[int, int]]]:
    from .explain_dt import leaf_assignments

    sides: tuple[list, list] = ([], [])
    for i, assigned in leaf_assignments(t):
        sides[t.nodes[i].label].append(assigned)
    return sides


def _dt_into(builder: _Builder, t: DecisionTree, c: int) -> tuple[int, list[int], int]:
    """Wire one tree into the builder; returns (output gate, deletion gates,
    the tree's smaller-side leaf count)."""
    t = normalize_dt(t)
    sides = _leaf_sides(t)
    mnl_side = 0 if len(sides[0]) <= len(sides[1]) else 1
    mnl = len(sides[mnl_side])
    if mnl == 0:
        # constant tree: the circuit is constant [label == c]
        label = 1 - mnl_side
        out = builder.const_true() if label == c else builder.const_false()
        return out, [], 0
    deletion = []
    for assigned in sides[mnl_side]:
        if assigned:
            gate = builder.add(
                AND, [builder.literal(f, b) for f, b in sorted(assigned.items())]
            )
        else:  # a root leaf constrains nothing; constant-true stand-in
            gate = builder.const_true()
        deletion.append(gate)
    out = builder.add(OR, deletion)
    if c != mnl_side:
        out = builder.add(NOT, (out,))
    return out, deletion, mnl


def dt_to_circuit(t: DecisionTree, c: int) -> tuple[Circuit, WidthCertificate]:
    builder = _Builder(t.universe)
    out, deletion, mnl = _dt_into(builder, t, c)
    cert = WidthCertificate(frozenset(deletion), 3 * 2**mnl, "dt")
    return builder.finish(out), cert


def dtmaj_to_circuit(ens: Ensemble, c: int) -> tuple[Circuit, WidthCertificate]:
    if ens.family != "dt":
        raise ModelError("expected an ensemble of decision trees")
    builder = _Builder(ens.universe)
    outs: list[int] = []
    deletion: list[int] = []
    mnl_sum = 0
    for t in ens.elements:
        out, dele, mnl = _dt_into(builder, t, c)
        outs.append(out)
        deletion.extend(dele)
        mnl_sum += mnl
    maj = builder.add(MAJ, outs, threshold=len(outs) // 2 + 1)
    cert = WidthCertificate(frozenset(deletion), 3 * 2**mnl_sum, "dt-ensemble")
    return builder.finish(maj), cert


def _dl_into(builder: _Builder, dl: DecisionList, c: int) -> tuple[int, list[int], int]:
    """Wire one list into the builder; returns (output gate, deletion gates,
    rule count)."""
    # maximal consecutive same-class blocks
    blocks: list[tuple[int, list]] = []  # (class, member rule terms)
    for term, cls in dl.rules:
        if blocks and blocks[-1][0] == cls:
            blocks[-1][1].append(term)
        else:
            blocks.append((cls, [term]))
    # blocks after the last class-c block cannot influence [class == c];
    # building them would leave dangling gates
    last_c = max((i for i, (cls, _) in enumerate(blocks) if cls == c), default=-1)
    if last_c < 0:
        return builder.const_false(), [], len(dl.rules)
    deletion: list[int] = []
    guarded = []
    negated_before: list[int] = []  # NOTs of earlier non-c blocks
    for cls, terms in blocks[: last_c + 1]:
        members = []
        for term in terms:
            if term:
                gate = builder.add(AND, [builder.literal(f, b) for f, b in term])
            else:
                gate = builder.const_true()
            members.append(gate)
        deletion.extend(members)
        block_gate = builder.add(OR, members)
        deletion.append(block_gate)
        if cls == c:
            gate = builder.add(AND, [block_gate, *negated_before])
            guarded.append(gate)
            deletion.append(gate)
        else:
            ng = builder.add(NOT, (block_gate,))
            negated_before.append(ng)
            deletion.append(ng)
    out = builder.add(OR, guarded)
    assert len(deletion) <= 3 * len(dl.rules)
    return out, deletion, len(dl.rules)


def dl_to_circuit(
    model: Union[DecisionList, DecisionSet], c: int
) -> tuple[Circuit, WidthCertificate]:
    from .explain_rules import ds_to_dl

    dl = ds_to_dl(model) if isinstance(model, DecisionSet) else model
    builder = _Builder(dl.universe)
    out, deletion, rules = _dl_into(builder, dl, c)
    cert = WidthCertificate(frozenset(deletion), 3 * 2 ** (3 * rules), "dl")
    return builder.finish(out), cert


def dlmaj_to_circuit(ens: Ensemble, c: int) -> tuple[Circuit, WidthCertificate]:
    from .explain_rules import ds_to_dl

    if ens.family not in ("ds", "dl"):
        raise ModelError("expected an ensemble of decision sets or lists")
    dls = [ds_to_dl(m) if isinstance(m, DecisionSet) else m for m in ens.elements]
    builder = _Builder(ens.universe)
    outs = []
    deletion: list[int] = []
    rule_sum = 0
    for dl in dls:
        out, dele, rules = _dl_into(builder, dl, c)
        outs.append(out)
        deletion.extend(dele)
        rule_sum += rules
    maj = builder.add(MAJ, outs, threshold=len(outs) // 2 + 1)
    cert = WidthCertificate(frozenset(deletion), 3 * 2 ** (3 * rule_sum), "dl-ensemble")
    return builder.finish(maj), cert


def translate(model, c: int) -> tuple[Circuit, WidthCertificate]:
    """Family dispatch over the four translations."""
    if isinstance(model, DecisionTree):
        return dt_to_circuit(model, c)
    if isinstance(model, (DecisionList, DecisionSet)):
        return dl_to_circuit(model, c)
    if isinstance(model, Ensemble):
        if model.family == "dt":
            return dtmaj_to_circuit(model, c)
        return dlmaj_to_circuit(model, c)
    raise ModelError(f"no circuit translation for {model!r}")


def certificate_holds(circuit: Circuit, cert: WidthCertificate) -> bool:
    """Does removing deletion set + IN gates + IN-fed NOT gates + output leave
    a forest (undirected)?"""
    removed = set(cert.deletion)
    removed.add(circuit.output)
    for i, g in enumerate(circuit.gates):
        if g.kind == IN:
            removed.add(i)
        elif g.kind == NOT and circuit.gates[g.ins[0]].kind == IN:
            removed.add(i)
    parent = {i: i for i in range(len(circuit.gates)) if i not in removed}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, g in enumerate(circuit.gates):
        if i in removed:
            continue
        for j in g.ins:
            if j in removed:
                continue
            ri, rj = find(i), find(j)
            if ri == rj:
                return False  # undirected cycle among the remaining gates
            parent[ri] = rj
    return True


# ---------------------------------------------------------------------------
# exhaustive circuit checks
# ---------------------------------------------------------------------------


def _completions(circuit: Circuit, fixed: Mapping[int, int], free: Sequence[int]):
    n = len(circuit.universe)
    base = [0] * n
    for f, b in fixed.items():
        base[f] = b
    for x in range(1 << len(free)):
        bits = list(base)
        for j, f in enumerate(free):
            bits[f] = (x >> j) & 1
        yield Example(circuit.universe, tuple(bits))


def circuit_global_check(
    circuit: Circuit, tau: PartialExample, x: int, caps: BruteCaps = DEFAULT_CAPS
) -> bool:
    """Does every completion of tau evaluate to x?  Only features wired to IN
    gates are enumerated; others cannot influence the output."""
    fixed = tau.as_dict()
    free = [f for f in circuit.input_features() if f not in fixed]
    require_cap(len(free), caps.circuit, "circuit global check")
    return all(eval_circuit(circuit, e) == x for e in _completions(circuit, fixed, free))


def circuit_hom_check(circuit: Circuit, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Is some input assignment evaluated differently from the all-zero one?"""
    inputs = circuit.input_features()
    require_cap(len(inputs), caps.circuit, "circuit hom check")
    base = eval_circuit(circuit, Example(circuit.universe, (0,) * len(circuit.universe)))
    return any(
        eval_circuit(circuit, e) != base
        for e in _completions(circuit, {}, inputs)
    )


def circuit_phom_check(circuit: Circuit, k: int, caps: BruteCaps = DEFAULT_CAPS) -> bool:
    """Is some assignment with at most k ones evaluated differently from the
    all-zero one?"""
    inputs = circuit.input_features()
    require_cap(min(k, len(inputs)), caps.circuit, "circuit phom check")
    n = len(circuit.universe)
    zero = Example(circuit.universe, (0,) * n)
    base = eval_circuit(circuit, zero)
    for size in range(1, min(k, len(inputs)) + 1):
        for subset in combinations(inputs, size):
            bits = [0] * n
            for f in subset:
                bits[f] = 1
            if eval_circuit(circuit, Example(circuit.universe, tuple(bits))) != base:
                return True
    return False


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------


def circuit_to_json(circuit: Circuit) -> dict[str, Any]:
    gates = []
    inputs = {}
    for i, g in enumerate(circuit.gates):
        entry: dict[str, Any] = {"id": i, "kind": g.kind}
        if g.kind != IN:
            entry["in"] = list(g.ins)
        if g.kind == MAJ:
            entry["threshold"] = g.threshold
        gates.append(entry)
        if g.kind == IN:
            inputs[circuit.universe.name(g.feature)] = i
    return {"gates": gates, "output": circuit.output, "inputs": inputs}


def circuit_from_json(payload: Mapping[str, Any], u: FeatureUniverse) -> Circuit:
    raw = {int(g["id"]): g for g in payload["gates"]}
    if len(raw) != len(payload["gates"]):
        raise ModelError("duplicate gate ids")
    feature_of = {}
    for name, gid in payload["inputs"].items():
        feature_of[int(gid)] = u.index(name)
    # topological order over the original ids, then dense renumbering
    pending = {gid: list(map(int, g.get("in", ()))) for gid, g in raw.items()}
    for gid, ins in pending.items():
        for j in ins:
            if j not in raw:
                raise ModelError(f"gate {gid} references unknown gate {j}")
    order: list[int] = []
    done: set[int] = set()
    temp: set[int] = set()

    def visit(gid: int) -> None:
        if gid in done:
            return
        if gid in temp:
            raise ModelError("circuit contains a cycle")
        temp.add(gid)
        for j in pending[gid]:
            visit(j)
        temp.discard(gid)
        done.add(gid)
        order.append(gid)

    for gid in sorted(raw):
        visit(gid)
    dense = {gid: i for i, gid in enumerate(order)}
    gates = []
    for gid in order:
        g = raw[gid]
        kind = g["kind"]
        gates.append(
            Gate(
                kind,
                tuple(dense[int(j)] for j in g.get("in", ())),
                g.get("threshold"),
                feature_of.get(gid) if kind == IN else None,
            )
        )
        if kind == IN and gid not in feature_of:
            raise ModelError(f"IN gate {gid} missing from the inputs map")
    return Circuit(u, tuple(gates), dense[int(payload["output"])])
