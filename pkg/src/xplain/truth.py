"""Naive exhaustive solvers for the source problems behind the generators.

Deliberately minimal and kept apart from the gadget constructions: the
generators' ground truth must come from code that shares nothing with the
code under test.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional, Sequence


def min_hitting_set_size(sets: Sequence[frozenset]) -> Optional[int]:
    """Size of a smallest set intersecting every member, None if impossible
    (only the case when some member is empty)."""
    if any(not s for s in sets):
        return None
    elements = sorted(set().union(*sets)) if sets else []
    for size in range(len(elements) + 1):
        for pick in combinations(elements, size):
            chosen = set(pick)
            if all(chosen & s for s in sets):
                return size
    return None


def has_clique(vertices: Sequence, edges: Iterable[tuple], k: int) -> bool:
    """Does the graph contain k pairwise adjacent vertices?"""
    adjacent = {frozenset(e) for e in edges}
    if k <= 1:
        return k <= 0 or bool(vertices)
    for pick in combinations(vertices, k):
        if all(frozenset((u, v)) in adjacent for u, v in combinations(pick, 2)):
            return True
    return False


def is_tautology_dnf(terms: Sequence[Sequence[tuple[str, int]]],
                     variables: Sequence[str]) -> bool:
    """Is the DNF true under every assignment of the variables?"""
    var_list = list(variables)
    for mask in range(1 << len(var_list)):
        value = {v: (mask >> i) & 1 for i, v in enumerate(var_list)}
        if not any(all(value[v] == b for v, b in term) for term in terms):
            return False
    return True
