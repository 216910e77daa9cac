from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings, strategies as st

import xplain as x
from xplain.config import CapExceeded

from generators import random_dt, random_ensemble, random_example, random_universe


def _single_test_tree(u, feature=0):
    return x.DecisionTree(u, (x.Split(feature, 1, 2), x.Leaf(0), x.Leaf(1)))


class TestLaxpSubsetMin:
    def test_constant_tree_needs_nothing(self):
        u = x.universe("a", "b")
        assert x.laxp_subset_min(x.leaf_tree(u, 1), x.Example(u, (0, 1))) == frozenset()

    def test_single_relevant_feature(self):
        u = x.universe("a", "b")
        t = _single_test_tree(u)
        assert x.laxp_subset_min(t, x.Example(u, (1, 0))) == frozenset({0})

    def test_fig_list_as_tree(self, fig_dl, fig_example):
        # hand-built tree equivalent to the figure's list
        u = fig_dl.universe
        t = _tree_from_table(u, x.truth_table(fig_dl))
        assert x.truth_table(t) == x.truth_table(fig_dl)
        found = x.laxp_subset_min(t, fig_example)
        assert x.oracle_subset_min_check(t, "laxp", fig_example, found)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_random_trees_minimal(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        t = random_dt(rng, u)
        e = random_example(rng, u)
        found = x.laxp_subset_min(t, e)
        assert x.oracle_subset_min_check(t, "laxp", e, found)


def _tree_from_table(u, table):
    nodes = []

    def build(feature, mask):
        if feature == len(u):
            nodes.append(x.Leaf((table >> mask) & 1))
            return len(nodes) - 1
        lo = build(feature + 1, mask)
        hi = build(feature + 1, mask | (1 << feature))
        nodes.append(x.Split(feature, lo, hi))
        return len(nodes) - 1

    root = build(0, 0)
    return x.DecisionTree(u, tuple(nodes), root)


class TestGlobalSubsetMin:
    @pytest.mark.parametrize("c", [0, 1])
    def test_constant_trees(self, c):
        u = x.universe("a", "b")
        same, other = x.leaf_tree(u, c), x.leaf_tree(u, 1 - c)
        assert x.gaxp_subset_min(same, c) == x.PartialExample(u, ())
        assert x.gaxp_subset_min(other, c) is None
        assert x.gcxp_subset_min(other, c) == x.PartialExample(u, ())
        assert x.gcxp_subset_min(same, c) is None

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_random_trees_minimal(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        t = random_dt(rng, u)
        c = rng.randint(0, 1)
        reachable = {
            n.label for n in x.normalize_dt(t).nodes if isinstance(n, x.Leaf)
        }
        for kind, algo in (("gaxp", x.gaxp_subset_min), ("gcxp", x.gcxp_subset_min)):
            tau = algo(t, c)
            if tau is None:
                # no seed leaf: only contradictory paths carried that class
                assert (c if kind == "gaxp" else 1 - c) not in reachable
            else:
                assert x.oracle_subset_min_check(t, kind, c, tau)


class TestLcxpMin:
    def test_constant_tree(self):
        u = x.universe("a")
        assert x.lcxp_min(x.leaf_tree(u, 0), x.Example(u, (0,))) is None

    def test_single_test_tree(self):
        u = x.universe("a", "b")
        t = _single_test_tree(u)
        for mask in range(4):
            assert x.lcxp_min(t, x.Example.from_mask(u, mask)) == frozenset({0})

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_size_matches_oracle(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 8))
        t = random_dt(rng, u)
        e = random_example(rng, u)
        found = x.lcxp_min(t, e)
        expected = x.oracle_min(t, "lcxp", e)
        if expected is None:
            assert found is None
        else:
            assert found is not None and len(found) == expected[0]
            assert x.verify(t, x.local_query("lcxp", e, found))

    def test_size_matches_oracle_at_twelve_features(self):
        rng = Random(1212)
        u = random_universe(rng, 12)
        for _ in range(10):
            t = random_dt(rng, u, max_depth=5)
            e = random_example(rng, u)
            found = x.lcxp_min(t, e)
            expected = x.oracle_min(t, "lcxp", e)
            if expected is None:
                assert found is None
            else:
                assert found is not None and len(found) == expected[0]

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_subset_variant_is_inclusion_minimal(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        t = random_dt(rng, u)
        e = random_example(rng, u)
        found = x.lcxp_subset_min(t, e)
        if found is not None:
            assert x.oracle_subset_min_check(t, "lcxp", e, found)


class TestCardSearch:
    def test_budget_zero_on_mixed_tree(self):
        u = x.universe("a", "b")
        t = _single_test_tree(u)
        assert x.card_xp_search(t, "laxp", x.Example(u, (0, 0)), 0) is None

    def test_full_budget_always_finds_an_abductive_witness(self):
        rng = Random(13)
        for _ in range(20):
            u = random_universe(rng, rng.randint(1, 6))
            t = random_dt(rng, u)
            e = random_example(rng, u)
            assert x.card_xp_search(t, "laxp", e, len(u)) is not None

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_first_witness_size_is_minimum(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 6))
        t = random_dt(rng, u)
        e = random_example(rng, u)
        c = rng.randint(0, 1)
        for kind, target in (("laxp", e), ("gaxp", c), ("gcxp", c)):
            witness = x.card_xp_search(t, kind, target, len(u))
            expected = x.oracle_min(t, kind, target)
            if expected is None:
                assert witness is None
            else:
                size = len(witness) if isinstance(witness, frozenset) else len(
                    witness.assignments
                )
                assert size == expected[0]
                if expected[0] > 0:
                    assert x.card_xp_search(t, kind, target, expected[0] - 1) is None


class TestProduct:
    def test_singleton(self):
        rng = Random(17)
        u = random_universe(rng, 5)
        t = random_dt(rng, u)
        ens = x.Ensemble(u, (t,))
        assert x.truth_table(x.product_dt(ens)) == x.truth_table(t)

    def test_unanimous_single_feature(self):
        u = x.universe("a", "b")
        t = _single_test_tree(u)
        product = x.product_dt(x.Ensemble(u, (t, t, t)))
        assert x.truth_table(product) == x.truth_table(t)
        assert product.leaf_count() <= 8

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_random_ensembles(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 8))
        ens = random_ensemble(rng, u, "dt", 3)
        product = x.product_dt(ens)
        assert x.truth_table(product) == x.truth_table(ens)
        bound = 1
        for t in ens.elements:
            bound *= t.leaf_count()
        assert product.leaf_count() <= bound

    def test_size_guard(self):
        rng = Random(19)
        u = random_universe(rng, 8)
        ens = random_ensemble(rng, u, "dt", 3)
        with pytest.raises(CapExceeded):
            x.product_dt(ens, max_leaves=1)


def test_renaming_features_only_changes_names(fig_dl, fig_example):
    # names are cosmetic: a renamed copy produces the same index witnesses
    rng = Random(23)
    u = random_universe(rng, 6)
    t = random_dt(rng, u)
    renamed_u = x.FeatureUniverse(tuple(f"col_{n}" for n in u.names))
    renamed = x.DecisionTree(renamed_u, t.nodes, t.root)
    e = random_example(rng, u)
    renamed_e = x.Example(renamed_u, e.bits)
    assert x.laxp_subset_min(t, e) == x.laxp_subset_min(renamed, renamed_e)
    assert x.lcxp_min(t, e) == x.lcxp_min(renamed, renamed_e)
