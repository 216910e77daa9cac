from __future__ import annotations

from random import Random

from hypothesis import given, settings, strategies as st

import xplain as x
from xplain.core import term_applies

from generators import (
    random_dl,
    random_ds,
    random_ensemble,
    random_example,
    random_universe,
)


class TestDsToDl:
    def test_empty_term_list(self):
        u = x.universe("a")
        dl = x.ds_to_dl(x.DecisionSet(u, (), 1))
        assert dl.rules == (((), 1),)

    def test_single_term(self):
        u = x.universe("x", "y")
        dl = x.ds_to_dl(x.DecisionSet(u, (((0, 1), (1, 1)),), 0))
        assert dl.rules == ((((0, 1), (1, 1)), 1), ((), 0))

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_classifies_identically(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 8))
        ds = random_ds(rng, u)
        assert x.truth_table(x.ds_to_dl(ds)) == x.truth_table(ds)

    def test_twelve_features_spot_check(self):
        rng = Random(99)
        u = random_universe(rng, 12)
        ds = random_ds(rng, u, max_terms=5)
        assert x.truth_table(x.ds_to_dl(ds)) == x.truth_table(ds)


class TestBranch:
    def test_fig_budget_one(self, fig_dl, fig_example):
        assert x.lcxp_card_branch(fig_dl, fig_example, 1) == frozenset({1})

    def test_budget_zero_needs_homogeneity(self, fig_dl, fig_example):
        assert x.lcxp_card_branch(fig_dl, fig_example, 0) is None

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_matches_oracle(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 8))
        model = random_dl(rng, u) if rng.random() < 0.5 else random_ds(rng, u)
        e = random_example(rng, u)
        found = x.lcxp_card_branch(model, e, len(u))
        expected = x.oracle_min(model, "lcxp", e)
        if expected is None:
            assert found is None
        else:
            assert found is not None and len(found) == expected[0]
            assert x.verify(model, x.local_query("lcxp", e, found))

    def test_twelve_features_match(self):
        rng = Random(4242)
        u = random_universe(rng, 12)
        for _ in range(10):
            dl = random_dl(rng, u, max_rules=5)
            e = random_example(rng, u)
            found = x.lcxp_card_branch(dl, e, 12)
            enum = x.lcxp_card_enum(dl, e, 12)
            assert (found is None) == (enum is None)
            if found is not None:
                assert len(found) == len(enum)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_witness_lands_on_an_opposite_rule(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        dl = random_dl(rng, u)
        e = random_example(rng, u)
        found = x.lcxp_card_branch(dl, e, len(u))
        if found is None:
            return
        flipped = x.flip(e, found)
        assert x.classify(dl, flipped) != x.classify(dl, e)
        first_rule = next(
            (t, c) for t, c in dl.rules if term_applies(t, flipped)
        )
        assert first_rule[1] != x.classify(dl, e)

    def test_every_contrastive_set_contains_a_routing_subset(self):
        rng = Random(31)
        for _ in range(30):
            u = random_universe(rng, rng.randint(1, 6))
            dl = random_dl(rng, u)
            e = random_example(rng, u)
            candidate = frozenset(f for f in range(len(u)) if rng.random() < 0.5)
            if not x.verify(dl, x.local_query("lcxp", e, candidate)):
                continue
            cls = x.classify(dl, e)
            hit = False
            for mask in range(1 << len(candidate)):
                sub = [f for i, f in enumerate(sorted(candidate)) if (mask >> i) & 1]
                if x.classify(dl, x.flip(e, sub)) != cls:
                    hit = True
                    break
            assert hit

    def test_branch_counter_stays_within_bound(self, fig_dl, fig_example):
        stats = x.BranchStats()
        x.lcxp_card_branch(fig_dl, fig_example, 3, stats)
        assert stats.per_target  # one record per opposite-class rule
        assert stats.within_bound()


class TestEnsembleBranch:
    def test_singleton_matches_single(self):
        rng = Random(41)
        for _ in range(20):
            u = random_universe(rng, rng.randint(1, 6))
            dl = random_dl(rng, u)
            e = random_example(rng, u)
            single = x.lcxp_card_branch(dl, e, len(u))
            ens = x.lcxp_card_branch_ens(x.Ensemble(u, (dl,)), e, len(u))
            assert single == ens

    def test_three_copies_match_one(self):
        rng = Random(43)
        for _ in range(20):
            u = random_universe(rng, rng.randint(1, 5))
            dl = random_dl(rng, u)
            e = random_example(rng, u)
            one = x.lcxp_card_branch_ens(x.Ensemble(u, (dl,)), e, len(u))
            three = x.lcxp_card_branch_ens(x.Ensemble(u, (dl, dl, dl)), e, len(u))
            assert (one is None) == (three is None)
            if one is not None:
                assert len(one) == len(three)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_matches_oracle(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 6))
        family = rng.choice(["ds", "dl"])
        ens = random_ensemble(rng, u, family, 3)
        e = random_example(rng, u)
        found = x.lcxp_card_branch_ens(ens, e, len(u))
        expected = x.oracle_min(ens, "lcxp", e)
        if expected is None:
            assert found is None
        else:
            assert found is not None and len(found) == expected[0]

    def test_skipped_rule_tuples_never_witness_a_flip(self):
        # exhaustive: the classifying tuple of any class-changing example has
        # a strict majority of opposite-class rules
        rng = Random(47)
        for _ in range(25):
            u = random_universe(rng, rng.randint(1, 8))
            ens = random_ensemble(rng, u, "dl", 3)
            e = random_example(rng, u)
            cls = x.classify(ens, e)
            for mask in range(1 << len(u)):
                e2 = x.Example.from_mask(u, mask)
                if x.classify(ens, e2) == cls:
                    continue
                classes = []
                for dl in ens.elements:
                    classes.append(
                        next(c for t, c in dl.rules if term_applies(t, e2))
                    )
                n_diff = sum(1 for c in classes if c != cls)
                assert n_diff > len(classes) - n_diff


class TestEnum:
    def test_fig_returns_lowest_indexed_witness(self, fig_dl, fig_example):
        assert x.lcxp_card_enum(fig_dl, fig_example, 2) == frozenset({1})

    def test_homogeneous_model_has_none(self):
        u = x.universe("a", "b")
        dl = x.DecisionList(u, (((), 1),))
        for k in range(3):
            assert x.lcxp_card_enum(dl, x.Example(u, (0, 0)), k) is None

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_branch_size(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        dl = random_dl(rng, u)
        e = random_example(rng, u)
        k = rng.randint(0, len(u))
        branch = x.lcxp_card_branch(dl, e, k)
        enum = x.lcxp_card_enum(dl, e, k)
        assert (branch is None) == (enum is None)
        if branch is not None:
            assert len(branch) == len(enum)


class TestLaxpRules:
    def test_fig(self, fig_dl, fig_example):
        assert x.laxp_rules_subset_min(fig_dl, fig_example) == frozenset({1, 2})

    def test_constant_list(self):
        u = x.universe("a", "b")
        dl = x.DecisionList(u, (((), 0),))
        assert x.laxp_rules_subset_min(dl, x.Example(u, (1, 1))) == frozenset()

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_random_minimal(self, seed):
        rng = Random(seed)
        u = random_universe(rng, rng.randint(1, 7))
        model = random_dl(rng, u) if rng.random() < 0.5 else random_ds(rng, u)
        e = random_example(rng, u)
        found = x.laxp_rules_subset_min(model, e)
        assert x.oracle_subset_min_check(model, "laxp", e, found)
