"""Differential tests: the production preorder against the search oracle."""

import itertools

import pytest

from endcalc.endspace import (
    CANTOR_LEAF,
    PUNCTURE,
    equivalent,
    flute,
    node,
    preceq,
)
from endcalc.oracle import (
    OracleScaleError,
    enumerate_trees,
    oracle_equivalent,
    oracle_preceq,
)
from conftest import random_tree


FLUTE = flute()


class TestOracleExamples:
    def test_puncture_precedes_flute(self):
        assert oracle_preceq(PUNCTURE, FLUTE)

    def test_reflexive(self):
        assert oracle_preceq(FLUTE, FLUTE)

    def test_cantor_leaf_not_below_puncture(self):
        assert not oracle_preceq(CANTOR_LEAF, PUNCTURE)

    def test_flute_not_below_puncture(self):
        assert not oracle_preceq(FLUTE, PUNCTURE)

    def test_scale_guard(self):
        deep = PUNCTURE
        for _ in range(6):
            deep = node(children=[deep])
        with pytest.raises(OracleScaleError):
            oracle_preceq(deep, PUNCTURE)
        five = node(children=[
            PUNCTURE, FLUTE, CANTOR_LEAF,
            node(genus=True), node(genus=True, cantor=True)])
        with pytest.raises(OracleScaleError):
            oracle_preceq(PUNCTURE, five)


class TestOracleAgreement:
    def test_exhaustive_small_trees(self):
        # every raw tree with at most 4 nodes (so depth <= 3 via chains and
        # branching <= 3 via stars), all flag combinations at every node
        universe = enumerate_trees(max_nodes=4, max_children=3, max_depth=3)
        assert len(universe) > 500
        disagreements = [
            (y, x)
            for y, x in itertools.product(universe, repeat=2)
            if preceq(y, x) != oracle_preceq(y, x)
        ]
        assert disagreements == []

    def test_random_depth3_trees(self, rng):
        for _ in range(3000):
            y = random_tree(rng, 3)
            x = random_tree(rng, 3)
            assert preceq(y, x) == oracle_preceq(y, x)
            assert equivalent(y, x) == oracle_equivalent(y, x)

    def test_genus_absorption_agreement(self):
        a = node(genus=True, children=[node(genus=True)])
        b = node(children=[node(genus=True)])
        assert equivalent(a, b)
        assert oracle_equivalent(a, b)

    def test_cantor_absorption_agreement(self):
        a = node(cantor=True, children=[FLUTE])
        b = node(cantor=True, children=[FLUTE, PUNCTURE])
        assert equivalent(a, b) and oracle_equivalent(a, b)

    def test_stacked_cantor_classes_stay_distinct(self):
        stack = node(cantor=True, children=[CANTOR_LEAF])
        assert not equivalent(stack, CANTOR_LEAF)
        assert not oracle_equivalent(stack, CANTOR_LEAF)
        assert oracle_preceq(CANTOR_LEAF, stack)
        assert not oracle_preceq(stack, CANTOR_LEAF)
