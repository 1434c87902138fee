import itertools
import random

import pytest

from endcalc.endspace import (
    CANTOR,
    CANTOR_LEAF,
    HANDLE,
    LOCH_NESS,
    PUNCTURE,
    SurfaceSpec,
    below,
    canonicalize,
    canonicalize_spec,
    e_cp,
    equivalent,
    flute,
    format_type,
    immediate_predecessors,
    in_EG,
    invariant_bundle,
    maximal_types,
    node,
    planar_tower,
    preceq,
    type_closure,
)
from conftest import random_canonical_tree, random_tree


FLUTE = flute()


class TestCanonicalize:
    def test_absorbs_child_below_sibling(self):
        t = node(children=[PUNCTURE, FLUTE])
        assert canonicalize(t) == canonicalize(node(children=[FLUTE]))

    def test_puncture_is_fixed(self):
        assert canonicalize(PUNCTURE) == PUNCTURE

    def test_genus_absorption(self):
        t = node(genus=True, children=[LOCH_NESS])
        c = canonicalize(t)
        assert not c.direct_genus
        assert c == canonicalize(node(children=[LOCH_NESS]))

    def test_cantor_flag_not_absorbed_by_children(self):
        # a Cantor class over punctures differs from the plain Cantor class
        t = canonicalize(node(cantor=True, children=[PUNCTURE]))
        assert t.children
        assert not equivalent(t, CANTOR_LEAF)

    def test_idempotent_on_random_trees(self, rng):
        for _ in range(300):
            t = random_tree(rng, rng.randint(0, 4))
            c = canonicalize(t)
            assert canonicalize(c) == c
            assert equivalent(t, c)


class TestBelow:
    def test_leaf(self):
        assert below(PUNCTURE) == frozenset()

    def test_flute(self):
        assert below(canonicalize(FLUTE)) == frozenset({PUNCTURE})

    def test_cantor_leaf_contains_itself(self):
        assert below(CANTOR_LEAF) == frozenset({CANTOR_LEAF})


class TestPreceq:
    def test_reflexive(self):
        assert preceq(FLUTE, FLUTE)

    def test_puncture_below_flute(self):
        assert preceq(PUNCTURE, FLUTE)
        assert not preceq(FLUTE, PUNCTURE)

    def test_preorder_laws_on_random_trees(self, rng):
        trees = [random_canonical_tree(rng, 4) for _ in range(1000)]
        for t in trees:
            assert preceq(t, t)
        for _ in range(1500):
            a, b, c = rng.choice(trees), rng.choice(trees), rng.choice(trees)
            if preceq(a, b) and preceq(b, c):
                assert preceq(a, c)

    def test_equivalent_iff_mutual_preceq(self, rng):
        trees = [random_canonical_tree(rng, 3) for _ in range(150)]
        for a, b in itertools.product(trees[:40], repeat=2):
            assert equivalent(a, b) == (preceq(a, b) and preceq(b, a))

    def test_in_EG_monotone(self, rng):
        trees = [random_canonical_tree(rng, 3) for _ in range(200)]
        for _ in range(600):
            y, x = rng.choice(trees), rng.choice(trees)
            if preceq(y, x) and in_EG(y):
                assert in_EG(x)


class TestInEG:
    def test_puncture(self):
        assert not in_EG(PUNCTURE)

    def test_loch_ness(self):
        assert in_EG(LOCH_NESS)

    def test_accumulated_genus_end(self):
        assert in_EG(canonicalize(node(children=[LOCH_NESS])))


class TestImmediatePredecessors:
    def test_flute(self):
        assert immediate_predecessors(FLUTE) == frozenset({PUNCTURE})

    def test_loch_ness_handle(self):
        assert immediate_predecessors(LOCH_NESS) == frozenset({HANDLE})

    def test_tower(self):
        assert immediate_predecessors(planar_tower(2)) == frozenset(
            {canonicalize(FLUTE)})

    def test_antichain_inside_below(self, rng):
        for _ in range(200):
            x = random_canonical_tree(rng, 3)
            preds = [p for p in immediate_predecessors(x) if p is not HANDLE]
            for p in preds:
                assert p in below(x)
                assert not equivalent(p, x)
            for a, b in itertools.combinations(preds, 2):
                assert not preceq(a, b) and not preceq(b, a)


class TestSurfaceSpec:
    def test_flute_spec(self):
        s, diags = canonicalize_spec(SurfaceSpec(roots=((FLUTE, 1),)))
        assert not diags
        assert maximal_types(s) == ((canonicalize(FLUTE), 1),)

    def test_two_towers(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((planar_tower(2), 2),)))
        assert maximal_types(s) == ((planar_tower(2), 2),)

    def test_cantor_tree(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((CANTOR_LEAF, CANTOR),)))
        assert maximal_types(s) == ((CANTOR_LEAF, CANTOR),)

    def test_cantor_marker_and_flag_agree(self):
        # a finite multiplicity on a self-accumulating type upgrades to CANTOR
        s, _ = canonicalize_spec(SurfaceSpec(roots=((CANTOR_LEAF, 3),)))
        assert s.roots[0][1] is CANTOR
        # and a CANTOR marker forces the flag onto the type
        s2, _ = canonicalize_spec(SurfaceSpec(roots=((FLUTE, CANTOR),)))
        (t, m), = s2.roots
        assert t.self_accumulating and m is CANTOR

    def test_equivalent_roots_merge(self):
        raw = SurfaceSpec(roots=((FLUTE, 1), (node(children=[PUNCTURE]), 2)))
        s, diags = canonicalize_spec(raw)
        assert not diags
        assert maximal_types(s) == ((canonicalize(FLUTE), 3),)

    def test_dominated_root_absorbed(self):
        raw = SurfaceSpec(roots=((FLUTE, 1), (PUNCTURE, 2)))
        s, diags = canonicalize_spec(raw)
        assert not diags
        assert len(s.roots) == 1 and s.extra_punctures == 0

    def test_subordinate_below_root_absorbed(self):
        raw = SurfaceSpec(roots=((planar_tower(2), 1),),
                          subordinates=((FLUTE, 4),))
        s, diags = canonicalize_spec(raw)
        assert not diags and not s.subordinates

    def test_subordinate_not_below_root_diagnosed(self):
        raw = SurfaceSpec(roots=((FLUTE, 1),), subordinates=((LOCH_NESS, 1),))
        _, diags = canonicalize_spec(raw)
        assert any("subordinate not below any root" in d for d in diags)

    def test_extra_genus_absorbed_by_genus_end(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((LOCH_NESS, 1),),
                                             extra_genus=5))
        assert s.extra_genus == 0

    def test_maximal_types_are_exactly_the_maximal_closure_types(self, rng):
        from conftest import random_spec
        for _ in range(60):
            s = random_spec(rng)
            closure = type_closure(s)
            roots = set(s.root_types())
            maximal = {t for t in closure
                       if not any(t != u and preceq(t, u) and
                                  not equivalent(t, u) for u in closure)}
            assert roots == maximal


class TestECp:
    def test_two_towers_shared_flute(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((planar_tower(2), 2),)))
        t = planar_tower(2)
        assert e_cp(s, t, t) == frozenset({canonicalize(FLUTE)})

    def test_handle_never_counts(self):
        b = node(genus=True, children=[PUNCTURE])
        s, _ = canonicalize_spec(SurfaceSpec(roots=((b, 1), (LOCH_NESS, 1))))
        assert e_cp(s, canonicalize(b), LOCH_NESS) == frozenset()

    def test_singleton_pair_is_an_error(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((FLUTE, 1),)))
        t = canonicalize(FLUTE)
        with pytest.raises(ValueError):
            e_cp(s, t, t)

    def test_cantor_flagged_types_excluded(self):
        p = node(cantor=True, children=[CANTOR_LEAF, FLUTE])
        s, _ = canonicalize_spec(SurfaceSpec(roots=((p, CANTOR),)))
        pc = canonicalize(p)
        assert CANTOR_LEAF not in e_cp(s, pc, pc)
        assert canonicalize(FLUTE) in e_cp(s, pc, pc)


class TestInvariantBundle:
    def test_flute(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((FLUTE, 1),)))
        b = invariant_bundle(s)
        assert (b.M, b.C, b.M_iso) == (1, 0, 1)
        assert b.G0 == frozenset()

    def test_two_towers(self):
        s, _ = canonicalize_spec(SurfaceSpec(roots=((planar_tower(2), 2),)))
        b = invariant_bundle(s)
        assert (b.M, b.C, b.M_iso) == (1, 1, 1)

    def test_three_maximal_ends(self):
        a = FLUTE
        bb = node(genus=True, children=[PUNCTURE])
        c = LOCH_NESS
        s, _ = canonicalize_spec(SurfaceSpec(roots=((a, 1), (bb, 1), (c, 1))))
        b = invariant_bundle(s)
        assert (b.M, b.C, b.M_iso) == (3, 1, 3)
        assert b.G0 == frozenset({canonicalize(bb), LOCH_NESS})
        assert b.M == len(b.maximal_classes)
        assert b.M_iso <= b.M
        assert all(t.direct_genus for t in b.G0)


class TestFormatType:
    def test_names(self):
        assert format_type(PUNCTURE) == "puncture"
        assert format_type(FLUTE) == "omega+1"
        assert format_type(planar_tower(3)) == "omega^3+1"
        assert format_type(LOCH_NESS) == "acc(genus,[])"
        assert format_type(CANTOR_LEAF) == "cantor()"
