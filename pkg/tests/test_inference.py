from itertools import permutations

import pytest

from nlcinfer.exceptions import GraphInputError, PreconditionError
from nlcinfer.graph import LabelledGraph, Occurrence, k_tuples, neighborhood
from nlcinfer.inference import (
    FamilyProfile,
    far_pairs,
    family_in_out,
    in_out_sets,
    ordering_existence,
    pair_conditions,
    pair_conditions_primed,
    pair_existence,
    pair_in_out,
    sequence_compatible,
    single_compatible,
    subgraph_in_out,
)
from nlcinfer.relation import EmbeddingRelation

from .helpers import all_relations, small_instances, touching_pairs

L3 = {(x, y) for x in "abc" for y in "abc"}
E_STAR = {("a", "b"), ("b", "a"), ("c", "c"), ("a", "N"), ("c", "N")}
E_REVERSED = {("a", "b"), ("c", "c"), ("b", "N"), ("c", "N")}


def rel(pairs):
    return EmbeddingRelation.of(pairs, alphabet="abcN")


@pytest.fixture(scope="module")
def instances():
    return small_instances(60)


class TestRunningExampleSets:
    def test_in_out_of_s2(self, ex):
        Q = k_tuples(ex.s2.nodes, neighborhood(ex.host, ex.s2.nodes))
        io = in_out_sets(ex.host, Q)
        assert io.inset == {("b", "a"), ("c", "c")}
        assert io.outset == {("a", "a"), ("a", "c"), ("c", "a"), ("b", "c")}
        assert subgraph_in_out(ex.host, ex.s2) == io

    def test_empty_tuple_set(self, ex):
        io = in_out_sets(ex.host, set())
        assert io.inset == io.outset == frozenset()

    def test_equal_components_rejected(self, ex):
        with pytest.raises(GraphInputError):
            in_out_sets(ex.host, {("a1", "a1")})

    def test_pair_s1_s2(self, ex):
        ctx = pair_in_out(ex.host, ex.s1, ex.s2)
        assert ctx.inset == {("b", "a"), ("c", "c")}
        assert ctx.outset == {("a", "a"), ("a", "c"), ("b", "c"), ("c", "a")}
        assert ctx.full_inset == ctx.inset
        assert ctx.full_outset == L3 - ctx.inset

    def test_pair_s2_s1(self, ex):
        ctx = pair_in_out(ex.host, ex.s2, ex.s1)
        assert ctx.inset == {("a", "b"), ("c", "c")}
        assert ctx.outset == {("a", "c"), ("b", "b"), ("b", "c"), ("c", "b")}
        assert ctx.full_outset == L3 - ctx.inset

    def test_family_sets(self, ex):
        io = family_in_out(ex.host, [ex.s1, ex.s2])
        assert io.inset == {("a", "b")}
        assert io.outset == {("b", "b"), ("c", "b")}
        assert family_in_out(ex.host, []).inset == frozenset()


def test_single_node_pair():
    G = LabelledGraph({"x": "p", "y": "q"}, [("x", "y")])
    ctx = pair_in_out(G, Occurrence({"s": "x"}), Occurrence({"s": "y"}))
    assert ctx.inset == {("q", "p")}
    assert ctx.outset == frozenset()


def test_pair_requires_touching():
    G = LabelledGraph({"x": "a", "y": "a"})
    with pytest.raises(PreconditionError):
        pair_in_out(G, Occurrence({"s": "x"}), Occurrence({"s": "y"}))


def test_in_out_matches_scan(instances):
    for G, family in instances:
        for occ in family:
            Q = k_tuples(occ.nodes, neighborhood(G, occ.nodes))
            io = in_out_sets(G, Q)
            assert io.inset == {(G.label(x), G.label(y)) for x, y in Q if frozenset((x, y)) in G.edges}
            assert io.outset == {(G.label(x), G.label(y)) for x, y in Q if frozenset((x, y)) not in G.edges}
            assert io.inset | io.outset == {(G.label(x), G.label(y)) for x, y in Q}
            assert subgraph_in_out(G, occ) == io


def test_non_touching_family_inset_is_union(instances):
    seen = 0
    for G, family in instances:
        if len(family) > 1 and not list(touching_pairs(G, family)):
            seen += 1
            union = frozenset().union(*(subgraph_in_out(G, occ).inset for occ in family))
            assert family_in_out(G, family).inset == union
    assert seen


class TestCompatibility:
    @pytest.mark.parametrize(
        "pairs",
        [
            {("b", "a"), ("c", "c")},
            {("b", "a"), ("c", "c"), ("a", "b")},
            {("b", "a"), ("c", "c"), ("c", "b"), ("b", "b")},
        ],
    )
    def test_single_compatible_examples(self, ex, pairs):
        assert single_compatible(rel(pairs), ex.host, ex.s2)

    def test_single_incompatible(self, ex):
        assert not single_compatible(rel([]), ex.host, ex.s2)
        assert not single_compatible(rel(L3), ex.host, ex.s2)

    def test_pair_conditions(self, ex):
        forward = pair_in_out(ex.host, ex.s1, ex.s2)
        backward = pair_in_out(ex.host, ex.s2, ex.s1)
        assert pair_conditions(rel(E_STAR), forward)
        assert not pair_conditions(rel(E_STAR | {("b", "N")}), forward)
        assert not pair_conditions(rel(E_STAR), backward)

    def test_sequence_compatible(self, ex):
        assert sequence_compatible(rel(E_STAR), ex.host, [ex.s1, ex.s2])
        assert not sequence_compatible(rel(E_STAR), ex.host, [ex.s2, ex.s1])
        assert sequence_compatible(rel(E_REVERSED), ex.host, [ex.s2, ex.s1])

    def test_sequence_requires_isomorphic_family(self, ex):
        other = Occurrence({"x": "bT"})
        with pytest.raises(GraphInputError):
            sequence_compatible(rel(E_STAR), ex.host, [ex.s1, other])

    def test_e_star_is_unique_over_terminal_pairs(self, ex):
        found = [E for E in all_relations(ex.host) if sequence_compatible(E, ex.host, [ex.s1, ex.s2])]
        assert [E.pairs for E in found] == [frozenset(E_STAR)]


class TestExistence:
    def test_pair_existence(self, ex, conflict):
        assert pair_existence(ex.host, ex.s1, ex.s2)
        assert pair_existence(ex.host, ex.s2, ex.s1)
        G, (p, q) = conflict
        assert not pair_existence(G, p, q)
        assert not pair_existence(G, q, p)
        for order in ([p, q], [q, p]):
            assert not any(sequence_compatible(E, G, order) for E in all_relations(G))

    def test_ordering_existence(self, ex, conflict):
        assert ordering_existence(ex.host, [ex.s1, ex.s2]).pairs == E_STAR
        assert ordering_existence(ex.host, [ex.s2, ex.s1]).pairs == E_REVERSED
        G, (p, q) = conflict
        assert ordering_existence(G, [p, q]) is None
        assert ordering_existence(G, [q, p]) is None

    def test_alphabet_must_cover_graph(self, ex):
        with pytest.raises(GraphInputError):
            ordering_existence(ex.host, [ex.s1, ex.s2], alphabet="abN")
        E = ordering_existence(ex.host, [ex.s1, ex.s2], alphabet="abcdN")
        assert "d" in E.alphabet


class TestProperties:
    def test_basic_pair_identities(self, instances):
        for G, family in instances:
            for i, j in touching_pairs(G, family):
                ctx = pair_in_out(G, family[i], family[j])
                rev = pair_in_out(G, family[j], family[i])
                assert ctx.inset == ctx.full_inset
                assert ctx.outset <= ctx.full_outset
                assert {(y, x) for x, y in ctx.full_inset} == rev.full_inset
                assert {(y, x) for x, y in ctx.full_outset} == rev.full_outset
                near = family[i].nodes & neighborhood(G, family[j].nodes)
                assert {b for _, b in ctx.inset} == {G.label(v) for v in near}
                # the label-level difference is only a containment
                assert ctx.full_outset - ctx.outset <= far_pairs(G, ctx)
                assert ctx.full_outset == ctx.outset | far_pairs(G, ctx)

    def test_closure_and_primed_conditions(self, instances):
        for G, family in instances[:60]:
            profile = FamilyProfile(G, family)
            io = profile.family_io
            for arc, ctx in profile.contexts.items():
                far = far_pairs(G, ctx)
                for E in all_relations(G):
                    interval = io.inset <= E.pairs and not E.pairs & io.outset
                    plain = pair_conditions(E, ctx)
                    if plain:
                        assert not E.pairs & ctx.outset
                    if interval:
                        assert plain == pair_conditions_primed(E, ctx, far)
                        assert plain == pair_conditions_primed(E, ctx, far, exclude=io.outset)

    def test_witness_matches_enumeration(self, instances):
        for G, family in instances:
            profile = FamilyProfile(G, family)
            for order in permutations(range(len(family))):
                witness = profile.existence_witness(order)
                any_compatible = any(profile.compatible(E, order) for E in all_relations(G))
                assert (witness is not None) == any_compatible
                if witness is not None:
                    assert profile.compatible(witness, order)
                    arc_in = frozenset().union(*(profile.contexts[a].inset for a in profile.linked_arcs(order)))
                    arc_out = frozenset().union(*(profile.contexts[a].outset for a in profile.linked_arcs(order)))
                    assert not (profile.family_io.inset | arc_in) & arc_out

    def test_single_occurrence_existence(self, instances):
        for G, family in instances:
            for occ in family:
                io = subgraph_in_out(G, occ)
                exists = any(single_compatible(E, G, occ) for E in all_relations(G))
                assert exists == (not io.inset & io.outset)

    def test_pair_existence_agrees_with_witness(self, instances):
        for G, family in instances:
            for i, j in touching_pairs(G, family):
                pair = [family[i], family[j]]
                assert pair_existence(G, *pair) == (ordering_existence(G, pair) is not None)
