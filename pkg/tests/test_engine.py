import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcinfer.engine import (
    InertPairWarning,
    NlcRule,
    apply_rule,
    contract_family,
    derive,
    forward_check,
    verify_forward,
)
from nlcinfer.exceptions import DerivationError, GraphInputError, PreconditionError
from nlcinfer.generate import generate_instance
from nlcinfer.graph import LabelledGraph, label_isomorphism
from nlcinfer.relation import EmbeddingRelation

FIRST = {"a1": "a1", "a2": "a2", "b": "bL", "c": "c1"}
SECOND = {"a1": "a3", "a2": "a4", "b": "bR", "c": "c2"}

E_STAR = {("a", "b"), ("b", "a"), ("c", "c"), ("a", "N"), ("c", "N")}
E_REVERSED = {("a", "b"), ("c", "c"), ("b", "N"), ("c", "N")}


def relation(pairs):
    return EmbeddingRelation.of(pairs, alphabet="abcN")


def test_first_rewrite_gives_middle_graph(ex):
    assert apply_rule(ex.start, ex.rule, "n1", FIRST) == ex.middle


def test_second_rewrite_gives_host(ex):
    assert apply_rule(ex.middle, ex.rule, "n2", SECOND) == ex.host


def test_default_names(ex):
    out = apply_rule(ex.start, ex.rule, "n1")
    assert {"n1:a1", "n1:a2", "n1:b", "n1:c"} <= out.nodes
    assert "n1" not in out


def test_isolated_node_gives_disjoint_union(ex):
    G = LabelledGraph({"v": "N", "w": "a"})
    out = apply_rule(G, ex.rule, "v", FIRST)
    assert out.labels == {"w": "a", **{FIRST[p]: ex.rule.rhs.label(p) for p in FIRST}}
    assert len(out.edges) == len(ex.rule.rhs.edges)


def test_apply_errors(ex):
    with pytest.raises(PreconditionError):
        apply_rule(ex.start, ex.rule, "bT")
    with pytest.raises(GraphInputError):
        apply_rule(ex.start, ex.rule, "missing")
    with pytest.raises(GraphInputError):
        apply_rule(ex.start, ex.rule, "n1", {**FIRST, "b": "bT"})


def test_rule_rejects_nonterminal_in_rhs():
    with pytest.raises(GraphInputError):
        NlcRule("N", LabelledGraph({"x": "N"}), relation([]))


def test_rule_warns_on_inert_pairs(ex):
    with pytest.warns(InertPairWarning):
        NlcRule("N", ex.rule.rhs, relation(E_STAR | {("N", "a")}))


def test_derive_both_orders(ex):
    forward = derive(ex.start, ex.rule, ["n1", "n2"], [FIRST, SECOND]).result
    assert forward == ex.host
    backward = derive(ex.start, ex.rule, ["n2", "n1"]).result
    canonical_forward = derive(ex.start, ex.rule, ["n1", "n2"]).result
    assert backward.nodes == canonical_forward.nodes
    assert backward.edges != canonical_forward.edges
    assert label_isomorphism(backward, ex.host) is None


def test_derive_empty_order(ex):
    trace = derive(ex.start, ex.rule, [])
    assert trace.result == ex.start and trace.steps == ()


def test_derive_reports_step(ex):
    with pytest.raises(DerivationError) as info:
        derive(ex.start, ex.rule, ["n1", "bT"])
    assert info.value.step == 2


def rule_for(pairs):
    rhs = LabelledGraph({"p": "a", "q": "b"}, [("p", "q")])
    return NlcRule("N", rhs, relation(pairs))


@settings(max_examples=50)
@given(
    st.sets(st.sampled_from([(x, y) for x in "ab" for y in "abcN"])),
    st.integers(0, 5),
    st.randoms(use_true_random=False),
)
def test_apply_only_touches_former_neighbors(pairs, extra, rnd):
    rule = rule_for(pairs)
    labels = {"v": "N", **{f"y{i}": rnd.choice("abcN") for i in range(extra)}}
    nodes = sorted(labels)
    edges = [(x, y) for i, x in enumerate(nodes) for y in nodes[i + 1:] if rnd.random() < 0.5]
    G = LabelledGraph(labels, edges)
    out = apply_rule(G, rule, "v", {"p": "P", "q": "Q"})
    assert len(out) == len(G) + 1
    assert {e for e in G.edges if "v" not in e} <= out.edges
    new = out.edges - G.edges
    assert frozenset(("P", "Q")) in new
    for e in new - {frozenset(("P", "Q"))}:
        (x,) = e & {"P", "Q"}
        (y,) = e - {x}
        assert y in G.neighbors("v")
        assert (out.label(x), out.label(y)) in rule.embedding
    expected_cross = {
        frozenset((x, y))
        for x in ("P", "Q")
        for y in G.neighbors("v")
        if (out.label(x), G.label(y)) in rule.embedding
    }
    assert new == expected_cross | {frozenset(("P", "Q"))}


def test_contract_running_example(ex):
    skeleton = contract_family(ex.host, [ex.s1, ex.s2], names=["n1", "n2"])
    assert skeleton.graph == ex.start
    assert skeleton.occurrence_nodes == {0: "n1", 1: "n2"}


def test_contract_non_touching():
    G = LabelledGraph({"x": "a", "y": "a"})
    from nlcinfer.graph import Occurrence

    skeleton = contract_family(G, [Occurrence({"p": "x"}), Occurrence({"p": "y"})])
    assert skeleton.graph == LabelledGraph({"v1": "N", "v2": "N"})


def test_contract_rejects_overlap(ex):
    with pytest.raises(GraphInputError):
        contract_family(ex.host, [ex.s1, ex.s1])


def reduce_start(inst):
    """Drop start-graph adjacencies that produced no host edge."""
    occ_of = {f"v{i + 1}": occ for i, occ in enumerate(inst.family)}
    G = inst.graph
    keep = []
    for e in inst.start.edges:
        x, y = sorted(e)
        if x in occ_of and y in occ_of:
            live = any(G.has_edge(a, b) for a in occ_of[x].nodes for b in occ_of[y].nodes)
        elif x in occ_of or y in occ_of:
            v, w = (x, y) if x in occ_of else (y, x)
            live = any(G.has_edge(a, w) for a in occ_of[v].nodes)
        else:
            live = True
        if live:
            keep.append((x, y))
    return LabelledGraph(inst.start.labels, keep)


@pytest.mark.parametrize("seed", range(40))
def test_contraction_recovers_start_graph(seed):
    inst = generate_instance(seed, labels=3, pattern_size=3, copies=1 + seed % 4)
    skeleton = contract_family(inst.graph, inst.family)
    assert skeleton.graph == reduce_start(inst)
    assert skeleton.graph.edges <= inst.start.edges


def test_verify_running_example(ex):
    family = [ex.s1, ex.s2]
    assert verify_forward(ex.host, family, [0, 1], relation(E_STAR))
    assert not verify_forward(ex.host, family, [0, 1], relation(E_STAR | {("b", "N")}))
    assert verify_forward(ex.host, family, [1, 0], relation(E_REVERSED))
    assert not verify_forward(ex.host, family, [1, 0], relation(E_STAR))


def test_verify_explains_failure(ex):
    result = forward_check(ex.host, [ex.s1, ex.s2], [0, 1], relation(E_STAR | {("b", "N")}))
    assert not result
    assert "extra" in result.reason


def test_verify_with_isomorphic_rhs(ex):
    rhs = LabelledGraph({"w": "a", "x": "a", "y": "c", "z": "b"}, [("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])
    assert verify_forward(ex.host, [ex.s1, ex.s2], [0, 1], relation(E_STAR), rhs=rhs)
    wrong = LabelledGraph({"w": "a", "x": "a", "y": "c", "z": "b"}, [("w", "x"), ("x", "y"), ("y", "z")])
    assert not verify_forward(ex.host, [ex.s1, ex.s2], [0, 1], relation(E_STAR), rhs=wrong)


def test_verify_rejects_bad_order(ex):
    with pytest.raises(GraphInputError):
        verify_forward(ex.host, [ex.s1, ex.s2], [0, 0], relation(E_STAR))
