"""Application of a single NLC rule, multi-step derivations, and forward verification.

When a node ``v`` labelled with the nonterminal is rewritten, the new copy of
the right-hand side is connected only to the nodes that were adjacent to
``v`` just before the rewrite (pair membership in the embedding relation
decides each edge).
"""

from __future__ import annotations

import logging
import warnings
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .exceptions import DerivationError, GraphInputError, NlcError, PreconditionError
from .graph import LabelledGraph, Occurrence, check_family, label_isomorphism
from .relation import EmbeddingRelation

log = logging.getLogger(__name__)


class InertPairWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NlcRule:
    """The production ``nonterminal -> rhs`` together with its embedding relation."""

    nonterminal: str
    rhs: LabelledGraph
    embedding: EmbeddingRelation

    def __post_init__(self):
        if self.nonterminal != self.embedding.nonterminal:
            raise GraphInputError("rule and embedding relation disagree on the nonterminal")
        if self.nonterminal in self.rhs.label_set():
            raise GraphInputError(f"right-hand side may not contain {self.nonterminal!r}-labelled nodes")
        missing = self.rhs.label_set() - self.embedding.alphabet
        if missing:
            raise GraphInputError(f"rhs labels missing from the alphabet: {', '.join(sorted(missing))}")
        if self.embedding.inert_pairs():
            warnings.warn(
                f"embedding pairs with {self.nonterminal!r} first never apply: "
                + ", ".join(f"({a},{b})" for a, b in sorted(self.embedding.inert_pairs())),
                InertPairWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class DerivationTrace:
    steps: tuple[tuple[str, dict[str, str]], ...]
    result: LabelledGraph


@dataclass(frozen=True)
class HostSkeleton:
    graph: LabelledGraph
    occurrence_nodes: dict[int, str] = field(default_factory=dict)


def _default_names(rule: NlcRule, prefix: str) -> dict[str, str]:
    return {p: f"{prefix}:{p}" for p in rule.rhs.sorted_nodes()}


def apply_rule(
    G: LabelledGraph,
    rule: NlcRule,
    v: str,
    copy_map: Mapping[str, str] | None = None,
) -> LabelledGraph:
    """Replace the nonterminal node ``v`` by a fresh copy of ``rule.rhs``.

    ``copy_map`` names the created nodes (pattern node -> new identifier);
    by default a copy node is called ``"<v>:<pattern node>"``.
    """
    if v not in G:
        raise GraphInputError(f"unknown node {v!r}")
    if G.label(v) != rule.nonterminal:
        raise PreconditionError(f"node {v!r} is labelled {G.label(v)!r}, not {rule.nonterminal!r}")
    names = dict(copy_map) if copy_map is not None else _default_names(rule, v)
    if set(names) != rule.rhs.nodes:
        raise GraphInputError("copy map must name every right-hand-side node exactly once")
    fresh = list(names.values())
    if len(set(fresh)) != len(fresh):
        raise GraphInputError("copy map assigns the same identifier twice")
    clash = sorted(n for n in fresh if n in G and n != v)
    if clash:
        raise GraphInputError(f"copy map reuses existing node(s): {', '.join(clash)}")

    former = G.neighbors(v)
    labels = G.labels
    del labels[v]
    edges = [e for e in G.edges if v not in e]
    for p in rule.rhs.nodes:
        labels[names[p]] = rule.rhs.label(p)
    edges.extend((names[p], names[q]) for p, q in rule.rhs.sorted_edges())
    pairs = rule.embedding.pairs
    for p in rule.rhs.nodes:
        x_label = rule.rhs.label(p)
        for y in former:
            if (x_label, G.label(y)) in pairs:
                edges.append((names[p], y))
    return LabelledGraph(labels, edges)


def derive(
    G: LabelledGraph,
    rule: NlcRule,
    order: Sequence[str],
    copy_maps: Sequence[Mapping[str, str] | None] | None = None,
) -> DerivationTrace:
    """Apply ``rule`` to the nodes of ``order`` one after another.

    Step ``i`` (1-based) names its copy ``"<i>:<pattern node>"`` unless
    ``copy_maps[i-1]`` is given.
    """
    if copy_maps is not None and len(copy_maps) != len(order):
        raise GraphInputError("copy_maps must have one entry per derivation step")
    steps = []
    current = G
    for i, v in enumerate(order, start=1):
        names = copy_maps[i - 1] if copy_maps is not None else None
        if names is None:
            names = _default_names(rule, str(i))
        try:
            current = apply_rule(current, rule, v, names)
        except NlcError as exc:
            raise DerivationError(i, exc) from exc
        steps.append((v, dict(names)))
    return DerivationTrace(tuple(steps), current)


def contract_family(
    G: LabelledGraph,
    family: Sequence[Occurrence],
    nonterminal: str = "N",
    names: Sequence[str] | None = None,
) -> HostSkeleton:
    """Collapse every occurrence to one nonterminal node.

    The contracted node keeps the outside neighbours of its occurrence, and two
    contracted nodes are adjacent iff ``G`` has an edge between their
    occurrences.
    """
    family = check_family(G, family)
    inside: dict[str, int] = {v: i for i, occ in enumerate(family) for v in occ.nodes}
    outside = G.nodes - inside.keys()
    if names is None:
        names = []
        for i in range(1, len(family) + 1):
            name = f"v{i}"
            while name in outside or name in names:
                name += "'"
            names.append(name)
    else:
        names = list(names)
        if len(names) != len(family) or len(set(names)) != len(names):
            raise GraphInputError("need one distinct name per occurrence")
        clash = sorted(set(names) & outside)
        if clash:
            raise GraphInputError(f"contracted names collide with host nodes: {', '.join(clash)}")

    labels = {v: G.label(v) for v in outside}
    labels.update({name: nonterminal for name in names})
    edges = set()
    for e in G.edges:
        x, y = tuple(e)
        ix, iy = inside.get(x), inside.get(y)
        if ix is None and iy is None:
            edges.add(frozenset((x, y)))
        elif ix is None:
            edges.add(frozenset((x, names[iy])))
        elif iy is None:
            edges.add(frozenset((names[ix], y)))
        elif ix != iy:
            edges.add(frozenset((names[ix], names[iy])))
    return HostSkeleton(LabelledGraph(labels, edges), dict(enumerate(names)))


def pattern_of(G: LabelledGraph, occ: Occurrence) -> LabelledGraph:
    """The pattern graph an occurrence was embedded from, read back off the host."""
    emb = occ.embedding
    inverse = {h: p for p, h in emb.items()}
    return LabelledGraph(
        {p: G.label(h) for p, h in emb.items()},
        ((inverse[x], inverse[y]) for x, y in G.sorted_edges() if x in inverse and y in inverse),
    )


@dataclass(frozen=True)
class ForwardResult:
    ok: bool
    reason: str | None = None
    graph: LabelledGraph | None = None

    def __bool__(self) -> bool:
        return self.ok


def forward_check(
    G: LabelledGraph,
    family: Sequence[Occurrence],
    order: Sequence[int],
    E: EmbeddingRelation,
    rhs: LabelledGraph | None = None,
) -> ForwardResult:
    """Re-derive ``G`` from its contraction and report whether it comes back exactly.

    Created nodes are named after the host nodes of their occurrence, so the
    comparison is plain graph equality. ``rhs`` defaults to the pattern
    recorded in the occurrences; a different but isomorphic right-hand side
    is mapped onto it first.
    """
    family = check_family(G, family)
    if sorted(order) != list(range(len(family))):
        raise GraphInputError(f"order {list(order)} is not a permutation of 0..{len(family) - 1}")
    if not family:
        return ForwardResult(True, None, G)
    pattern_nodes = family[0].embedding.keys()
    if any(occ.embedding.keys() != pattern_nodes for occ in family):
        raise GraphInputError("occurrences do not share a pattern")
    pattern = pattern_of(G, family[0])
    if rhs is None:
        rhs, to_pattern = pattern, {p: p for p in pattern.nodes}
    else:
        to_pattern = label_isomorphism(rhs, pattern)
        if to_pattern is None:
            return ForwardResult(False, "rule right-hand side is not isomorphic to the occurrences")
    try:
        rule = NlcRule(E.nonterminal, rhs, E)
    except GraphInputError as exc:
        return ForwardResult(False, str(exc))

    skeleton = contract_family(G, family, E.nonterminal)
    steps = [skeleton.occurrence_nodes[i] for i in order]
    copy_maps = []
    for i in order:
        emb = family[i].embedding
        copy_maps.append({r: emb[to_pattern[r]] for r in rhs.nodes})
    try:
        derived = derive(skeleton.graph, rule, steps, copy_maps).result
    except DerivationError as exc:
        log.debug("forward derivation failed: %s", exc)
        return ForwardResult(False, str(exc))
    if derived != G:
        missing = G.edges - derived.edges
        extra = derived.edges - G.edges
        reason = f"{len(missing)} edge(s) missing, {len(extra)} extra"
        return ForwardResult(False, reason, derived)
    return ForwardResult(True, None, derived)


def verify_forward(
    G: LabelledGraph,
    family: Sequence[Occurrence],
    order: Sequence[int],
    E: EmbeddingRelation,
    rhs: LabelledGraph | None = None,
) -> bool:
    return forward_check(G, family, order, E, rhs).ok
