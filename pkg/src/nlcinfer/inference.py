"""Inset/outset bookkeeping and the compatibility tests built on it.

An embedding relation ``E`` is *compatible* with an ordered family of
occurrences when replacing nonterminals of some start graph in that order
rebuilds the host exactly. Everything here reduces that question to set
algebra over label pairs:

* an *inset* collects label pairs realised by an edge, and must be in ``E``;
* an *outset* collects label pairs realised by a non-edge, and is excluded.

Pair constraints (the ``PairContext`` family) are only imposed on pairs of
occurrences joined by at least one host edge. Occurrences that merely share
an outside neighbour are generated independently of each other: the start
graph needs no nonterminal edge between them, so no pair constraint applies.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .exceptions import GraphInputError, PreconditionError
from .graph import (
    DEFAULT_NONTERMINAL,
    LabelledGraph,
    Occurrence,
    are_touching,
    check_family,
    check_isomorphic_family,
    k_tuples,
    neighborhood,
)
from .relation import EmbeddingRelation, LabelPair

PairSet = frozenset[LabelPair]


@dataclass(frozen=True)
class InOutSets:
    inset: PairSet
    outset: PairSet


def in_out_sets(G: LabelledGraph, Q: Iterable[tuple[str, str]]) -> InOutSets:
    inset, outset = set(), set()
    for x, y in Q:
        if x == y:
            raise GraphInputError(f"node tuple ({x}, {y}) has equal components")
        pair = (G.label(x), G.label(y))
        if G.has_edge(x, y):
            inset.add(pair)
        else:
            outset.add(pair)
    return InOutSets(frozenset(inset), frozenset(outset))


def subgraph_in_out(G: LabelledGraph, S: Occurrence) -> InOutSets:
    return in_out_sets(G, k_tuples(S.nodes, neighborhood(G, S.nodes)))


def project_second(pairs: Iterable[LabelPair]) -> frozenset[str]:
    return frozenset(b for _, b in pairs)


@dataclass(frozen=True)
class PairContext:
    """Insets and outsets between an earlier occurrence ``first`` and a later ``second``.

    ``inset``/``outset`` come from the tuples (node of ``second``, node of
    ``first`` adjacent to ``second``); ``full_inset``/``full_outset`` from all
    tuples (node of ``second``, node of ``first``).
    """

    first: Occurrence
    second: Occurrence
    inset: PairSet
    outset: PairSet
    full_inset: PairSet
    full_outset: PairSet

    @property
    def linked(self) -> bool:
        """Whether the host has at least one edge between the two occurrences."""
        return bool(self.full_inset)


def pair_in_out(G: LabelledGraph, Si: Occurrence, Sj: Occurrence) -> PairContext:
    if not are_touching(G, Si.nodes, Sj.nodes):
        raise PreconditionError(f"{Si!r} and {Sj!r} do not touch")
    near = Si.nodes & neighborhood(G, Sj.nodes)
    q1 = in_out_sets(G, k_tuples(Sj.nodes, near))
    q2 = in_out_sets(G, k_tuples(Sj.nodes, Si.nodes))
    return PairContext(Si, Sj, q1.inset, q1.outset, q2.inset, q2.outset)


def family_in_out(G: LabelledGraph, family: Sequence[Occurrence]) -> InOutSets:
    family = check_family(G, family)
    covered = frozenset().union(*(occ.nodes for occ in family))
    Q = set()
    for occ in family:
        Q.update(k_tuples(occ.nodes, neighborhood(G, occ.nodes) - covered))
    return in_out_sets(G, Q)


def single_compatible(E: EmbeddingRelation, G: LabelledGraph, S: Occurrence) -> bool:
    io = subgraph_in_out(G, S)
    return io.inset <= E.pairs and not (E.pairs & io.outset)


def pair_conditions(E: EmbeddingRelation, ctx: PairContext) -> bool:
    """Pair constraints for a pair whose start graph joins the two nonterminals.

    (1) the pair inset is in ``E``; (2) every label of the earlier occurrence
    that must see the later one is paired with the nonterminal; (3) no
    full-outset pair is in ``E`` together with its second label's
    nonterminal pair.
    """
    pairs, nt = E.pairs, E.nonterminal
    if not ctx.inset <= pairs:
        return False
    if any((x, nt) not in pairs for x in project_second(ctx.inset)):
        return False
    return not any(e in pairs and (e[1], nt) in pairs for e in ctx.full_outset)


def pair_conditions_primed(
    E: EmbeddingRelation,
    ctx: PairContext,
    far_pairs: PairSet,
    exclude: PairSet = frozenset(),
) -> bool:
    """Variant of :func:`pair_conditions` with the outset excluded up front.

    ``far_pairs`` are the label pairs of tuples (node of ``second``, node of
    ``first`` not adjacent to ``second``); condition (3) is only checked on
    those, minus ``exclude``.
    """
    pairs, nt = E.pairs, E.nonterminal
    if not ctx.inset <= pairs or pairs & ctx.outset:
        return False
    if any((x, nt) not in pairs for x in project_second(ctx.inset)):
        return False
    return not any(e in pairs and (e[1], nt) in pairs for e in far_pairs - exclude)


def far_pairs(G: LabelledGraph, ctx: PairContext) -> PairSet:
    far = ctx.first.nodes - neighborhood(G, ctx.second.nodes)
    return frozenset((G.label(x), G.label(y)) for x, y in k_tuples(ctx.second.nodes, far))


def default_alphabet(G: LabelledGraph, nonterminal: str = DEFAULT_NONTERMINAL) -> frozenset[str]:
    return G.label_set() | {nonterminal}


def resolve_alphabet(
    G: LabelledGraph, alphabet: Iterable[str] | None, nonterminal: str
) -> frozenset[str]:
    base = default_alphabet(G, nonterminal)
    if alphabet is None:
        return base
    alphabet = frozenset(alphabet)
    if not base <= alphabet:
        raise GraphInputError(
            f"alphabet is missing labels used by the graph: {', '.join(sorted(base - alphabet))}"
        )
    return alphabet


class FamilyProfile:
    """All inset/outset tables of one family, computed once and shared.

    Orders passed to the methods are sequences of indices into ``family``.
    """

    def __init__(self, G: LabelledGraph, family: Sequence[Occurrence], check_isomorphic: bool = True):
        self.graph = G
        self.family = check_family(G, family)
        if check_isomorphic:
            check_isomorphic_family(self.family, G)
        self.family_io = family_in_out(G, self.family)
        n = len(self.family)
        self.touching: frozenset[frozenset[int]] = frozenset(
            frozenset((i, j))
            for i, j in combinations(range(n), 2)
            if are_touching(G, self.family[i].nodes, self.family[j].nodes)
        )
        self.contexts: dict[tuple[int, int], PairContext] = {}
        for edge in self.touching:
            i, j = sorted(edge)
            self.contexts[i, j] = pair_in_out(G, self.family[i], self.family[j])
            self.contexts[j, i] = pair_in_out(G, self.family[j], self.family[i])

    def __len__(self) -> int:
        return len(self.family)

    def arcs(self, order: Sequence[int]) -> list[tuple[int, int]]:
        """Touching pairs oriented from earlier to later in ``order``."""
        position = {k: pos for pos, k in enumerate(order)}
        if sorted(position) != list(range(len(self.family))) or len(order) != len(self.family):
            raise GraphInputError(f"order {list(order)} is not a permutation of the family")
        out = []
        for edge in self.touching:
            i, j = sorted(edge, key=position.__getitem__)
            out.append((i, j))
        return sorted(out, key=lambda a: (position[a[0]], position[a[1]]))

    def linked_arcs(self, order: Sequence[int]) -> list[tuple[int, int]]:
        return [a for a in self.arcs(order) if self.contexts[a].linked]

    def compatible(self, E: EmbeddingRelation, order: Sequence[int]) -> bool:
        io = self.family_io
        if not io.inset <= E.pairs or E.pairs & io.outset:
            return False
        return all(pair_conditions(E, self.contexts[a]) for a in self.linked_arcs(order))

    def existence_witness(
        self, order: Sequence[int], alphabet: Iterable[str] | None = None, nonterminal: str = DEFAULT_NONTERMINAL
    ) -> EmbeddingRelation | None:
        io = self.family_io
        arcs = self.linked_arcs(order)
        arc_in = frozenset().union(*(self.contexts[a].inset for a in arcs))
        arc_full_out = frozenset().union(*(self.contexts[a].full_outset for a in arcs))
        if (io.inset | arc_in) & io.outset:
            return None
        if project_second(arc_in) & project_second(io.inset & arc_full_out):
            return None
        if arc_in & arc_full_out:
            return None
        return self.canonical_witness(arcs, alphabet, nonterminal)

    def canonical_witness(
        self,
        arcs: Iterable[tuple[int, int]],
        alphabet: Iterable[str] | None = None,
        nonterminal: str = DEFAULT_NONTERMINAL,
    ) -> EmbeddingRelation:
        arc_in = frozenset().union(*(self.contexts[a].inset for a in arcs))
        pairs = self.family_io.inset | arc_in | {(x, nonterminal) for x in project_second(arc_in)}
        return EmbeddingRelation(pairs, resolve_alphabet(self.graph, alphabet, nonterminal), nonterminal)


@lru_cache(maxsize=256)
def _cached_profile(G: LabelledGraph, C: tuple[Occurrence, ...]) -> FamilyProfile:
    return FamilyProfile(G, C)


def sequence_compatible(E: EmbeddingRelation, G: LabelledGraph, C: Sequence[Occurrence]) -> bool:
    """Whether ``E`` generates the occurrences of ``C`` in the given order and rebuilds ``G``."""
    profile = _cached_profile(G, tuple(C))
    return profile.compatible(E, range(len(C)))


def pair_existence(G: LabelledGraph, Si: Occurrence, Sj: Occurrence) -> bool:
    ctx = pair_in_out(G, Si, Sj)
    io = family_in_out(G, [Si, Sj])
    if (io.inset | ctx.inset) & io.outset:
        return False
    if project_second(ctx.inset) & project_second(io.inset & ctx.full_outset):
        return False
    return not (ctx.inset & ctx.full_outset)


def ordering_existence(
    G: LabelledGraph,
    C: Sequence[Occurrence],
    alphabet: Iterable[str] | None = None,
    nonterminal: str = DEFAULT_NONTERMINAL,
) -> EmbeddingRelation | None:
    """The canonical compatible relation for the order ``C``, or None if there is none.

    The witness is the family inset plus every pair inset, plus ``(x, N)``
    for each label ``x`` that a later occurrence must reach in an earlier one.
    """
    profile = _cached_profile(G, tuple(C))
    return profile.existence_witness(range(len(C)), alphabet, nonterminal)
