"""Search for a generation order of a family together with a compatible relation."""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .exceptions import GraphInputError, SearchLimitError
from .graph import DEFAULT_NONTERMINAL, LabelledGraph, Occurrence
from .inference import FamilyProfile, project_second
from .relation import EmbeddingRelation

DEFAULT_SEARCH_CAP = 12
DEFAULT_BRUTE_FORCE_CAP = 8


def search_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get("NLC_MAX_N")
    if raw is None:
        return DEFAULT_SEARCH_CAP
    try:
        return int(raw)
    except ValueError:
        raise GraphInputError(f"NLC_MAX_N must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class TouchingGraph:
    vertices: tuple[int, ...]
    edges: frozenset[frozenset[int]]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True)
class DirectedTouchingGraph:
    vertices: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]

    def is_acyclic(self) -> bool:
        indegree = {v: 0 for v in self.vertices}
        for _, j in self.arcs:
            indegree[j] += 1
        ready = [v for v, d in indegree.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for i, j in self.arcs:
                if i == v:
                    indegree[j] -= 1
                    if indegree[j] == 0:
                        ready.append(j)
        return seen == len(self.vertices)


# same shape, but arcs may come in antiparallel pairs
AdmissibleTouchingGraph = DirectedTouchingGraph


@dataclass(frozen=True)
class OrderingWitness:
    order: tuple[int, ...]
    relation: EmbeddingRelation


def _profile(G, family) -> FamilyProfile:
    if isinstance(family, FamilyProfile):
        return family
    return FamilyProfile(G, family)


def touching_graph(G: LabelledGraph, family: Sequence[Occurrence]) -> TouchingGraph:
    profile = FamilyProfile(G, family, check_isomorphic=False)
    return TouchingGraph(tuple(range(len(profile))), profile.touching)


def directed_touching_graph(touching: TouchingGraph, order: Sequence[int]) -> DirectedTouchingGraph:
    position = {k: pos for pos, k in enumerate(order)}
    if sorted(position) != list(touching.vertices):
        raise GraphInputError(f"order {list(order)} is not a permutation of the vertices")
    arcs = frozenset(tuple(sorted(e, key=position.__getitem__)) for e in touching.edges)
    return DirectedTouchingGraph(touching.vertices, arcs)


def _admissible(profile: FamilyProfile, arc: tuple[int, int]) -> bool:
    ctx = profile.contexts[arc]
    io = profile.family_io
    return not (io.inset & ctx.outset) and not (ctx.inset & io.outset)


def edge_admissible(G: LabelledGraph, family: Sequence[Occurrence], arc: tuple[int, int]) -> bool:
    """Whether orienting the touching pair ``arc`` clashes with the family inset/outset."""
    profile = _profile(G, family)
    i, j = arc
    if i == j or frozenset(arc) not in profile.touching:
        raise GraphInputError(f"occurrences {i} and {j} do not touch")
    return _admissible(profile, (i, j))


def admissible_touching_graph(G: LabelledGraph, family: Sequence[Occurrence]) -> AdmissibleTouchingGraph:
    profile = _profile(G, family)
    arcs = frozenset(arc for arc in profile.contexts if _admissible(profile, arc))
    return DirectedTouchingGraph(tuple(range(len(profile))), arcs)


class _PartialOrder:
    """Unions accumulated over the linked arcs fixed so far in a prefix."""

    __slots__ = ("arc_in", "arc_full_out", "family_in")

    def __init__(self, family_in):
        self.family_in = family_in
        self.arc_in = frozenset()
        self.arc_full_out = frozenset()

    def extended(self, contexts) -> _PartialOrder | None:
        arc_in = self.arc_in.union(*(c.inset for c in contexts))
        arc_full_out = self.arc_full_out.union(*(c.full_outset for c in contexts))
        if arc_in & arc_full_out:
            return None
        if project_second(arc_in) & project_second(self.family_in & arc_full_out):
            return None
        nxt = _PartialOrder(self.family_in)
        nxt.arc_in, nxt.arc_full_out = arc_in, arc_full_out
        return nxt


def _search_from(profile: FamilyProfile, prefix: tuple[int, ...], state, admissible) -> tuple[int, ...] | None:
    n = len(profile)
    if len(prefix) == n:
        return prefix
    placed = set(prefix)
    for k in range(n):
        if k in placed:
            continue
        new_arcs = [(i, k) for i in prefix if frozenset((i, k)) in profile.touching]
        if any(arc not in admissible for arc in new_arcs):
            continue
        linked = [profile.contexts[a] for a in new_arcs if profile.contexts[a].linked]
        nxt = state.extended(linked) if linked else state
        if nxt is None:
            continue
        found = _search_from(profile, prefix + (k,), nxt, admissible)
        if found is not None:
            return found
    return None


def _search_branch(args):
    G, family, first = args
    profile = FamilyProfile(G, family)
    admissible = admissible_touching_graph(G, profile).arcs
    return _search_from(profile, (first,), _PartialOrder(profile.family_io.inset), admissible)


def search_ordering(
    G: LabelledGraph,
    family: Sequence[Occurrence],
    *,
    alphabet: Iterable[str] | None = None,
    nonterminal: str = DEFAULT_NONTERMINAL,
    max_n: int | None = None,
    jobs: int = 1,
) -> OrderingWitness | None:
    """Find the lexicographically smallest order that admits a compatible relation.

    Returns None when no order of the family works. Orders are built depth
    first; a prefix is abandoned as soon as one of its fixed arcs is not
    admissible or the arcs fixed so far already violate a separation
    condition.
    """
    cap = search_cap(max_n)
    if len(family) > cap:
        raise SearchLimitError(f"family of {len(family)} exceeds the search cap of {cap} (set NLC_MAX_N)")
    profile = FamilyProfile(G, family)
    io = profile.family_io
    if io.inset & io.outset:
        return None
    admissible = admissible_touching_graph(G, profile).arcs
    for edge in profile.touching:
        i, j = sorted(edge)
        if (i, j) not in admissible and (j, i) not in admissible:
            return None
    n = len(profile)
    if n == 0:
        return OrderingWitness((), profile.canonical_witness([], alphabet, nonterminal))
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_branch, [(G, list(family), k) for k in range(n)]))
        found = min((r for r in results if r is not None), default=None)
    else:
        found = _search_from(profile, (), _PartialOrder(io.inset), admissible)
    if found is None:
        return None
    relation = profile.existence_witness(found, alphabet, nonterminal)
    assert relation is not None, "search accepted an order without a witness"
    return OrderingWitness(found, relation)


def _check_order(args):
    G, family, order, alphabet, nonterminal = args
    return FamilyProfile(G, family).existence_witness(order, alphabet, nonterminal)


def brute_force_search(
    G: LabelledGraph,
    family: Sequence[Occurrence],
    *,
    alphabet: Iterable[str] | None = None,
    nonterminal: str = DEFAULT_NONTERMINAL,
    max_n: int = DEFAULT_BRUTE_FORCE_CAP,
    jobs: int = 1,
) -> list[OrderingWitness]:
    """Every order of the family that admits a compatible relation, with its canonical witness."""
    if len(family) > max_n:
        raise SearchLimitError(f"brute force over {len(family)}! orders refused (cap {max_n})")
    profile = FamilyProfile(G, family)
    orders = list(permutations(range(len(profile))))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            args = [(G, list(family), o, alphabet, nonterminal) for o in orders]
            witnesses = list(pool.map(_check_order, args, chunksize=64))
    else:
        witnesses = [profile.existence_witness(o, alphabet, nonterminal) for o in orders]
    return [OrderingWitness(o, w) for o, w in zip(orders, witnesses) if w is not None]
