from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .exceptions import GraphInputError
from .graph import LabelledGraph, Occurrence, iter_induced_embeddings

DEFAULT_OCCURRENCE_CAP = 10_000
DEFAULT_FAMILY_CAP = 1_000


@dataclass(frozen=True)
class OccurrenceList:
    pattern: LabelledGraph
    occurrences: list[Occurrence] = field(default_factory=list)
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.occurrences)

    def __iter__(self):
        return iter(self.occurrences)


@dataclass(frozen=True)
class FamilyList:
    families: list[tuple[Occurrence, ...]] = field(default_factory=list)
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.families)

    def __iter__(self):
        return iter(self.families)


def find_occurrences(G: LabelledGraph, S: LabelledGraph, cap: int = DEFAULT_OCCURRENCE_CAP) -> OccurrenceList:
    """Induced copies of ``S`` in ``G``, one per node set, in sorted node-set order.

    Each node set keeps its lexicographically smallest embedding, which is
    the first one the backtracking matcher produces for it.
    """
    if cap < 1:
        raise GraphInputError("cap must be at least 1")
    by_nodes: dict[tuple[str, ...], dict[str, str]] = {}
    for mapping in iter_induced_embeddings(S, G):
        key = tuple(sorted(mapping.values()))
        by_nodes.setdefault(key, mapping)
    keys = sorted(by_nodes)
    return OccurrenceList(S, [Occurrence(by_nodes[k]) for k in keys[:cap]], len(keys) > cap)


def disjoint_families(
    occs: OccurrenceList | Sequence[Occurrence], k: int, cap: int = DEFAULT_FAMILY_CAP
) -> FamilyList:
    """All ``k``-subsets of pairwise disjoint occurrences, in lexicographic index order."""
    if k < 1:
        raise GraphInputError("k must be at least 1")
    items = list(occs.occurrences if isinstance(occs, OccurrenceList) else occs)
    found: list[tuple[Occurrence, ...]] = []
    truncated = False

    def extend(start: int, chosen: list[Occurrence], used: frozenset[str]) -> bool:
        nonlocal truncated
        if len(chosen) == k:
            if len(found) == cap:
                truncated = True
                return False
            found.append(tuple(chosen))
            return True
        for idx in range(start, len(items) - (k - len(chosen)) + 1):
            occ = items[idx]
            if occ.nodes & used:
                continue
            chosen.append(occ)
            keep_going = extend(idx + 1, chosen, used | occ.nodes)
            chosen.pop()
            if not keep_going:
                return False
        return True

    extend(0, [], frozenset())
    return FamilyList(found, truncated)
