"""Labelled simple graphs and the set-level notation used throughout the package.

Node identifiers are opaque strings. Every function that returns a collection
of nodes or edges returns a set; callers that need a stable order use
``sorted``, which is what all serialization does.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from itertools import combinations

from .exceptions import GraphInputError

DEFAULT_NONTERMINAL = "N"


def check_label(label) -> str:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise GraphInputError(f"invalid label {label!r}: expected a non-empty token without whitespace")
    if not label.isprintable():
        raise GraphInputError(f"invalid label {label!r}: non-printable characters")
    return label


class LabelledGraph:
    """An undirected simple graph with a total node labelling.

    Instances are treated as immutable values: equality compares node
    identifiers, labels and edges exactly, and instances are hashable.
    """

    __slots__ = ("_labels", "_adj", "_edges", "_hash")

    def __init__(self, labels: Mapping[str, str], edges: Iterable[Iterable[str]] = ()):
        self._labels: dict[str, str] = {}
        for node, label in labels.items():
            if not isinstance(node, str) or not node:
                raise GraphInputError(f"invalid node identifier {node!r}")
            self._labels[node] = check_label(label)
        adj: dict[str, set[str]] = {v: set() for v in self._labels}
        edge_set = set()
        for edge in edges:
            pair = tuple(edge)
            if len(pair) != 2:
                raise GraphInputError(f"edge {edge!r} does not have exactly two endpoints")
            x, y = pair
            if x == y:
                raise GraphInputError(f"loop on node {x!r}")
            for end in pair:
                if end not in adj:
                    raise GraphInputError(f"edge {x!r}-{y!r} references unknown node {end!r}")
            adj[x].add(y)
            adj[y].add(x)
            edge_set.add(frozenset(pair))
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = frozenset(edge_set)
        self._hash = None

    @classmethod
    def empty(cls) -> LabelledGraph:
        return cls({})

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self._labels)

    @property
    def edges(self) -> frozenset[frozenset[str]]:
        return self._edges

    @property
    def labels(self) -> dict[str, str]:
        return dict(self._labels)

    def label(self, node: str) -> str:
        try:
            return self._labels[node]
        except KeyError:
            raise GraphInputError(f"unknown node {node!r}") from None

    def neighbors(self, node: str) -> frozenset[str]:
        try:
            return self._adj[node]
        except KeyError:
            raise GraphInputError(f"unknown node {node!r}") from None

    def degree(self, node: str) -> int:
        return len(self.neighbors(node))

    def has_edge(self, x: str, y: str) -> bool:
        return y in self._adj.get(x, ())

    def label_set(self) -> frozenset[str]:
        return frozenset(self._labels.values())

    def sorted_nodes(self) -> list[str]:
        return sorted(self._labels)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self._edges)

    def __contains__(self, node) -> bool:
        return node in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self._labels == other._labels and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._labels.items()), self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"LabelledGraph(nodes={len(self)}, edges={len(self._edges)})"


def _check_subset(G: LabelledGraph, W: Iterable[str]) -> frozenset[str]:
    W = frozenset(W)
    unknown = W - G.nodes
    if unknown:
        raise GraphInputError(f"unknown node(s): {', '.join(sorted(unknown))}")
    return W


def check_disjoint(W1: Iterable[str], W2: Iterable[str]) -> None:
    common = frozenset(W1) & frozenset(W2)
    if common:
        raise GraphInputError(f"node sets overlap on {', '.join(sorted(common))}")


def neighborhood(G: LabelledGraph, W: Iterable[str]) -> frozenset[str]:
    """Nodes outside ``W`` adjacent to at least one node of ``W``."""
    W = _check_subset(G, W)
    out: set[str] = set()
    for w in W:
        out.update(G.neighbors(w))
    return frozenset(out - W)


def induced_subgraph(G: LabelledGraph, W: Iterable[str]) -> LabelledGraph:
    W = _check_subset(G, W)
    return LabelledGraph(
        {v: G.label(v) for v in W},
        (e for e in G.edges if e <= W),
    )


def are_touching(G: LabelledGraph, W1: Iterable[str], W2: Iterable[str]) -> bool:
    """True iff the closed neighbourhoods of two disjoint node sets intersect."""
    W1 = _check_subset(G, W1)
    W2 = _check_subset(G, W2)
    check_disjoint(W1, W2)
    return bool((W1 | neighborhood(G, W1)) & (W2 | neighborhood(G, W2)))


def k_tuples(W1: Iterable[str], W2: Iterable[str]) -> frozenset[tuple[str, str]]:
    W1, W2 = frozenset(W1), frozenset(W2)
    check_disjoint(W1, W2)
    return frozenset((x1, x2) for x1 in W1 for x2 in W2)


def iter_induced_embeddings(
    pattern: LabelledGraph, host: LabelledGraph
) -> Iterator[dict[str, str]]:
    """Yield label-preserving induced embeddings of ``pattern`` into ``host``.

    Pattern nodes are assigned in sorted order and host candidates are tried
    in sorted order, so mappings come out in lexicographic order of their
    image tuples.
    """
    order = pattern.sorted_nodes()
    candidates = host.sorted_nodes()
    if len(order) > len(candidates):
        return
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(depth: int) -> Iterator[dict[str, str]]:
        if depth == len(order):
            yield dict(mapping)
            return
        p = order[depth]
        p_label = pattern.label(p)
        p_degree = pattern.degree(p)
        for h in candidates:
            if h in used or host.label(h) != p_label or host.degree(h) < p_degree:
                continue
            if any(pattern.has_edge(p, q) != host.has_edge(h, mapping[q]) for q in order[:depth]):
                continue
            mapping[p] = h
            used.add(h)
            yield from extend(depth + 1)
            del mapping[p]
            used.discard(h)

    yield from extend(0)


def label_isomorphism(G1: LabelledGraph, G2: LabelledGraph) -> dict[str, str] | None:
    """First label-preserving isomorphism ``G1 -> G2`` in backtracking order, or None."""
    if len(G1) != len(G2) or len(G1.edges) != len(G2.edges):
        return None
    if sorted(G1.labels.values()) != sorted(G2.labels.values()):
        return None
    return next(iter_induced_embeddings(G1, G2), None)


class Occurrence:
    """A copy of a pattern inside a host graph.

    ``embedding`` maps every pattern node to a distinct host node; the host
    nodes are exposed as ``nodes``. Use :func:`make_occurrence` to build a
    validated instance.
    """

    __slots__ = ("_pairs", "_nodes")

    def __init__(self, embedding: Mapping[str, str]):
        pairs = tuple(sorted(embedding.items()))
        nodes = frozenset(h for _, h in pairs)
        if len(nodes) != len(pairs):
            raise GraphInputError("occurrence embedding is not injective")
        self._pairs = pairs
        self._nodes = nodes

    @property
    def embedding(self) -> dict[str, str]:
        return dict(self._pairs)

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    def __len__(self) -> int:
        return len(self._pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Occurrence):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        return f"Occurrence({{{', '.join(sorted(self._nodes))}}})"

    def sort_key(self) -> tuple[str, ...]:
        return tuple(sorted(self._nodes))

    def validate(self, G: LabelledGraph, pattern: LabelledGraph) -> None:
        """Raise GraphInputError unless this is an induced, label-preserving copy of ``pattern``."""
        emb = dict(self._pairs)
        if set(emb) != pattern.nodes:
            raise GraphInputError("occurrence embedding does not cover the pattern nodes exactly")
        _check_subset(G, self._nodes)
        for p, h in emb.items():
            if pattern.label(p) != G.label(h):
                raise GraphInputError(
                    f"label mismatch: pattern node {p!r} ({pattern.label(p)}) -> {h!r} ({G.label(h)})"
                )
        for p, q in combinations(sorted(emb), 2):
            if pattern.has_edge(p, q) != G.has_edge(emb[p], emb[q]):
                raise GraphInputError(
                    f"edge mismatch between pattern nodes {p!r},{q!r} and host nodes {emb[p]!r},{emb[q]!r}"
                )


def make_occurrence(
    G: LabelledGraph,
    pattern: LabelledGraph,
    nodes: Iterable[str],
    mapping: Mapping[str, str] | None = None,
) -> Occurrence:
    """Build a validated occurrence; without ``mapping`` the first isomorphism is used."""
    nodes = _check_subset(G, nodes)
    if mapping is None:
        mapping = label_isomorphism(pattern, induced_subgraph(G, nodes))
        if mapping is None:
            raise GraphInputError(
                f"induced subgraph on {{{', '.join(sorted(nodes))}}} is not isomorphic to the pattern"
            )
    occ = Occurrence(mapping)
    if occ.nodes != nodes:
        raise GraphInputError("mapping image differs from the declared node set")
    occ.validate(G, pattern)
    return occ


def check_family(G: LabelledGraph, family: Iterable[Occurrence]) -> list[Occurrence]:
    """Check that occurrences lie in ``G`` and are pairwise disjoint."""
    family = list(family)
    seen: dict[str, int] = {}
    for i, occ in enumerate(family):
        _check_subset(G, occ.nodes)
        for v in occ.nodes:
            if v in seen:
                raise GraphInputError(f"occurrences {seen[v]} and {i} overlap on node {v!r}")
            seen[v] = i
    return family


def check_isomorphic_family(family: list[Occurrence], G: LabelledGraph) -> None:
    """Raise unless all occurrences induce mutually isomorphic subgraphs."""
    if len(family) < 2:
        return
    first = induced_subgraph(G, family[0].nodes)
    for i, occ in enumerate(family[1:], start=1):
        if label_isomorphism(first, induced_subgraph(G, occ.nodes)) is None:
            raise GraphInputError(f"occurrence {i} is not isomorphic to occurrence 0")
