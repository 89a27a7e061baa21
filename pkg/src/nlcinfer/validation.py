"""Coercion of loosely typed inputs into the package's graph and family types."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from .exceptions import GraphInputError
from .graph import LabelledGraph, Occurrence, check_family, induced_subgraph, make_occurrence
from .io import parse_family, parse_graph


def check_graph(graph) -> LabelledGraph:
    """Accept a LabelledGraph or a graph document dict."""
    if isinstance(graph, LabelledGraph):
        return graph
    if isinstance(graph, Mapping):
        return parse_graph(dict(graph)).graph
    raise GraphInputError(f"expected a LabelledGraph or graph document, got {type(graph).__name__}")


def check_occurrences(graph: LabelledGraph, family) -> list[Occurrence]:
    """Accept occurrences, a family document dict, or plain node lists.

    Plain node lists are matched against the subgraph induced by the first
    one, which then serves as the pattern.
    """
    if isinstance(family, Mapping):
        return list(parse_family(dict(family), graph).occurrences)
    if not isinstance(family, Sequence) or isinstance(family, str):
        raise GraphInputError("family must be a sequence of occurrences or node lists")
    items = list(family)
    if all(isinstance(item, Occurrence) for item in items):
        return check_family(graph, items)
    if any(isinstance(item, Occurrence) for item in items):
        raise GraphInputError("cannot mix Occurrence objects and node lists")
    if not items:
        return []
    first = induced_subgraph(graph, items[0])
    pattern = LabelledGraph(first.labels, first.sorted_edges())
    return check_family(graph, [make_occurrence(graph, pattern, nodes) for nodes in items])
