"""JSON documents for graphs, rules and occurrence families, plus DOT export.

Serialization is canonical: keys sorted, nodes sorted by id, each edge
written with its endpoints sorted and the edge list sorted. Occurrence lists
keep their order because orders on the command line index into them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .exceptions import DocumentError, NlcError
from .graph import DEFAULT_NONTERMINAL, LabelledGraph, Occurrence, make_occurrence
from .engine import NlcRule
from .relation import EmbeddingRelation

_GRAPH_SCHEMA = {
    "type": "object",
    "required": ["nodes", "edges"],
    "additionalProperties": False,
    "properties": {
        "alphabet": {"type": "array", "items": {"type": "string"}},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label"],
                "additionalProperties": False,
                "properties": {"id": {"type": "string"}, "label": {"type": "string"}},
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
    },
}

_PAIR = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}

_RULE_SCHEMA = {
    "type": "object",
    "required": ["rhs", "embedding"],
    "additionalProperties": False,
    "properties": {
        "nonterminal": {"type": "string"},
        "rhs": _GRAPH_SCHEMA,
        "embedding": {"type": "array", "items": _PAIR},
    },
}

_FAMILY_SCHEMA = {
    "type": "object",
    "required": ["pattern", "occurrences"],
    "additionalProperties": False,
    "properties": {
        "pattern": _GRAPH_SCHEMA,
        "occurrences": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["nodes"],
                "additionalProperties": False,
                "properties": {
                    "nodes": {"type": "array", "items": {"type": "string"}},
                    "mapping": {"type": "array", "items": _PAIR},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class GraphDocument:
    graph: LabelledGraph
    alphabet: tuple[str, ...] | None = None


@dataclass(frozen=True)
class FamilyDocument:
    pattern: LabelledGraph
    occurrences: tuple[Occurrence, ...]


def _validate(doc, schema, root="$"):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = root + exc.json_path[1:]
        raise DocumentError(path, exc.message) from None


def _graph_from_checked(doc: dict, path: str) -> GraphDocument:
    labels = {}
    for k, node in enumerate(doc["nodes"]):
        if node["id"] in labels:
            raise DocumentError(f"{path}.nodes[{k}].id", f"duplicate node id {node['id']!r}")
        labels[node["id"]] = node["label"]
    for k, (x, y) in enumerate(doc["edges"]):
        for end in (x, y):
            if end not in labels:
                raise DocumentError(f"{path}.edges[{k}]", f"edge references unknown node {end!r}")
        if x == y:
            raise DocumentError(f"{path}.edges[{k}]", f"self-edge on {x!r}")
    try:
        graph = LabelledGraph(labels, doc["edges"])
    except NlcError as exc:
        raise DocumentError(path, str(exc)) from None
    alphabet = doc.get("alphabet")
    if alphabet is not None:
        missing = graph.label_set() - set(alphabet)
        if missing:
            raise DocumentError(f"{path}.alphabet", f"labels missing from alphabet: {', '.join(sorted(missing))}")
        alphabet = tuple(sorted(set(alphabet)))
    return GraphDocument(graph, alphabet)


def parse_graph(doc: dict) -> GraphDocument:
    _validate(doc, _GRAPH_SCHEMA)
    return _graph_from_checked(doc, "$")


def serialize_graph(graph: LabelledGraph | GraphDocument, alphabet=None) -> dict:
    if isinstance(graph, GraphDocument):
        graph, alphabet = graph.graph, graph.alphabet
    doc = {
        "nodes": [{"id": v, "label": graph.label(v)} for v in graph.sorted_nodes()],
        "edges": [list(e) for e in graph.sorted_edges()],
    }
    if alphabet is not None:
        doc["alphabet"] = sorted(set(alphabet))
    return doc


def parse_rule(doc: dict) -> NlcRule:
    _validate(doc, _RULE_SCHEMA)
    nonterminal = doc.get("nonterminal", DEFAULT_NONTERMINAL)
    rhs = _graph_from_checked(doc["rhs"], "$.rhs")
    alphabet = set(rhs.alphabet) if rhs.alphabet is not None else set(rhs.graph.label_set())
    alphabet |= {x for pair in doc["embedding"] for x in pair}
    alphabet.add(nonterminal)
    try:
        embedding = EmbeddingRelation.of(doc["embedding"], alphabet, nonterminal)
        return NlcRule(nonterminal, rhs.graph, embedding)
    except NlcError as exc:
        raise DocumentError("$", str(exc)) from None


def serialize_rule(rule: NlcRule) -> dict:
    return {
        "nonterminal": rule.nonterminal,
        "rhs": serialize_graph(rule.rhs),
        "embedding": [list(p) for p in sorted(rule.embedding.pairs)],
    }


def parse_family(doc: dict, host: LabelledGraph) -> FamilyDocument:
    """Parse a family and validate every occurrence against ``host``."""
    _validate(doc, _FAMILY_SCHEMA)
    pattern = _graph_from_checked(doc["pattern"], "$.pattern").graph
    occurrences = []
    for k, item in enumerate(doc["occurrences"]):
        mapping = item.get("mapping")
        try:
            if mapping is not None:
                mapping = dict(mapping)
                if len(mapping) != len(item["mapping"]):
                    raise DocumentError(f"$.occurrences[{k}].mapping", "pattern node mapped twice")
            occurrences.append(make_occurrence(host, pattern, item["nodes"], mapping))
        except DocumentError:
            raise
        except NlcError as exc:
            raise DocumentError(f"$.occurrences[{k}]", str(exc)) from None
    return FamilyDocument(pattern, tuple(occurrences))


def serialize_family(pattern: LabelledGraph, occurrences) -> dict:
    return {
        "pattern": serialize_graph(pattern),
        "occurrences": [
            {"nodes": sorted(occ.nodes), "mapping": [list(p) for p in sorted(occ.embedding.items())]}
            for occ in occurrences
        ],
    }


def serialize_relation(E: EmbeddingRelation) -> list[list[str]]:
    return [list(p) for p in sorted(E.pairs)]


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(str(path), f"invalid JSON: {exc}") from None


def to_dot(graph: LabelledGraph, name: str = "G") -> str:
    """Undirected DOT text; node text is the label only."""
    lines = [f"graph {json.dumps(name)} {{"]
    for v in graph.sorted_nodes():
        lines.append(f"  {json.dumps(v)} [label={json.dumps(graph.label(v))}];")
    for x, y in graph.sorted_edges():
        lines.append(f"  {json.dumps(x)} -- {json.dumps(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
