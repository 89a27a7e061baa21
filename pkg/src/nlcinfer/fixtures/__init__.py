"""Bundled JSON fixtures for the two-square running example.

``g_prime.json`` is the host graph with the two squares ``S1`` (a1, a2, bL,
c1) and ``S2`` (a3, a4, bR, c2); ``fig1_left.json`` and ``fig1_middle.json``
are the start graph and the graph after the first rewrite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..engine import NlcRule
from ..graph import LabelledGraph, Occurrence
from ..io import parse_family, parse_graph, parse_rule

NAMES = (
    "fig1_left",
    "fig1_middle",
    "g_prime",
    "rule",
    "family",
    "conflict",
    "conflict_family",
)


def path(name: str):
    return resources.files(__name__) / f"{name}.json"


def load(name: str) -> dict:
    return json.loads(path(name).read_text(encoding="utf-8"))


def graph(name: str) -> LabelledGraph:
    return parse_graph(load(name)).graph


@dataclass(frozen=True)
class RunningExample:
    start: LabelledGraph
    middle: LabelledGraph
    host: LabelledGraph
    rule: NlcRule
    pattern: LabelledGraph
    s1: Occurrence
    s2: Occurrence


def running_example() -> RunningExample:
    host = graph("g_prime")
    fam = parse_family(load("family"), host)
    s1, s2 = fam.occurrences
    return RunningExample(graph("fig1_left"), graph("fig1_middle"), host, parse_rule(load("rule")), fam.pattern, s1, s2)


def conflict_example() -> tuple[LabelledGraph, list[Occurrence]]:
    host = graph("conflict")
    return host, list(parse_family(load("conflict_family"), host).occurrences)
