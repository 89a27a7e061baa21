"""Seeded random instances: a rule, a start graph, and the host it derives.

Every instance is self-validating: the host is rebuilt from its contraction
by forward derivation before it is returned.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from itertools import combinations

from .engine import NlcRule, derive, verify_forward
from .exceptions import GraphInputError
from .graph import DEFAULT_NONTERMINAL, LabelledGraph, Occurrence
from .relation import EmbeddingRelation

MAX_LABELS = 26
MAX_PATTERN_SIZE = 8
MAX_COPIES = 8


@dataclass(frozen=True)
class Instance:
    start: LabelledGraph
    rule: NlcRule
    graph: LabelledGraph
    family: tuple[Occurrence, ...]
    order: tuple[int, ...]


def _random_graph(rng: random.Random, labels: dict[str, str], p: float) -> LabelledGraph:
    nodes = sorted(labels)
    return LabelledGraph(labels, [e for e in combinations(nodes, 2) if rng.random() < p])


def generate_instance(
    seed: int,
    labels: int = 3,
    pattern_size: int = 3,
    copies: int = 2,
    *,
    outside: int | None = None,
    edge_prob: float = 0.5,
    nonterminal: str = DEFAULT_NONTERMINAL,
) -> Instance:
    if not 1 <= labels <= MAX_LABELS:
        raise GraphInputError(f"labels must be in 1..{MAX_LABELS}")
    if not 1 <= pattern_size <= MAX_PATTERN_SIZE:
        raise GraphInputError(f"pattern size must be in 1..{MAX_PATTERN_SIZE}")
    if not 0 <= copies <= MAX_COPIES:
        raise GraphInputError(f"copies must be in 0..{MAX_COPIES}")
    rng = random.Random(seed)
    alphabet = [c for c in string.ascii_lowercase[:labels]]
    if nonterminal in alphabet:
        raise GraphInputError(f"nonterminal {nonterminal!r} collides with a terminal label")

    rhs = _random_graph(rng, {f"p{i}": rng.choice(alphabet) for i in range(pattern_size)}, edge_prob)
    pairs = {(x, y) for x in alphabet for y in alphabet if rng.random() < 0.4}
    # (x, N) pairs make touching occurrences interact, so bias towards them
    pairs |= {(x, nonterminal) for x in alphabet if rng.random() < 0.6}
    E = EmbeddingRelation(frozenset(pairs), frozenset(alphabet) | {nonterminal}, nonterminal)
    rule = NlcRule(nonterminal, rhs, E)

    if outside is None:
        outside = rng.randint(0, 3)
    start_labels = {f"v{i}": nonterminal for i in range(1, copies + 1)}
    start_labels.update({f"t{i}": rng.choice(alphabet) for i in range(1, outside + 1)})
    start = _random_graph(rng, start_labels, edge_prob)

    order = list(range(copies))
    rng.shuffle(order)
    names = [{p: f"s{i + 1}_{p}" for p in rhs.sorted_nodes()} for i in range(copies)]
    graph = derive(start, rule, [f"v{i + 1}" for i in order], [names[i] for i in order]).result
    family = tuple(Occurrence(m) for m in names)
    for occ in family:
        occ.validate(graph, rhs)
    if not verify_forward(graph, family, order, E):
        raise AssertionError(f"seed {seed}: generated instance does not re-derive")
    return Instance(start, rule, graph, family, tuple(order))


def perturb(instance: Instance, flips: int, seed: int) -> LabelledGraph:
    """Toggle ``flips`` random host edges that are not inside any occurrence.

    The occurrences stay valid induced copies of the pattern; the result is
    usually no longer derivable, which makes it a source of negative cases.
    """
    rng = random.Random(seed)
    inside = {frozenset(p) for occ in instance.family for p in combinations(sorted(occ.nodes), 2)}
    candidates = [frozenset(p) for p in combinations(instance.graph.sorted_nodes(), 2)]
    candidates = [e for e in candidates if e not in inside]
    edges = set(instance.graph.edges)
    for e in rng.sample(candidates, min(flips, len(candidates))):
        edges ^= {e}
    return LabelledGraph(instance.graph.labels, edges)
