"""Estimator-style wrapper around rule inference.

``fit`` learns a generation order and an embedding relation for a host graph
and a family of occurrences; ``transform`` contracts occurrences to
nonterminal nodes and ``inverse_transform`` expands them again with the
learned rule.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .engine import NlcRule, contract_family, derive, pattern_of, verify_forward
from .exceptions import GraphInputError, NoWitnessError
from .graph import DEFAULT_NONTERMINAL, LabelledGraph
from .inference import ordering_existence
from .ordering import search_ordering
from .validation import check_graph, check_occurrences


class NlcRuleInducer(BaseEstimator):
    """Learn a single rule ``N -> S / E`` that regenerates a host graph.

    Parameters
    ----------
    nonterminal : str
        Label of replaceable nodes.
    alphabet : iterable of str or None
        Label alphabet of the relation; defaults to the host labels plus
        ``nonterminal``.
    order : sequence of int or None
        Fix the generation order (0-based occurrence indices) instead of
        searching for one.
    max_n : int or None
        Largest family the order search accepts; ``NLC_MAX_N`` applies when None.
    jobs : int
        Worker processes for the order search.
    """

    def __init__(self, nonterminal=DEFAULT_NONTERMINAL, alphabet=None, order=None, max_n=None, jobs=1):
        self.nonterminal = nonterminal
        self.alphabet = alphabet
        self.order = order
        self.max_n = max_n
        self.jobs = jobs

    def fit(self, graph, family):
        graph = check_graph(graph)
        family = check_occurrences(graph, family)
        if not family:
            raise GraphInputError("cannot fit an empty family")
        if self.order is not None:
            order = tuple(self.order)
            if sorted(order) != list(range(len(family))):
                raise GraphInputError(f"order {order} is not a permutation of the family")
            relation = ordering_existence(graph, [family[i] for i in order], self.alphabet, self.nonterminal)
        else:
            witness = search_ordering(
                graph, family, alphabet=self.alphabet, nonterminal=self.nonterminal, max_n=self.max_n, jobs=self.jobs
            )
            order, relation = (witness.order, witness.relation) if witness else (None, None)
        if relation is None:
            raise NoWitnessError("no generation order admits a compatible embedding relation")
        self.order_ = order
        self.embedding_ = relation
        self.rule_ = NlcRule(self.nonterminal, pattern_of(graph, family[0]), relation)
        self.family_ = tuple(family)
        self.n_occurrences_ = len(family)
        return self

    def transform(self, graph, family=None) -> LabelledGraph:
        """Contract each occurrence to a nonterminal node ``v1``, ``v2``, ..."""
        check_is_fitted(self)
        graph = check_graph(graph)
        family = self.family_ if family is None else check_occurrences(graph, family)
        return contract_family(graph, family, self.nonterminal).graph

    def fit_transform(self, graph, family):
        return self.fit(graph, family).transform(graph)

    def inverse_transform(self, skeleton) -> LabelledGraph:
        """Expand the contracted nodes in the learned order, naming nodes as in the fitted family."""
        check_is_fitted(self)
        skeleton = check_graph(skeleton)
        names = contract_family_names(self.n_occurrences_, skeleton, self.nonterminal)
        copy_maps = [self.family_[i].embedding for i in self.order_]
        return derive(skeleton, self.rule_, [names[i] for i in self.order_], copy_maps).result

    def score(self, graph, family=None) -> float:
        """1.0 if the learned rule and order regenerate ``graph`` exactly, else 0.0."""
        check_is_fitted(self)
        graph = check_graph(graph)
        family = self.family_ if family is None else check_occurrences(graph, family)
        return float(verify_forward(graph, family, self.order_, self.embedding_))


def contract_family_names(n: int, skeleton: LabelledGraph, nonterminal: str) -> list[str]:
    """Recover the names ``transform`` gave to the contracted nodes."""
    names = []
    for i in range(1, n + 1):
        name = f"v{i}"
        while name in skeleton and skeleton.label(name) != nonterminal:
            name += "'"
        if name not in skeleton:
            raise GraphInputError(f"skeleton has no contracted node for occurrence {i}")
        names.append(name)
    return names
