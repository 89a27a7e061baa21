from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .exceptions import GraphInputError
from .graph import DEFAULT_NONTERMINAL, check_label

LabelPair = tuple[str, str]


@dataclass(frozen=True)
class EmbeddingRelation:
    """A set of ordered label pairs over an alphabet that contains the nonterminal.

    After a nonterminal node is replaced, a new node ``x`` is joined to a former
    neighbour ``y`` iff ``(label(x), label(y))`` is in the relation.
    """

    pairs: frozenset[LabelPair]
    alphabet: frozenset[str]
    nonterminal: str = DEFAULT_NONTERMINAL

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((check_label(a), check_label(b)) for a, b in self.pairs))
        object.__setattr__(self, "alphabet", frozenset(check_label(x) for x in self.alphabet))
        if self.nonterminal not in self.alphabet:
            raise GraphInputError(f"alphabet must contain the nonterminal {self.nonterminal!r}")
        stray = {x for pair in self.pairs for x in pair} - self.alphabet
        if stray:
            raise GraphInputError(f"embedding uses labels outside the alphabet: {', '.join(sorted(stray))}")

    @classmethod
    def of(
        cls,
        pairs: Iterable[Iterable[str]],
        alphabet: Iterable[str] | None = None,
        nonterminal: str = DEFAULT_NONTERMINAL,
    ) -> EmbeddingRelation:
        pairs = frozenset(tuple(p) for p in pairs)
        if any(len(p) != 2 for p in pairs):
            raise GraphInputError("embedding pairs must have exactly two labels")
        if alphabet is None:
            alphabet = {x for p in pairs for x in p}
        return cls(pairs, frozenset(alphabet) | {nonterminal}, nonterminal)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def inert_pairs(self) -> frozenset[LabelPair]:
        """Pairs whose first label is the nonterminal; they never create an edge."""
        return frozenset(p for p in self.pairs if p[0] == self.nonterminal)

    def with_pairs(self, pairs: Iterable[LabelPair]) -> EmbeddingRelation:
        return EmbeddingRelation(frozenset(pairs), self.alphabet, self.nonterminal)
