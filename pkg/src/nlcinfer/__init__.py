"""Inference of single-rule NLC graph grammars from families of disjoint subgraphs."""

from .engine import (
    DerivationTrace,
    HostSkeleton,
    NlcRule,
    apply_rule,
    contract_family,
    derive,
    forward_check,
    verify_forward,
)
from .estimator import NlcRuleInducer
from .exceptions import (
    DerivationError,
    DocumentError,
    GraphInputError,
    NlcError,
    NoWitnessError,
    PreconditionError,
    SearchLimitError,
)
from .graph import (
    LabelledGraph,
    Occurrence,
    are_touching,
    induced_subgraph,
    k_tuples,
    label_isomorphism,
    make_occurrence,
    neighborhood,
)
from .inference import (
    FamilyProfile,
    InOutSets,
    PairContext,
    family_in_out,
    in_out_sets,
    ordering_existence,
    pair_conditions,
    pair_existence,
    pair_in_out,
    sequence_compatible,
    single_compatible,
    subgraph_in_out,
)
from .ordering import (
    OrderingWitness,
    admissible_touching_graph,
    brute_force_search,
    directed_touching_graph,
    edge_admissible,
    search_ordering,
    touching_graph,
)
from .patterns import disjoint_families, find_occurrences
from .relation import EmbeddingRelation

__version__ = "0.1.0"
