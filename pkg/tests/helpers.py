from itertools import combinations, product

from nlcinfer.generate import generate_instance, perturb
from nlcinfer.relation import EmbeddingRelation


def candidate_pairs(G, nonterminal="N"):
    terminals = sorted(G.label_set() - {nonterminal})
    return [(x, y) for x in terminals for y in terminals + [nonterminal]]


def all_relations(G, nonterminal="N"):
    """Every relation over (terminal label) x (terminal label or nonterminal)."""
    pairs = candidate_pairs(G, nonterminal)
    alphabet = frozenset(G.label_set()) | {nonterminal}
    for mask in range(1 << len(pairs)):
        yield EmbeddingRelation(
            frozenset(p for k, p in enumerate(pairs) if mask >> k & 1), alphabet, nonterminal
        )


def small_instances(count, flips=(0, 2)):
    """(graph, family) pairs with <= 3 occurrences, <= 3 labels, pattern size <= 3.

    Every generated instance is used as is and with random non-occurrence
    edges toggled, which yields many negative cases.
    """
    shapes = list(product((1, 2, 3), (1, 2, 3), (1, 2, 3)))
    out = []
    for seed in range(count):
        labels, size, copies = shapes[seed % len(shapes)]
        inst = generate_instance(seed, labels=labels, pattern_size=size, copies=copies)
        for k in flips:
            G = inst.graph if k == 0 else perturb(inst, k, seed)
            out.append((G, list(inst.family)))
    return out


def touching_pairs(G, family):
    from nlcinfer.graph import are_touching

    for i, j in combinations(range(len(family)), 2):
        if are_touching(G, family[i].nodes, family[j].nodes):
            yield i, j
            yield j, i
