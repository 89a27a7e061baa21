"""Command-line interface.

Exit codes: 0 for an affirmative result, 1 for a negative verdict (no
witness, verification failed), 2 for invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .engine import apply_rule, derive, forward_check
from .exceptions import NlcError
from .generate import generate_instance
from .inference import ordering_existence
from .ordering import search_ordering
from .patterns import disjoint_families, find_occurrences

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(NlcError):
    pass


def _graph(path):
    return io.parse_graph(io.load_json(path)).graph


def _ids(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _order(text: str, n: int) -> list[int]:
    try:
        order = [int(t) - 1 for t in _ids(text)]
    except ValueError:
        raise UsageError(f"order must be comma-separated occurrence numbers, got {text!r}") from None
    if sorted(order) != list(range(n)):
        raise UsageError(f"order must be a permutation of 1..{n}")
    return order


def _names(text: str | None) -> dict[str, str] | None:
    if text is None:
        return None
    out = {}
    for item in _ids(text):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--names entries look like pattern=id, got {item!r}")
        out[key] = value
    return out


def _emit_graph(graph, dot: bool, out) -> None:
    out.write(io.to_dot(graph) if dot else io.dumps(io.serialize_graph(graph)))


def _load_inputs(args, need_rule=False):
    bundle = io.load_json(args.bundle) if getattr(args, "bundle", None) else {}
    if args.graph:
        graph_doc = io.load_json(args.graph)
    elif "graph" in bundle:
        graph_doc = bundle["graph"]
    else:
        raise UsageError("--graph is required")
    graph = io.parse_graph(graph_doc).graph
    if args.family:
        family_doc = io.load_json(args.family)
    elif "family" in bundle:
        family_doc = bundle["family"]
    else:
        raise UsageError("--family is required")
    family = io.parse_family(family_doc, graph)
    rule = None
    if need_rule:
        if args.rule:
            rule = io.parse_rule(io.load_json(args.rule))
        elif "rule" in bundle:
            rule = io.parse_rule(bundle["rule"])
        else:
            raise UsageError("--rule is required")
    order = args.order
    if order is None and "order" in bundle:
        order = ",".join(str(k) for k in bundle["order"])
    return graph, family, rule, order


def cmd_apply(args, out) -> int:
    graph = _graph(args.graph)
    rule = io.parse_rule(io.load_json(args.rule))
    _emit_graph(apply_rule(graph, rule, args.node, _names(args.names)), args.dot, out)
    return EXIT_OK


def cmd_derive(args, out) -> int:
    graph = _graph(args.graph)
    rule = io.parse_rule(io.load_json(args.rule))
    _emit_graph(derive(graph, rule, _ids(args.order)).result, args.dot, out)
    return EXIT_OK


def cmd_infer(args, out) -> int:
    graph, family, _, order_text = _load_inputs(args)
    occurrences = list(family.occurrences)
    if order_text is not None:
        order = _order(order_text, len(occurrences))
        relation = ordering_existence(graph, [occurrences[i] for i in order])
    else:
        witness = search_ordering(graph, occurrences, jobs=args.jobs)
        order = list(witness.order) if witness else None
        relation = witness.relation if witness else None
    out.write(io.dumps({
        "order": [i + 1 for i in order] if order is not None else None,
        "embedding": io.serialize_relation(relation) if relation is not None else None,
    }))
    return EXIT_OK if relation is not None else EXIT_NO


def cmd_verify(args, out) -> int:
    graph, family, rule, order_text = _load_inputs(args, need_rule=True)
    if order_text is None:
        raise UsageError("--order is required")
    order = _order(order_text, len(family.occurrences))
    result = forward_check(graph, family.occurrences, order, rule.embedding, rhs=rule.rhs)
    out.write(io.dumps({"verified": result.ok, "reason": result.reason}))
    return EXIT_OK if result.ok else EXIT_NO


def cmd_find(args, out) -> int:
    graph = _graph(args.graph)
    pattern = io.parse_graph(io.load_json(args.pattern)).graph
    found = find_occurrences(graph, pattern, cap=args.cap)
    doc = io.serialize_family(pattern, found.occurrences)
    doc["truncated"] = found.truncated
    if args.k is not None:
        index = {occ: i + 1 for i, occ in enumerate(found.occurrences)}
        families = disjoint_families(found, args.k, cap=args.family_cap)
        doc["families"] = [[index[occ] for occ in fam] for fam in families]
        doc["families_truncated"] = families.truncated
    out.write(io.dumps(doc))
    return EXIT_OK


def cmd_gen(args, out) -> int:
    inst = generate_instance(args.seed, args.labels, args.pattern_size, args.copies)
    out.write(io.dumps({
        "graph": io.serialize_graph(inst.graph),
        "family": io.serialize_family(inst.rule.rhs, inst.family),
        "rule": io.serialize_rule(inst.rule),
        "order": [i + 1 for i in inst.order],
    }))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlcinfer", description="Infer and check single-rule NLC grammars.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="rewrite one nonterminal node")
    p.add_argument("--graph", required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--node", required=True)
    p.add_argument("--names", help="comma-separated pattern=id names for the created nodes")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("derive", help="rewrite nonterminal nodes in the given order")
    p.add_argument("--graph", required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--order", required=True, help="comma-separated node ids (may be empty)")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("infer", help="find a generation order and embedding relation")
    p.add_argument("--graph")
    p.add_argument("--family")
    p.add_argument("--bundle", help="generated bundle supplying graph and family")
    p.add_argument("--order", help="fixed order as 1-based occurrence numbers, e.g. 2,1")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("verify", help="re-derive the graph from its contraction")
    p.add_argument("--graph")
    p.add_argument("--family")
    p.add_argument("--rule")
    p.add_argument("--bundle", help="generated bundle supplying graph, family, rule and order")
    p.add_argument("--order")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("find", help="enumerate induced occurrences of a pattern")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--family-cap", type=int, default=1_000)
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("gen", help="emit a random self-validating instance bundle")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--labels", type=int, default=3)
    p.add_argument("--pattern-size", type=int, default=3)
    p.add_argument("--copies", type=int, default=2)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NlcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
