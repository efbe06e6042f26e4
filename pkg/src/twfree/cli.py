"""Command-line interface: ``twfree <subcommand> ...``.

Exit codes: 0 success / negative answer, 1 positive finding (or not in class,
or invalid skeleton, or disagreements), 2 usage, IO or parse errors, 3
undecided recognition.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from multiprocessing import Pool

from .canon import canonical_form
from .decomposer import (
    IN_CLASS,
    NOT_IN_CLASS,
    UNDECIDED,
    TreeNode,
    decompose_only,
    recognize,
    tree_to_dot,
)
from .generator import GenerationError, GenSpec, iter_corpus, read_manifest
from .graph import Graph, GraphError, parse_graph
from .oracle import DEFAULT_BOUND, FINDERS, OracleBoundExceeded, is_theta_wheel_free_oracle
from .skeleton import PetalUnionLimitExceeded, parse_skeleton, validate_skeleton

log = logging.getLogger("twfree")

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_ERROR = 2
EXIT_UNDECIDED = 3

# finders whose running time grows exponentially; they honour --bound
BOUNDED_KINDS = {"hole", "theta", "wheel", "pyramid", "prism"}


class CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _read_graph(path: str) -> Graph:
    try:
        return parse_graph(_read_text(path))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _emit(obj: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _tree_text(node: TreeNode, depth: int = 0) -> str:
    line = "  " * depth + f"{node.kind} n={node.graph.n}"
    if node.basic is not None and node.basic.is_basic:
        line += f" ({node.basic.kind})"
    if node.clique is not None:
        line += f" clique={sorted(node.origin[v] for v in node.clique)}"
    if node.reason:
        line += f" [{node.reason}]"
    out = line + "\n"
    for child in node.children:
        out += _tree_text(child, depth + 1)
    return out


# -- subcommands -------------------------------------------------------------------


def cmd_detect(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    kinds = list(FINDERS) if args.kind == "all" else [args.kind]
    if any(k in BOUNDED_KINDS for k in kinds) and g.n > args.bound:
        raise CliError(f"refusing exhaustive search: {g.n} vertices exceeds bound {args.bound}")
    found = {}
    for kind in kinds:
        w = FINDERS[kind](g)
        found[kind] = None if w is None else w.to_json()
    text = "".join(
        f"{kind}: none\n" if w is None else f"{kind}: {json.dumps(w, sort_keys=True)}\n" for kind, w in found.items()
    )
    _emit({"found": found}, args.format, text)
    return EXIT_FOUND if any(w is not None for w in found.values()) else EXIT_OK


def cmd_recognize(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    result = recognize(g, bound=args.bound, trust=args.trust_decomposition)
    if args.format == "dot":
        sys.stdout.write(tree_to_dot(result.tree))
    else:
        text = f"{result.verdict}\n" + _tree_text(result.tree)
        if result.witness is not None:
            text += f"witness: {json.dumps(result.witness.to_json(), sort_keys=True)}\n"
        _emit(result.to_json(), args.format, text)
    return {IN_CLASS: EXIT_OK, NOT_IN_CLASS: EXIT_FOUND, UNDECIDED: EXIT_UNDECIDED}[result.verdict]


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    tree = decompose_only(g)
    if args.format == "dot":
        sys.stdout.write(tree_to_dot(tree))
    else:
        _emit(tree.to_json(), args.format, _tree_text(tree))
    return EXIT_OK


def cmd_validate_skeleton(args: argparse.Namespace) -> int:
    try:
        s = parse_skeleton(_read_text(args.input))
    except GraphError as exc:
        raise CliError(f"{args.input}: {exc}") from exc
    try:
        report = validate_skeleton(s)
    except PetalUnionLimitExceeded as exc:
        raise CliError(str(exc)) from exc
    text = "valid\n" if report.valid else "".join(f"({v.condition}) {v.message}\n" for v in report.violations)
    _emit(report.to_json(), args.format, text)
    return EXIT_OK if report.valid else EXIT_FOUND


def cmd_generate(args: argparse.Namespace) -> int:
    spec = GenSpec(
        seed=args.seed,
        vertex_budget=args.budget,
        depth=args.depth,
        glue_weight=args.glue_weight,
        join_weight=args.join_weight,
        bound=args.bound,
    )
    try:
        for item in iter_corpus(spec, args.count, verify=not args.trust_decomposition):
            sys.stdout.write(json.dumps(item.to_json(), sort_keys=True) + "\n")
    except GenerationError as exc:
        raise CliError(f"generation failed: {exc}") from exc
    return EXIT_OK


def _compare_one(payload: tuple[Graph, int]) -> tuple[str, bool]:
    g, bound = payload
    r = recognize(g, bound=bound)
    o = is_theta_wheel_free_oracle(g, bound)
    return r.verdict, o.in_class


def _exhaustive_graphs(n: int, canonical: bool):
    slots = list(itertools.combinations(range(n), 2))
    seen = set()
    for code in range(1 << len(slots)):
        g = Graph(n, [slots[i] for i in range(len(slots)) if code >> i & 1])
        if canonical:
            cert = canonical_form(g)
            if cert in seen:
                continue
            seen.add(cert)
        yield g


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    if args.exhaustive_n is not None:
        if not 1 <= args.exhaustive_n <= 7:
            raise CliError("--exhaustive-n must be between 1 and 7")
        graphs = _exhaustive_graphs(args.exhaustive_n, args.canonical)
        what = "non-isomorphic graphs" if args.canonical else "labeled graphs"
    elif args.manifest is not None:
        try:
            graphs = iter([p.graph for p in read_manifest(_read_text(args.manifest))])
        except GraphError as exc:
            raise CliError(str(exc)) from exc
        what = "manifest graphs"
    else:
        raise CliError("oracle-compare needs --exhaustive-n or --manifest")
    graphs = list(graphs)
    if any(g.n > args.bound for g in graphs):
        raise CliError(f"some graph exceeds the oracle bound {args.bound}")
    payload = [(g, args.bound) for g in graphs]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = pool.map(_compare_one, payload, chunksize=256)
    else:
        results = [_compare_one(p) for p in payload]
    disagreements = []
    undecided = 0
    for index, (verdict, oracle_in) in enumerate(results):
        if verdict == UNDECIDED:
            undecided += 1
        elif (verdict == IN_CLASS) != oracle_in:
            disagreements.append({"index": index, "graph": graphs[index].to_text(), "verdict": verdict})
    report = {
        "graphs": len(graphs),
        "disagreements": disagreements,
        "undecided": undecided,
        "in_class": sum(1 for _, o in results if o),
    }
    text = f"{len(disagreements)} disagreements / {len(graphs)} {what}"
    if undecided:
        text += f" ({undecided} undecided)"
    _emit(report, args.format, text + "\n")
    return EXIT_OK if not disagreements and not undecided else EXIT_FOUND


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="text")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="oracle vertex bound (default 20)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="twfree", description="(theta, wheel)-free graph toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[common], help="search for a configuration")
    p.add_argument("input", help="graph file or '-' for stdin")
    p.add_argument("--kind", choices=(*FINDERS, "all"), default="theta")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("recognize", parents=[common], help="decide (theta, wheel)-freeness")
    p.add_argument("input")
    p.add_argument("--trust-decomposition", action="store_true", help="reject when 2-join search is inexact")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("decompose", parents=[common], help="print the decomposition tree")
    p.add_argument("input")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate-skeleton", parents=[common], help="check the k-skeleton conditions")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate_skeleton)

    p = sub.add_parser("generate", parents=[common], help="write a JSON-lines corpus manifest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--budget", type=int, default=20, help="vertex budget per graph")
    p.add_argument("--glue-weight", type=float, default=1.0)
    p.add_argument("--join-weight", type=float, default=1.0)
    p.add_argument("--trust-decomposition", action="store_true", help="skip the oracle check of emissions")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle-compare", parents=[common], help="compare recognition with the oracle")
    p.add_argument("--exhaustive-n", type=int)
    p.add_argument("--manifest")
    p.add_argument("--canonical", action="store_true", help="one graph per isomorphism class")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.bound < 1:
        log.error("--bound must be at least 1")
        return EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, OracleBoundExceeded, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
