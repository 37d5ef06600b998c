"""Command-line surface: verification, conversion, construction, export.

Machine-readable JSON goes to stdout (canonical key order, so identical
inputs give byte-identical outputs); human diagnostics go to stderr.
Exit codes: 0 success/true, 1 semantic-false, 2 parse error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import arrangements as arr_mod
from . import cubes, linorders, represent, tokens
from .errors import CapError, InputError, ParseError

VERTEX_CAP_ENV = "TOKENMEDIA_MAX_VERTICES"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_system(path: str) -> tokens.TokenSystem:
    return tokens.TokenSystem.from_json_dict(_read_json(path))


def _cmd_check(args) -> int:
    ts = _load_system(args.input)
    report = tokens.check_axioms(ts, args.bound)
    decision = represent.decide_medium(ts)
    _emit({"axioms": report.to_json_dict(), "decision": decision.to_json_dict()})
    if not decision.is_medium:
        kind = decision.witness.get("axiom") or decision.witness.get("kind")
        print(f"not a medium ({kind})", file=sys.stderr)
        return 1
    return 0


def _cmd_represent(args) -> int:
    ts = _load_system(args.input)
    decision = represent.decide_medium(ts)
    if not decision.is_medium:
        _emit({"error": "not a medium", "witness": dict(decision.witness)})
        return 1
    base = args.base if args.base is not None else ts.states[0]
    orientation = represent.orient_from_state(ts, base)
    rep = represent.positive_content_family(ts, orientation)
    _emit({"base": base, **rep.to_json_dict()})
    return 0


def _cmd_graph(args) -> int:
    ts = _load_system(args.input)
    decision = represent.decide_medium(ts)
    if not decision.is_medium:
        _emit({"error": "not a medium", "witness": dict(decision.witness)})
        return 1
    g = cubes.medium_graph(ts)
    labeled = cubes.LabeledGraph(g.vertices, g.edges, decision.alpha, g.edge_labels)
    _emit(labeled.to_json_dict())
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(cubes.to_dot(labeled))
    return 0


def _cmd_pcube(args) -> int:
    text = _read_text(args.input)
    if text.lstrip().startswith("{"):
        try:
            g = cubes.LabeledGraph.from_json_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.input}: {exc.msg}") from None
    else:
        g = cubes.LabeledGraph.from_edge_list(text)
    result = cubes.is_partial_cube(g)
    _emit(result.to_json_dict())
    if args.dot and result.accepted:
        labeled = cubes.LabeledGraph(g.vertices, g.edges, result.labels)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(cubes.to_dot(labeled))
    return 0 if result.accepted else 1


def _cmd_iso(args) -> int:
    a = _load_system(args.first)
    b = _load_system(args.second)
    cap = args.max_vertices or int(os.environ.get(VERTEX_CAP_ENV, cubes.DEFAULT_ISO_CAP))
    found = cubes.media_isomorphic(a, b, max_vertices=cap)
    if found is None:
        _emit({"isomorphic": False})
        return 1
    alpha, beta = found
    _emit({"isomorphic": True, "alpha": alpha, "beta": beta})
    return 0


def _cmd_linmedium(args) -> int:
    ts, fam = linorders.linear_medium(args.n, cap=args.cap)
    doc = ts.to_json_dict()
    doc["family"] = fam.to_json_dict()
    _emit(doc)
    if args.dot:
        g = cubes.medium_graph(ts)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(cubes.to_dot(g))
    return 0


def _arrangement_pipeline(arrangement) -> dict:
    regions = arr_mod.enumerate_regions(arrangement)
    graph = arr_mod.region_adjacency(arrangement, regions)
    ts = arr_mod.arrangement_medium(arrangement, regions, graph)
    fam = arr_mod.region_family(arrangement, regions)
    return {
        "lines": arrangement.to_json_dict()["lines"],
        "regions": [r.to_json_dict() for r in regions],
        "graph": graph.to_json_dict(),
        "system": ts.to_json_dict(),
        "family": fam.to_json_dict(),
    }


def _cmd_arrangement(args) -> int:
    arrangement = arr_mod.Arrangement.from_json_dict(_read_json(args.input))
    doc = _arrangement_pipeline(arrangement)
    _emit(doc)
    if args.dot:
        g = cubes.LabeledGraph.from_json_dict(doc["graph"])
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(cubes.to_dot(g))
    return 0


def _cmd_mosaic(args) -> int:
    arrangement = arr_mod.mosaic_window(args.kind, args.radius)
    _emit(_arrangement_pipeline(arrangement))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokenmedia",
        description="Verify, convert, and construct token-system media.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="axiom report and exact medium decision")
    p.add_argument("input", help="token system JSON ('-' for stdin)")
    p.add_argument("--bound", type=int, default=None,
                   help="message-length bound for M3/M4 (default: twice the token count)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("represent", help="positive-content family with bijections")
    p.add_argument("input")
    p.add_argument("--base", default=None, help="base state for the orientation")
    p.set_defaults(func=_cmd_represent)

    p = sub.add_parser("graph", help="graph of a medium (JSON, optional DOT)")
    p.add_argument("input")
    p.add_argument("--dot", default=None, help="write DOT to this path")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("pcube", help="partial-cube recognition with labeling or witness")
    p.add_argument("input", help="graph JSON or whitespace edge list ('-' for stdin)")
    p.add_argument("--dot", default=None)
    p.set_defaults(func=_cmd_pcube)

    p = sub.add_parser("iso", help="decide isomorphism of two media")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--max-vertices", type=int, default=None)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("linmedium", help="the medium of linear orders on n elements")
    p.add_argument("n", type=int)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--dot", default=None)
    p.set_defaults(func=_cmd_linmedium)

    p = sub.add_parser("arrangement", help="regions, graph, and medium of a line arrangement")
    p.add_argument("input", help="arrangement JSON ('-' for stdin)")
    p.add_argument("--dot", default=None)
    p.set_defaults(func=_cmd_arrangement)

    p = sub.add_parser("mosaic", help="finite window of a mosaic line family")
    p.add_argument("kind", choices=arr_mod.MOSAIC_KINDS)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=_cmd_mosaic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
