"""Command-line surface: build generator specs, check criteria, run surgery
proofs, verify the full pipeline, render graphs, dump matrices, and batch-run
directories of spec files."""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from pathlib import Path
from typing import Optional

from .criteria import InterpretationError
from .formats import (
    SpecError,
    analyze,
    emit_matrix,
    parse_spec,
    print_spec,
    range_search_json,
    report_to_json_line,
    render,
)
from .graphs import (
    EdgeKind,
    GraphError,
    GridGraph,
    cross_hatch,
    embed_compose,
    tile_compose,
)
from .states import DEFAULT_PPT_TOL, StateError
from .surgery import SurgeryError, format_trace, prove_entangled, surgery_trace


def _add_common(parser: argparse.ArgumentParser, surgery_flags: bool = True) -> None:
    parser.add_argument("--tol", type=float, default=DEFAULT_PPT_TOL, help="PPT tolerance")
    parser.add_argument(
        "--interpretation",
        choices=["L", "Q", "hybrid", "auto"],
        default="auto",
        help="how to read the graph (auto infers from edge kinds)",
    )
    if surgery_flags:
        parser.add_argument("--max-depth", type=int, default=None, help="surgery search depth cap")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridstates", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="generate a spec file from a graph family")
    b.add_argument("family", choices=["cross-hatch", "embed", "tile"])
    b.add_argument("dims", type=int, nargs=2, metavar=("M", "N"), help="grid size")
    b.add_argument("--inner", type=int, nargs=2, metavar=("m", "n"), help="inner cross-hatch size")
    b.add_argument(
        "--offsets",
        default="",
        help="semicolon-separated row,col offsets, e.g. '1,1' or '0,0;2,2'",
    )
    b.add_argument("--kind", choices=["L", "Q"], default="L")
    b.add_argument("--out", type=Path, default=None, help="output file (default stdout)")

    c = sub.add_parser("check", help="degree criterion plus numeric PPT verdict")
    c.add_argument("spec", type=Path)
    c.add_argument("--resolution", type=int, default=None, help="also run the product-vector range search")
    _add_common(c, surgery_flags=False)

    s = sub.add_parser("surgery", help="run the surgery proof search and print its trace")
    s.add_argument("spec", type=Path)
    s.add_argument("--max-depth", type=int, default=None)
    s.add_argument("--text", action="store_true", help="human-readable trace instead of JSON")

    v = sub.add_parser("verify", help="full pipeline: criterion, PPT, surgery, verdict")
    v.add_argument("spec", type=Path)
    _add_common(v)

    r = sub.add_parser("render", help="render a spec as DOT or ASCII")
    r.add_argument("spec", type=Path)
    r.add_argument("--format", choices=["dot", "ascii"], default="dot")

    m = sub.add_parser("matrix", help="dump one of the exact matrices")
    m.add_argument("spec", type=Path)
    m.add_argument("--which", choices=["L", "Q", "hybrid", "density", "ppt", "offset"], default="hybrid")
    m.add_argument("--format", choices=["json", "csv"], default="json")

    t = sub.add_parser("batch", help="verify every .spec file in a directory, one JSON line each")
    t.add_argument("directory", type=Path)
    t.add_argument("--jobs", type=int, default=1)
    _add_common(t)
    return parser


def _offsets_list(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        r, c = chunk.split(",")
        out.append((int(r), int(c)))
    return out


def _build_graph(args: argparse.Namespace) -> GridGraph:
    kind = EdgeKind(args.kind)
    m, n = args.dims
    if args.family == "cross-hatch":
        return cross_hatch(m, n, kind)
    if args.inner is None:
        raise GraphError("embed/tile need --inner m n")
    im, in_ = args.inner
    offsets = _offsets_list(args.offsets)
    if args.family == "embed":
        if len(offsets) != 1:
            raise GraphError("embed needs exactly one --offsets entry")
        return embed_compose(cross_hatch(m, n, kind), cross_hatch(im, in_, kind), *offsets[0])
    if not offsets:
        raise GraphError("tile needs --offsets")
    tiles = [(cross_hatch(im, in_, kind), r, c) for r, c in offsets]
    return tile_compose(tiles, m, n)


def _load(path: Path):
    return parse_spec(path.read_text(encoding="utf-8"))


def _batch_one(task: tuple[str, str, float, Optional[int]]) -> tuple[bool, str]:
    path, interpretation, tol, max_depth = task
    name = Path(path).name
    try:
        obj = parse_spec(Path(path).read_text(encoding="utf-8"))
        report = analyze(obj, interpretation, tol, max_depth)
        line = json.dumps({"file": name, **report}, separators=(",", ":"))
        return True, line
    except (SpecError, GraphError, StateError, SurgeryError, InterpretationError, OSError) as exc:
        return False, json.dumps({"file": name, "error": str(exc)}, separators=(",", ":"))


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "build":
            text = print_spec(_build_graph(args))
            if args.out is None:
                sys.stdout.write(text)
            else:
                args.out.write_text(text, encoding="utf-8")
            return 0

        if args.command == "check":
            obj = _load(args.spec)
            report = analyze(obj, args.interpretation, args.tol, with_surgery=False)
            if args.resolution is not None and isinstance(obj, GridGraph):
                report["product_vectors"] = range_search_json(obj, args.resolution)
            print(report_to_json_line(report))
            return 0

        if args.command == "surgery":
            obj = _load(args.spec)
            if not isinstance(obj, GridGraph):
                print("graph surgery is not defined for hypergraph states", file=sys.stderr)
                return 1
            tree = prove_entangled(obj, args.max_depth)
            if args.text:
                print(format_trace(tree))
            else:
                print(json.dumps(surgery_trace(tree), separators=(",", ":")))
            return 0

        if args.command == "verify":
            obj = _load(args.spec)
            report = analyze(obj, args.interpretation, args.tol, args.max_depth)
            print(report_to_json_line(report))
            return 0

        if args.command == "render":
            sys.stdout.write(render(_load(args.spec), args.format))
            return 0

        if args.command == "matrix":
            sys.stdout.write(emit_matrix(_load(args.spec), args.which, args.format))
            return 0

        if args.command == "batch":
            files = sorted(p for p in args.directory.iterdir() if p.suffix == ".spec")
            tasks = [(str(p), args.interpretation, args.tol, args.max_depth) for p in files]
            if args.jobs > 1:
                with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_batch_one, tasks))
            else:
                results = [_batch_one(t) for t in tasks]
            ok = True
            for good, line in results:
                ok = ok and good
                print(line)
            return 0 if ok else 1

        raise AssertionError(f"unhandled command {args.command}")
    except (SpecError, GraphError, StateError, SurgeryError, InterpretationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
