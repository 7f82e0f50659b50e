"""Graph spec text format, DOT/ASCII renderers, exact matrix dumps, and the
JSON reports behind the command-line surface.

Spec grammar, one statement per line, ``#`` starts a comment:

    grid M N         | hypergrid M N        (header, first statement)
    L (i,j) (k,l) [w=p/q]                   (signed edge)
    Q (i,j) (k,l) [w=p/q]                   (signless edge)
    H (i,j) (k,l) (m,n)                     (hyperedge, hypergrid only)

Weights default to 1 and must be positive rationals.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import Optional, Union

from .criteria import (
    CriterionReport,
    InterpretationError,
    criterion_report,
    hypergraph_criterion_report,
)
from .graphs import (
    EdgeKind,
    GraphError,
    GridGraph,
    Hypergraph,
    new_grid,
    new_hypergrid,
)
from .states import (
    DEFAULT_PPT_TOL,
    ZeroTraceError,
    density_of_graph,
    density_of_hypergraph,
    matrix_partial_transpose,
    partial_transpose_matrix,
    ppt_verdict,
    product_vector_range_search,
)
from .linalg import (
    ExactMatrix,
    adjacency_matrix,
    degree_matrix,
    hypergraph_laplacian,
    laplacian,
    offset_matrix,
)
from .graphs import hypergraph_to_graph
from .surgery import SurgeryError, prove_entangled, surgery_trace

GraphLike = Union[GridGraph, Hypergraph]


class SpecError(Exception):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SpecSyntaxError(SpecError):
    pass


class SpecSemanticError(SpecError):
    def __init__(self, message: str, line: int, statement: int):
        super().__init__(f"{message} (statement {statement})", line)
        self.statement = statement


_HEADER = re.compile(r"^(grid|hypergrid)\s+(\d+)\s+(\d+)$")
_VERTEX = r"\(\s*(\d+)\s*,\s*(\d+)\s*\)"
_EDGE = re.compile(rf"^([LQ])\s+{_VERTEX}\s+{_VERTEX}(?:\s+w=(\d+)(?:/(\d+))?)?$")
_HYPER = re.compile(rf"^H\s+{_VERTEX}\s+{_VERTEX}\s+{_VERTEX}$")


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body))
    return out


def parse_spec(text: str) -> GraphLike:
    lines = _significant_lines(text)
    if not lines:
        raise SpecSyntaxError("empty spec: expected a grid/hypergrid header", 1)
    lineno, header = lines[0]
    m = _HEADER.match(header)
    if m is None:
        raise SpecSyntaxError(f"expected 'grid M N' or 'hypergrid M N', got {header!r}", lineno)
    kind, rows, cols = m.group(1), int(m.group(2)), int(m.group(3))
    if rows < 1 or cols < 1:
        raise SpecSemanticError("grid dimensions must be positive", lineno, 1)
    if kind == "grid":
        return _parse_grid_statements(rows, cols, lines[1:])
    return _parse_hypergrid_statements(rows, cols, lines[1:])


def _syntax_column(body: str) -> int:
    # Point at the first token that is not plainly an edge-statement piece.
    for match in re.finditer(r"\S+", body):
        token = match.group(0)
        if not re.fullmatch(r"[LQH]|\(\d+,\d+\)|w=\d+(/\d+)?", token):
            return match.start() + 1
    return 1


def _parse_grid_statements(rows: int, cols: int, lines: list[tuple[int, str]]) -> GridGraph:
    g = new_grid(rows, cols)
    for statement, (lineno, body) in enumerate(lines, start=1):
        m = _EDGE.match(body)
        if m is None:
            if _HYPER.match(body):
                raise SpecSemanticError("hyperedges need a hypergrid header", lineno, statement)
            raise SpecSyntaxError(f"bad edge statement {body!r}", lineno, _syntax_column(body))
        kind = EdgeKind(m.group(1))
        a = (int(m.group(2)), int(m.group(3)))
        b = (int(m.group(4)), int(m.group(5)))
        weight = Fraction(int(m.group(6)), int(m.group(7) or 1)) if m.group(6) else Fraction(1)
        try:
            g = g.add_edge(kind, a, b, weight)
        except GraphError as exc:
            raise SpecSemanticError(str(exc), lineno, statement) from exc
    return g


def _parse_hypergrid_statements(rows: int, cols: int, lines: list[tuple[int, str]]) -> Hypergraph:
    h = new_hypergrid(rows, cols)
    for statement, (lineno, body) in enumerate(lines, start=1):
        m = _HYPER.match(body)
        if m is None:
            if _EDGE.match(body):
                raise SpecSemanticError("plain edges need a grid header", lineno, statement)
            raise SpecSyntaxError(f"bad hyperedge statement {body!r}", lineno, _syntax_column(body))
        vertices = [
            (int(m.group(1)), int(m.group(2))),
            (int(m.group(3)), int(m.group(4))),
            (int(m.group(5)), int(m.group(6))),
        ]
        if len(set(vertices)) != 3:
            raise SpecSemanticError("hyperedge vertices must be distinct", lineno, statement)
        try:
            h = h.add_hyperedge(vertices)
        except GraphError as exc:
            raise SpecSemanticError(str(exc), lineno, statement) from exc
    return h


def _weight_suffix(w: Fraction) -> str:
    if w == 1:
        return ""
    if w.denominator == 1:
        return f" w={w.numerator}"
    return f" w={w.numerator}/{w.denominator}"


def print_spec(obj: GraphLike) -> str:
    """Canonical spec text: header plus statements in sorted order."""
    if isinstance(obj, GridGraph):
        lines = [f"grid {obj.m} {obj.n}"]
        for e in obj.sorted_edges():
            lines.append(
                f"{e.kind.value} ({e.a[0]},{e.a[1]}) ({e.b[0]},{e.b[1]}){_weight_suffix(e.weight)}"
            )
    else:
        lines = [f"hypergrid {obj.m} {obj.n}"]
        for tri in obj.sorted_hyperedges():
            lines.append("H " + " ".join(f"({v[0]},{v[1]})" for v in tri))
    return "\n".join(lines) + "\n"


def spec_digest(obj: GraphLike) -> str:
    return hashlib.sha256(print_spec(obj).encode("ascii")).hexdigest()


# -- renderers ---------------------------------------------------------------


def render(obj: GraphLike, format: str = "dot") -> str:
    if format == "dot":
        return _render_dot(obj)
    if format == "ascii":
        return _render_ascii(obj)
    raise ValueError(f"unknown render format {format!r}")


def _node_id(v) -> str:
    return f"v{v[0]}_{v[1]}"


def _render_dot(obj: GraphLike) -> str:
    lines = ["graph G {", "  layout=neato;", '  node [shape=circle fontsize=10];']
    for v in obj.vertices:
        lines.append(f'  {_node_id(v)} [label="({v[0]},{v[1]})" pos="{v[1]},{-v[0]}!"];')
    if isinstance(obj, GridGraph):
        for e in obj.sorted_edges():
            style = "dashed" if e.kind is EdgeKind.L else "solid"
            attrs = [f"style={style}"]
            if e.weight != 1:
                attrs.append(f'label="{e.weight}"')
            lines.append(f"  {_node_id(e.a)} -- {_node_id(e.b)} [{', '.join(attrs)}];")
    else:
        for idx, tri in enumerate(obj.sorted_hyperedges()):
            centre = f"h{idx}"
            cx = sum(v[1] for v in tri) / 3
            cy = -sum(v[0] for v in tri) / 3
            lines.append(f'  {centre} [shape=point width=0.08 pos="{cx:.3f},{cy:.3f}!"];')
            for v in tri:
                lines.append(f"  {centre} -- {_node_id(v)} [style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_ascii(obj: GraphLike) -> str:
    if isinstance(obj, GridGraph):
        busy = {v for e in obj.edges for v in e.pair}
        statements = [
            f"{e.kind.value} ({e.a[0]},{e.a[1]})-({e.b[0]},{e.b[1]}){_weight_suffix(e.weight)}"
            for e in obj.sorted_edges()
        ]
    else:
        busy = {v for h in obj.hyperedges for v in h}
        statements = [
            "H " + "-".join(f"({v[0]},{v[1]})" for v in tri) for tri in obj.sorted_hyperedges()
        ]
    rows = []
    for r in range(obj.m):
        rows.append(" ".join("o" if (r, c) in busy else "." for c in range(obj.n)))
    return "\n".join(rows + statements) + "\n"


# -- matrix emission -----------------------------------------------------------


def _matrix_for(obj: GraphLike, which: str) -> ExactMatrix:
    if isinstance(obj, GridGraph):
        if which == "L":
            return degree_matrix(obj) - adjacency_matrix(obj)
        if which == "Q":
            return degree_matrix(obj) + adjacency_matrix(obj)
        if which == "hybrid":
            return laplacian(obj)
        if which == "density":
            return density_of_graph(obj).matrix
        if which == "ppt":
            return matrix_partial_transpose(density_of_graph(obj))
        raise ValueError(f"unknown matrix selector {which!r}")
    if which == "L":
        return hypergraph_laplacian(obj)
    if which == "Q":
        return laplacian(hypergraph_to_graph(obj))
    if which == "offset":
        return offset_matrix(obj)
    if which == "density":
        return density_of_hypergraph(obj).matrix
    if which == "ppt":
        rho = density_of_hypergraph(obj)
        return partial_transpose_matrix(rho.matrix, rho.dim_a, rho.dim_b)
    raise ValueError(f"unknown matrix selector {which!r} for a hypergraph")


def emit_matrix(obj: GraphLike, which: str, format: str = "json") -> str:
    mat = _matrix_for(obj, which)
    if format == "json":
        entries = [[f"{x.numerator}/{x.denominator}" for x in row] for row in mat.entries]
        return json.dumps(entries, separators=(",", ":")) + "\n"
    if format == "csv":
        return "\n".join(",".join(repr(float(x)) for x in row) for row in mat.entries) + "\n"
    raise ValueError(f"unknown matrix format {format!r}")


# -- report pipeline -------------------------------------------------------------


def resolve_interpretation(obj: GraphLike, interpretation: str = "auto") -> str:
    if isinstance(obj, Hypergraph):
        if interpretation not in ("auto", "hypergraph"):
            raise InterpretationError("hypergraphs only admit the hypergraph interpretation")
        return "hypergraph"
    if interpretation != "auto":
        return interpretation
    if obj.q_edges and obj.l_edges:
        return "hybrid"
    if obj.q_edges:
        return "Q"
    return "L"


def _criterion_json(crit: CriterionReport) -> dict:
    return {
        "applicable": crit.applicable,
        "degree_equal": crit.degree_equal,
        "implied_verdict": crit.implied_verdict,
        "details": crit.details,
    }


def analyze(
    obj: GraphLike,
    interpretation: str = "auto",
    tol: float = DEFAULT_PPT_TOL,
    max_depth: Optional[int] = None,
    with_surgery: bool = True,
) -> dict:
    """Full pipeline: degree criterion, numeric PPT, and (optionally) the
    surgery search; returns the JSON-ready report."""
    interp = resolve_interpretation(obj, interpretation)
    proof = None
    proof_note = None
    if isinstance(obj, Hypergraph):
        crit = hypergraph_criterion_report(obj)
        ppt = crit.ppt
        proof_note = "graph surgery is not defined for hypergraph states"
    else:
        crit = criterion_report(obj, interp)
        try:
            ppt = ppt_verdict(density_of_graph(obj), tol)
        except ZeroTraceError:
            ppt = None
        if with_surgery and obj.edges:
            try:
                proof = prove_entangled(obj, max_depth)
            except SurgeryError as exc:
                proof_note = str(exc)

    proven = proof is not None and proof.succeeded
    if ppt is None:
        verdict = "inconclusive"
    elif proven and (crit.degree_equal or ppt.is_ppt):
        verdict = "bound-entangled"
    elif not ppt.is_ppt:
        verdict = "entangled-NPT"
    else:
        verdict = "PPT-uncertified"

    report = {
        "input_digest": spec_digest(obj),
        "interpretation": interp,
        "applicable": crit.applicable,
        "degree_equal": crit.degree_equal,
        "implied_verdict": crit.implied_verdict,
        "min_eig": None if ppt is None else ppt.min_eig,
        "tol": tol,
        "is_ppt": None if ppt is None else ppt.is_ppt,
        "proof": None if proof is None else surgery_trace(proof),
        "verdict": verdict,
        "details": crit.details if proof_note is None else f"{crit.details}; {proof_note}",
    }
    return report


def range_search_json(obj: GridGraph, resolution: int) -> list[dict]:
    witnesses = product_vector_range_search(density_of_graph(obj), resolution)
    return [
        {"factor_a": list(w.factor_a), "factor_b": list(w.factor_b), "residual": w.residual}
        for w in witnesses
    ]


def report_to_json_line(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"), sort_keys=False)
