"""Row/column graph surgery, proxy graphs for COI inputs, and the AND-OR
search that certifies entanglement via the range criterion.

A surgery CUTs every edge incident to the pivot's row (or column) and then
STITCHes severed components back together.  Stitch edges respect the signed
colouring: same-sign survivors are rejoined with L-edges, mixed survivors
with Q-edges across opposite signs.  That keeps each component's signed
indicator in the kernel of the hybrid Laplacian, which is what makes the
range-criterion argument go through step by step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .criteria import HybridClass, classify_hybrid
from .graphs import Edge, EdgeKind, GridGraph, Vertex, signed_coloring
from .linalg import in_kernel, laplacian


class SurgeryError(Exception):
    pass


@dataclass(frozen=True)
class SurgeryStep:
    axis: str  # "row" | "col"
    pivot: Vertex
    removed: tuple[Edge, ...]
    added: tuple[Edge, ...]


@dataclass(frozen=True)
class ProxyTrace:
    removed_l: tuple[Edge, ...]
    added_q: tuple[Edge, ...]
    designated: tuple[tuple[Vertex, Vertex, Vertex], ...]  # (component, in part1, in part2)


@dataclass(frozen=True)
class ProofTree:
    node_key: bytes
    depth: int
    outcome: str  # "empty" | "proven" | "inconclusive"
    pivot: Optional[Vertex] = None
    row_step: Optional[SurgeryStep] = None
    col_step: Optional[SurgeryStep] = None
    row_child: Optional["ProofTree"] = None
    col_child: Optional["ProofTree"] = None
    reason: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.outcome in ("empty", "proven")


def isolated_vertices(g: GridGraph) -> list[Vertex]:
    return [v for v in g.vertices if g.degree(v) == 0]


def _line_filter(axis: str, index: int):
    if axis == "row":
        return lambda v: v[0] == index
    return lambda v: v[1] == index


def _line_has_edges(g: GridGraph, axis: str, index: int) -> bool:
    in_line = _line_filter(axis, index)
    return any(in_line(e.a) or in_line(e.b) for e in g.edges)


def _pieces(vertices: list[Vertex], graph: GridGraph) -> list[list[Vertex]]:
    """Connected pieces of the given vertex set under the graph's edges,
    ordered by smallest vertex."""
    vset = set(vertices)
    adj: dict[Vertex, list[Vertex]] = {v: [] for v in vertices}
    for e in graph.sorted_edges():
        if e.a in vset and e.b in vset:
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
    seen: set[Vertex] = set()
    pieces: list[list[Vertex]] = []
    for start in sorted(vset):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        piece = []
        while queue:
            v = queue.popleft()
            piece.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        pieces.append(sorted(piece))
    return pieces


def _surgery_colouring(g: GridGraph) -> dict[Vertex, int]:
    cls = classify_hybrid(g)
    if cls in (HybridClass.COI, HybridClass.GI):
        raise SurgeryError(f"surgery is not defined on {cls.value} graphs; build a proxy first")
    colour = signed_coloring(g)
    if colour is None:
        raise SurgeryError("surgery on a Q-graph requires it to be bipartite")
    return colour


def _stitch_edges(
    pieces: list[list[Vertex]], colour: dict[Vertex, int]
) -> list[Edge]:
    """Reconnect the pieces of one severed component.

    Same-sign survivors chain with L-edges between the smallest vertices of
    consecutive pieces.  Mixed survivors are rejoined with Q-edges, each
    linking opposite signs; pieces that cannot attach yet are deferred.
    """
    signs = {colour[v] for piece in pieces for v in piece}
    added: list[Edge] = []
    if len(signs) == 1:
        reps = [piece[0] for piece in pieces]
        for u, w in zip(reps, reps[1:]):
            added.append(Edge(u, w, EdgeKind.L, Fraction(1)))
        return added
    attached: list[Vertex] = list(pieces[0])
    queue = deque(pieces[1:])
    while queue:
        progressed = False
        for _ in range(len(queue)):
            piece = queue.popleft()
            pair = None
            for u in piece:
                partners = [w for w in sorted(attached) if colour[w] != colour[u]]
                if partners:
                    pair = (u, partners[0])
                    break
            if pair is None:
                queue.append(piece)
                continue
            added.append(Edge(pair[0], pair[1], EdgeKind.Q, Fraction(1)))
            attached.extend(piece)
            progressed = True
        if not progressed:
            raise SurgeryError("stitch cannot respect the partition discipline")
    return added


def _surgery(g: GridGraph, pivot: Vertex, axis: str) -> tuple[GridGraph, SurgeryStep]:
    g._check_bounds(pivot)
    if g.degree(pivot) != 0:
        raise SurgeryError(f"pivot {pivot} is not isolated")
    colour = _surgery_colouring(g)
    index = pivot[0] if axis == "row" else pivot[1]
    in_line = _line_filter(axis, index)
    removed = sorted(e for e in g.edges if in_line(e.a) or in_line(e.b))
    if not removed:
        raise SurgeryError(f"no-op surgery: {axis} {index} has no incident edges")
    cut = g.without_edges(removed)
    added: list[Edge] = []
    for comp in g.connected_components():
        if not any(e in comp.edges for e in removed):
            continue
        survivors = [v for v in comp.vertices if not in_line(v)]
        if len(survivors) < 2:
            continue
        pieces = _pieces(survivors, cut)
        if len(pieces) <= 1:
            continue
        added.extend(_stitch_edges(pieces, colour))
    if len(added) >= len(removed):
        raise SurgeryError("stitch would not shrink the graph")
    child = cut.with_edges(added)
    return child, SurgeryStep(axis, pivot, tuple(removed), tuple(sorted(added)))


def row_surgery(g: GridGraph, pivot: Vertex) -> tuple[GridGraph, SurgeryStep]:
    return _surgery(g, pivot, "row")


def col_surgery(g: GridGraph, pivot: Vertex) -> tuple[GridGraph, SurgeryStep]:
    return _surgery(g, pivot, "col")


# -- proxy graphs -----------------------------------------------------------


def proxy_graph(g: GridGraph) -> tuple[GridGraph, ProxyTrace]:
    """Replace a COI graph by a kernel-identical NOI graph.

    Per component that carries a Q-edge: strip L-edges from every vertex that
    also touches a Q-edge, then reattach disconnected pieces with Q-edges to
    designated vertices of the opposite sign.  Reattaching can expose new
    L-/Q-overlaps, so the two moves alternate until the component is whole
    and overlap-free.  Signs and component vertex sets never change, which
    pins the hybrid-Laplacian kernel exactly.
    """
    cls = classify_hybrid(g)
    if cls is HybridClass.GI:
        raise SurgeryError("GI graphs have no proxy")
    if cls is not HybridClass.COI:
        return g, ProxyTrace((), (), ())
    colour = signed_coloring(g)
    assert colour is not None
    work = g
    removed_all: list[Edge] = []
    added_all: list[Edge] = []
    designated: list[tuple[Vertex, Vertex, Vertex]] = []
    for comp in g.connected_components():
        comp_set = set(comp.vertices)
        q_touched = sorted({v for e in comp.edges if e.kind is EdgeKind.Q for v in e.pair})
        if not q_touched:
            continue
        d1 = min(v for v in q_touched if colour[v] > 0)
        d2 = min(v for v in q_touched if colour[v] < 0)
        designated.append((comp.vertices[0], d1, d2))
        while True:
            q_inc = {
                v
                for e in work.edges
                if e.kind is EdgeKind.Q and e.a in comp_set
                for v in e.pair
            }
            bad = sorted(
                e
                for e in work.edges
                if e.kind is EdgeKind.L
                and e.a in comp_set
                and (e.a in q_inc or e.b in q_inc)
            )
            if bad:
                work = work.without_edges(bad)
                removed_all.extend(bad)
                continue
            pieces = _pieces(list(comp.vertices), work)
            if len(pieces) <= 1:
                break
            anchor = next(p for p in pieces if d1 in p)
            piece = next(p for p in pieces if p is not anchor)
            u = piece[0]
            if colour[u] < 0:
                target = d1
            elif d2 not in piece:
                target = d2
            else:
                u = min(v for v in piece if colour[v] < 0)
                target = d1
            edge = Edge(u, target, EdgeKind.Q, Fraction(1))
            work = work.with_edges([edge])
            added_all.append(edge)
    return work, ProxyTrace(tuple(sorted(removed_all)), tuple(sorted(added_all)), tuple(designated))


# -- AND-OR proof search ------------------------------------------------------


def prove_entangled(g: GridGraph, max_depth: Optional[int] = None) -> ProofTree:
    """AND-OR surgery search: a node is proven when it is edgeless, or when
    some admissible isolated pivot yields row and column children that are
    both proven.

    COI inputs and COI children are normalized through their proxy graph
    before the search recurses; a GI child makes that pivot inadmissible.
    The search is memoized on canonical graph keys and fully deterministic.
    """
    cls = classify_hybrid(g)
    if cls is HybridClass.GI:
        raise SurgeryError("surgery search is not defined on GI graphs")
    if cls is HybridClass.COI:
        g, _ = proxy_graph(g)
    if signed_coloring(g) is None:
        raise SurgeryError("surgery search on a Q-graph requires it to be bipartite")
    if max_depth is None:
        max_depth = len(g.edges)
    memo: dict[bytes, ProofTree] = {}

    def admissible_pivots(graph: GridGraph) -> list[Vertex]:
        return [
            v
            for v in isolated_vertices(graph)
            if _line_has_edges(graph, "row", v[0]) and _line_has_edges(graph, "col", v[1])
        ]

    def normalize(child: GridGraph) -> Optional[GridGraph]:
        child_cls = classify_hybrid(child)
        if child_cls is HybridClass.GI:
            return None
        if child_cls is HybridClass.COI:
            return proxy_graph(child)[0]
        return child

    def search(graph: GridGraph, depth: int) -> ProofTree:
        key = graph.canonical_key()
        cached = memo.get(key)
        if cached is not None:
            return cached
        if not graph.edges:
            tree = ProofTree(key, depth, "empty")
            memo[key] = tree
            return tree
        if depth >= max_depth:
            return ProofTree(key, depth, "inconclusive", reason="depth-cap")
        pivots = admissible_pivots(graph)
        if not pivots:
            tree = ProofTree(key, depth, "inconclusive", reason="no-admissible-pivot")
            memo[key] = tree
            return tree
        capped = False
        for pivot in pivots:
            try:
                row_graph, row_step = row_surgery(graph, pivot)
                col_graph, col_step = col_surgery(graph, pivot)
            except SurgeryError:
                continue
            row_norm = normalize(row_graph)
            col_norm = normalize(col_graph)
            if row_norm is None or col_norm is None:
                continue
            row_tree = search(row_norm, depth + 1)
            if not row_tree.succeeded:
                capped = capped or row_tree.reason == "depth-cap"
                continue
            col_tree = search(col_norm, depth + 1)
            if not col_tree.succeeded:
                capped = capped or col_tree.reason == "depth-cap"
                continue
            tree = ProofTree(key, depth, "proven", pivot, row_step, col_step, row_tree, col_tree)
            memo[key] = tree
            return tree
        reason = "depth-cap" if capped else "exhausted-pivots"
        tree = ProofTree(key, depth, "inconclusive", reason=reason)
        if not capped:
            memo[key] = tree
        return tree

    return search(g, 0)


# -- traces and soundness checks ----------------------------------------------


def _edge_json(e: Edge) -> dict:
    return {
        "kind": e.kind.value,
        "a": list(e.a),
        "b": list(e.b),
        "weight": f"{e.weight.numerator}/{e.weight.denominator}",
    }


def _step_json(step: Optional[SurgeryStep]) -> Optional[dict]:
    if step is None:
        return None
    return {
        "axis": step.axis,
        "pivot": list(step.pivot),
        "removed": [_edge_json(e) for e in step.removed],
        "added": [_edge_json(e) for e in step.added],
    }


def surgery_trace(tree: ProofTree) -> dict:
    """JSON-serializable replay of the proof tree."""
    out = {
        "node": tree.node_key.decode("ascii"),
        "depth": tree.depth,
        "outcome": tree.outcome,
    }
    if tree.outcome == "proven":
        out["pivot"] = list(tree.pivot)
        out["row"] = {"step": _step_json(tree.row_step), "tree": surgery_trace(tree.row_child)}
        out["col"] = {"step": _step_json(tree.col_step), "tree": surgery_trace(tree.col_child)}
    if tree.reason is not None:
        out["reason"] = tree.reason
    return out


def format_trace(tree: ProofTree, indent: int = 0) -> str:
    pad = "  " * indent
    lines = [f"{pad}[{tree.outcome}] {tree.node_key.decode('ascii')}"]
    if tree.outcome == "proven":
        for label, step, child in (
            ("row", tree.row_step, tree.row_child),
            ("col", tree.col_step, tree.col_child),
        ):
            removed = ", ".join(f"{e.kind.value}{e.a}-{e.b}" for e in step.removed)
            added = ", ".join(f"{e.kind.value}{e.a}-{e.b}" for e in step.added) or "none"
            lines.append(f"{pad}  {label} surgery at {tree.pivot}: cut {removed}; stitch {added}")
            lines.append(format_trace(child, indent + 2))
    elif tree.reason:
        lines.append(f"{pad}  reason: {tree.reason}")
    return "\n".join(lines)


def collect_steps(tree: ProofTree) -> list[tuple[bytes, SurgeryStep, bytes]]:
    """All (parent key, step, child key) triples executed in a proof tree."""
    out: list[tuple[bytes, SurgeryStep, bytes]] = []
    if tree.outcome == "proven":
        out.append((tree.node_key, tree.row_step, tree.row_child.node_key))
        out.append((tree.node_key, tree.col_step, tree.col_child.node_key))
        out.extend(collect_steps(tree.row_child))
        out.extend(collect_steps(tree.col_child))
    return out


def surgery_step_is_sound(child: GridGraph, step: SurgeryStep) -> bool:
    """Exact kernel checks behind one surgery step.

    The child's hybrid Laplacian must annihilate the unit vector of every
    vertex in the pivot's row (resp. column) and the signed indicator of
    every child component.
    """
    lap = laplacian(child)
    size = child.m * child.n
    in_line = _line_filter(step.axis, step.pivot[0] if step.axis == "row" else step.pivot[1])
    for v in child.vertices:
        if in_line(v):
            unit = tuple(Fraction(1) if i == child.index(v) else Fraction(0) for i in range(size))
            if not in_kernel(lap, unit):
                return False
    colour = signed_coloring(child)
    if colour is None:
        return False
    for comp in child.connected_components():
        indicator = [Fraction(0)] * size
        for v in comp.vertices:
            indicator[child.index(v)] = Fraction(colour[v])
        if not in_kernel(lap, tuple(indicator)):
            return False
    return True
