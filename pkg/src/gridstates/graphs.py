"""Grid-labelled graphs and hypergraphs: data model, structural algorithms, generators.

Vertices live on an m x n grid, labelled (row, col) and read row-wise from the
top-left, so vertex (0, 0) is linear index 0 and (m-1, n-1) is index m*n - 1.
Edges are typed (L or Q), carry positive rational weights, and at most one edge
may join a vertex pair.  All values are immutable; every update returns a new
graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

Vertex = tuple[int, int]
WeightLike = Union[int, str, Fraction]


class GraphError(Exception):
    """Base class for graph construction and transformation errors."""


class DimensionError(GraphError):
    pass


class EdgeError(GraphError):
    pass


class RepresentabilityError(GraphError):
    """A transformation would need two edges on one vertex pair."""


class EdgeKind(str, Enum):
    L = "L"
    Q = "Q"


def as_weight(w: WeightLike) -> Fraction:
    w = Fraction(w)
    if w <= 0:
        raise EdgeError(f"edge weight must be positive, got {w}")
    return w


@dataclass(frozen=True, order=True)
class Edge:
    """Typed weighted edge; endpoints are stored in lexicographic order."""

    a: Vertex
    b: Vertex
    kind: EdgeKind
    weight: Fraction

    def __post_init__(self):
        if self.a == self.b:
            raise EdgeError(f"self-loop at {self.a}")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        object.__setattr__(self, "weight", as_weight(self.weight))
        object.__setattr__(self, "kind", EdgeKind(self.kind))

    @property
    def pair(self) -> tuple[Vertex, Vertex]:
        return (self.a, self.b)

    def touches(self, v: Vertex) -> bool:
        return v == self.a or v == self.b

    def other(self, v: Vertex) -> Vertex:
        return self.b if v == self.a else self.a


@dataclass(frozen=True)
class Component:
    """A maximal connected piece of a graph; isolated vertices count."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class Bipartition:
    part1: frozenset[Vertex]
    part2: frozenset[Vertex]


@dataclass(frozen=True)
class GridGraph:
    m: int
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DimensionError(f"grid dimensions must be positive, got {self.m}x{self.n}")
        object.__setattr__(self, "edges", frozenset(self.edges))
        seen: set[tuple[Vertex, Vertex]] = set()
        for e in self.edges:
            for v in e.pair:
                self._check_bounds(v)
            if e.pair in seen:
                raise EdgeError(f"duplicate edge on pair {e.pair}")
            seen.add(e.pair)

    def _check_bounds(self, v: Vertex) -> None:
        r, c = v
        if not (0 <= r < self.m and 0 <= c < self.n):
            raise EdgeError(f"vertex {v} outside {self.m}x{self.n} grid")

    # -- basic views ---------------------------------------------------

    @property
    def vertices(self) -> list[Vertex]:
        return [(r, c) for r in range(self.m) for c in range(self.n)]

    def index(self, v: Vertex) -> int:
        self._check_bounds(v)
        return v[0] * self.n + v[1]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def edges_at(self, v: Vertex) -> list[Edge]:
        return sorted(e for e in self.edges if e.touches(v))

    def degree(self, v: Vertex) -> Fraction:
        return sum((e.weight for e in self.edges if e.touches(v)), Fraction(0))

    @property
    def l_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e.kind is EdgeKind.L)

    @property
    def q_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e.kind is EdgeKind.Q)

    def adjacency(self) -> dict[Vertex, list[Edge]]:
        adj: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.sorted_edges():
            adj[e.a].append(e)
            adj[e.b].append(e)
        return adj

    # -- pure updates --------------------------------------------------

    def add_edge(self, kind: EdgeKind, a: Vertex, b: Vertex, weight: WeightLike = 1) -> "GridGraph":
        self._check_bounds(a)
        self._check_bounds(b)
        e = Edge(a, b, kind, as_weight(weight))
        if any(f.pair == e.pair for f in self.edges):
            raise EdgeError(f"pair {e.pair} already has an edge")
        return GridGraph(self.m, self.n, self.edges | {e})

    def without_edges(self, removed: Iterable[Edge]) -> "GridGraph":
        removed = set(removed)
        missing = removed - self.edges
        if missing:
            raise EdgeError(f"cannot remove absent edges: {sorted(missing)}")
        return GridGraph(self.m, self.n, self.edges - removed)

    def with_edges(self, added: Iterable[Edge]) -> "GridGraph":
        return GridGraph(self.m, self.n, self.edges | set(added))

    # -- structural algorithms ------------------------------------------

    def partial_transpose(self) -> "GridGraph":
        """Map every edge {(i,j),(k,l)} to {(i,l),(k,j)}, keeping kind and weight."""
        mapped: dict[tuple[Vertex, Vertex], Edge] = {}
        for e in self.edges:
            (i, j), (k, l) = e.a, e.b
            f = Edge((i, l), (k, j), e.kind, e.weight)
            if f.pair in mapped:
                raise RepresentabilityError(f"transposed edges collide on pair {f.pair}")
            mapped[f.pair] = f
        return GridGraph(self.m, self.n, frozenset(mapped.values()))

    def connected_components(self, edge_filter: Optional[Callable[[Edge], bool]] = None) -> list[Component]:
        """Components in deterministic order (smallest linear index first)."""
        adj = self.adjacency()
        if edge_filter is not None:
            adj = {
                v: [e for e in es if edge_filter(e)] for v, es in adj.items()
            }
        seen: set[Vertex] = set()
        out: list[Component] = []
        for start in self.vertices:
            if start in seen:
                continue
            verts: list[Vertex] = []
            comp_edges: set[Edge] = set()
            queue = deque([start])
            seen.add(start)
            while queue:
                v = queue.popleft()
                verts.append(v)
                for e in adj[v]:
                    comp_edges.add(e)
                    w = e.other(v)
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append(Component(tuple(sorted(verts)), tuple(sorted(comp_edges))))
        return out

    def canonical_key(self) -> bytes:
        parts = [f"{self.m}x{self.n}"]
        for e in self.sorted_edges():
            w = e.weight
            parts.append(f"{e.kind.value}{e.a[0]},{e.a[1]}-{e.b[0]},{e.b[1]}w{w.numerator}/{w.denominator}")
        return ";".join(parts).encode("ascii")


def new_grid(m: int, n: int) -> GridGraph:
    return GridGraph(m, n, frozenset())


def bipartition_of(g: GridGraph, edge_filter: str = "all") -> Optional[Bipartition]:
    """Two-colour the chosen edge set, or return None when an odd cycle blocks it.

    ``edge_filter`` is "all" or "q" (Q-edges only).  The smallest vertex of
    each component lands in part1, so the returned witness is deterministic.
    Every grid vertex is assigned to a part.
    """
    if edge_filter not in ("all", "q"):
        raise ValueError(f"unknown edge filter {edge_filter!r}")
    keep = None if edge_filter == "all" else (lambda e: e.kind is EdgeKind.Q)
    colour = _two_colouring(g, keep, flip_on={"all": (EdgeKind.L, EdgeKind.Q), "q": (EdgeKind.Q,)}[edge_filter])
    if colour is None:
        return None
    p1 = frozenset(v for v, s in colour.items() if s > 0)
    p2 = frozenset(v for v, s in colour.items() if s < 0)
    return Bipartition(p1, p2)


def signed_coloring(g: GridGraph) -> Optional[dict[Vertex, int]]:
    """Assign +1/-1 to vertices so Q-edges cross signs and L-edges keep them.

    This is the partition reference for hybrid graphs: a signed component
    indicator built from it lies in the kernel of the hybrid Laplacian.
    Returns None when the constraints are contradictory.
    """
    return _two_colouring(g, None, flip_on=(EdgeKind.Q,))


def _two_colouring(
    g: GridGraph,
    keep: Optional[Callable[[Edge], bool]],
    flip_on: tuple[EdgeKind, ...],
) -> Optional[dict[Vertex, int]]:
    adj = g.adjacency()
    if keep is not None:
        adj = {v: [e for e in es if keep(e)] for v, es in adj.items()}
    colour: dict[Vertex, int] = {}
    for start in g.vertices:
        if start in colour:
            continue
        colour[start] = 1
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for e in adj[v]:
                w = e.other(v)
                want = -colour[v] if e.kind in flip_on else colour[v]
                if w not in colour:
                    colour[w] = want
                    queue.append(w)
                elif colour[w] != want:
                    return None
    return colour


# -- hypergraphs --------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    """Grid-labelled hypergraph whose hyperedges contain exactly three vertices."""

    m: int
    n: int
    hyperedges: frozenset[frozenset[Vertex]]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DimensionError(f"grid dimensions must be positive, got {self.m}x{self.n}")
        object.__setattr__(self, "hyperedges", frozenset(frozenset(h) for h in self.hyperedges))
        for h in self.hyperedges:
            if len(h) != 3:
                raise EdgeError(f"hyperedge must contain exactly 3 vertices, got {sorted(h)}")
            for v in h:
                r, c = v
                if not (0 <= r < self.m and 0 <= c < self.n):
                    raise EdgeError(f"vertex {v} outside {self.m}x{self.n} grid")

    @property
    def vertices(self) -> list[Vertex]:
        return [(r, c) for r in range(self.m) for c in range(self.n)]

    def index(self, v: Vertex) -> int:
        return v[0] * self.n + v[1]

    def sorted_hyperedges(self) -> list[tuple[Vertex, Vertex, Vertex]]:
        return sorted(tuple(sorted(h)) for h in self.hyperedges)

    def add_hyperedge(self, vertices: Iterable[Vertex]) -> "Hypergraph":
        h = frozenset(vertices)
        if h in self.hyperedges:
            raise EdgeError(f"duplicate hyperedge {sorted(h)}")
        return Hypergraph(self.m, self.n, self.hyperedges | {h})

    def degree(self, v: Vertex) -> int:
        return sum(1 for h in self.hyperedges if v in h)


def new_hypergrid(m: int, n: int) -> Hypergraph:
    return Hypergraph(m, n, frozenset())


def hypergraph_to_graph(h: Hypergraph) -> GridGraph:
    """Clique expansion: one Q-edge per co-occurring pair, weighted by the
    number of hyperedges sharing that pair."""
    counts: dict[tuple[Vertex, Vertex], int] = {}
    for he in h.hyperedges:
        a, b, c = sorted(he)
        for pair in ((a, b), (a, c), (b, c)):
            counts[pair] = counts.get(pair, 0) + 1
    edges = frozenset(
        Edge(a, b, EdgeKind.Q, Fraction(k)) for (a, b), k in counts.items()
    )
    return GridGraph(h.m, h.n, edges)


# -- generators ----------------------------------------------------------

WeightAssignment = Union[None, Mapping[tuple[Vertex, Vertex], WeightLike], Callable[[Vertex, Vertex], WeightLike]]


def _assigned_weight(weights: WeightAssignment, a: Vertex, b: Vertex) -> Fraction:
    if weights is None:
        return Fraction(1)
    if callable(weights):
        return as_weight(weights(a, b))
    return as_weight(weights.get((a, b), 1))


def cross_hatch(m: int, n: int, kind: EdgeKind = EdgeKind.L, weights: WeightAssignment = None) -> GridGraph:
    """Both diagonals of every border cell of the (m-1) x (n-1) cell array.

    Interior cells stay empty, which is what makes the pattern composable:
    a smaller cross-hatch drops into the hollow centre of a bigger one.
    The edge set is invariant under the partial transpose (each cell's
    diagonals swap), so the degree vectors of G and its transpose agree.
    """
    if m < 3 or n < 3:
        raise DimensionError(f"cross-hatch needs m, n >= 3, got {m}x{n}")
    kind = EdgeKind(kind)
    edges: list[Edge] = []
    for i in range(m - 1):
        for j in range(n - 1):
            if not (i in (0, m - 2) or j in (0, n - 2)):
                continue
            for a, b in (((i, j), (i + 1, j + 1)), ((i, j + 1), (i + 1, j))):
                edges.append(Edge(a, b, kind, _assigned_weight(weights, a, b)))
    return GridGraph(m, n, frozenset(edges))


def _shift_edge(e: Edge, dr: int, dc: int) -> Edge:
    return Edge(
        (e.a[0] + dr, e.a[1] + dc),
        (e.b[0] + dr, e.b[1] + dc),
        e.kind,
        e.weight,
    )


def _union_shifted(parts: Sequence[tuple[GridGraph, int, int]], m: int, n: int) -> GridGraph:
    taken: dict[tuple[Vertex, Vertex], Edge] = {}
    for g, dr, dc in parts:
        if dr < 0 or dc < 0 or dr + g.m > m or dc + g.n > n:
            raise DimensionError(
                f"{g.m}x{g.n} constituent at offset ({dr},{dc}) leaves the {m}x{n} grid"
            )
        for e in g.sorted_edges():
            f = _shift_edge(e, dr, dc)
            if f.pair in taken:
                raise EdgeError(f"constituents collide on vertex pair {f.pair}")
            taken[f.pair] = f
    return GridGraph(m, n, frozenset(taken.values()))


def embed_compose(outer: GridGraph, inner: GridGraph, row_offset: int, col_offset: int) -> GridGraph:
    """Union of ``outer`` with ``inner`` shifted by the offsets."""
    return _union_shifted([(outer, 0, 0), (inner, row_offset, col_offset)], outer.m, outer.n)


def tile_compose(tiles: Sequence[tuple[GridGraph, int, int]], m: int, n: int) -> GridGraph:
    """Union of shifted tiles on an m x n grid."""
    return _union_shifted(list(tiles), m, n)
