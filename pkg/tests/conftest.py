"""Shared figure instances, independent oracles, and seeded random generators."""

from fractions import Fraction

from gridstates.graphs import Edge, EdgeKind, GridGraph, Hypergraph, new_grid

# -- canonical instances ------------------------------------------------------


def bell_graph() -> GridGraph:
    """2x2 L-graph of the phi-minus Bell state: one diagonal edge."""
    return new_grid(2, 2).add_edge(EdgeKind.L, (0, 0), (1, 1))


def surgery_example_graph() -> GridGraph:
    """2x3 L-graph with two edges meeting at (1,1); (1,0) is the classic pivot."""
    g = new_grid(2, 3).add_edge(EdgeKind.L, (0, 0), (1, 1))
    return g.add_edge(EdgeKind.L, (0, 2), (1, 1))


def q_surgery_example_graph() -> GridGraph:
    """2x2 Q-graph: path (0,0)-(1,0)-(0,1), isolated (1,1)."""
    g = new_grid(2, 2).add_edge(EdgeKind.Q, (0, 0), (1, 0))
    return g.add_edge(EdgeKind.Q, (0, 1), (1, 0))


def coi_example_graph() -> GridGraph:
    """2x3 COI graph: Q-path (0,0)-(1,1)-(0,2) plus two L-edges into (1,2)."""
    g = new_grid(2, 3)
    g = g.add_edge(EdgeKind.Q, (0, 0), (1, 1))
    g = g.add_edge(EdgeKind.Q, (0, 2), (1, 1))
    g = g.add_edge(EdgeKind.L, (0, 0), (1, 2))
    return g.add_edge(EdgeKind.L, (0, 2), (1, 2))


def triangle_graph(kind=EdgeKind.L) -> GridGraph:
    """Non-bipartite 2x2 graph: triangle on (0,0),(0,1),(1,0) plus isolated (1,1).

    Its partial transpose is the star at (0,0); the pair mirrors the paper's
    two-component/one-component comparison instance.
    """
    g = new_grid(2, 2)
    g = g.add_edge(kind, (0, 0), (0, 1))
    g = g.add_edge(kind, (0, 0), (1, 0))
    return g.add_edge(kind, (0, 1), (1, 0))


def star_graph(kind=EdgeKind.L) -> GridGraph:
    """Bipartite 2x2 star at (0,0); the partial transpose of the triangle."""
    g = new_grid(2, 2)
    g = g.add_edge(kind, (0, 0), (0, 1))
    g = g.add_edge(kind, (0, 0), (1, 0))
    return g.add_edge(kind, (0, 0), (1, 1))


def single_hyperedge() -> Hypergraph:
    return Hypergraph(2, 2, frozenset([frozenset([(0, 0), (0, 1), (1, 0)])]))


# -- independent oracles --------------------------------------------------------


def uf_components(vertices, pairs):
    """Union-find components, independent of the BFS in the library."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted(frozenset(s) for s in groups.values())


def brute_force_bipartite(vertices, pairs) -> bool:
    """Try all 2-colourings; only sane for small vertex sets."""
    vs = sorted(vertices)
    for mask in range(1 << len(vs)):
        colour = {v: (mask >> i) & 1 for i, v in enumerate(vs)}
        if all(colour[a] != colour[b] for a, b in pairs):
            return True
    return False


# -- seeded random generators ------------------------------------------------------


def all_pairs(m, n):
    vs = [(r, c) for r in range(m) for c in range(n)]
    return [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]]


def random_weight(rng, cap=5) -> Fraction:
    den = rng.randint(1, 4)
    return Fraction(rng.randint(1, cap * den), den)


def random_graph(rng, m, n, kinds=("L",), max_edges=8, weighted=False) -> GridGraph:
    pairs = all_pairs(m, n)
    chosen = rng.sample(pairs, rng.randint(1, min(max_edges, len(pairs))))
    edges = [
        Edge(a, b, EdgeKind(rng.choice(kinds)), random_weight(rng) if weighted else Fraction(1))
        for a, b in chosen
    ]
    return GridGraph(m, n, frozenset(edges))


def random_degree_equal_graph(rng, m, n, kinds=("L",), weighted=False) -> GridGraph:
    """Union of transpose orbits with orbit-constant kind and weight, so the
    degree vectors of the graph and its transpose agree by construction."""
    pairs = all_pairs(m, n)
    edges = {}
    for _ in range(rng.randint(1, 8)):
        a, b = rng.choice(pairs)
        kind = EdgeKind(rng.choice(kinds))
        w = random_weight(rng) if weighted else Fraction(1)
        e = Edge(a, b, kind, w)
        (i, j), (k, l) = e.a, e.b
        f = Edge((i, l), (k, j), kind, w)
        if e.pair in edges or f.pair in edges:
            continue
        edges[e.pair] = e
        edges[f.pair] = f
    return GridGraph(m, n, frozenset(edges.values()))


def random_signs(rng, m, n):
    return {(r, c): rng.choice((1, -1)) for r in range(m) for c in range(n)}


def random_bipartite_graph(rng, m, n, kind=EdgeKind.Q, weighted=False, p=0.35):
    """Random graph drawn against a random sign assignment; always bipartite."""
    while True:
        sign = random_signs(rng, m, n)
        edges = [
            Edge(a, b, kind, random_weight(rng) if weighted else Fraction(1))
            for a, b in all_pairs(m, n)
            if sign[a] != sign[b] and rng.random() < p
        ]
        if edges:
            return GridGraph(m, n, frozenset(edges)), sign


def random_nonbipartite_graph(rng, m, n, kind=EdgeKind.L, weighted=False):
    from gridstates.graphs import bipartition_of

    while True:
        g = random_graph(rng, m, n, (kind.value,), max_edges=9, weighted=weighted)
        if bipartition_of(g, "all") is None:
            return g


def random_coi_graph(rng, m, n):
    """Random COI instance: bipartite Q-edges plus same-sign L-edges, with at
    least one vertex carrying both kinds."""
    from gridstates.criteria import HybridClass, classify_hybrid

    while True:
        sign = random_signs(rng, m, n)
        edges = {}
        for a, b in all_pairs(m, n):
            if sign[a] != sign[b] and rng.random() < 0.3:
                edges[(a, b)] = Edge(a, b, EdgeKind.Q, Fraction(1))
            elif sign[a] == sign[b] and rng.random() < 0.25:
                edges[(a, b)] = Edge(a, b, EdgeKind.L, Fraction(1))
        g = GridGraph(m, n, frozenset(edges.values()))
        if classify_hybrid(g) is HybridClass.COI:
            return g


def random_hypergraph(rng, m, n, max_edges=4) -> Hypergraph:
    vs = [(r, c) for r in range(m) for c in range(n)]
    hyperedges = set()
    for _ in range(rng.randint(1, max_edges)):
        hyperedges.add(frozenset(rng.sample(vs, 3)))
    return Hypergraph(m, n, frozenset(hyperedges))
