import random
from fractions import Fraction

import pytest

from gridstates.criteria import (
    HybridClass,
    InterpretationError,
    classify_hybrid,
    criterion_report,
    degree_equal,
    hypergraph_criterion_report,
)
from gridstates.graphs import (
    Edge,
    EdgeKind,
    GridGraph,
    bipartition_of,
    cross_hatch,
    new_grid,
    new_hypergrid,
    signed_coloring,
)
from gridstates.linalg import in_kernel, laplacian

from conftest import (
    bell_graph,
    coi_example_graph,
    random_coi_graph,
    random_degree_equal_graph,
    random_graph,
    single_hyperedge,
    star_graph,
    triangle_graph,
)


def hybrid_noi_cross_hatch(m, n):
    """Cross-hatch with kinds assigned per connected component, L then Q."""
    g = cross_hatch(m, n)
    comps = g.connected_components()
    kind_of = {}
    for idx, comp in enumerate(comps):
        kind = EdgeKind.L if idx % 2 == 0 else EdgeKind.Q
        for e in comp.edges:
            kind_of[e.pair] = kind
    edges = frozenset(Edge(e.a, e.b, kind_of[e.pair], e.weight) for e in g.edges)
    return GridGraph(m, n, edges)


def test_degree_equal_examples():
    assert degree_equal(cross_hatch(3, 3))
    assert not degree_equal(bell_graph())
    assert degree_equal(new_grid(2, 2))


def test_classify_pure_graphs():
    assert classify_hybrid(new_grid(2, 2)) is HybridClass.PURE_L
    assert classify_hybrid(triangle_graph()) is HybridClass.PURE_L
    assert classify_hybrid(triangle_graph(EdgeKind.Q)) is HybridClass.PURE_Q


def test_classify_coi_example():
    assert classify_hybrid(coi_example_graph()) is HybridClass.COI


def test_classify_noi_example():
    # bipartite Q-component plus a disjoint L-component
    g = new_grid(2, 3)
    g = g.add_edge(EdgeKind.Q, (0, 0), (1, 1))
    g = g.add_edge(EdgeKind.L, (0, 2), (1, 2))
    assert classify_hybrid(g) is HybridClass.NOI


def test_classify_gi_on_odd_q_cycle():
    g = triangle_graph(EdgeKind.Q).add_edge(EdgeKind.L, (0, 0), (1, 1))
    assert classify_hybrid(g) is HybridClass.GI


def test_classify_gi_on_inconsistent_l_path():
    # an L-path ties the Q-edge's endpoints to the same sign: contradiction
    g = new_grid(2, 2)
    g = g.add_edge(EdgeKind.Q, (0, 0), (0, 1))
    g = g.add_edge(EdgeKind.L, (0, 0), (1, 0))
    g = g.add_edge(EdgeKind.L, (1, 0), (0, 1))
    assert classify_hybrid(g) is HybridClass.GI


def test_classify_coi_allows_component_flips():
    # two Q-components; the L-edge joins sides that only align after flipping
    # one component's bipartition, which COI must allow
    g = new_grid(2, 4)
    g = g.add_edge(EdgeKind.Q, (0, 0), (1, 0))
    g = g.add_edge(EdgeKind.Q, (0, 1), (1, 1))
    g = g.add_edge(EdgeKind.L, (0, 0), (1, 1))
    assert classify_hybrid(g) is HybridClass.COI


def test_noi_is_special_case_of_coi():
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, 3, 3, ("L", "Q"))
        if classify_hybrid(g) is HybridClass.NOI:
            # every NOI graph satisfies the COI constraints as well
            assert bipartition_of(g, "q") is not None
            assert signed_coloring(g) is not None


def test_criterion_l_always_applicable():
    rep = criterion_report(bell_graph(), "L")
    assert rep.applicable
    assert not rep.degree_equal
    assert rep.implied_verdict == "entangled-by-degree"


def test_criterion_l_rejects_q_edges():
    g = new_grid(2, 2).add_edge(EdgeKind.Q, (0, 0), (1, 1))
    with pytest.raises(InterpretationError):
        criterion_report(g, "L")
    with pytest.raises(InterpretationError):
        criterion_report(bell_graph(), "Q")
    with pytest.raises(InterpretationError):
        criterion_report(bell_graph(), "weird")


def test_criterion_q_gate_triangle_vs_star():
    # the triangle's transpose is the bipartite star: criterion applies and fires
    rep = criterion_report(triangle_graph(EdgeKind.Q), "Q")
    assert rep.applicable
    assert not rep.degree_equal
    assert rep.implied_verdict == "entangled-by-degree"
    # the star's transpose is the non-bipartite triangle: gate closed
    rep2 = criterion_report(star_graph(EdgeKind.Q), "Q")
    assert not rep2.applicable
    assert rep2.implied_verdict == "inapplicable"
    # at 2x2 the report carries the PPT-based separability note
    assert rep2.ppt is not None and rep2.ppt.is_ppt
    assert "separable" in rep2.details


def test_criterion_hybrid_gate_and_ppt_certification():
    g = hybrid_noi_cross_hatch(4, 4)
    rep = criterion_report(g, "hybrid")
    assert rep.applicable
    assert rep.degree_equal
    assert rep.implied_verdict == "PPT-certified"
    from gridstates.states import density_of_graph, ppt_verdict

    assert ppt_verdict(density_of_graph(g)).is_ppt


def test_criterion_hybrid_gate_closed_on_gi_transpose():
    g = new_grid(2, 2)
    g = g.add_edge(EdgeKind.Q, (0, 0), (0, 1))
    g = g.add_edge(EdgeKind.Q, (0, 1), (1, 0))
    g = g.add_edge(EdgeKind.Q, (0, 0), (1, 0))
    g = g.add_edge(EdgeKind.L, (1, 0), (1, 1))
    gt = g.partial_transpose()
    if classify_hybrid(gt) is HybridClass.GI:
        rep = criterion_report(g, "hybrid")
        assert not rep.applicable


def test_entangled_by_degree_implies_signed_kernel_vector():
    # whenever the criterion fires, a +-1 vector lies in the kernel of the
    # transposed graph's Laplacian (the mechanism behind the criterion)
    cases = [
        (triangle_graph(EdgeKind.Q), "Q"),
        (bell_graph(), "L"),
    ]
    rng = random.Random(9)
    while len(cases) < 12:
        g = random_graph(rng, 2, 3, ("Q",))
        rep_gate = bipartition_of(g.partial_transpose(), "all")
        if rep_gate is not None and not degree_equal(g):
            cases.append((g, "Q"))
    for g, interp in cases:
        rep = criterion_report(g, interp)
        if rep.implied_verdict != "entangled-by-degree":
            continue
        gt = g.partial_transpose()
        colour = signed_coloring(gt)
        assert colour is not None
        size = g.m * g.n
        vec = tuple(Fraction(colour[v]) for v in gt.vertices)
        assert all(abs(x) == 1 for x in vec)
        assert in_kernel(laplacian(gt), vec)


def test_hypergraph_report_single_edge():
    rep = hypergraph_criterion_report(single_hyperedge())
    assert rep.interpretation == "hypergraph"
    assert rep.applicable  # the triangle's transpose is the bipartite star
    assert not rep.degree_equal
    assert rep.implied_verdict == "entangled-by-degree"
    assert rep.ppt is not None and not rep.ppt.is_ppt


def test_hypergraph_report_never_certifies_ppt():
    rng = random.Random(15)
    from conftest import random_hypergraph

    seen_degree_equal = False
    for _ in range(60):
        h = random_hypergraph(rng, 3, 3)
        rep = hypergraph_criterion_report(h)
        assert rep.implied_verdict != "PPT-certified"
        assert rep.ppt is not None
        if rep.degree_equal:
            seen_degree_equal = True
            assert rep.implied_verdict == "inapplicable-for-PPT-direction"
    del seen_degree_equal


def test_hypergraph_report_empty():
    rep = hypergraph_criterion_report(new_hypergrid(2, 2))
    assert rep.ppt is None
    assert rep.degree_equal


def test_random_coi_graphs_classify_coi():
    rng = random.Random(77)
    for _ in range(10):
        g = random_coi_graph(rng, 2, 4)
        assert classify_hybrid(g) is HybridClass.COI


def test_degree_equal_generator_is_degree_equal():
    rng = random.Random(78)
    for _ in range(40):
        g = random_degree_equal_graph(rng, 3, 4, ("L", "Q"), weighted=True)
        assert degree_equal(g)
