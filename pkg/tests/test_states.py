import math
import random
from fractions import Fraction

import numpy as np
import pytest

from gridstates.graphs import EdgeKind, Hypergraph, cross_hatch, new_grid, new_hypergrid
from gridstates.linalg import ExactMatrix, jacobi_eigenvalues
from gridstates.states import (
    DensityMatrix,
    StateError,
    ZeroTraceError,
    density_of_graph,
    density_of_hypergraph,
    laplacian_transpose_identity_check,
    matrix_partial_transpose,
    partial_transpose_matrix,
    ppt_verdict,
    product_vector_range_search,
    unitary_inequivalence_witness,
)

from conftest import bell_graph, random_graph, single_hyperedge, triangle_graph


def test_bell_density_is_projector():
    rho = density_of_graph(bell_graph())
    half = Fraction(1, 2)
    expected = [
        [half, 0, 0, -half],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [-half, 0, 0, half],
    ]
    assert rho.matrix == ExactMatrix(tuple(tuple(Fraction(x) for x in row) for row in expected))


def test_q_edge_density_is_projector():
    g = new_grid(2, 2).add_edge(EdgeKind.Q, (0, 0), (1, 1))
    rho = density_of_graph(g)
    assert rho.matrix[0, 3] == Fraction(1, 2)
    assert rho.matrix[0, 0] == Fraction(1, 2)


def test_density_weighted_mixture():
    rng = random.Random(2)
    for _ in range(20):
        g = random_graph(rng, 2, 3, ("L", "Q"), weighted=True)
        rho = density_of_graph(g)
        assert rho.matrix.trace() == 1
        total = sum(e.weight for e in g.edges)
        # rho * trace(laplacian) must recover the Laplacian exactly
        from gridstates.linalg import laplacian

        assert rho.matrix.scale(2 * total) == laplacian(g)


def test_density_edgeless_error():
    with pytest.raises(ZeroTraceError):
        density_of_graph(new_grid(2, 2))


def test_density_matrix_validation():
    bad = ExactMatrix.diagonal([Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)])
    DensityMatrix(bad, 2, 2)  # fine: symmetric, trace 1
    with pytest.raises(StateError):
        DensityMatrix(bad, 2, 3)
    not_one = ExactMatrix.diagonal([Fraction(1), Fraction(1), Fraction(0), Fraction(0)])
    with pytest.raises(StateError):
        DensityMatrix(not_one, 2, 2)


def test_hypergraph_density_single_edge():
    rho = density_of_hypergraph(single_hyperedge())
    third = Fraction(1, 3)
    for i in range(3):
        for j in range(3):
            assert rho.matrix[i, j] == third
    assert all(rho.matrix[i, 3] == 0 for i in range(4))


def test_hypergraph_density_disjoint_edges_eigenvalues():
    h = Hypergraph(2, 3, frozenset([
        frozenset([(0, 0), (0, 1), (0, 2)]),
        frozenset([(1, 0), (1, 1), (1, 2)]),
    ]))
    rho = density_of_hypergraph(h)
    eigs, _ = jacobi_eigenvalues(rho.matrix.to_floats())
    assert np.allclose(eigs[-2:], [0.5, 0.5], atol=1e-9)
    assert np.allclose(eigs[:-2], 0.0, atol=1e-9)


def test_hypergraph_density_empty_error():
    with pytest.raises(ZeroTraceError):
        density_of_hypergraph(new_hypergrid(2, 2))


def test_partial_transpose_bell_min_eig():
    rho = density_of_graph(bell_graph())
    pt = matrix_partial_transpose(rho)
    # the off-diagonal pair moves to the |01><10| block
    assert pt[1, 2] == Fraction(-1, 2)
    assert pt[0, 3] == 0
    eigs, _ = jacobi_eigenvalues(pt.to_floats())
    assert eigs[0] == pytest.approx(-0.5, abs=1e-9)


def test_partial_transpose_diagonal_invariant():
    m = ExactMatrix.diagonal([Fraction(1, 4)] * 4)
    assert partial_transpose_matrix(m, 2, 2) == m


def test_partial_transpose_involution_trace_symmetry():
    rng = random.Random(21)
    for _ in range(15):
        g = random_graph(rng, 2, 3, ("L", "Q"), weighted=True)
        rho = density_of_graph(g)
        pt = matrix_partial_transpose(rho)
        assert pt.trace() == 1
        assert pt.is_symmetric()
        assert partial_transpose_matrix(pt, 2, 3) == rho.matrix


def test_single_hyperedge_ppt_min_eig():
    rho = density_of_hypergraph(single_hyperedge())
    verdict = ppt_verdict(rho)
    assert verdict.min_eig == pytest.approx(-1 / 3, abs=1e-8)
    assert not verdict.is_ppt


def test_laplacian_transpose_identity():
    assert laplacian_transpose_identity_check(bell_graph())
    assert laplacian_transpose_identity_check(cross_hatch(3, 3))
    assert laplacian_transpose_identity_check(new_grid(2, 2))
    rng = random.Random(31)
    for _ in range(25):
        g = random_graph(rng, 3, 3, ("L", "Q"), weighted=True)
        assert laplacian_transpose_identity_check(g)


def test_ppt_verdicts():
    assert not ppt_verdict(density_of_graph(bell_graph())).is_ppt
    assert ppt_verdict(density_of_graph(cross_hatch(3, 3))).is_ppt
    mixed = DensityMatrix(ExactMatrix.diagonal([Fraction(1, 4)] * 4), 2, 2)
    v = ppt_verdict(mixed)
    assert v.is_ppt and v.min_eig == pytest.approx(0.25, abs=1e-12)


def test_range_search_finds_separable_edge_state():
    g = new_grid(2, 2).add_edge(EdgeKind.L, (0, 0), (0, 1))
    rho = density_of_graph(g)
    found = product_vector_range_search(rho, resolution=16)
    assert found
    inv_sqrt2 = 1 / math.sqrt(2)
    best = min(found, key=lambda w: abs(abs(w.factor_a[0]) - 1.0))
    assert abs(best.factor_a[0]) == pytest.approx(1.0, abs=1e-6)
    assert abs(best.factor_b[0]) == pytest.approx(inv_sqrt2, abs=1e-6)
    assert best.factor_b[0] == pytest.approx(-best.factor_b[1], abs=1e-6)


def test_range_search_bell_finds_nothing():
    rho = density_of_graph(bell_graph())
    assert product_vector_range_search(rho, resolution=16) == []


def test_range_search_cross_hatch_has_witnesses():
    # (1,0,-1) x anything is orthogonal to both component indicators, so the
    # cross-hatch range does contain product vectors; the search must see them.
    rho = density_of_graph(cross_hatch(3, 3))
    found = product_vector_range_search(rho, resolution=16)
    assert found
    for w in found:
        assert w.residual < 1e-8


def test_range_search_resolution_precondition():
    with pytest.raises(ValueError):
        product_vector_range_search(density_of_graph(bell_graph()), resolution=4)


def test_unitary_inequivalence_witness():
    assert unitary_inequivalence_witness(triangle_graph()) == (2, 3)
    assert unitary_inequivalence_witness(bell_graph()) is None
    rng = random.Random(41)
    from conftest import random_nonbipartite_graph

    for _ in range(10):
        g = random_nonbipartite_graph(rng, 3, 3)
        pair = unitary_inequivalence_witness(g)
        assert pair is not None and pair[0] != pair[1]
