"""Density matrices of grid states, matrix partial transpose, PPT verdicts,
and the product-vector range oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .graphs import EdgeKind, GridGraph, Hypergraph, bipartition_of
from .linalg import (
    ExactMatrix,
    adjacency_matrix,
    degree_matrix,
    hypergraph_laplacian,
    jacobi_eigenvalues,
    kernel_basis,
    laplacian,
    min_eigenvalue_symmetric,
    rank,
)

DEFAULT_PPT_TOL = 1e-9


class StateError(Exception):
    pass


class ZeroTraceError(StateError):
    """Raised for edgeless graphs: an empty mixture has no density matrix."""


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-1 exact symmetric matrix with a bipartite dimension split."""

    matrix: ExactMatrix
    dim_a: int
    dim_b: int

    def __post_init__(self):
        size = self.dim_a * self.dim_b
        if self.matrix.rows != size or self.matrix.cols != size:
            raise StateError(f"matrix size {self.matrix.rows} does not match {self.dim_a}x{self.dim_b}")
        if not self.matrix.is_symmetric():
            raise StateError("density matrix must be symmetric")
        if self.matrix.trace() != 1:
            raise StateError(f"density matrix must have trace 1, got {self.matrix.trace()}")


@dataclass(frozen=True)
class ProductVector:
    factor_a: tuple[float, ...]
    factor_b: tuple[float, ...]
    residual: float


@dataclass(frozen=True)
class PptVerdict:
    min_eig: float
    tol: float
    is_ppt: bool


def density_of_graph(g: GridGraph) -> DensityMatrix:
    """Normalized hybrid Laplacian: the weighted mixture of edge-state projectors."""
    lap = laplacian(g)
    tr = lap.trace()
    if tr == 0:
        raise ZeroTraceError("edgeless graph has no density matrix")
    return DensityMatrix(lap.scale(Fraction(1, 1) / tr), g.m, g.n)


def density_of_hypergraph(h: Hypergraph) -> DensityMatrix:
    """Normalized hypergraph Laplacian: the equal mixture of hyperedge states."""
    lap = hypergraph_laplacian(h)
    tr = lap.trace()
    if tr == 0:
        raise ZeroTraceError("hypergraph without hyperedges has no density matrix")
    return DensityMatrix(lap.scale(Fraction(1, 1) / tr), h.m, h.n)


def partial_transpose_matrix(mat: ExactMatrix, dim_a: int, dim_b: int) -> ExactMatrix:
    """Transpose the second tensor factor: entry ((i,j),(k,l)) -> ((i,l),(k,j))."""
    size = dim_a * dim_b
    if mat.rows != size or mat.cols != size:
        raise StateError("matrix size does not match the dimension split")
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(dim_a):
        for j in range(dim_b):
            for k in range(dim_a):
                for l in range(dim_b):
                    rows[i * dim_b + j][k * dim_b + l] = mat[i * dim_b + l, k * dim_b + j]
    return ExactMatrix(tuple(tuple(r) for r in rows))


def matrix_partial_transpose(rho: DensityMatrix) -> ExactMatrix:
    return partial_transpose_matrix(rho.matrix, rho.dim_a, rho.dim_b)


def ppt_verdict(rho: DensityMatrix, tol: float = DEFAULT_PPT_TOL) -> PptVerdict:
    min_eig = min_eigenvalue_symmetric(matrix_partial_transpose(rho))
    return PptVerdict(min_eig=min_eig, tol=tol, is_ppt=min_eig >= -tol)


def laplacian_transpose_identity_check(g: GridGraph) -> bool:
    """Exact check that the Laplacian's partial transpose equals the Laplacian
    of the transposed graph plus the traceless diagonal degree gap."""
    lap_pt = partial_transpose_matrix(laplacian(g), g.m, g.n)
    gt = g.partial_transpose()
    delta = degree_matrix(g) - degree_matrix(gt)
    if not delta.is_diagonal() or delta.trace() != 0:
        return False
    return lap_pt == laplacian(gt) + delta


def unitary_inequivalence_witness(g: GridGraph) -> Optional[tuple[int, int]]:
    """Rank pair (rank L, rank Q) for a non-bipartite edge set; None if bipartite.

    Both ranks are taken over the same edge set, re-read as pure-L and pure-Q.
    Unequal ranks rule out unitary equivalence of the two grid states.
    """
    if bipartition_of(g, "all") is not None:
        return None
    deg = degree_matrix(g)
    adj = adjacency_matrix(g)
    rank_l = rank(deg - adj)
    rank_q = rank(deg + adj)
    return rank_l, rank_q


# -- product-vector range search -------------------------------------------


def _sphere_point(angles: np.ndarray, dim: int) -> np.ndarray:
    """Hyperspherical parametrization of a unit vector in R^dim."""
    v = np.ones(dim)
    for i, theta in enumerate(angles):
        v[i] *= math.cos(theta)
        v[i + 1 :] *= math.sin(theta)
    return v


def _angle_grid(dim: int, resolution: int) -> np.ndarray:
    """All grid unit vectors in R^dim, one row each."""
    if dim == 1:
        return np.ones((1, 1))
    axes = [np.linspace(0.0, math.pi, resolution, endpoint=False) for _ in range(dim - 2)]
    axes.append(np.linspace(0.0, 2.0 * math.pi, resolution, endpoint=False))
    mesh = np.meshgrid(*axes, indexing="ij")
    angles = np.stack([m.reshape(-1) for m in mesh], axis=1)
    points = np.empty((angles.shape[0], dim))
    for row, ang in enumerate(angles):
        points[row] = _sphere_point(ang, dim)
    return points


def _canonical_factor(v: np.ndarray) -> tuple[float, ...]:
    for x in v:
        if abs(x) > 1e-6:
            if x < 0:
                v = -v
            break
    return tuple(round(float(x), 6) + 0.0 for x in v)


def product_vector_range_search(rho: DensityMatrix, resolution: int = 64) -> list[ProductVector]:
    """Search for real product vectors in the range of ``rho``.

    Scans unit vectors on angular grids (``resolution`` points per angle
    coordinate), refines promising candidates by local descent on the norm of
    the kernel projection, and returns the distinct witnesses whose residual
    drops below 1e-8.  An empty list means none were found at this resolution;
    it is not a proof of absence.
    """
    if resolution < 8:
        raise ValueError(f"resolution must be at least 8, got {resolution}")
    da, db = rho.dim_a, rho.dim_b
    kernel = kernel_basis(rho.matrix)
    if not kernel:
        # Full-range state: every product vector lies in the range.
        return [
            ProductVector(
                tuple(1.0 if i == a else 0.0 for i in range(da)),
                tuple(1.0 if j == b else 0.0 for j in range(db)),
                0.0,
            )
            for a in range(da)
            for b in range(db)
        ]
    kmat = np.array([[float(x) for x in v] for v in kernel])
    # Orthonormal rows spanning the kernel; residual = norm of projection.
    q, _ = np.linalg.qr(kmat.T)
    kproj = q.T.reshape(-1, da, db)

    def residual_of(mu: np.ndarray, nu: np.ndarray) -> float:
        return math.sqrt(sum(float(mu @ k @ nu) ** 2 for k in kproj))

    grid_a = _angle_grid(da, resolution)
    grid_b = _angle_grid(db, resolution)
    coarse = max(1e-8, 4.0 * math.pi / resolution * 0.5)
    candidates: list[tuple[float, int, int]] = []
    chunk = max(1, (1 << 22) // max(1, grid_b.shape[0]))
    for start in range(0, grid_a.shape[0], chunk):
        part = grid_a[start : start + chunk]
        res_sq = np.zeros((part.shape[0], grid_b.shape[0]))
        for k in kproj:
            t = part @ k @ grid_b.T
            res_sq += t * t
        hit_a, hit_b = np.nonzero(res_sq < coarse * coarse)
        for ia, ib in zip(hit_a.tolist(), hit_b.tolist()):
            candidates.append((math.sqrt(float(res_sq[ia, ib])), start + ia, ib))
    candidates.sort(key=lambda c: (round(c[0], 12), c[1], c[2]))
    candidates = candidates[:512]

    found: dict[tuple, ProductVector] = {}
    na, nb = max(da - 1, 0), max(db - 1, 0)
    for _, ia, ib in candidates:
        mu0, nu0 = grid_a[ia], grid_b[ib]
        ang0 = np.concatenate([_vector_angles(mu0), _vector_angles(nu0)])

        def objective(ang: np.ndarray) -> float:
            mu = _sphere_point(ang[:na], da)
            nu = _sphere_point(ang[na : na + nb], db)
            return residual_of(mu, nu)

        if ang0.size and residual_of(mu0, nu0) >= 1e-10:
            opt = minimize(objective, ang0, method="Nelder-Mead", options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 800})
            ang = opt.x
        else:
            ang = ang0
        mu = _sphere_point(ang[:na], da)
        nu = _sphere_point(ang[na : na + nb], db)
        res = residual_of(mu, nu)
        if res < 1e-8:
            fa, fb = _canonical_factor(mu), _canonical_factor(nu)
            key = (fa, fb)
            if key not in found or found[key].residual > res:
                found[key] = ProductVector(fa, fb, res)
    return [found[k] for k in sorted(found)]


def _vector_angles(v: np.ndarray) -> np.ndarray:
    """Inverse of the hyperspherical parametrization."""
    d = v.shape[0]
    if d == 1:
        return np.zeros(0)
    angles = np.zeros(d - 1)
    rest = math.sqrt(float(np.sum(v * v)))
    for i in range(d - 2):
        angles[i] = math.acos(max(-1.0, min(1.0, v[i] / rest))) if rest > 0 else 0.0
        rest = math.sqrt(max(0.0, rest * rest - float(v[i]) ** 2))
    angles[d - 2] = math.atan2(float(v[d - 1]), float(v[d - 2]))
    return angles
