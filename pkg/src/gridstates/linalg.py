"""Exact rational dense linear algebra plus a floating-point Jacobi eigensolver.

Graph matrices (degree, adjacency, the three Laplacians, incidence, hypergraph
offset) are kept as exact Fractions end to end.  Floating point enters only in
the symmetric eigensolver backing the PPT checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .graphs import Edge, EdgeKind, GridGraph, Hypergraph, hypergraph_to_graph

ExactVector = tuple[Fraction, ...]


class LinalgError(Exception):
    pass


class NonSymmetricError(LinalgError):
    pass


class ConvergenceError(LinalgError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise LinalgError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, diag: Sequence[Fraction]) -> "ExactMatrix":
        n = len(diag)
        return cls(
            tuple(
                tuple(Fraction(diag[i]) if i == j else Fraction(0) for j in range(n))
                for i in range(n)
            )
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._match(other)
        return ExactMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._match(other)
        return ExactMatrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def _match(self, other: "ExactMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scale(self, factor: Fraction) -> "ExactMatrix":
        f = Fraction(factor)
        return ExactMatrix(tuple(tuple(f * x for x in row) for row in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise LinalgError("inner dimensions differ")
        cols = list(zip(*other.entries)) if other.entries else []
        return ExactMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                for row in self.entries
            )
        )

    def mat_vec(self, v: Sequence[Fraction]) -> ExactVector:
        if len(v) != self.cols:
            raise LinalgError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise LinalgError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def is_diagonal(self) -> bool:
        return all(
            x == 0
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
            if i != j
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def to_floats(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)


# -- graph matrices ------------------------------------------------------


def degree_matrix(g: GridGraph) -> ExactMatrix:
    size = g.m * g.n
    diag = [Fraction(0)] * size
    for e in g.edges:
        diag[g.index(e.a)] += e.weight
        diag[g.index(e.b)] += e.weight
    return ExactMatrix.diagonal(diag)


def adjacency_matrix(g: GridGraph, kind: Optional[EdgeKind] = None) -> ExactMatrix:
    size = g.m * g.n
    rows = [[Fraction(0)] * size for _ in range(size)]
    for e in g.edges:
        if kind is not None and e.kind is not kind:
            continue
        i, j = g.index(e.a), g.index(e.b)
        rows[i][j] = rows[j][i] = e.weight
    return ExactMatrix(tuple(tuple(r) for r in rows))


def laplacian(g: GridGraph) -> ExactMatrix:
    """Hybrid Laplacian D - A(L-edges) + A(Q-edges); reduces to the signed
    (signless) Laplacian on pure-L (pure-Q) graphs."""
    return degree_matrix(g) - adjacency_matrix(g, EdgeKind.L) + adjacency_matrix(g, EdgeKind.Q)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Unit-entry incidence columns with the edge weights kept separately.

    Columns hold +1/-1 for L-edges and +1/+1 for Q-edges, so everything stays
    rational; the Laplacian factorization reads L = R W R^T with W the
    diagonal of edge weights.  Unweighted graphs recover the plain R R^T.
    """

    matrix: ExactMatrix
    weights: tuple[Fraction, ...]
    orientation: str
    edges: tuple[Edge, ...]

    def weighted_product(self) -> ExactMatrix:
        w = ExactMatrix.diagonal(list(self.weights))
        return self.matrix @ w @ self.matrix.transpose()


def incidence(g: GridGraph) -> IncidenceMatrix:
    size = g.m * g.n
    ordered = g.l_edges + g.q_edges
    cols: list[list[Fraction]] = []
    for e in ordered:
        col = [Fraction(0)] * size
        col[g.index(e.a)] = Fraction(1)
        col[g.index(e.b)] = Fraction(-1) if e.kind is EdgeKind.L else Fraction(1)
        cols.append(col)
    matrix = ExactMatrix(tuple(zip(*cols)) if cols else tuple(() for _ in range(size)))
    if not g.edges:
        orientation = "hybrid-concatenated"
    elif all(e.kind is EdgeKind.L for e in ordered):
        orientation = "oriented"
    elif all(e.kind is EdgeKind.Q for e in ordered):
        orientation = "unoriented"
    else:
        orientation = "hybrid-concatenated"
    return IncidenceMatrix(matrix, tuple(e.weight for e in ordered), orientation, tuple(ordered))


# -- hypergraph matrices ---------------------------------------------------


def hypergraph_degree_matrix(h: Hypergraph) -> ExactMatrix:
    diag = [Fraction(h.degree(v)) for v in h.vertices]
    return ExactMatrix.diagonal(diag)


def hypergraph_adjacency_matrix(h: Hypergraph) -> ExactMatrix:
    size = h.m * h.n
    rows = [[Fraction(0)] * size for _ in range(size)]
    for he in h.hyperedges:
        a, b, c = sorted(he)
        for u, v in ((a, b), (a, c), (b, c)):
            i, j = h.index(u), h.index(v)
            rows[i][j] += 1
            rows[j][i] += 1
    return ExactMatrix(tuple(tuple(r) for r in rows))


def hypergraph_laplacian(h: Hypergraph) -> ExactMatrix:
    return hypergraph_degree_matrix(h) + hypergraph_adjacency_matrix(h)


def offset_matrix(h: Hypergraph) -> ExactMatrix:
    """Diagonal gap between the clique-expansion degrees and the hypergraph
    degrees; satisfies L(H) = Q(graph of H) - O(H)."""
    return degree_matrix(hypergraph_to_graph(h)) - hypergraph_degree_matrix(h)


# -- exact elimination -----------------------------------------------------


def _rref(entries: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in entries]
    if not rows:
        return [], []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        pivot_row = next((r for r in range(pr, nrows) if rows[r][pc] != 0), None)
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = rows[pr][pc]
        rows[pr] = [x / inv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][pc] != 0:
                f = rows[r][pc]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rank(m: ExactMatrix) -> int:
    return len(_rref(m.entries)[1])


def kernel_basis(m: ExactMatrix) -> list[ExactVector]:
    """Exact rational basis of the null space, deterministic leftmost pivots.

    Basis vectors are indexed by the free columns in ascending order; each has
    a 1 in its free coordinate.
    """
    if m.rows != m.cols:
        raise LinalgError("kernel_basis expects a square matrix")
    rref, pivots = _rref(m.entries)
    ncols = m.cols
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[ExactVector] = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -rref[k][fc]
        basis.append(tuple(v))
    return basis


def in_kernel(m: ExactMatrix, v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in m.mat_vec(v))


def kernels_coincide(a: ExactMatrix, b: ExactMatrix) -> bool:
    """Exact mutual containment of the two null spaces."""
    return all(in_kernel(b, v) for v in kernel_basis(a)) and all(
        in_kernel(a, v) for v in kernel_basis(b)
    )


# -- Jacobi eigensolver ----------------------------------------------------


def _off_norm(a: np.ndarray) -> float:
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.linalg.norm(b))


def jacobi_eigenvalues(
    a: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100
) -> tuple[np.ndarray, float]:
    """Cyclic Jacobi iteration; returns (sorted eigenvalues, residual bound).

    Sweeps until the off-diagonal Frobenius norm drops below tol * ||A||_F.
    The residual bound is that final off-diagonal norm: every eigenvalue of A
    is within it of the returned diagonal.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise NonSymmetricError("matrix is not square")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * (1.0 + np.abs(a).max(initial=0.0))):
        raise NonSymmetricError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), 0.0
    threshold = tol * norm
    idx = np.arange(n)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= threshold:
            return np.sort(np.diag(a)), off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # hypot avoids overflow in theta**2 for near-degenerate pivots
                t = 1.0 if theta == 0.0 else math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                others = idx[(idx != p) & (idx != q)]
                aip = a[others, p].copy()
                aiq = a[others, q].copy()
                a[others, p] = aip - s * (aiq + tau * aip)
                a[others, q] = aiq + s * (aip - tau * aiq)
                a[p, others] = a[others, p]
                a[q, others] = a[others, q]
    off = _off_norm(a)
    if off <= threshold:
        return np.sort(np.diag(a)), off
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps (off={off:g})")


def min_eigenvalue_symmetric(m: ExactMatrix, tol: float = 1e-10) -> float:
    """Smallest eigenvalue of an exactly symmetric matrix, via cyclic Jacobi."""
    if not m.is_symmetric():
        raise NonSymmetricError("matrix is not symmetric")
    eigs, _ = jacobi_eigenvalues(m.to_floats(), tol=tol)
    return float(eigs[0])
