"""The exterior square V^V as anti-symmetric matrices and Plücker coordinates.

Coordinates of a wedge vector are indexed by pairs ``(i, j)`` with ``i < j`` in
lexicographic order; indices in this module are 0-based, while printed
variable names (``x_1_2`` ...) are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .gfield import FieldCtx
from .linalg import ShapeMismatch, SingularMatrix, inverse, kernel_basis, normalize, normalize_rows, rank, rref

__all__ = [
    "NotAntiSymmetric",
    "NotDecomposable",
    "NotOnGrassmannian",
    "RankNotTwo",
    "WedgeIndex",
    "WedgePoint",
    "ProjLine",
    "wedge_index",
    "alpha",
    "alpha_inv",
    "alpha_batch",
    "wedge_product",
    "plucker_coords",
    "plucker",
    "line_of",
    "grassmann_membership",
    "grassmann_residuals",
    "star_system",
    "star_subspace",
    "grassmann_tangent_system",
    "grassmann_tangent",
    "lift_map",
    "dual_lift_map",
    "dual_incidence",
    "enumerate_points",
    "enumerate_lines",
    "line_points",
    "lines_plucker",
    "count_lines",
]


class NotAntiSymmetric(ValueError):
    pass


class NotDecomposable(ValueError):
    pass


class NotOnGrassmannian(ValueError):
    pass


class RankNotTwo(ValueError):
    pass


class WedgeIndex:
    """Bijection between pairs ``i < j`` (0-based) and positions ``0 .. C(n,2)-1``."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = list(combinations(range(n), 2))
        self.dim = len(self.pairs)
        self._pos = {p: t for t, p in enumerate(self.pairs)}
        self.I = np.array([p[0] for p in self.pairs], dtype=np.int64)
        self.J = np.array([p[1] for p in self.pairs], dtype=np.int64)

    def position(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self._pos[(i, j)]

    def name(self, t: int) -> str:
        i, j = self.pairs[t]
        return f"x_{i + 1}_{j + 1}"

    def names(self) -> list[str]:
        return [self.name(t) for t in range(self.dim)]

    def basis_vector(self, i: int, j: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.position(i, j)] = 1
        return v


@lru_cache(maxsize=None)
def wedge_index(n: int) -> WedgeIndex:
    return WedgeIndex(n)


def _n_from_dim(m: int) -> int:
    n = 2
    while comb(n, 2) < m:
        n += 1
    if comb(n, 2) != m:
        raise ShapeMismatch(f"{m} is not a binomial C(n,2)")
    return n


@dataclass(frozen=True)
class WedgePoint:
    """A point of PG(V^V): normalized Plücker coordinates (first nonzero is 1)."""

    coords: tuple[int, ...]
    n: int

    @classmethod
    def from_vector(cls, F: FieldCtx, v) -> "WedgePoint":
        v = np.asarray(v, dtype=np.int64)
        return cls(tuple(int(x) for x in normalize(F, v)), _n_from_dim(len(v)))

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def format(self, F: FieldCtx) -> str:
        return ",".join(F.format(c) for c in self.coords)


@dataclass(frozen=True)
class ProjLine:
    """A line of PG(V), stored as its canonical 2 x n RREF matrix."""

    rows: tuple[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def span(cls, F: FieldCtx, x, y) -> "ProjLine":
        R, r, _ = rref(F, np.array([x, y], dtype=np.int64))
        if r != 2:
            raise ValueError("vectors do not span a line")
        return cls((tuple(int(a) for a in R[0]), tuple(int(a) for a in R[1])))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)


# -- anti-symmetric matrices ---------------------------------------------


def alpha(F: FieldCtx, v) -> np.ndarray:
    """Anti-symmetric matrix with ``A[i, j] = v_ij`` and ``A[j, i] = -v_ij``."""
    return alpha_batch(F, np.asarray(v, dtype=np.int64)[None, :])[0]


def alpha_batch(F: FieldCtx, V) -> np.ndarray:
    V = np.asarray(V, dtype=np.int64)
    W = wedge_index(_n_from_dim(V.shape[-1]))
    A = np.zeros(V.shape[:-1] + (W.n, W.n), dtype=np.int64)
    A[..., W.I, W.J] = V
    A[..., W.J, W.I] = F.neg(V)
    return A


def alpha_inv(F: FieldCtx, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("alpha_inv expects a square matrix")
    if np.any(np.diag(A)) or not np.array_equal(A.T, F.neg(A)):
        raise NotAntiSymmetric("matrix is not anti-symmetric with zero diagonal")
    W = wedge_index(n)
    return A[W.I, W.J].copy()


def wedge_product(F: FieldCtx, x, y) -> np.ndarray:
    """``x y^T - y x^T``."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return F.sub(F.mul(x[:, None], y[None, :]), F.mul(y[:, None], x[None, :]))


def plucker_coords(F: FieldCtx, x, y) -> np.ndarray:
    """Unnormalized coordinates ``x_i y_j - x_j y_i``; broadcasts over leading axes."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    W = wedge_index(x.shape[-1])
    return F.sub(F.mul(x[..., W.I], y[..., W.J]), F.mul(x[..., W.J], y[..., W.I]))


def plucker(F: FieldCtx, line) -> WedgePoint:
    """The normalized Plücker point of a line (a ProjLine or a 2 x n matrix)."""
    M = line.matrix() if isinstance(line, ProjLine) else np.asarray(line, dtype=np.int64)
    v = plucker_coords(F, M[0], M[1])
    if not v.any():
        raise ValueError("rows are dependent")
    return WedgePoint.from_vector(F, v)


def line_of(F: FieldCtx, w) -> ProjLine:
    """Recover the line from a decomposable wedge (column space of alpha(w))."""
    v = w.array() if isinstance(w, WedgePoint) else np.asarray(w, dtype=np.int64)
    if not grassmann_membership(F, v):
        raise NotDecomposable("coordinates fail the Grassmann relations")
    A = alpha(F, v)
    R, r, _ = rref(F, A.T)
    if r != 2:
        raise NotDecomposable(f"anti-symmetric matrix has rank {r}")
    return ProjLine((tuple(int(a) for a in R[0]), tuple(int(a) for a in R[1])))


# -- Grassmann relations ----------------------------------------------------


@lru_cache(maxsize=None)
def _quad_index(n: int) -> tuple[np.ndarray, ...]:
    W = wedge_index(n)
    quads = list(combinations(range(n), 4))
    P = W.position
    ij = np.array([P(i, j) for i, j, k, h in quads], dtype=np.int64)
    kh = np.array([P(k, h) for i, j, k, h in quads], dtype=np.int64)
    ik = np.array([P(i, k) for i, j, k, h in quads], dtype=np.int64)
    jh = np.array([P(j, h) for i, j, k, h in quads], dtype=np.int64)
    ih = np.array([P(i, h) for i, j, k, h in quads], dtype=np.int64)
    jk = np.array([P(j, k) for i, j, k, h in quads], dtype=np.int64)
    return ij, kh, ik, jh, ih, jk


def grassmann_residuals(F: FieldCtx, V) -> np.ndarray:
    """Values of ``x_ij x_kh - x_ik x_jh + x_ih x_jk`` for every ``i<j<k<h``.

    ``V`` may be a single vector or a batch ``(N, C(n,2))``.
    """
    V = np.asarray(V, dtype=np.int64)
    n = _n_from_dim(V.shape[-1])
    if n < 4:
        return np.zeros(V.shape[:-1] + (0,), dtype=np.int64)
    ij, kh, ik, jh, ih, jk = _quad_index(n)
    t1 = F.mul(V[..., ij], V[..., kh])
    t2 = F.mul(V[..., ik], V[..., jh])
    t3 = F.mul(V[..., ih], V[..., jk])
    return F.add(F.sub(t1, t2), t3)


def grassmann_membership(F: FieldCtx, w) -> bool:
    v = w.array() if isinstance(w, WedgePoint) else np.asarray(w, dtype=np.int64)
    return bool(v.any()) and not grassmann_residuals(F, v).any()


def star_system(F: FieldCtx, a) -> np.ndarray:
    """Rows of ``a_i x_jk - a_j x_ik + a_k x_ij = 0`` for ``i<j<k``."""
    a = np.asarray(a, dtype=np.int64)
    n = len(a)
    W = wedge_index(n)
    rows = []
    for i, j, k in combinations(range(n), 3):
        r = np.zeros(W.dim, dtype=np.int64)
        r[W.position(j, k)] = a[i]
        r[W.position(i, k)] = int(F.neg(a[j]))
        r[W.position(i, j)] = a[k]
        rows.append(r)
    return np.array(rows, dtype=np.int64).reshape(len(rows), W.dim)


def star_subspace(F: FieldCtx, a) -> tuple[np.ndarray, np.ndarray]:
    """Basis of the wedges of all lines through ``[a]``, and the system cutting it out."""
    a = np.asarray(a, dtype=np.int64)
    if not a.any():
        raise ValueError("a must be nonzero")
    S = star_system(F, a)
    return kernel_basis(F, S), S


def grassmann_tangent_system(F: FieldCtx, c) -> np.ndarray:
    """Linearization at ``c`` of the Grassmann relations, one row per ``i<j<k<h``."""
    c = np.asarray(c, dtype=np.int64)
    n = _n_from_dim(len(c))
    m = len(c)
    if n < 4:
        return np.zeros((0, m), dtype=np.int64)
    ij, kh, ik, jh, ih, jk = _quad_index(n)
    rows = np.zeros((len(ij), m), dtype=np.int64)
    r = np.arange(len(ij))
    # each position appears exactly once per row
    rows[r, ij] = c[kh]
    rows[r, kh] = c[ij]
    rows[r, ik] = F.neg(c[jh])
    rows[r, jh] = F.neg(c[ik])
    rows[r, ih] = c[jk]
    rows[r, jk] = c[ih]
    return rows


def grassmann_tangent(F: FieldCtx, c) -> np.ndarray:
    """Basis (rows) of the tangent space of the Grassmann variety at ``c``."""
    v = c.array() if isinstance(c, WedgePoint) else np.asarray(c, dtype=np.int64)
    if not grassmann_membership(F, v):
        raise NotOnGrassmannian("point is not on the Grassmann variety")
    return kernel_basis(F, grassmann_tangent_system(F, v))


# -- liftings -------------------------------------------------------------------


def _wedge_matrix_of(F: FieldCtx, M) -> np.ndarray:
    """Matrix of ``A -> M A M^T`` in Plücker coordinates (columns = images of e_i^e_j)."""
    n = M.shape[0]
    W = wedge_index(n)
    cols = plucker_coords(F, M[:, W.I].T, M[:, W.J].T)
    return cols.T.copy()


def lift_map(F: FieldCtx, M) -> np.ndarray:
    """Lifting of ``x -> M x`` to V^V: ``x^y -> Mx ^ My``."""
    M = np.asarray(M, dtype=np.int64)
    if rank(F, M) < M.shape[0]:
        raise SingularMatrix("lift_map needs an invertible matrix")
    return _wedge_matrix_of(F, M)


def dual_lift_map(F: FieldCtx, M) -> np.ndarray:
    """Lifting of the dual map: ``A* -> M^-T A* M^-1`` in dual Plücker coordinates."""
    Minv = inverse(F, np.asarray(M, dtype=np.int64))
    return _wedge_matrix_of(F, Minv.T.copy())


def dual_incidence(F: FieldCtx, theta_wedge, x_wedge) -> bool:
    """Whether the line of ``x_wedge`` lies in the dual line of ``theta_wedge``."""
    T = np.asarray(theta_wedge, dtype=np.int64)
    X = np.asarray(x_wedge, dtype=np.int64)
    if rank(F, T) != 2 or rank(F, X) != 2:
        raise RankNotTwo("both matrices must have rank 2")
    return not F.matmul(T, X).any()


# -- enumeration ------------------------------------------------------------------


def enumerate_points(F: FieldCtx, n: int) -> np.ndarray:
    """All normalized vectors of PG(n-1, q), ordered by leading position then value."""
    q = F.q
    blocks = []
    for lead in range(n):
        tail = n - lead - 1
        free = np.indices((q,) * tail).reshape(tail, -1).T if tail else np.zeros((1, 0), dtype=np.int64)
        B = np.zeros((free.shape[0], n), dtype=np.int64)
        B[:, lead] = 1
        B[:, lead + 1 :] = free
        blocks.append(B)
    return np.vstack(blocks)


def count_lines(q: int, n: int) -> int:
    """Gaussian binomial [n choose 2]_q."""
    return (q**n - 1) * (q ** (n - 1) - 1) // ((q**2 - 1) * (q - 1))


def enumerate_lines(F: FieldCtx, n: int) -> np.ndarray:
    """Every line of PG(n-1, q) as a canonical RREF matrix; shape ``(L, 2, n)``."""
    q = F.q
    blocks = []
    for i, j in combinations(range(n), 2):
        # free entries: row0 at columns (i, n) except j; row1 at columns (j, n)
        f0 = [c for c in range(i + 1, n) if c != j]
        f1 = list(range(j + 1, n))
        nf = len(f0) + len(f1)
        free = np.indices((q,) * nf).reshape(nf, -1).T if nf else np.zeros((1, 0), dtype=np.int64)
        B = np.zeros((free.shape[0], 2, n), dtype=np.int64)
        B[:, 0, i] = 1
        B[:, 1, j] = 1
        if f0:
            B[:, 0, f0] = free[:, : len(f0)]
        if f1:
            B[:, 1, f1] = free[:, len(f0) :]
        blocks.append(B)
    return np.concatenate(blocks, axis=0)


def lines_plucker(F: FieldCtx, lines) -> np.ndarray:
    """Normalized Plücker coordinates of a batch of lines ``(L, 2, n)``."""
    lines = np.asarray(lines, dtype=np.int64)
    return normalize_rows(F, plucker_coords(F, lines[:, 0], lines[:, 1]))


def line_points(F: FieldCtx, line) -> np.ndarray:
    """The ``q + 1`` normalized points of a line given by two spanning rows."""
    M = line.matrix() if isinstance(line, ProjLine) else np.asarray(line, dtype=np.int64)
    x, y = M[0], M[1]
    b = F.elements()
    pts = F.add(x[None, :], F.mul(b[:, None], y[None, :]))
    return normalize_rows(F, np.vstack([pts, y[None, :]]))
