"""Dense exact linear algebra over a :class:`~polargrass.gfield.FieldCtx`.

Matrices are plain 2-D ``int64`` arrays of element codes; the field is passed
alongside.  Vectors are 1-D arrays and are treated as columns.
"""

from __future__ import annotations

import numpy as np

from .gfield import FieldCtx

__all__ = [
    "ShapeMismatch",
    "SingularMatrix",
    "as_mat",
    "rref",
    "rank",
    "kernel_basis",
    "left_kernel_basis",
    "span_dim",
    "span_basis",
    "same_span",
    "intersect",
    "in_span",
    "inverse",
    "solve",
    "normalize",
    "normalize_rows",
    "transpose_sigma",
]


class ShapeMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


def as_mat(F: FieldCtx, rows, ncols: int | None = None) -> np.ndarray:
    """Coerce nested lists (ints or literals) into a 2-D element array."""
    if isinstance(rows, np.ndarray):
        a = rows.astype(np.int64)
        if a.ndim == 1:
            a = a[None, :]
        return a
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    out = [[F.element(x) for x in r] for r in rows]
    if len({len(r) for r in out}) > 1:
        raise ShapeMismatch("ragged rows")
    return np.array(out, dtype=np.int64).reshape(len(out), -1)


def rref(F: FieldCtx, M) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns ``(R, rank, pivot_columns)``; ``R`` has the same shape as ``M``.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ShapeMismatch("rref expects a 2-D matrix")
    nr, nc = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.mul(R[r], int(F.inv(piv)))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = F.sub(R[rows], F.mul(col[rows, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: FieldCtx, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def kernel_basis(F: FieldCtx, M) -> np.ndarray:
    """Basis of the right null space, one vector per row (``cols - rank`` rows)."""
    M = np.asarray(M, dtype=np.int64)
    nc = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(nc, dtype=np.int64)
    R, r, piv = rref(F, M)
    free = [c for c in range(nc) if c not in set(piv)]
    K = np.zeros((len(free), nc), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, p in enumerate(piv):
            K[t, p] = int(F.neg(R[i, f]))
    return K


def left_kernel_basis(F: FieldCtx, M) -> np.ndarray:
    """Row vectors ``y`` with ``y M = 0``."""
    return kernel_basis(F, np.asarray(M, dtype=np.int64).T)


def span_basis(F: FieldCtx, vectors) -> np.ndarray:
    """RREF basis (rows) of the span of the given row vectors."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.ndim == 1:
        V = V[None, :]
    if V.shape[0] == 0:
        return V.reshape(0, V.shape[1] if V.ndim == 2 else 0)
    R, r, _ = rref(F, V)
    return R[:r]


def span_dim(F: FieldCtx, vectors) -> int:
    """Dimension of the span; raises ShapeMismatch on ragged input."""
    if isinstance(vectors, np.ndarray):
        if vectors.size == 0:
            return 0
        return rank(F, vectors if vectors.ndim == 2 else vectors[None, :])
    vectors = list(vectors)
    if not vectors:
        return 0
    if len({len(v) for v in vectors}) > 1:
        raise ShapeMismatch("vectors of unequal length")
    return rank(F, np.array(vectors, dtype=np.int64))


def same_span(F: FieldCtx, A, B) -> bool:
    a, b = span_basis(F, A), span_basis(F, B)
    return a.shape == b.shape and np.array_equal(a, b)


def intersect(F: FieldCtx, A, B) -> np.ndarray:
    """RREF basis of the intersection of the row spans of ``A`` and ``B``."""
    A = span_basis(F, A)
    B = span_basis(F, B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, max(A.shape[1], B.shape[1])), dtype=np.int64)
    C = left_kernel_basis(F, np.vstack([A, B]))
    if C.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return span_basis(F, F.matmul(C[:, : A.shape[0]], A))


def in_span(F: FieldCtx, basis, v) -> bool:
    """Whether ``v`` lies in the row span of ``basis``."""
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if basis.shape[0] == 0:
        return not v.any()
    r = rank(F, basis)
    return rank(F, np.vstack([basis, v[None, :]])) == r


def solve(F: FieldCtx, A, b) -> np.ndarray | None:
    """One solution ``x`` of ``A x = b`` or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.hstack([A, b[:, None]])
    R, r, piv = rref(F, aug)
    if piv and piv[-1] == A.shape[1]:
        return None
    x = np.zeros(A.shape[1], dtype=np.int64)
    for i, p in enumerate(piv):
        x[p] = R[i, -1]
    return x


def inverse(F: FieldCtx, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ShapeMismatch("inverse of a non-square matrix")
    R, r, piv = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if r < n or piv[n - 1] != n - 1:
        raise SingularMatrix("matrix is singular")
    return R[:, n:]


def normalize(F: FieldCtx, v) -> np.ndarray:
    """Scale so the first nonzero coordinate is 1 (projective canonical form)."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        raise ValueError("zero vector has no projective point")
    return F.mul(v, int(F.inv(v[nz[0]])))


def normalize_rows(F: FieldCtx, V) -> np.ndarray:
    """Row-wise :func:`normalize`; zero rows are left as zero."""
    V = np.asarray(V, dtype=np.int64)
    if V.shape[0] == 0:
        return V
    nz = V != 0
    first = np.argmax(nz, axis=1)
    lead = V[np.arange(V.shape[0]), first]
    lead = np.where(lead == 0, 1, lead)
    return F.mul(V, F.inv(lead)[:, None])


def transpose_sigma(F: FieldCtx, M) -> np.ndarray:
    """``(M^sigma)^T``."""
    return F.sigma(np.asarray(M, dtype=np.int64)).T
