"""Point-line geometries and their d-embeddings: axiom checks, Veronese and
Grassmann constructions, quotients, hulls, projective fitting and conic nuclei.

Geometry text format::

    p <id>                    one declaration per point
    l <id> <id> ...           one line per row, listing its points

Embedding text format, one point per row::

    <id> : c1 c2 ...          coordinates as field literals
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement

import numpy as np

from .equations import EqnGroup, EqnSystem, Poly, variable_names
from .gfield import FieldCtx
from .linalg import inverse, kernel_basis, normalize_rows, rank, rref, span_basis
from .wedge import lines_plucker

__all__ = [
    "EmbeddingError",
    "InvalidGeometry",
    "DegeneratePoint",
    "NotProjectiveEmbedding",
    "NonConstantStarDimension",
    "GeometryTooLarge",
    "NotAConic",
    "Geometry",
    "PointEmbedding",
    "EmbeddingCheck",
    "QuotientCheck",
    "HullResult",
    "Projection",
    "polar_geometry",
    "dual_geometry",
    "check_embedding",
    "veronese_map",
    "veronese_equations",
    "veronese_embedding",
    "grassmann_embed",
    "quotient_map",
    "check_quotient",
    "hull",
    "fit_projection",
    "conic_nucleus",
    "parse_geometry",
    "format_geometry",
    "parse_embedding",
    "format_embedding",
]

HULL_CAP = 4000


class EmbeddingError(ValueError):
    pass


class InvalidGeometry(EmbeddingError):
    pass


class DegeneratePoint(EmbeddingError):
    pass


class NotProjectiveEmbedding(EmbeddingError):
    pass


class NonConstantStarDimension(EmbeddingError):
    pass


class GeometryTooLarge(EmbeddingError):
    pass


class NotAConic(EmbeddingError):
    pass


@dataclass(frozen=True, eq=False)
class Geometry:
    """Points are ``0..N-1`` (with optional labels); lines are sorted index tuples."""

    npoints: int
    lines: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        for l in self.lines:
            if len(l) < 2:
                raise InvalidGeometry(f"line {l} has fewer than 2 points")
            if len(set(l)) != len(l) or min(l) < 0 or max(l) >= self.npoints:
                raise InvalidGeometry(f"line {l} has bad point ids")

    @classmethod
    def from_lines(cls, npoints: int, lines, labels=None, validate: bool = True) -> "Geometry":
        g = cls(npoints, tuple(tuple(sorted(int(p) for p in l)) for l in lines), labels)
        if validate:
            g.validate()
        return g

    @property
    def nlines(self) -> int:
        return len(self.lines)

    def label(self, p: int) -> str:
        return self.labels[p] if self.labels else str(p)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.npoints)]
        for i, l in enumerate(self.lines):
            for p in l:
                out[p].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def incidence(self) -> np.ndarray:
        M = np.zeros((self.nlines, self.npoints), dtype=bool)
        for i, l in enumerate(self.lines):
            M[i, list(l)] = True
        return M

    def validate(self) -> None:
        I = self.incidence.astype(np.int64)
        meet = I @ I.T
        np.fill_diagonal(meet, 0)
        if (meet > 1).any():
            i, j = np.argwhere(meet > 1)[0]
            raise InvalidGeometry(f"lines {self.lines[i]} and {self.lines[j]} share two points")
        seen = {0} if self.npoints else set()
        frontier = [0] if self.npoints else []
        while frontier:
            p = frontier.pop()
            for li in self.lines_through[p]:
                for r in self.lines[li]:
                    if r not in seen:
                        seen.add(r)
                        frontier.append(r)
        if len(seen) != self.npoints:
            raise InvalidGeometry("geometry is not connected")


@dataclass(eq=False)
class PointEmbedding:
    """A map point -> projective point, stored as normalized rows."""

    geometry: Geometry | None
    F: FieldCtx
    vectors: np.ndarray

    def __post_init__(self):
        self.vectors = normalize_rows(self.F, np.asarray(self.vectors, dtype=np.int64))

    @property
    def npoints(self) -> int:
        return len(self.vectors)

    @property
    def ambient(self) -> int:
        return self.vectors.shape[1]

    @cached_property
    def span(self) -> np.ndarray:
        return span_basis(self.F, self.vectors)

    @property
    def span_dim(self) -> int:
        return int(self.span.shape[0])

    def restricted(self) -> "PointEmbedding":
        """The same embedding written in coordinates of its own span."""
        _, _, piv = rref(self.F, self.span)
        return PointEmbedding(self.geometry, self.F, self.vectors[:, piv])

    def line_vectors(self, i: int) -> np.ndarray:
        return self.vectors[list(self.geometry.lines[i])]


# -- geometries from forms ------------------------------------------------------------


def polar_geometry(form) -> tuple[Geometry, np.ndarray]:
    """Points and totally isotropic/singular lines of a form, with point coordinates."""
    from .varieties import build_variety
    from .wedge import enumerate_points, line_points

    F = form.F
    pts = enumerate_points(F, form.n)
    pts = pts[form.isotropic_points_mask(pts)]
    index = {tuple(r): i for i, r in enumerate(pts.tolist())}
    V = build_variety(form)
    lines = [[index[tuple(r)] for r in line_points(F, L).tolist()] for L in V.lines]
    return Geometry.from_lines(len(pts), lines), pts


def dual_geometry(g: Geometry) -> Geometry:
    """Lines become points; the pencil of lines through a point becomes a line."""
    pencils = g.lines_through
    for p, pen in enumerate(pencils):
        if len(pen) < 2:
            raise DegeneratePoint(f"point {g.label(p)} lies on {len(pen)} line(s)")
    return Geometry.from_lines(g.nlines, pencils, validate=False)


# -- axioms --------------------------------------------------------------------------------


@dataclass
class EmbeddingCheck:
    local_dim: int | None
    full: bool
    span_dim: int
    injective: bool
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _annihilator(F: FieldCtx, basis) -> np.ndarray:
    """Rows ``h`` with ``h . b = 0`` for every row ``b`` of ``basis``."""
    return kernel_basis(F, basis)


def _members(F: FieldCtx, basis, V) -> np.ndarray:
    """Boolean mask of rows of ``V`` lying in the span of ``basis``."""
    H = _annihilator(F, basis)
    if H.shape[0] == 0:
        return np.ones(len(V), dtype=bool)
    return ~F.matmul(V, H.T).any(axis=1)


def check_embedding(g: Geometry, e: PointEmbedding, ambient_dim: int | None = None) -> EmbeddingCheck:
    """Test injectivity and (E1)-(E3); ``ambient_dim`` defaults to the span of the image."""
    F = e.F
    V = e.vectors
    viol: list[tuple[str, str]] = []
    if len(V) != g.npoints:
        raise EmbeddingError("embedding is not total on the points")
    if not V.any(axis=1).all():
        viol.append(("injective", "zero vector"))
    uniq = {tuple(r) for r in V.tolist()}
    injective = len(uniq) == len(V)
    if not injective:
        viol.append(("injective", "two points share an image"))
    dims = set()
    full = True
    qpts = lambda s: (F.q**s - 1) // (F.q - 1)
    for i, l in enumerate(g.lines):
        B = span_basis(F, V[list(l)])
        dims.add(B.shape[0])
        inside = np.nonzero(_members(F, B, V))[0]
        if set(inside.tolist()) != set(l):
            extra = sorted(set(inside.tolist()) - set(l))
            viol.append(("E2", f"line {i} span contains point {g.label(extra[0])}"))
        if len(l) != qpts(B.shape[0]):
            full = False
    d = None
    if len(dims) == 1:
        d = dims.pop() - 1
    else:
        viol.append(("E1", f"line spans have vector dimensions {sorted(dims)}"))
    s = rank(F, V)
    if ambient_dim is not None and s != ambient_dim:
        viol.append(("E3", f"image spans {s} of {ambient_dim}"))
    return EmbeddingCheck(d, full and d == 1, s, injective, viol)


# -- Veronese ------------------------------------------------------------------------------


def _sym_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(n), 2))


def veronese_map(F: FieldCtx, x) -> np.ndarray:
    """``(x_i x_j)_{i<=j}`` in lex order; broadcasts over leading axes."""
    x = np.asarray(x, dtype=np.int64)
    n = x.shape[-1]
    I, J = np.array(_sym_pairs(n)).T
    return F.mul(x[..., I], x[..., J])


def veronese_embedding(g: Geometry, F: FieldCtx, coords) -> PointEmbedding:
    return PointEmbedding(g, F, veronese_map(F, coords))


def veronese_equations(F: FieldCtx, n: int) -> EqnSystem:
    """The quadrics cutting out the Veronese variety of PG(n-1, F)."""
    pos = {pr: t for t, pr in enumerate(_sym_pairs(n))}
    m = len(pos)
    P = lambda i, j: pos[(min(i, j), max(i, j))]
    minus = int(F.neg(1))
    polys: list[Poly] = []
    seen = set()

    def add(a, b, c, d):
        t: dict = {}
        for mono, co in ((tuple(sorted((a, b))), 1), (tuple(sorted((c, d))), minus)):
            t[mono] = int(F.add(t.get(mono, 0), co))
        p = Poly(F, m, t)
        if p and p.monic() not in seen:
            seen.add(p.monic())
            polys.append(p)

    for i, j in combinations(range(n), 2):
        add(P(i, i), P(j, j), P(i, j), P(i, j))
    for i in range(n):
        for j, k in combinations(range(n), 2):
            if i not in (j, k):
                add(P(i, j), P(i, k), P(i, i), P(j, k))
    for i, j, k, h in combinations(range(n), 4):
        add(P(i, j), P(k, h), P(i, k), P(j, h))
        add(P(i, j), P(k, h), P(i, h), P(j, k))
    return EqnSystem(F, n, variable_names(n, "sym"), [EqnGroup("veronese", polys)], "sym")


# -- Grassmann embedding --------------------------------------------------------------------


def grassmann_embed(e: PointEmbedding) -> tuple[PointEmbedding, int]:
    """From a projective embedding of a geometry to the induced embedding of its dual.

    Returns the new embedding (points = lines of the input geometry) and ``d``.
    """
    g, F = e.geometry, e.F
    chk = check_embedding(g, e)
    if chk.local_dim != 1 or not chk.full or not chk.ok:
        raise NotProjectiveEmbedding("input must be a full 1-embedding")
    dual = dual_geometry(g)
    first_two = []
    for l in g.lines:
        B = span_basis(F, e.vectors[list(l)])
        first_two.append(B[:2])
    L = np.array(first_two, dtype=np.int64)
    W = lines_plucker(F, L)
    dims = set()
    for p in range(g.npoints):
        pts = sorted({r for li in g.lines_through[p] for r in g.lines[li]})
        dims.add(rank(F, e.vectors[pts]))
    if len(dims) != 1:
        raise NonConstantStarDimension(f"star spans have vector dimensions {sorted(dims)}")
    d = dims.pop() - 2
    return PointEmbedding(dual, F, W), d


# -- quotients --------------------------------------------------------------------------------


def _quotient(F: FieldCtx, K, dim: int) -> tuple[np.ndarray, list[int]]:
    K = np.asarray(K, dtype=np.int64).reshape(-1, dim)
    if K.shape[0] == 0:
        return np.eye(dim, dtype=np.int64), list(range(dim))
    R, r, piv = rref(F, K)
    free = [c for c in range(dim) if c not in set(piv)]
    Q = np.zeros((len(free), dim), dtype=np.int64)
    for t, c in enumerate(free):
        Q[t, c] = 1
    # a pivot unit vector reduces to minus its row on the free columns
    for i, p in enumerate(piv):
        Q[:, p] = F.neg(R[i, free])
    return Q, free


def quotient_map(F: FieldCtx, K, dim: int) -> np.ndarray:
    """Matrix ``Q`` with ``Q v`` = coordinates of ``v`` modulo the row span of ``K``."""
    return _quotient(F, K, dim)[0]


@dataclass
class QuotientCheck:
    k: int | None
    violations: list[tuple[str, str]]
    quotient: PointEmbedding | None
    quotient_dim: int

    @property
    def ok(self) -> bool:
        return not self.violations


def check_quotient(e: PointEmbedding, K) -> QuotientCheck:
    """Exhaustive (Q1)-(Q3) for the subspace spanned by the rows of ``K``."""
    F, g = e.F, e.geometry
    K = span_basis(F, np.asarray(K, dtype=np.int64).reshape(-1, e.ambient))
    Q = quotient_map(F, K, e.ambient)
    img = F.matmul(e.vectors, Q.T)
    viol: list[tuple[str, str]] = []
    zero = ~img.any(axis=1)
    if zero.any():
        viol.append(("Q1", f"point {g.label(int(np.argmax(zero)))} lies in K"))
    nimg = normalize_rows(F, img)
    seen: dict[tuple, int] = {}
    for p, r in enumerate(nimg.tolist()):
        t = tuple(r)
        if t in seen and not zero[p]:
            viol.append(("Q1", f"points {g.label(seen[t])},{g.label(p)} span meets K"))
            break
        seen.setdefault(t, p)
    ks = set()
    dK = K.shape[0]
    for i, l in enumerate(g.lines):
        Lv = e.vectors[list(l)]
        B = span_basis(F, img[list(l)])
        outside = np.ones(g.npoints, dtype=bool)
        outside[list(l)] = False
        bad = outside & _members(F, B, img) if B.shape[0] else outside & zero
        if bad.any():
            viol.append(("Q2", f"point {g.label(int(np.argmax(bad)))} vs line {i}"))
        sl = rank(F, Lv)
        ks.add(dK + sl - rank(F, np.vstack([K, Lv])) if dK else 0)
    k = None
    d = check_embedding(g, e).local_dim if g is not None else None
    if len(ks) == 1:
        k = ks.pop()
        if d is not None and k >= d:
            viol.append(("Q3", f"k={k} is not below d={d}"))
    else:
        viol.append(("Q3", f"dim(K meet line span) varies: {sorted(ks)}"))
    quo = PointEmbedding(g, F, img) if not zero.any() else None
    return QuotientCheck(k, viol, quo, rank(F, img))


# -- hull --------------------------------------------------------------------------------------


@dataclass
class HullResult:
    dim: int
    embedding: PointEmbedding
    projection: np.ndarray  # ambient x dim

    def check_projection(self, e: PointEmbedding) -> bool:
        """Projection composed with the hull embedding reproduces ``e`` up to scalars."""
        F = e.F
        img = normalize_rows(F, F.matmul(self.embedding.vectors, self.projection.T))
        return bool(np.array_equal(img, e.vectors))


def hull(e: PointEmbedding, cap: int = HULL_CAP) -> HullResult:
    """The hull as the quotient of the formal direct sum of point and line spaces.

    Layout: one coordinate per point, then ``d+1`` per line in the basis given by
    the first independent images of its points.
    """
    F, g = e.F, e.geometry
    chk = check_embedding(g, e)
    if chk.local_dim is None:
        raise EmbeddingError("hull needs a d-embedding")
    d1 = chk.local_dim + 1
    N, nl = g.npoints, g.nlines
    dimO = N + nl * d1
    if dimO > cap:
        raise GeometryTooLarge(f"formal sum has dimension {dimO} > cap {cap}")
    rows = []
    nat = np.zeros((e.ambient, dimO), dtype=np.int64)
    nat[:, :N] = e.vectors.T
    for li, l in enumerate(g.lines):
        Lv = e.vectors[list(l)]
        basis = []
        for v in Lv:
            if rank(F, np.array(basis + [v])) > len(basis):
                basis.append(v)
            if len(basis) == d1:
                break
        Bm = np.array(basis, dtype=np.int64)
        off = N + li * d1
        nat[:, off : off + d1] = Bm.T
        # coordinates of each point of l in the chosen basis
        for p, v in zip(l, Lv):
            sol = kernel_basis(F, np.vstack([Bm, v[None, :]]).T)
            c = F.neg(F.div(sol[0][:d1], sol[0][d1]))
            row = np.zeros(dimO, dtype=np.int64)
            row[p] = 1
            row[off : off + d1] = F.neg(c)
            rows.append(row)
    J = np.array(rows, dtype=np.int64)
    Q, free = _quotient(F, span_basis(F, J), dimO)
    hv = Q[:, :N].T
    proj = nat[:, free]
    emb = PointEmbedding(g, F, hv)
    return HullResult(Q.shape[0], emb, proj)


# -- projective fitting ------------------------------------------------------------------------


@dataclass
class Projection:
    """A linear map (rows: target coordinates) carrying ``e1`` onto ``e2`` pointwise."""

    matrix: np.ndarray
    kernel_dim: int
    scalars: np.ndarray


def _solve_frame(F: FieldCtx, V1, V2, B, lam) -> np.ndarray:
    """Map sending the basis ``V1[B]`` to ``lam * V2[B]``, defined on raw coordinates of ``V1``."""
    S = V1[B]  # k x n1, independent rows
    _, _, piv = rref(F, S)
    Sp = S[:, piv]  # invertible k x k
    T = F.mul(V2[B], lam[:, None])  # k x n2
    M = F.matmul(T.T, inverse(F, Sp.T))  # n2 x k, acts on pivot coordinates
    out = np.zeros((V2.shape[1], V1.shape[1]), dtype=np.int64)
    out[:, piv] = M
    return out


def fit_projection(e1: PointEmbedding, e2: PointEmbedding) -> Projection | None:
    """A linear ``f`` with ``f(e1(p))`` proportional to ``e2(p)`` for all points, or ``None``.

    Scalars are seeded on a basis among the ``e1`` images and fixed by the linear
    consistency conditions of the remaining points; the result is checked globally.
    """
    F = e1.F
    V1, V2 = e1.vectors, e2.vectors
    if len(V1) != len(V2):
        return None
    B: list[int] = []
    for i in range(len(V1)):
        if rank(F, V1[B + [i]]) > len(B):
            B.append(i)
    k = len(B)
    _, _, piv = rref(F, V1[B])
    # coefficients of every point in the chosen basis
    Sp = V1[B][:, piv]
    C = F.matmul(V1[:, piv], inverse(F, Sp))  # N x k
    rows = []
    for p in range(len(V1)):
        H = kernel_basis(F, V2[p][None, :])  # (n2-1) x n2, annihilates e2(p)
        if H.shape[0] == 0:
            continue
        G = F.matmul(H, V2[B].T)  # (n2-1) x k
        rows.append(F.mul(G, C[p][None, :]))
    A = np.vstack(rows) if rows else np.zeros((0, k), dtype=np.int64)
    sol = kernel_basis(F, A) if A.shape[0] else np.eye(k, dtype=np.int64)
    cands = list(sol)
    if len(sol) > 1:
        cands.append(F.sum(sol, axis=0))
    for lam in cands:
        if not lam.all():
            continue
        M = _solve_frame(F, V1, V2, B, lam)
        img = F.matmul(V1, M.T)
        if not img.any(axis=1).all():
            continue
        if not np.array_equal(normalize_rows(F, img), V2):
            continue
        lam_all = img[np.arange(len(img)), np.argmax(V2 != 0, axis=1)]
        return Projection(M, k - rank(F, F.matmul(M, e1.span.T).T), lam_all)
    return None


# -- nuclei --------------------------------------------------------------------------------------


def conic_nucleus(F: FieldCtx, points) -> np.ndarray:
    """Common point of the tangent lines of a conic in even characteristic."""
    P = np.asarray(points, dtype=np.int64)
    if F.p != 2:
        raise NotAConic("conics have a nucleus only in characteristic 2")
    B = span_basis(F, P)
    if B.shape[0] != 3 or len(P) != F.q + 1:
        raise NotAConic("points must be q+1 and span a plane")
    _, _, piv = rref(F, B)
    X = normalize_rows(F, P[:, piv])
    if len({tuple(r) for r in X.tolist()}) != len(X):
        raise NotAConic("repeated points")
    for a, b, c in combinations(range(len(X)), 3):
        if rank(F, X[[a, b, c]]) < 3:
            raise NotAConic("three collinear points")
    tangents = []
    for i in range(len(X)):
        pencil = kernel_basis(F, X[i][None, :])  # 2 x 3: lines through X[i]
        cand = [pencil[1]] + [F.add(pencil[0], F.mul(s, pencil[1])) for s in F.elements()]
        for h in cand:
            hits = F.dot(X, h[None, :]) == 0
            if hits.sum() == 1:
                tangents.append(h)
                break
        else:
            raise NotAConic("no tangent line found")
    T = np.array(tangents, dtype=np.int64)
    nuc = kernel_basis(F, T)
    if nuc.shape[0] != 1:
        raise NotAConic("tangent lines are not concurrent")
    return normalize_rows(F, F.matmul(nuc, B))[0]


# -- text formats ------------------------------------------------------------------------------


def parse_geometry(text: str) -> Geometry:
    labels: list[str] = []
    idx: dict[str, int] = {}
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "p":
            for lab in line[1:]:
                if lab in idx:
                    raise InvalidGeometry(f"point {lab} declared twice")
                idx[lab] = len(labels)
                labels.append(lab)
        elif line[0] == "l":
            try:
                lines.append([idx[x] for x in line[1:]])
            except KeyError as exc:
                raise InvalidGeometry(f"undeclared point {exc.args[0]}") from None
        else:
            raise InvalidGeometry(f"unknown record {line[0]!r}")
    return Geometry.from_lines(len(labels), lines, tuple(labels))


def format_geometry(g: Geometry) -> str:
    out = [f"p {g.label(p)}" for p in range(g.npoints)]
    out += ["l " + " ".join(g.label(p) for p in l) for l in g.lines]
    return "\n".join(out) + "\n"


def parse_embedding(text: str, g: Geometry, F: FieldCtx) -> PointEmbedding:
    idx = {g.label(p): p for p in range(g.npoints)}
    rows: dict[int, list[int]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lab, _, rest = line.partition(":")
        lab = lab.strip()
        if lab not in idx:
            raise EmbeddingError(f"unknown point {lab!r}")
        rows[idx[lab]] = [F.element(c) for c in rest.replace(",", " ").split()]
    if len(rows) != g.npoints:
        raise EmbeddingError("embedding is not total on the points")
    return PointEmbedding(g, F, np.array([rows[p] for p in range(g.npoints)], dtype=np.int64))


def format_embedding(e: PointEmbedding) -> str:
    F, g = e.F, e.geometry
    return "".join(f"{g.label(p)} : {' '.join(F.format(c) for c in v)}\n" for p, v in enumerate(e.vectors))
