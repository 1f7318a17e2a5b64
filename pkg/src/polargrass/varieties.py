"""Point sets G_phi, G_chi, R_phi inside PG(V^V): enumeration, spans, tangent
spaces, equation emission and solution-set checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from math import comb

import numpy as np

from .equations import (
    EqnGroup,
    EqnSystem,
    Poly,
    greedy_independent,
    in_span,
    linear_multiples,
    linear_part,
    variable_names,
)
from .forms import QuadForm, SesquiForm, SingularQuadForm
from .gfield import FieldCtx
from .linalg import kernel_basis, normalize, normalize_rows, rank, rref, span_basis
from .wedge import (
    alpha,
    alpha_batch,
    enumerate_lines,
    enumerate_points,
    grassmann_membership,
    grassmann_residuals,
    grassmann_tangent_system,
    line_of,
    lines_plucker,
    star_system,
    wedge_index,
)

__all__ = [
    "VarietyError",
    "WittIndexTooSmall",
    "NullForm",
    "PointNotOnVariety",
    "PointNotIsotropic",
    "NonConstantTangentDimension",
    "UnsupportedCombination",
    "VarietySet",
    "ResidueSection",
    "grassmann_variety",
    "build_variety",
    "radical_star",
    "span_dimension",
    "tangent_system",
    "tangent_space",
    "tangent_rank",
    "variety_dimension",
    "tangent_dimension_multiset",
    "emit_equations",
    "verify_solution_set",
    "residue_section",
    "classify_point_set",
    "quadric_through",
]

CHUNK = 8192


class VarietyError(ValueError):
    pass


class WittIndexTooSmall(VarietyError):
    pass


class NullForm(VarietyError):
    pass


class PointNotOnVariety(VarietyError):
    pass


class PointNotIsotropic(VarietyError):
    pass


class UnsupportedCombination(VarietyError):
    pass


class NonConstantTangentDimension(VarietyError):
    def __init__(self, multiset: Counter):
        self.multiset = multiset
        super().__init__(f"tangent dimensions vary: {dict(sorted(multiset.items()))}")


@dataclass(eq=False)
class VarietySet:
    """A canonical set of normalized wedge points, stored sorted."""

    kind: str
    F: FieldCtx
    n: int
    coords: np.ndarray
    form: object = None
    lines: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        C = np.asarray(self.coords, dtype=np.int64).reshape(-1, comb(self.n, 2))
        order = np.lexsort(C.T[::-1]) if len(C) else np.arange(0)
        self.coords = C[order]
        if self.lines is not None:
            self.lines = self.lines[order]

    def __len__(self) -> int:
        return len(self.coords)

    @cached_property
    def points(self) -> frozenset[tuple[int, ...]]:
        return frozenset(map(tuple, self.coords.tolist()))

    def __contains__(self, w) -> bool:
        v = w.coords if hasattr(w, "coords") and not isinstance(w, np.ndarray) else w
        v = normalize(self.F, np.asarray(v, dtype=np.int64))
        return tuple(v.tolist()) in self.points

    def __eq__(self, other) -> bool:
        return isinstance(other, VarietySet) and self.points == other.points

    @cached_property
    def span_basis(self) -> np.ndarray:
        if len(self) == 0:
            return np.zeros((0, comb(self.n, 2)), dtype=np.int64)
        return span_basis(self.F, self.coords)


def _lines_chunks(F: FieldCtx, n: int):
    L = enumerate_lines(F, n)
    for s in range(0, len(L), CHUNK):
        yield L[s : s + CHUNK]


def grassmann_variety(F: FieldCtx, n: int) -> VarietySet:
    L = enumerate_lines(F, n)
    return VarietySet("G", F, n, lines_plucker(F, L), None, L)


def _form_is_null(form) -> bool:
    M = form.upper if isinstance(form, QuadForm) else form.phi
    return not np.asarray(M).any()


def _line_mask(form, lines) -> np.ndarray:
    if isinstance(form, QuadForm):
        return form.singular_lines_mask(lines)
    return form.isotropic_lines_mask(lines)


def build_variety(form) -> VarietySet:
    """All wedge points of lines totally isotropic (sesquilinear) or totally singular (quadratic)."""
    if _form_is_null(form):
        raise NullForm("the form is identically zero")
    F, n = form.F, form.n
    keep = []
    for chunk in _lines_chunks(F, n):
        keep.append(chunk[_line_mask(form, chunk)])
    L = np.concatenate(keep, axis=0) if keep else np.zeros((0, 2, n), dtype=np.int64)
    if len(L) == 0:
        raise WittIndexTooSmall("no totally isotropic/singular line")
    kind = "G_chi" if isinstance(form, QuadForm) else "G_phi"
    return VarietySet(kind, F, n, lines_plucker(F, L), form, L)


def _meets_radical_mask(f: SesquiForm, lines) -> np.ndarray:
    F = f.F
    PT = f.phi.T
    x = F.matmul(lines[:, 0], PT)
    y = F.matmul(lines[:, 1], PT)
    W = wedge_index(f.n)
    p = F.sub(F.mul(x[:, W.I], y[:, W.J]), F.mul(x[:, W.J], y[:, W.I]))
    return ~p.any(axis=1)


def radical_star(f: SesquiForm) -> tuple[VarietySet, int]:
    """R_phi (wedges of lines meeting the radical) and the dimension of its span."""
    F, n = f.F, f.n
    if not f.is_degenerate:
        return VarietySet("R_phi", F, n, np.zeros((0, comb(n, 2)), dtype=np.int64), f), 0
    keep = [c[_meets_radical_mask(f, c)] for c in _lines_chunks(F, n)]
    L = np.concatenate(keep, axis=0)
    V = VarietySet("R_phi", F, n, lines_plucker(F, L), f, L)
    return V, rank(F, V.coords) if len(V) else 0


def span_dimension(v: VarietySet) -> int:
    return int(v.span_basis.shape[0])


# -- matrix equations as linear maps -----------------------------------------


def _basis_matrices(F: FieldCtx, n: int) -> np.ndarray:
    m = comb(n, 2)
    return alpha_batch(F, np.eye(m, dtype=np.int64))


def _linear_system(F: FieldCtx, n: int, fn) -> np.ndarray:
    """Rows of the linear system ``fn(X) = O`` in the wedge coordinates of ``X``."""
    B = _basis_matrices(F, n)
    cols = [fn(B[t]).reshape(-1) for t in range(len(B))]
    return np.array(cols, dtype=np.int64).T


def _tangent_kind(form) -> str:
    if isinstance(form, QuadForm):
        return "quad2" if form.F.p == 2 else "sym"
    f = form
    F = f.F
    if not F.sigma_is_identity:
        if f.is_degenerate:
            raise UnsupportedCombination("degenerate form with sigma != id")
        return "frob"
    if not f.is_degenerate:
        return "sym"
    if f.is_alternating:
        return "alt_degenerate"
    raise UnsupportedCombination("degenerate non-alternating forms have no tangent convention")


def tangent_system(form, w, grassmann: bool = True) -> np.ndarray:
    """The assembled linear system at the point ``w``, Grassmann rows last.

    With ``grassmann=False`` only the rows differentiated from the form are returned.
    """
    F, n = form.F, form.n
    c = np.asarray(getattr(w, "coords", w), dtype=np.int64)
    A = alpha(F, c)
    kind = _tangent_kind(form)
    mm = F.matmul
    if kind == "sym":
        P = form.polar.phi if isinstance(form, QuadForm) else form.phi
        S = _linear_system(F, n, lambda X: F.add(mm(mm(X, P), A), mm(mm(A, P), X)))
    elif kind == "frob":
        P = form.phi
        Aq = F.sigma(A)
        S = _linear_system(F, n, lambda X: mm(mm(Aq, P), X))
    else:
        P = form.phi
        S = _linear_system(F, n, lambda X: F.add(mm(mm(mm(P, X), P), A), mm(mm(mm(P, A), P), X)))
        if kind == "quad2":
            # differentiate chi(column k) at A: (Phi a_k)^T x_k = 0
            g = mm(P, A)
            rows = []
            for k in range(n):
                rows.append(_linear_system(F, n, lambda X, k=k: F.dot(g[:, k], X[:, k]).reshape(1))[0])
            S = np.vstack([S, np.array(rows, dtype=np.int64)])
    if not grassmann:
        return S
    return np.vstack([S, grassmann_tangent_system(F, c)])


def _check_on_variety(form, w) -> np.ndarray:
    F = form.F
    c = np.asarray(getattr(w, "coords", w), dtype=np.int64)
    if not grassmann_membership(F, c):
        raise PointNotOnVariety("point is not on the Grassmann variety")
    line = line_of(F, c).matrix()
    ok = _line_mask(form, line[None])[0]
    if not ok:
        raise PointNotOnVariety("line is not totally isotropic/singular")
    return c


def tangent_rank(form, w) -> int:
    c = _check_on_variety(form, w)
    return rank(form.F, tangent_system(form, c))


def tangent_space(form, w) -> np.ndarray:
    """Basis (rows) of the tangent space at ``w``."""
    c = _check_on_variety(form, w)
    return kernel_basis(form.F, tangent_system(form, c))


def tangent_dimension_multiset(form, variety: VarietySet | None = None) -> Counter:
    V = variety if variety is not None else build_variety(form)
    m = comb(form.n, 2)
    return Counter(m - rank(form.F, tangent_system(form, c)) for c in V.coords)


def variety_dimension(form, variety: VarietySet | None = None) -> int:
    """Projective dimension of the (constant) tangent spaces."""
    ms = tangent_dimension_multiset(form, variety)
    if len(ms) != 1:
        raise NonConstantTangentDimension(ms)
    return next(iter(ms)) - 1


# -- equation emission ------------------------------------------------------------


def _linear_forms_matrix(F: FieldCtx, n: int, left, right) -> np.ndarray:
    """``(n, n, m)``: coefficient of x_v in entry (k, h) of ``left X right``."""
    B = _basis_matrices(F, n)
    out = np.stack([F.matmul(F.matmul(left, B[t]), right) for t in range(len(B))], axis=-1)
    return out


def _product_polys(F: FieldCtx, P, Q, sigma_left: bool) -> list[list[Poly]]:
    """Entry polynomials of the product of two linear-form matrices."""
    n = P.shape[0]
    T = F.sum(F.mul(P[:, None, :, :, None], np.transpose(Q, (1, 0, 2))[None, :, :, None, :]), axis=2)
    return [[Poly.quadratic(F, T[k, h], sigma_left) for h in range(n)] for k in range(n)]


def _matrix_entry_polys(form) -> tuple[list[Poly], bool]:
    """Raw entry polynomials of the defining matrix equation, row-major order."""
    F, n = form.F, form.n
    I = np.eye(n, dtype=np.int64)
    if isinstance(form, QuadForm):
        if F.p != 2:
            return _matrix_entry_polys(form.polar)
        P = form.phi
        left = _linear_forms_matrix(F, n, P, P)  # Phi X Phi
        right = _linear_forms_matrix(F, n, I, I)
        ent = _product_polys(F, left, right, False)
        return [p for row in ent for p in row], False
    f = form
    if not f.is_degenerate:
        # X^sigma Phi X
        left = _linear_forms_matrix(F, n, I, f.phi)
        right = _linear_forms_matrix(F, n, I, I)
        sig = not F.sigma_is_identity
        ent = _product_polys(F, left, right, sig)
        return [p for row in ent for p in row], sig
    if f.is_alternating and F.sigma_is_identity:
        left = _linear_forms_matrix(F, n, f.phi_sigma, f.phi)
        right = _linear_forms_matrix(F, n, I, I)
        ent = _product_polys(F, left, right, False)
        return [p for row in ent for p in row], False
    raise UnsupportedCombination("variety equations need a nondegenerate or alternating form")


def _column_polys(q: QuadForm) -> list[Poly]:
    F, n = q.F, q.n
    B = _basis_matrices(F, n)  # (m, n, n)
    out = []
    U = q.upper
    for k in range(n):
        col = B[:, :, k].T  # (n, m): coefficient of x_v in X[i, k]
        C = np.zeros((len(B), len(B)), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                if U[i, j]:
                    C = F.add(C, F.mul(U[i, j], F.mul(col[i][:, None], col[j][None, :])))
        out.append(Poly.quadratic(F, C))
    return out


def _grassmann_polys(F: FieldCtx, n: int) -> list[Poly]:
    W = wedge_index(n)
    m = W.dim
    P = W.position
    out = []
    minus = int(F.neg(1))
    for i, j, k, h in combinations(range(n), 4):
        t = {}
        for (a, b), c in (((P(i, j), P(k, h)), 1), ((P(i, k), P(j, h)), minus), ((P(i, h), P(j, k)), 1)):
            mono = tuple(sorted((a, b)))
            t[mono] = int(F.add(t.get(mono, 0), c))
        out.append(Poly(F, m, t))
    return out


def _linear_rows(F: FieldCtx, S) -> list[Poly]:
    R, r, _ = rref(F, S)
    return [Poly.linear(F, row) for row in R[:r]]


def emit_equations(form, which: str = "variety", point=None) -> EqnSystem:
    """Polynomial generators for ``which`` in {grassmann, variety, radical_star, tangent}."""
    F, n = form.F, form.n
    m = comb(n, 2)
    names = variable_names(n)
    sysm = EqnSystem(F, n, names)
    grass = _grassmann_polys(F, n)
    if which == "grassmann":
        sysm.groups.append(EqnGroup("grassmann", grass))
        return sysm
    if which == "tangent":
        if point is None:
            raise UnsupportedCombination("tangent emission needs a point")
        c = _check_on_variety(form, point)
        sysm.groups.append(EqnGroup("tangent", _linear_rows(F, tangent_system(form, c))))
        return sysm
    if which == "radical_star":
        if isinstance(form, QuadForm):
            raise UnsupportedCombination("radical_star is defined for sesquilinear forms")
        S = _linear_system(F, n, lambda X: F.matmul(F.matmul(form.phi, X), form.phi_sigma))
        sysm.groups.append(EqnGroup("radical", _linear_rows(F, S)))
        sysm.groups.append(EqnGroup("grassmann", grass))
        return sysm
    if which != "variety":
        raise UnsupportedCombination(f"unknown equation kind {which!r}")

    raw, sig = _matrix_entry_polys(form)
    cols = _column_polys(form) if isinstance(form, QuadForm) and F.p == 2 else []
    if sig:
        # sigma-monomials: no linear extraction, formal independence only
        sysm.groups.append(EqnGroup("matrix", greedy_independent(F, raw)))
        sysm.groups.append(EqnGroup("grassmann", greedy_independent(F, grass)))
        return sysm
    lin = linear_part(F, raw + cols + grass, m)
    mult = linear_multiples(F, lin, m)
    quad = greedy_independent(F, raw, mult)
    sysm.groups.append(EqnGroup("matrix", [L.monic() for L in lin] + quad))
    if cols:
        sysm.groups.append(EqnGroup("columns", greedy_independent(F, cols, mult + quad)))
    base = mult + quad + (sysm.groups[-1].polys if cols else [])
    implied = all(in_span(F, base, g) for g in grass)
    sysm.groups.append(EqnGroup("grassmann", grass, implied))
    return sysm


# -- solution-set verification ----------------------------------------------------------


def _matrix_residual(F, fn, Xs) -> np.ndarray:
    """Boolean mask: ``fn(X) == O`` for each matrix of a batch."""
    return ~fn(Xs).reshape(len(Xs), -1).any(axis=1)


def _isotropic_or_radical(form: SesquiForm, Xs):
    F = form.F
    mm = F.matmul
    return mm(mm(mm(form.phi_sigma, F.sigma(Xs)), form.phi), Xs)


def _isotropic_nondegenerate(form: SesquiForm, Xs):
    F = form.F
    return F.matmul(F.matmul(F.sigma(Xs), form.phi), Xs)


def _meets_radical_matrix(form: SesquiForm, Xs):
    F = form.F
    return F.matmul(F.matmul(form.phi, Xs), form.phi_sigma)


def _chi_system_mask(q: QuadForm, V) -> np.ndarray:
    F = q.F
    Xs = alpha_batch(F, V)
    P = q.phi
    ok = _matrix_residual(F, lambda X: F.matmul(F.matmul(F.matmul(P, X), P), X), Xs)
    colv = q.value(np.transpose(Xs, (0, 2, 1)))  # (N, n)
    return ok & ~colv.any(axis=1)


def _witness(F, coords, mask_a, mask_b) -> list[str]:
    diff = np.nonzero(mask_a != mask_b)[0][:3]
    return [",".join(F.format(c) for c in coords[i]) for i in diff]


def verify_solution_set(form, ambient_cap: int = 200_000) -> dict:
    """Compare ground-field solution sets of the matrix systems with the enumerated sets.

    Every check entry is ``{"pass": bool, "witnesses": [...]}``.
    """
    F, n = form.F, form.n
    G = grassmann_variety(F, n)
    Xs = alpha_batch(F, G.coords)
    report: dict = {"checks": {}}
    checks = report["checks"]

    def put(name, mask, target):
        checks[name] = {"pass": bool(np.array_equal(mask, target)), "witnesses": _witness(F, G.coords, mask, target)}

    if isinstance(form, QuadForm) and F.p == 2:
        Vset = build_variety(form)
        target = np.array([tuple(c) in Vset.points for c in G.coords.tolist()])
        put("chi_system_and_grassmann", _chi_system_mask(form, G.coords), target)
        # ambient check: does the chi system alone imply the Grassmann relations
        m = comb(n, 2)
        if (F.q**m - 1) // (F.q - 1) <= ambient_cap:
            Pts = enumerate_points(F, m)
            sol = Pts[_chi_system_mask(form, Pts)]
            bad = grassmann_residuals(F, sol).any(axis=1)
            checks["chi_system_implies_grassmann"] = {
                "pass": not bool(bad.any()),
                "witnesses": [",".join(F.format(c) for c in r) for r in sol[bad][:3]],
            }
    else:
        f = form.polar if isinstance(form, QuadForm) else form
        Vset = build_variety(f)
        Rset, _ = radical_star(f)
        inG = np.array([tuple(c) in Vset.points for c in G.coords.tolist()])
        inR = np.array([tuple(c) in Rset.points for c in G.coords.tolist()]) if len(Rset) else np.zeros(len(G), bool)
        put("isotropic_or_radical_system_is_G_union_R", _matrix_residual(F, lambda X: _isotropic_or_radical(f, X), Xs), inG | inR)
        put("radical_system_is_R", _matrix_residual(F, lambda X: _meets_radical_matrix(f, X), Xs), inR)
        if not f.is_degenerate:
            put("isotropy_system_is_G", _matrix_residual(F, lambda X: _isotropic_nondegenerate(f, X), Xs), inG)
    report["pass"] = all(c["pass"] for c in checks.values())
    return report


# -- residue sections ----------------------------------------------------------------------


@dataclass
class ResidueSection:
    points: np.ndarray
    span: np.ndarray
    star_dim: int
    shape: str
    equations_agree: bool | None = None

    @property
    def span_dim(self) -> int:
        return int(self.span.shape[0])

    def __len__(self) -> int:
        return len(self.points)


def _plane_coords(F: FieldCtx, pts, basis) -> np.ndarray:
    """Coordinates of points w.r.t. an RREF basis (read at the pivot columns)."""
    _, _, piv = rref(F, basis)
    return normalize_rows(F, pts[:, piv])


def _sym_monomials(d: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(d), 2))


def quadric_through(F: FieldCtx, P, nonsingular: bool = True, cap: int = 4096) -> np.ndarray | None:
    """Upper-triangular matrix of a quadratic form whose zero set is exactly ``P``.

    ``P`` holds normalized coordinate rows of a spanning point set.  The candidate
    forms are all nonzero members of the space of quadrics through ``P``; ``None``
    when no candidate (or more than ``cap`` of them) qualifies.
    """
    P = np.asarray(P, dtype=np.int64)
    d = P.shape[1]
    F0 = F.with_sigma(0)
    monos = _sym_monomials(d)
    M = np.stack([F.mul(P[:, a], P[:, b]) for a, b in monos], axis=1)
    K = kernel_basis(F, M)
    if K.shape[0] == 0 or F.q ** K.shape[0] > cap:
        return None
    allp = enumerate_points(F, d)
    AM = np.stack([F.mul(allp[:, a], allp[:, b]) for a, b in monos], axis=1)
    target = {tuple(r) for r in P.tolist()}
    for coeff in product(range(F.q), repeat=K.shape[0]):
        if not any(coeff):
            continue
        c = F.sum(F.mul(np.array(coeff, dtype=np.int64)[:, None], K), axis=0)
        z = allp[F.dot(AM, c[None, :]) == 0]
        if {tuple(r) for r in z.tolist()} != target:
            continue
        U = np.zeros((d, d), dtype=np.int64)
        for co, (a, b) in zip(c, monos):
            U[a, b] = co
        if nonsingular:
            try:
                QuadForm(F0, U)
            except SingularQuadForm:
                continue
        return U
    return None


def _is_baer_subline(F: FieldCtx, P) -> bool:
    if F.k % 2 or F.sigma_is_identity or len(P) < 3:
        return False
    q0 = F.sqrt_q
    if len(P) != q0 + 1:
        return False
    a, b, c = P[0], P[1], P[2]
    # write c = s a + t b, rescale so c = a + b
    sol = kernel_basis(F, np.stack([a, b, c], axis=1))
    if sol.shape[0] != 1:
        return False
    s, t, u = sol[0]
    a2 = F.mul(a, F.neg(F.div(s, u)))
    b2 = F.mul(b, F.neg(F.div(t, u)))
    sub = F.subfield_fixed_by_sigma
    cand = normalize_rows(F, F.add(a2[None, :], F.mul(sub[:, None], b2[None, :])))
    cand = np.vstack([cand, normalize(F, b2)[None, :]])
    return {tuple(r) for r in cand.tolist()} == {tuple(r) for r in P.tolist()}


def _is_unital(F: FieldCtx, P) -> bool:
    if F.sigma_is_identity or P.shape[1] != 3:
        return False
    q0 = F.sqrt_q
    if len(P) != q0**3 + 1:
        return False
    lines = enumerate_points(F, 3)  # dual coordinates
    meet = (F.matmul(P, lines.T) == 0).sum(axis=0)
    return bool(np.isin(meet, [1, q0 + 1]).all())


def classify_point_set(F: FieldCtx, pts, span=None) -> str:
    """Geometric shape of a point set inside its span."""
    pts = np.asarray(pts, dtype=np.int64)
    if len(pts) == 0:
        return "empty"
    span = span_basis(F, pts) if span is None else span
    s = span.shape[0]
    P = _plane_coords(F, pts, span)
    if len(pts) == (F.q**s - 1) // (F.q - 1):
        return "full-line" if s == 2 else "full-subspace"
    if s == 2 and _is_baer_subline(F, P):
        return "baer-subline"
    if s == 3 and len(pts) == F.q + 1 and quadric_through(F, P) is not None:
        return "conic"
    if s == 3 and _is_unital(F, P):
        return "unital"
    if s == 4 and len(pts) == F.q**2 + 1 and quadric_through(F, P) is not None:
        return "elliptic-quadric"
    return "degenerate"


def _isotropic_point(form, a) -> bool:
    if isinstance(form, QuadForm):
        return int(form.value(a)) == 0
    return int(form.value(a, a)) == 0


def _residue_by_equations(form, a, variety: VarietySet) -> bool:
    """Cross-check with the reduced description after moving ``a`` to the last basis vector."""
    F, n = form.F, form.n
    # basis change M with last column a
    cols = [a]
    for e in np.eye(n, dtype=np.int64):
        if rank(F, np.array(cols + [e])) > len(cols):
            cols.append(e)
        if len(cols) == n:
            break
    M = np.array(cols[1:] + [cols[0]], dtype=np.int64).T
    hat = enumerate_points(F, n - 1)
    if isinstance(form, QuadForm):
        U = F.matmul(F.matmul(M.T, form.upper), M)
        Phi = F.add(U, U.T)
        v = Phi[: n - 1, n - 1]
        U0 = np.triu(F.add(U, np.tril(U, -1).T))[: n - 1, : n - 1]
        t = F.matmul(hat[:, None, :], U0)[:, 0, :]
        ok = (F.dot(hat, v) == 0) & (F.dot(t, hat) == 0)
    else:
        Phi = F.matmul(F.matmul(F.sigma(M).T, form.phi), M)
        v = Phi[: n - 1, n - 1]
        P0 = Phi[: n - 1, : n - 1]
        hs = F.sigma(hat)
        t = F.matmul(hs[:, None, :], P0)[:, 0, :]
        ok = (F.dot(F.sigma(v)[None, :], hat) == 0) & (F.dot(t, hat) == 0)
    sel = hat[ok]
    x = F.matmul(np.hstack([sel, np.zeros((len(sel), 1), dtype=np.int64)]), M.T)
    W = wedge_index(n)
    ab = np.broadcast_to(a, x.shape)
    p = normalize_rows(F, F.sub(F.mul(x[:, W.I], ab[:, W.J]), F.mul(x[:, W.J], ab[:, W.I])))
    return {tuple(r) for r in p.tolist()} == {tuple(r) for r in _star_members(F, variety, a).tolist()}


def _star_members(F, variety: VarietySet, a) -> np.ndarray:
    S = star_system(F, a)
    C = variety.coords
    return C[~F.matmul(C, S.T).any(axis=1)]


def residue_section(form, a, variety: VarietySet | None = None) -> ResidueSection:
    """The variety points on lines through ``[a]``, their span and shape."""
    F = form.F
    a = np.asarray(a, dtype=np.int64)
    if not a.any() or not _isotropic_point(form, a):
        raise PointNotIsotropic("the point is not isotropic/singular")
    V = variety if variety is not None else build_variety(form)
    pts = _star_members(F, V, a)
    span = span_basis(F, pts) if len(pts) else np.zeros((0, V.coords.shape[1]), dtype=np.int64)
    shape = classify_point_set(F, pts, span) if len(pts) else "empty"
    agree = _residue_by_equations(form, a, V)
    return ResidueSection(pts, span, form.n - 1, shape, agree)
