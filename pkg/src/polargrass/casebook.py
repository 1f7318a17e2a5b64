"""The six worked geometries, each rebuilt from its displayed Gram or quadratic
form and checked against a table of expected integers and shape tags.

A report is plain JSON with a versioned ``schema`` key; the text table printed
by the CLI is derived from the JSON and nothing else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable

import numpy as np

from .embeddings import (
    Geometry,
    PointEmbedding,
    check_embedding,
    check_quotient,
    conic_nucleus,
    dual_geometry,
    fit_projection,
    grassmann_embed,
    hull,
    polar_geometry,
    veronese_embedding,
    veronese_map,
)
from .forms import QuadForm, SesquiForm, witt_index
from .gfield import FieldCtx, make_field
from .linalg import intersect, kernel_basis, normalize, normalize_rows, rank, same_span, span_basis
from .varieties import (
    NonConstantTangentDimension,
    VarietySet,
    build_variety,
    classify_point_set,
    emit_equations,
    residue_section,
    span_dimension,
    tangent_rank,
    tangent_system,
    variety_dimension,
)
from .wedge import (
    enumerate_lines,
    enumerate_points,
    grassmann_residuals,
    line_points,
    lines_plucker,
    plucker_coords,
    wedge_index,
)

__all__ = [
    "SCHEMA",
    "CASES",
    "UnsupportedField",
    "CaseSpec",
    "Claim",
    "CaseReport",
    "field_for",
    "case_form",
    "run_case",
    "run_char2_extras",
    "projection_suite",
    "hull_suite",
    "hull_report",
    "sweep",
    "klein_correspondence",
]

SCHEMA = "polargrass.case-report/1"


class UnsupportedField(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return p, k
    raise UnsupportedField(f"{q} is not a prime power")


def field_for(q: int, hermitian: bool = False) -> FieldCtx:
    """GF(q), or GF(q^2) with the involution t -> t^q when ``hermitian``."""
    p, k = _prime_power(q)
    try:
        if hermitian:
            return make_field(p, 2 * k, sigma_exp=k)
        return make_field(p, k)
    except ValueError as exc:
        raise UnsupportedField(str(exc)) from None


def _nonsquare(F: FieldCtx) -> int:
    sq = {int(F.mul(x, x)) for x in F.elements()}
    return next(int(x) for x in F.nonzero() if int(x) not in sq)


def _irreducible_lambda(F: FieldCtx) -> int:
    """Smallest ``lam`` with ``t^2 + t + lam`` irreducible over ``F``."""
    e = F.elements()
    vals = F.add(F.mul(e, e), e)
    return next(int(l) for l in e if not (F.add(vals, l) == 0).any())


def _hermitian_t(F: FieldCtx) -> int:
    """Smallest ``t != 1`` with ``t^(q+1) = -1`` in GF(q^2)."""
    q0 = F.sqrt_q
    m1 = int(F.neg(1))
    return next(int(t) for t in F.nonzero() if int(F.pow(int(t), q0 + 1)) == m1 and int(t) != 1)


# -- forms ----------------------------------------------------------------------------------


def _hyperbolic_pairs(F: FieldCtx, n: int, pairs: int) -> np.ndarray:
    P = np.zeros((n, n), dtype=np.int64)
    for i in range(pairs):
        P[2 * i, 2 * i + 1] = P[2 * i + 1, 2 * i] = 1
    return P


def case_form(name: str, F: FieldCtx):
    """The form of a case over ``F`` exactly as displayed."""
    odd = F.p != 2
    if name == "symplectic":
        if odd:
            P = _hyperbolic_pairs(F, 5, 2)
            P[4, 4] = 1
            return SesquiForm(F, P)
        U = np.zeros((5, 5), dtype=np.int64)
        U[0, 1] = U[2, 3] = U[4, 4] = 1
        return QuadForm(F, U)
    if name == "parabolic":
        m1 = int(F.neg(1))
        P = np.zeros((4, 4), dtype=np.int64)
        P[0, 2] = P[1, 3] = 1
        P[2, 0] = P[3, 1] = m1
        return SesquiForm(F, P, m1)
    if name == "hermitian_surface":
        if odd:
            P = _hyperbolic_pairs(F, 6, 2)
            P[4, 4] = 1
            P[5, 5] = int(F.neg(_nonsquare(F)))
            return SesquiForm(F, P)
        U = np.zeros((6, 6), dtype=np.int64)
        U[0, 1] = U[2, 3] = U[4, 5] = U[4, 4] = 1
        U[5, 5] = _irreducible_lambda(F)
        return QuadForm(F, U)
    if name == "elliptic":
        return SesquiForm(F, np.eye(4, dtype=np.int64))
    if name == "h4":
        return SesquiForm(F, np.eye(5, dtype=np.int64))
    if name == "dual_grid":
        U = np.zeros((4, 4), dtype=np.int64)
        U[0, 1] = U[2, 3] = 1
        return QuadForm(F, U)
    raise KeyError(name)


def _e(n: int, *idx) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    for i in idx:
        v[i] = 1
    return v


def _hermitian_pair(F: FieldCtx, n: int) -> tuple[np.ndarray, np.ndarray]:
    t = _hermitian_t(F)
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[0], a[1], b[2], b[3] = 1, t, 1, t
    return a, b


def _tangent_pair(name: str, F: FieldCtx, n: int) -> tuple[np.ndarray, np.ndarray]:
    if name in ("elliptic", "h4"):
        return _hermitian_pair(F, n)
    if name == "parabolic":
        return _e(n, 0), _e(n, 1)
    return _e(n, 0), _e(n, 2)


# -- reports ------------------------------------------------------------------------------


@dataclass
class Claim:
    key: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {"key": self.key, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class CaseReport:
    case: str
    field: str
    q: int
    values: dict = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, key: str, expected, actual) -> None:
        self.values[key] = actual
        self.claims.append(Claim(key, expected, actual))

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "case": self.case,
            "field": self.field,
            "q": self.q,
            "values": self.values,
            "claims": [c.as_dict() for c in self.claims],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def table(self) -> str:
        return render_table(self.as_dict())


def render_table(d: dict) -> str:
    head = f"{d['case']}  GF({d['q']})  field {d['field']}"
    rows = [head, "-" * len(head)]
    for c in d["claims"]:
        mark = "ok  " if c["pass"] else "FAIL"
        rows.append(f"{mark} {c['key']:<34} expected {c['expected']!s:<18} got {c['actual']}")
    rows.append("PASS" if d["pass"] else "FAIL")
    return "\n".join(rows)


@dataclass(frozen=True)
class CaseSpec:
    name: str
    hermitian: bool
    qs: tuple[int, ...]
    default_q: int
    run: Callable[["CaseSpec", int], CaseReport]


def _points_count(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def _residue_shapes(form, V: VarietySet) -> tuple[set, set, set, bool]:
    """Shapes, sizes and span dims of the residue sections at every isotropic point."""
    F = form.F
    P = enumerate_points(F, form.n)
    P = P[form.isotropic_points_mask(P)]
    shapes, sizes, spans, agree = set(), set(), set(), True
    for a in P:
        r = residue_section(form, a, V)
        shapes.add(r.shape)
        sizes.add(len(r))
        spans.add(r.span_dim)
        agree &= bool(r.equations_agree)
    return shapes, sizes, spans, agree


def _one(s: set):
    return next(iter(s)) if len(s) == 1 else sorted(s)


def _common(report: CaseReport, name: str, F: FieldCtx, form, exp: dict) -> VarietySet:
    n = form.n
    report.claim("witt_index", 2, witt_index(form))
    V = build_variety(form)
    report.claim("points", exp["points"], len(V))
    report.claim("span_dim", exp["span_dim"], span_dimension(V))
    a, b = _tangent_pair(name, F, n)
    w = normalize(F, plucker_coords(F, a, b))
    report.values["tangent_point"] = [F.format(c) for c in w]
    r = tangent_rank(form, w)
    report.claim("tangent_rank", exp["tangent_rank"], r)
    report.claim("tangent_dim", exp["tangent_dim"], comb(n, 2) - r)
    try:
        vd: Any = variety_dimension(form, V)
    except NonConstantTangentDimension as exc:
        vd = {str(k): v for k, v in sorted(exc.multiset.items())}
    report.claim("variety_dim", exp["variety_dim"], vd)
    shapes, sizes, spans, agree = _residue_shapes(form, V)
    report.claim("residue_shape", exp["residue_shape"], _one(shapes))
    report.claim("residue_points", exp["residue_points"], _one(sizes))
    report.claim("residue_span_dim", exp["residue_span_dim"], _one(spans))
    report.claim("residue_matches_reduced_equations", True, agree)
    return V


def _grassmann_check(report: CaseReport, form, exp: dict) -> tuple[PointEmbedding, Geometry]:
    g, pts = polar_geometry(form)
    e = PointEmbedding(g, form.F, pts)
    eg, d = grassmann_embed(e)
    chk = check_embedding(eg.geometry, eg)
    report.claim("egr_local_dim", exp["egr_local_dim"], chk.local_dim)
    report.claim("egr_axioms_hold", True, chk.ok)
    if "egr_full" in exp:
        report.claim("egr_full", exp["egr_full"], chk.full)
    shapes = {classify_point_set(form.F, eg.vectors[list(l)]) for l in eg.geometry.lines}
    report.claim("egr_line_image_shape", exp["egr_line_shape"], _one(shapes))
    return eg, g


def _run_symplectic(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q)
    form = case_form("symplectic", F)
    rep = CaseReport("symplectic", F.spec, q)
    exp = dict(
        points=(q + 1) * (q * q + 1),
        span_dim=10 if F.p != 2 else 9,
        tangent_rank=6,
        tangent_dim=4,
        variety_dim=3,
        residue_shape="conic",
        egr_line_shape="conic",
        residue_points=q + 1,
        residue_span_dim=3,
        egr_local_dim=2,
    )
    _common(rep, "symplectic", F, form, exp)
    _grassmann_check(rep, form, exp)
    if F.p == 2:
        ref = case_form("symplectic", field_for(3))
        rep.claim("tangent_system_matches_odd_char", True, _same_pattern(form, ref, (0, 2)))
    proj = projection_suite(q)
    rep.claim("pi_exists", True, proj["pi_exists"])
    rep.claim("pi_kernel_dim", 0 if F.p != 2 else 1, proj["pi_kernel_dim"])
    rep.claim("egr_image_is_variety", True, proj["egr_image_is_variety"])
    return rep


def _same_pattern(form, ref, idx) -> bool:
    """Compare tangent systems at e_i ^ e_j entrywise on their {0, +-1} pattern."""
    F, G = form.F, ref.F
    W = wedge_index(form.n)
    w = W.basis_vector(*idx)
    A = span_basis(F, tangent_system(form, w))
    B = span_basis(G, tangent_system(ref, w))
    if A.shape != B.shape:
        return False
    lift = lambda M, H: np.where(M == 0, 0, np.where(M == 1, 1, np.where(M == int(H.neg(1)), -1, 99)))
    return bool(np.array_equal(lift(A, F) % F.p, lift(B, G) % F.p))


def _run_parabolic(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q)
    form = case_form("parabolic", F)
    rep = CaseReport("parabolic", F.spec, q)
    rep.claim("witt_index", 2, witt_index(form))
    V = build_variety(form)
    rep.claim("points", (q + 1) * (q * q + 1), len(V))
    rep.claim("span_dim", 5, span_dimension(V))
    E = emit_equations(form)
    gens = E.generator_strings()
    rep.claim("generators", ["x_1_3 + x_2_4", "x_1_2*x_3_4 + x_1_3^2 + x_1_4*x_2_3"], gens)
    allp = enumerate_points(F, 6)
    sol = allp[E.satisfied(allp, generators_only=True)]
    rep.claim("generators_imply_grassmann", True, not grassmann_residuals(F, sol).any())
    rep.claim("generator_solutions_are_variety", True, {tuple(r) for r in sol.tolist()} == V.points)
    exp = dict(egr_local_dim=1, egr_full=True, egr_line_shape="full-line")
    eg, _ = _grassmann_check(rep, form, exp)
    R = eg.restricted()
    from .varieties import quadric_through

    rep.claim("egr_image_parabolic_quadric", True, quadric_through(F, R.vectors) is not None)
    return rep


def _run_hermitian_surface(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q)
    form = case_form("hermitian_surface", F)
    rep = CaseReport("hermitian_surface", F.spec, q)
    if F.p != 2:
        rep.values["eta"] = F.format(_nonsquare(F))
    else:
        rep.values["lambda"] = F.format(_irreducible_lambda(F))
    exp = dict(
        points=(q * q + 1) * (q**3 + 1),
        span_dim=15 if F.p != 2 else 14,
        tangent_rank=9,
        tangent_dim=6,
        variety_dim=5,
        residue_shape="elliptic-quadric",
        egr_line_shape="elliptic-quadric",
        residue_points=q * q + 1,
        residue_span_dim=4,
        egr_local_dim=3,
    )
    _common(rep, "hermitian_surface", F, form, exp)
    _grassmann_check(rep, form, exp)
    if F.p == 2:
        ref = case_form("hermitian_surface", field_for(3))
        rep.claim("tangent_system_matches_odd_char", True, _same_pattern(form, ref, (0, 2)))
    return rep


def _extension_solutions(form) -> int:
    """Number of points of PG(V^V) over the form's field solving X^sigma Phi X = O and the Plücker relations."""
    from .wedge import alpha_batch

    F = form.F
    m = comb(form.n, 2)
    count = 0
    for block in _point_blocks(F, m):
        X = alpha_batch(F, block)
        Y = F.matmul(F.matmul(F.sigma(X), form.phi), X)
        ok = ~Y.reshape(len(block), -1).any(axis=1)
        ok &= ~grassmann_residuals(F, block).any(axis=1)
        count += int(ok.sum())
    return count


def _point_blocks(F: FieldCtx, m: int, size: int = 1 << 15):
    P = enumerate_points(F, m)
    for s in range(0, len(P), size):
        yield P[s : s + size]


def _run_elliptic(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q, hermitian=True)
    form = case_form("elliptic", F)
    rep = CaseReport("elliptic", F.spec, q)
    rep.values["t"] = F.format(_hermitian_t(F))
    exp = dict(
        points=(q + 1) * (q**3 + 1),
        span_dim=6,
        tangent_rank=5,
        tangent_dim=1,
        variety_dim=0,
        residue_shape="baer-subline",
        egr_line_shape="baer-subline",
        residue_points=q + 1,
        residue_span_dim=2,
        egr_local_dim=1,
        egr_full=False,
    )
    V = _common(rep, "elliptic", F, form, exp)
    _grassmann_check(rep, form, exp)
    rep.claim("extension_solution_count", len(V), _extension_solutions(form))
    return rep


def _run_h4(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q, hermitian=True)
    form = case_form("h4", F)
    rep = CaseReport("h4", F.spec, q)
    rep.values["t"] = F.format(_hermitian_t(F))
    exp = dict(
        points=(q**3 + 1) * (q**5 + 1),
        span_dim=10,
        tangent_rank=7,
        tangent_dim=3,
        variety_dim=2,
        residue_shape="unital",
        egr_line_shape="unital",
        residue_points=q**3 + 1,
        residue_span_dim=3,
        egr_local_dim=2,
    )
    _common(rep, "h4", F, form, exp)
    _grassmann_check(rep, form, exp)
    return rep


def _regulus_split(F: FieldCtx, V: VarietySet) -> list[np.ndarray]:
    """Split the lines into classes of pairwise disjoint lines."""
    L = V.lines
    N = len(L)
    disjoint = np.zeros((N, N), dtype=bool)
    for i in range(N):
        for j in range(N):
            disjoint[i, j] = i != j and rank(F, np.vstack([L[i], L[j]])) == 4
    comp = [-1] * N
    c = 0
    for s in range(N):
        if comp[s] >= 0:
            continue
        stack, comp[s] = [s], c
        while stack:
            u = stack.pop()
            for v in np.nonzero(disjoint[u])[0]:
                if comp[v] < 0:
                    comp[v] = c
                    stack.append(int(v))
        c += 1
    return [V.coords[[i for i in range(N) if comp[i] == k]] for k in range(c)]


def _run_dual_grid(spec: CaseSpec, q: int) -> CaseReport:
    F = field_for(q)
    form = case_form("dual_grid", F)
    rep = CaseReport("dual_grid", F.spec, q)
    V = build_variety(form)
    rep.claim("points", 2 * (q + 1), len(V))
    parts = _regulus_split(F, V)
    rep.claim("components", 2, len(parts))
    rep.claim("component_shapes", ["conic", "conic"], [classify_point_set(F, p) for p in parts])
    rep.claim("component_span_dims", [3, 3], [rank(F, p) for p in parts])
    meet = intersect(F, parts[0], parts[1]) if len(parts) == 2 else np.zeros((0, 6))
    rep.claim("plane_meet_dim", 0 if F.p != 2 else 1, int(meet.shape[0]))
    rep.claim("span_dim", 6 if F.p != 2 else 5, span_dimension(V))
    if F.p == 2 and len(parts) == 2:
        n1, n2 = (conic_nucleus(F, p) for p in parts)
        rep.claim("common_nucleus", True, bool(np.array_equal(n1, n2)))
        rep.claim("planes_meet_in_nucleus", True, meet.shape[0] == 1 and bool(np.array_equal(normalize(F, meet[0]), n1)))
    return rep


CASES: dict[str, CaseSpec] = {
    s.name: s
    for s in (
        CaseSpec("symplectic", False, (2, 3, 4, 5), 3, _run_symplectic),
        CaseSpec("parabolic", False, (2, 3, 4, 5), 2, _run_parabolic),
        CaseSpec("hermitian_surface", False, (2, 3, 4), 3, _run_hermitian_surface),
        CaseSpec("elliptic", True, (2, 3), 2, _run_elliptic),
        CaseSpec("h4", True, (2,), 2, _run_h4),
        CaseSpec("dual_grid", False, (2, 3, 4, 5), 2, _run_dual_grid),
    )
}


def run_case(name: str, q: int | None = None) -> CaseReport:
    if name not in CASES:
        raise KeyError(f"unknown case {name!r}; choose from {', '.join(CASES)}")
    spec = CASES[name]
    q = spec.default_q if q is None else q
    if q not in spec.qs:
        raise UnsupportedField(f"case {name} supports q in {spec.qs}")
    return spec.run(spec, q)


# -- the symplectic quadrangle, its dual and the two induced embeddings ------------------------


@dataclass
class KleinCorrespondence:
    F: FieldCtx
    geometry: Geometry  # W(3, q): points of PG(3, q), totally isotropic lines
    points: np.ndarray  # coordinates in V(4)
    dual_embedding: PointEmbedding  # lines of W(3, q) into V(5)
    form: Any  # the form on V(5) whose singular points are the image


def klein_correspondence(F: FieldCtx) -> KleinCorrespondence:
    """W(3, q) with the projective embedding of its dual onto the parabolic quadric.

    A totally isotropic line with coordinates (x12, x13, x14, x23, x24, x34) goes
    to (h x12, x34, h x14, x23, x13), h = 1/2 in odd characteristic and 1 in even.
    """
    alt = case_form("parabolic", F)
    g, pts = polar_geometry(alt)
    dual = dual_geometry(g)
    W = plucker_by_line(F, g, pts)
    h = int(F.inv(F.from_int(2))) if F.p != 2 else 1
    img = np.stack([F.mul(h, W[:, 0]), W[:, 5], F.mul(h, W[:, 2]), W[:, 3], W[:, 1]], axis=1)
    return KleinCorrespondence(F, g, pts, PointEmbedding(dual, F, img), case_form("symplectic", F))


def plucker_by_line(F: FieldCtx, g: Geometry, pts) -> np.ndarray:
    L = np.array([pts[list(l[:2])] for l in g.lines], dtype=np.int64)
    return lines_plucker(F, L)


def projection_suite(q: int) -> dict:
    """Fit the projection from the Veronese embedding of W(3, q) onto the Grassmann one."""
    F = field_for(q)
    K = klein_correspondence(F)
    out: dict[str, Any] = {}
    image = {tuple(r) for r in K.dual_embedding.vectors.tolist()}
    sing = enumerate_points(F, 5)
    sing = sing[K.form.isotropic_points_mask(sing)]
    out["klein_image_is_quadric"] = image == {tuple(r) for r in sing.tolist()}
    egr, d = grassmann_embed(K.dual_embedding)
    out["egr_local_dim"] = d
    V = build_variety(K.form)
    out["egr_image_is_variety"] = {tuple(r) for r in egr.vectors.tolist()} == V.points
    ver = veronese_embedding(K.geometry, F, K.points)
    pi = fit_projection(ver, egr)
    out["pi_exists"] = pi is not None
    out["pi_kernel_dim"] = pi.kernel_dim if pi is not None else None
    out["_parts"] = (K, ver, egr, pi)
    return out


def _is_symplectic_copy(F: FieldCtx, Y, blocks) -> bool:
    """Whether points ``Y`` with lines ``blocks`` are W(3, q) inside their 4-space."""
    B = span_basis(F, Y)
    if B.shape[0] != 4:
        return False
    from .linalg import rref

    _, _, piv = rref(F, B)
    C = normalize_rows(F, Y[:, piv])
    if len({tuple(r) for r in C.tolist()}) != len(C) or len(C) != _points_count(F.q, 4):
        return False
    lines = []
    for blk in blocks:
        S = span_basis(F, C[list(blk)])
        if S.shape[0] != 2:
            return False
        lines.append(S)
    P = lines_plucker(F, np.array(lines, dtype=np.int64))
    H = kernel_basis(F, P)
    if H.shape[0] != 1:
        return False
    # the linear complex h . w = 0 is symplectic iff its anti-symmetric matrix is invertible
    from .wedge import alpha

    A = alpha(F, H[0])
    if rank(F, A) != 4:
        return False
    return len({tuple(r) for r in P.tolist()}) == (F.q + 1) * (F.q**2 + 1)


def run_char2_extras(q: int) -> CaseReport:
    """Nucleus, quotient and projection facts in characteristic 2."""
    F = field_for(q)
    if F.p != 2:
        raise UnsupportedField("characteristic 2 only")
    rep = CaseReport("char2_extras", F.spec, q)
    proj = projection_suite(q)
    K, ver, egr, pi = proj.pop("_parts")
    rep.claim("pi_kernel_dim", 1, proj["pi_kernel_dim"])
    g = K.geometry
    nuc_ver = np.array([conic_nucleus(F, ver.vectors[list(l)]) for l in g.lines])
    nuc_gr = np.array([conic_nucleus(F, egr.vectors[list(l)]) for l in g.lines])
    piN = normalize_rows(F, F.matmul(nuc_ver, pi.matrix.T))
    rep.claim("pi_maps_nuclei_to_nuclei", True, bool(np.array_equal(piN, nuc_gr)))
    rep.claim("kernel_is_nucleus_of_N", True, _kernel_in_span(F, pi.matrix, nuc_ver))
    blocks = [g.lines_through[p] for p in range(g.npoints)]
    rep.claim("pi_N_is_W3q", True, _is_symplectic_copy(F, piN, blocks))
    Kspan = span_basis(F, piN)
    rep.claim("K_dim", 4, int(Kspan.shape[0]))
    qc = check_quotient(egr, Kspan)
    rep.claim("K_quotient_valid", True, qc.ok)
    rep.claim("K_quotient_k", 1, qc.k)
    rep.claim("K_quotient_dim", 5, qc.quotient_dim)
    if qc.quotient is not None:
        rep.claim("K_quotient_local_dim", 1, check_embedding(g, qc.quotient).local_dim)
    rep.values.update(_veronese_nuclei(F))
    rep.claims.extend(
        Claim(k, v, rep.values[k])
        for k, v in (("N_dim", 10), ("N_H_dim", 9), ("N_Gamma_equals_N_H", True), ("quotient_proj_dim", 4), ("nu_isomorphic_to_plucker", True))
    )
    return rep


def _kernel_in_span(F: FieldCtx, M, N) -> bool:
    ker = kernel_basis(F, M)
    Ns = span_basis(F, N)
    return ker.shape[0] == 1 and rank(F, np.vstack([Ns, ker])) == Ns.shape[0]


def _veronese_nuclei(F: FieldCtx) -> dict:
    """N, N_H and the nucleus map for the quadric Veronese variety of PG(4, q)."""
    n = 5
    L = enumerate_lines(F, n)
    nuclei = np.array([conic_nucleus(F, veronese_map(F, line_points(F, l))) for l in L])
    N = span_basis(F, nuclei)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    h = np.zeros(len(pairs), dtype=np.int64)
    for ij in ((0, 1), (2, 3), (4, 4)):
        h[pairs.index(ij)] = 1
    H = kernel_basis(F, h[None, :])
    NH = intersect(F, N, H)
    chi = case_form("symplectic", F)
    g, pts = polar_geometry(chi)
    ev = veronese_embedding(g, F, pts)
    NG = span_basis(F, [conic_nucleus(F, ev.vectors[list(l)]) for l in g.lines])
    qc = check_quotient(ev, NH)
    nu = PointEmbedding(None, F, nuclei)
    iota = PointEmbedding(None, F, lines_plucker(F, L))
    fit = fit_projection(iota, nu)
    return {
        "N_dim": int(N.shape[0]),
        "N_H_dim": int(NH.shape[0]),
        "ver_spans_H": same_span(F, ev.vectors, H),
        "N_Gamma_equals_N_H": same_span(F, NG, NH),
        "quotient_proj_dim": qc.quotient_dim - 1,
        "quotient_valid": qc.ok,
        "nu_isomorphic_to_plucker": fit is not None and fit.kernel_dim == 0,
    }


def hull_suite(q: int) -> dict:
    """Hull of the Veronese embedding of W(3, q) and its idempotence."""
    F = field_for(q)
    alt = case_form("parabolic", F)
    g, pts = polar_geometry(alt)
    ev = veronese_embedding(g, F, pts)
    h = hull(ev)
    h2 = hull(h.embedding)
    return {
        "q": q,
        "embedding_dim": ev.span_dim,
        "hull_dim": h.dim,
        "projection_ok": h.check_projection(ev),
        "idempotent": h2.dim == h.dim,
    }


def hull_report(q: int) -> CaseReport:
    F = field_for(q)
    h = hull_suite(q)
    rep = CaseReport("hull", F.spec, q)
    rep.claim("embedding_dim", 10, h["embedding_dim"])
    if q >= 5 and F.p != 2:
        rep.claim("hull_dim", 10, h["hull_dim"])
    elif F.p == 2:
        rep.claim("hull_dim_exceeds_embedding", True, h["hull_dim"] > 10)
        rep.values["hull_dim"] = h["hull_dim"]
    else:
        rep.values["hull_dim"] = h["hull_dim"]
    rep.claim("projection_reproduces_embedding", True, h["projection_ok"])
    rep.claim("hull_idempotent", True, h["idempotent"])
    return rep


def sweep(quick: bool = False):
    """Every case at every supported q, then the even-characteristic and hull reports."""
    for name, spec in CASES.items():
        for q in (spec.default_q,) if quick else spec.qs:
            yield run_case(name, q)
    for q in (2,) if quick else (2, 4):
        yield run_char2_extras(q)
    for q in (4,) if quick else (4, 5):
        yield hull_report(q)
