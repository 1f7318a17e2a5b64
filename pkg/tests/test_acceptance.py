"""Acceptance suite: sixteen numbered criteria, each an exact check.

Run under pytest for pass/fail per criterion, or directly with
``python3 tests/test_acceptance.py`` for the one-line-per-criterion summary.
The same summary is appended to the pytest terminal report.
"""

from __future__ import annotations

import sys
import time
from math import comb
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from families import char2_quadrics, span_family, trichotomy_family  # noqa: E402
from polargrass.casebook import (  # noqa: E402
    case_form,
    field_for,
    hull_suite,
    klein_correspondence,
    projection_suite,
    run_case,
    run_char2_extras,
)
from polargrass.embeddings import PointEmbedding, hull, polar_geometry  # noqa: E402
from polargrass.equations import parse_poly, variable_names  # noqa: E402
from polargrass.forms import SesquiForm  # noqa: E402
from polargrass.gfield import make_field  # noqa: E402
from polargrass.linalg import rank, rref, same_span  # noqa: E402
from polargrass.varieties import build_variety, emit_equations, span_dimension  # noqa: E402
from polargrass.wedge import (  # noqa: E402
    dual_incidence,
    enumerate_lines,
    enumerate_points,
    grassmann_residuals,
    grassmann_tangent,
    grassmann_tangent_system,
    line_points,
    plucker_coords,
    star_subspace,
    wedge_product,
)

CRITERIA: dict[int, tuple[str, object]] = {}
RESULTS: dict[int, tuple[bool, dict, float]] = {}


def criterion(num: int, title: str):
    def register(fn):
        CRITERIA[num] = (title, fn)
        return fn

    return register


def evaluate(num: int) -> tuple[bool, dict]:
    if num not in RESULTS:
        t0 = time.perf_counter()
        checks = CRITERIA[num][1]()
        RESULTS[num] = (all(checks.values()), checks, time.perf_counter() - t0)
    ok, checks, _ = RESULTS[num]
    return ok, checks


def summary_line(num: int) -> str:
    ok, checks, secs = RESULTS[num]
    title = CRITERIA[num][0]
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title} ({secs:.1f}s)"
    failed = [k for k, v in checks.items() if not v]
    if failed:
        line += "  failing: " + ", ".join(failed)
    return line


# -- 1 to 5: Grassmann structure, incidence, isotropy, spans ---------------------------------


@criterion(1, "Grassmann tangent and star dimensions, n = 4..6, q = 2, 3")
def _grassmann_structure():
    out = {}
    for q in (2, 3):
        F = make_field(q)
        rng = np.random.default_rng(q)
        for n in (4, 5, 6):
            lines = enumerate_lines(F, n)
            pick = [lines[0], lines[-1]] + [lines[i] for i in rng.choice(len(lines), 6, replace=False)]
            ok = True
            for l in pick:
                a, b = l
                c = plucker_coords(F, a, b)
                Sa, sys_a = star_subspace(F, a)
                Sb, _ = star_subspace(F, b)
                T = grassmann_tangent(F, c)
                ok &= rank(F, grassmann_tangent_system(F, c)) == comb(n - 2, 2)
                ok &= T.shape[0] == 2 * n - 3
                ok &= rank(F, sys_a) == comb(n - 1, 2)
                ok &= Sa.shape[0] == n - 1
                ok &= same_span(F, T, np.vstack([Sa, Sb]))
            out[f"q{q}-n{n}"] = bool(ok)
    return out


def _contained(p: int, line, dual_line) -> bool:
    """Every vector of the line is killed by every functional of the dual line (prime field)."""
    return not (np.asarray(line) @ np.asarray(dual_line).T % p).any()


@criterion(2, "Dual-line incidence matrix test equals containment, all pairs, n = 4, q = 2, 3")
def _dual_incidence():
    out = {}
    for q, expected_lines in ((2, 35), (3, 130)):
        F = make_field(q)
        lines = enumerate_lines(F, 4)
        X = [wedge_product(F, l[0], l[1]) for l in lines]
        agree = all(
            dual_incidence(F, T, Xl) == _contained(q, l, dl)
            for dl, T in zip(lines, X)
            for l, Xl in zip(lines, X)
        )
        out[f"q{q}-line-count"] = len(lines) == expected_lines
        out[f"q{q}-all-pairs"] = agree
    return out


def _brute_radical(f: SesquiForm) -> set:
    F = f.F
    P = enumerate_points(F, f.n)
    E = np.eye(f.n, dtype=np.int64)
    vals = np.array([[f.value(p, e) for e in E] for p in P])
    return {tuple(p) for p in P[~vals.any(axis=1)].tolist()}


@criterion(3, "Matrix equation holds iff totally isotropic or meeting the radical, n = 4, 5, q = 2, 3")
def _trichotomy():
    out = {}
    for label, f in trichotomy_family():
        F = f.F
        rad = _brute_radical(f)
        ok = True
        for l in enumerate_lines(F, f.n):
            P = line_points(F, l)
            vals = np.asarray(f.value(P[:, None, :], P[None, :, :]))
            iso = not vals.any()
            meets = any(tuple(p) in rad for p in P.tolist())
            X = wedge_product(F, l[0], l[1])
            L = F.matmul(f.phi_sigma, F.sigma(X))
            eq = not F.matmul(F.matmul(L, f.phi), X).any()
            ok &= eq == (iso or meets)
        out[label] = bool(ok)
    return out


@criterion(4, "Span dimension is C(n,2) - 1 iff alternating, C(n,2) otherwise")
def _span_theorem():
    fam = span_family()
    out = {"family-size>=10": len(fam) >= 10}
    for label, f, expected in fam:
        F = f.F
        alt = f.eps == F.neg(1) and not np.diag(f.phi).any() and f.F.sigma_exp == 0
        d = span_dimension(build_variety(f))
        full = comb(f.n, 2)
        out[label] = d == expected and (d == full - 1) == alt and (alt or d == full)
    return out


@criterion(5, "Quadric lines and polar lines span the same subspace, char 2")
def _quadric_span():
    fam = char2_quadrics()
    out = {"family-size>=4": len(fam) >= 4}
    for label, chi in fam:
        F = chi.F
        A = rref(F, build_variety(chi).span_basis)[0]
        B = rref(F, build_variety(chi.polar).span_basis)[0]
        out[label] = bool(A.shape == B.shape and np.array_equal(A, B))
    return out


# -- 6 to 11: the six case studies ----------------------------------------------------------


def _values(name: str, q: int) -> tuple[dict, bool]:
    rep = run_case(name, q)
    return rep.values, rep.passed


@criterion(6, "Symplectic-type quadrangle, q = 2, 3, 4, 5")
def _symplectic():
    out = {}
    for q in (3, 5, 2, 4):
        v, passed = _values("symplectic", q)
        span = 10 if q % 2 else 9
        out[f"q{q}"] = passed and (
            v["span_dim"],
            v["tangent_rank"],
            v["tangent_dim"],
            v["variety_dim"],
            v["residue_shape"],
            v["residue_points"],
            v["egr_local_dim"],
            v["egr_axioms_hold"],
        ) == (span, 6, 4, 3, "conic", q + 1, 2, True)
    return out


LITERAL_PARABOLIC = ["x_1_3 + x_2_4", "x_1_4*x_2_3 + x_1_2*x_2_4 + x_1_3^2"]


@criterion(7, "Parabolic case: span 5, generators as listed, full 1-embedding")
def _parabolic():
    out = {}
    for q in (2, 3):
        F = field_for(q)
        form = case_form("parabolic", F)
        v, passed = _values("parabolic", q)
        names = variable_names(4)
        literal = [parse_poly(F, names, s) for s in LITERAL_PARABOLIC]
        emitted = emit_equations(form).generators()
        out[f"q{q}-case-report"] = passed and v["span_dim"] == 5
        out[f"q{q}-emitted-equals-listed"] = set(emitted) == set(literal)
        P = enumerate_points(F, 6)
        sol = P[np.logical_and.reduce([p.evaluate(P) == 0 for p in literal])]
        out[f"q{q}-listed-solutions-satisfy-plucker"] = not grassmann_residuals(F, sol).any()
        out[f"q{q}-full-1-embedding-on-parabolic-quadric"] = (
            v["egr_local_dim"] == 1 and v["egr_full"] and v["egr_image_parabolic_quadric"]
        )
    return out


@criterion(8, "Hermitian surface case, q = 2, 3, 4")
def _hermitian_surface():
    out = {}
    for q in (3, 2, 4):
        v, passed = _values("hermitian_surface", q)
        span = 15 if q % 2 else 14
        out[f"q{q}"] = passed and (
            v["tangent_rank"],
            v["tangent_dim"],
            v["variety_dim"],
            v["span_dim"],
            v["egr_local_dim"],
            v["egr_line_image_shape"],
        ) == (9, 6, 5, span, 3, "elliptic-quadric")
    out["q3-eta-is-2"] = _values("hermitian_surface", 3)[0]["eta"] == "2"
    return out


@criterion(9, "Elliptic case over GF(q^2), q = 2, 3")
def _elliptic():
    out = {}
    for q in (2, 3):
        v, passed = _values("elliptic", q)
        out[f"q{q}"] = passed and (
            v["tangent_rank"],
            v["tangent_dim"],
            v["variety_dim"],
            v["egr_local_dim"],
            v["egr_full"],
            v["egr_line_image_shape"],
            v["residue_points"],
        ) == (5, 1, 0, 1, False, "baer-subline", q + 1)
        out[f"q{q}-extension-count"] = v["extension_solution_count"] == v["points"]
    return out


@criterion(10, "Dual of H(4, 4)")
def _h4():
    v, passed = _values("h4", 2)
    return {
        "report": passed,
        "dims": (v["tangent_rank"], v["tangent_dim"], v["variety_dim"]) == (7, 3, 2),
        "residues-9-point-unitals-in-planes": (v["residue_shape"], v["residue_points"], v["residue_span_dim"])
        == ("unital", 9, 3),
        "egr-2-embedding-not-conics": v["egr_local_dim"] == 2 and v["egr_line_image_shape"] != "conic",
    }


@criterion(11, "Dual grid: two disjoint conics, q = 2, 3")
def _dual_grid():
    out = {}
    for q in (2, 3):
        v, passed = _values("dual_grid", q)
        two = v["components"] == 2 and v["component_shapes"] == ["conic", "conic"] and v["points"] == 2 * (q + 1)
        if q % 2:
            planes = v["plane_meet_dim"] == 0 and v["span_dim"] == 6
        else:
            planes = v["plane_meet_dim"] == 1 and v["common_nucleus"] and v["planes_meet_in_nucleus"] and v["span_dim"] == 5
        out[f"q{q}"] = passed and two and planes
    return out


# -- 12 to 16: the quadric example, projections, nuclei, hulls --------------------------------

DISPLAYED_SYSTEM = {
    "polar-quadratic": "x_1_2^2 + x_1_4*x_2_3 + x_1_3*x_2_4",
    "polar-linear": "x_1_2 - x_3_4",
    "column-13-14": "x_1_3*x_1_4",
    "column-23-24": "x_2_3*x_2_4",
    "column-13-23": "x_1_3*x_2_3",
    "column-14-24": "x_1_4*x_2_4",
    "plucker": "x_1_2*x_3_4 + x_1_3*x_2_4 + x_1_4*x_2_3",
}


@criterion(12, "Hyperbolic quadric example: independent equation and solution set")
def _quadric_example():
    out = {}
    for q in (2, 4):
        F = field_for(q)
        names = variable_names(4)
        polys = {k: parse_poly(F, names, s) for k, s in DISPLAYED_SYSTEM.items()}
        w = np.array([[1, 0, 0, 0, 0, 0]])
        holds = {k: bool(p.evaluate(w)[0] == 0) for k, p in polys.items()}
        rest = ("column-13-14", "column-23-24", "column-13-23", "column-14-24", "plucker")
        out[f"q{q}-witness-satisfies-columns-and-plucker"] = all(holds[k] for k in rest) and not grassmann_residuals(F, w).any()
        out[f"q{q}-witness-violates-x12-equals-x34"] = not holds["polar-linear"]
        P = enumerate_points(F, 6)
        sol = P[np.logical_and.reduce([p.evaluate(P) == 0 for p in polys.values()])]
        chi = case_form("dual_grid", F)
        out[f"q{q}-solutions-equal-singular-lines"] = {tuple(r) for r in sol.tolist()} == build_variety(chi).points
    return out


@criterion(13, "Projection from the Veronese to the Grassmann embedding and its kernel")
def _projection():
    out = {}
    for q in (3, 5):
        s = projection_suite(q)
        out[f"q{q}-kernel-0"] = s["pi_exists"] and s["pi_kernel_dim"] == 0
    for q in (2, 4):
        v = run_char2_extras(q).values
        out[f"q{q}-kernel-1"] = v["pi_kernel_dim"] == 1
        out[f"q{q}-nuclei-image-is-W3q"] = v["pi_N_is_W3q"]
        out[f"q{q}-quotient"] = (v["K_dim"], v["K_quotient_valid"], v["K_quotient_k"], v["K_quotient_dim"], v["K_quotient_local_dim"]) == (
            4,
            True,
            1,
            5,
            1,
        )
    return out


@criterion(14, "Nucleus subspace of the quadric Veronesean of PG(4, 2)")
def _nuclei():
    v = run_char2_extras(2).values
    return {
        "lines-of-PG(4,2)": len(enumerate_lines(make_field(2), 5)) == 155,
        "N-dim-10": v["N_dim"] == 10,
        "N_H-dim-9": v["N_H_dim"] == 9,
        "nuclei-of-quadrangle-span-N_H": v["N_Gamma_equals_N_H"],
        "quotient-proj-dim-4": v["quotient_proj_dim"] == 4 and v["quotient_valid"],
        "nucleus-map-equivalent-to-plucker": v["nu_isomorphic_to_plucker"],
    }


@criterion(15, "Hull dimensions and idempotence")
def _hulls():
    h5, h4 = hull_suite(5), hull_suite(4)
    idem = []
    for q in (2, 3):
        F = field_for(q)
        g, pts = polar_geometry(klein_correspondence(F).form)
        e = PointEmbedding(g, F, pts)
        h = hull(e)
        idem.append(h.check_projection(e) and hull(h.embedding).dim == h.dim)
    return {
        "q5-hull-dim-10": h5["hull_dim"] == 10 and h5["embedding_dim"] == 10,
        "q4-hull-dim-exceeds-10": h4["hull_dim"] > 10,
        "projections-reproduce-embeddings": h5["projection_ok"] and h4["projection_ok"],
        "idempotent": h5["idempotent"] and h4["idempotent"] and all(idem),
    }


@criterion(16, "Every quantitative claim above is decided over a finite field")
def _meta():
    out = {}
    for num in range(1, 16):
        ok, checks = evaluate(num)
        out[f"criterion-{num}-evaluated"] = bool(checks) and all(isinstance(v, (bool, np.bool_)) for v in checks.values())
    return out


# -- pytest entry points ---------------------------------------------------------------------

KNOWN_FAILURES = {
    7: "the listed second generator has x_1_2*x_2_4 where the variety needs x_1_2*x_3_4",
}


def _params():
    for num in sorted(CRITERIA):
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[num])] if num in KNOWN_FAILURES else []
        yield pytest.param(num, marks=marks, id=f"criterion-{num:02d}")


@pytest.mark.parametrize("num", list(_params()))
def test_criterion(num):
    ok, checks = evaluate(num)
    print(summary_line(num))
    assert ok, {k: v for k, v in checks.items() if not v}


def test_parabolic_corrected_generator_is_emitted():
    # what criterion 7 fails on, stated positively
    for q in (2, 3):
        got = emit_equations(case_form("parabolic", field_for(q))).generator_strings()
        assert got == ["x_1_3 + x_2_4", "x_1_2*x_3_4 + x_1_3^2 + x_1_4*x_2_3"]


def main() -> int:
    for num in sorted(CRITERIA):
        evaluate(num)
        print(summary_line(num), flush=True)
    passed = sum(RESULTS[n][0] for n in RESULTS)
    print(f"{passed}/{len(RESULTS)} criteria pass")
    return 0 if passed == len(RESULTS) else 1


if __name__ == "__main__":
    sys.exit(main())
