import json

import numpy as np
import pytest

from polargrass.casebook import (
    CASES,
    SCHEMA,
    UnsupportedField,
    case_form,
    field_for,
    hull_report,
    render_table,
    run_case,
    run_char2_extras,
)
from polargrass.forms import SesquiForm, QuadForm, witt_index


def test_symplectic_gf3_row():
    rep = run_case("symplectic", 3)
    v = rep.values
    assert rep.passed
    assert (v["span_dim"], v["tangent_rank"], v["tangent_dim"], v["variety_dim"]) == (10, 6, 4, 3)
    assert v["residue_shape"] == "conic" and v["residue_points"] == 4


def test_elliptic_gf4_row():
    rep = run_case("elliptic", 2)
    v = rep.values
    assert rep.passed
    assert (v["tangent_rank"], v["tangent_dim"], v["variety_dim"]) == (5, 1, 0)
    assert v["egr_line_image_shape"] == "baer-subline" and v["egr_local_dim"] == 1
    assert v["points"] == 27


def test_dual_grid_gf2_row():
    rep = run_case("dual_grid", 2)
    v = rep.values
    assert rep.passed
    assert v["components"] == 2 and v["span_dim"] == 5 and v["common_nucleus"] is True


@pytest.mark.parametrize("name", sorted(CASES))
def test_default_case_passes(name):
    assert run_case(name).passed


@pytest.mark.parametrize("name", sorted(CASES))
def test_case_forms_have_witt_index_two(name):
    spec = CASES[name]
    F = field_for(spec.default_q, spec.hermitian)
    assert witt_index(case_form(name, F)) == 2


def test_displayed_matrices():
    F = field_for(3)
    P = case_form("parabolic", F)
    assert isinstance(P, SesquiForm) and P.eps == F.neg(1)
    assert P.phi[0, 2] == 1 and P.phi[2, 0] == 2
    S = case_form("symplectic", field_for(2))
    assert isinstance(S, QuadForm) and S.upper[4, 4] == 1
    H = case_form("hermitian_surface", F)
    assert H.phi[5, 5] == F.neg(2)
    E = case_form("elliptic", field_for(2, True))
    assert np.array_equal(E.phi, np.eye(4, dtype=np.int64))


def test_unsupported_fields():
    with pytest.raises(UnsupportedField):
        run_case("h4", 3)
    with pytest.raises(UnsupportedField):
        field_for(6)
    with pytest.raises(KeyError):
        run_case("klein")


def test_report_json_is_stable_and_versioned():
    a = run_case("parabolic", 2).to_json()
    b = run_case("parabolic", 2).to_json()
    assert a == b
    d = json.loads(a)
    assert d["schema"] == SCHEMA
    assert list(d) == ["schema", "case", "field", "q", "values", "claims", "pass"]


def test_table_is_projection_of_json():
    rep = run_case("symplectic", 2)
    assert rep.table() == render_table(json.loads(rep.to_json()))


def test_char2_extras_gf2():
    rep = run_char2_extras(2)
    v = rep.values
    assert rep.passed
    assert v["pi_kernel_dim"] == 1 and v["N_dim"] == 10 and v["N_H_dim"] == 9 and v["quotient_proj_dim"] == 4


def test_hull_report_gf4_exceeds_embedding():
    rep = hull_report(4)
    assert rep.passed and rep.values["hull_dim"] > 10
