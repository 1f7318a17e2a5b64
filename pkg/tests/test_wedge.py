from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import RefField, lines_by_pairs, minors
from polargrass.gfield import make_field
from polargrass.linalg import SingularMatrix, rank, same_span
from polargrass.wedge import (
    NotAntiSymmetric,
    NotDecomposable,
    NotOnGrassmannian,
    RankNotTwo,
    ProjLine,
    alpha,
    alpha_inv,
    count_lines,
    dual_incidence,
    dual_lift_map,
    enumerate_lines,
    grassmann_membership,
    grassmann_tangent,
    grassmann_tangent_system,
    lift_map,
    line_of,
    lines_plucker,
    plucker,
    plucker_coords,
    star_subspace,
    wedge_index,
    wedge_product,
)

GF2, GF3 = make_field(2), make_field(3)


def vec(F, n, rng):
    return rng.integers(0, F.q, n)


def test_index_is_lexicographic():
    W = wedge_index(4)
    assert W.names() == ["x_1_2", "x_1_3", "x_1_4", "x_2_3", "x_2_4", "x_3_4"]
    assert [W.position(i, j) for i, j in W.pairs] == list(range(6))


def test_alpha_of_basis_wedge():
    A = alpha(GF3, wedge_index(4).basis_vector(0, 1))
    expected = np.zeros((4, 4), dtype=np.int64)
    expected[0, 1], expected[1, 0] = 1, 2
    assert np.array_equal(A, expected)


def test_alpha_places_entries_above_diagonal():
    v = np.array([1, 0, 1, 2, 0, 1])
    A = alpha(GF3, v)
    assert [A[0, 1], A[0, 2], A[0, 3], A[1, 2], A[1, 3], A[2, 3]] == v.tolist()
    assert np.array_equal(A.T, GF3.neg(A)) and not np.diag(A).any()


@settings(max_examples=50)
@given(st.lists(st.integers(0, 2), min_size=10, max_size=10))
def test_alpha_round_trip(v):
    assert alpha_inv(GF3, alpha(GF3, v)).tolist() == v


def test_alpha_inv_rejects_non_antisymmetric():
    with pytest.raises(NotAntiSymmetric):
        alpha_inv(GF3, np.eye(3, dtype=np.int64))


def test_wedge_product_examples():
    e = np.eye(4, dtype=np.int64)
    assert np.array_equal(wedge_product(GF3, e[0], e[1]), alpha(GF3, wedge_index(4).basis_vector(0, 1)))
    assert not wedge_product(GF3, e[2] * 2, e[2]).any()
    assert plucker_coords(GF2, [1, 0, 1, 0], [0, 1, 0, 1]).tolist() == [1, 0, 1, 1, 0, 1]


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2), min_size=10, max_size=10))
def test_wedge_matrix_agrees_with_minors(xy):
    x, y = xy[:5], xy[5:]
    R = RefField(3)
    assert alpha_inv(GF3, wedge_product(GF3, x, y)).tolist() == list(minors(R, x, y))


def test_pg32_lines_are_distinct_grassmann_points():
    L = enumerate_lines(GF2, 4)
    W = lines_plucker(GF2, L)
    assert len(L) == 35 == len({tuple(r) for r in W.tolist()})
    assert all(grassmann_membership(GF2, w) for w in W)
    assert {tuple(r) for r in W.tolist()} == set(lines_by_pairs(RefField(2), 4))


def test_round_trip_on_every_line_of_pg43():
    L = enumerate_lines(GF3, 5)
    assert len(L) == count_lines(3, 5) == 1210
    for l in L:
        pl = ProjLine((tuple(l[0]), tuple(l[1])))
        w = plucker(GF3, pl)
        assert line_of(GF3, w) == pl


def test_membership_examples():
    W = wedge_index(4)
    assert grassmann_membership(GF2, W.basis_vector(0, 1))
    v = W.basis_vector(0, 1) + W.basis_vector(2, 3)
    assert not grassmann_membership(GF2, v)
    with pytest.raises(NotDecomposable):
        line_of(GF2, v)


def test_member_count_is_line_count_gf3_n5():
    pts = np.array(list(product(range(3), repeat=10)), dtype=np.int64)
    pts = pts[pts[np.arange(len(pts)), np.argmax(pts != 0, axis=1)] == 1]
    from polargrass.wedge import grassmann_residuals

    on = ~grassmann_residuals(GF3, pts).any(axis=1)
    assert on.sum() == count_lines(3, 5)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_star_of_e1(n):
    F = GF3
    e = np.eye(n, dtype=np.int64)
    B, S = star_subspace(F, e[0])
    W = wedge_index(n)
    assert same_span(F, B, [W.basis_vector(0, j) for j in range(1, n)])
    assert rank(F, S) == comb(n - 1, 2)


@pytest.mark.parametrize("F,n", [(GF2, 4), (GF3, 5), (GF3, 6), (GF2, 6)])
def test_star_and_tangent_dimensions(F, n):
    rng = np.random.default_rng(n)
    for _ in range(5):
        a, b = vec(F, n, rng), vec(F, n, rng)
        if rank(F, [a, b]) < 2:
            continue
        Sa, Ssys = star_subspace(F, a)
        Sb, _ = star_subspace(F, b)
        assert Sa.shape[0] == n - 1 and rank(F, Ssys) == comb(n - 1, 2)
        c = plucker_coords(F, a, b)
        assert rank(F, grassmann_tangent_system(F, c)) == comb(n - 2, 2)
        T = grassmann_tangent(F, c)
        assert T.shape[0] == 2 * n - 3
        assert same_span(F, T, np.vstack([Sa, Sb]))


def test_tangent_needs_a_grassmann_point():
    W = wedge_index(4)
    with pytest.raises(NotOnGrassmannian):
        grassmann_tangent(GF2, W.basis_vector(0, 1) + W.basis_vector(2, 3))


def test_tangent_contains_lines_meeting_the_line():
    F, n = GF2, 5
    e = np.eye(n, dtype=np.int64)
    T = grassmann_tangent(F, plucker_coords(F, e[0], e[1]))
    for l in enumerate_lines(F, n):
        meets = rank(F, np.vstack([e[:2], l])) <= 3
        if meets:
            w = plucker_coords(F, l[0], l[1])
            assert rank(F, np.vstack([T, w])) == T.shape[0]


def test_lift_map_examples():
    F = GF3
    assert np.array_equal(lift_map(F, np.eye(4, dtype=np.int64)), np.eye(6, dtype=np.int64))
    P = np.eye(4, dtype=np.int64)[[1, 0, 2, 3]]
    W = wedge_index(4)
    img = F.matmul(lift_map(F, P), W.basis_vector(0, 2)[:, None])[:, 0]
    assert img.tolist() == W.basis_vector(1, 2).tolist()
    with pytest.raises(SingularMatrix):
        lift_map(F, np.zeros((4, 4), dtype=np.int64))


def _invertible(F, n, rng):
    while True:
        M = rng.integers(0, F.q, (n, n))
        if rank(F, M) == n:
            return M


def test_lift_map_is_compatible_and_multiplicative():
    F, rng = GF3, np.random.default_rng(7)
    M, N = _invertible(F, 4, rng), _invertible(F, 4, rng)
    L = lift_map(F, M)
    for _ in range(100):
        x, y = vec(F, 4, rng), vec(F, 4, rng)
        lhs = F.matmul(L, plucker_coords(F, x, y)[:, None])[:, 0]
        rhs = plucker_coords(F, F.matmul(M, x[:, None])[:, 0], F.matmul(M, y[:, None])[:, 0])
        assert np.array_equal(lhs, rhs)
    assert np.array_equal(lift_map(F, F.matmul(M, N)), F.matmul(lift_map(F, M), lift_map(F, N)))


def test_dual_lift_of_diagonal_scales_by_inverse_products():
    F = make_field(5)
    d = [1, 2, 3, 4]
    D = dual_lift_map(F, np.diag(d))
    W = wedge_index(4)
    expected = [int(F.inv(F.mul(d[i], d[j]))) for i, j in W.pairs]
    assert np.array_equal(D, np.diag(expected))
    assert np.array_equal(dual_lift_map(F, np.eye(4, dtype=np.int64)), np.eye(6, dtype=np.int64))


def test_dual_incidence_examples():
    F = GF3
    e = np.eye(4, dtype=np.int64)
    X = wedge_product(F, e[0], e[1])
    assert dual_incidence(F, wedge_product(F, e[2], e[3]), X)
    assert not dual_incidence(F, wedge_product(F, e[0], e[1]), X)
    with pytest.raises(RankNotTwo):
        dual_incidence(F, np.zeros((4, 4), dtype=np.int64), X)


def _incidence_agrees(F, n):
    lines = enumerate_lines(F, n)
    for dl in lines:
        T = wedge_product(F, dl[0], dl[1])
        for l in lines:
            X = wedge_product(F, l[0], l[1])
            contained = not F.matmul(l, dl.T).any()
            if dual_incidence(F, T, X) != contained:
                return False
    return True


def test_dual_incidence_equals_containment_gf2():
    assert _incidence_agrees(GF2, 4)


def test_dual_incidence_preserved_by_liftings():
    F, rng = GF3, np.random.default_rng(3)
    M = _invertible(F, 4, rng)
    L, D = lift_map(F, M), dual_lift_map(F, M)
    for _ in range(50):
        x, y, t, z = (vec(F, 4, rng) for _ in range(4))
        if rank(F, [x, y]) < 2 or rank(F, [t, z]) < 2:
            continue
        X, T = wedge_product(F, x, y), wedge_product(F, t, z)
        X2 = alpha(F, F.matmul(L, alpha_inv(F, X)[:, None])[:, 0])
        T2 = alpha(F, F.matmul(D, alpha_inv(F, T)[:, None])[:, 0])
        assert dual_incidence(F, T, X) == dual_incidence(F, T2, X2)
