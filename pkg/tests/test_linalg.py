import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import RefField, ref_rank
from polargrass.gfield import make_field
from polargrass.linalg import (
    ShapeMismatch,
    SingularMatrix,
    in_span,
    intersect,
    inverse,
    kernel_basis,
    rank,
    rref,
    same_span,
    solve,
    span_dim,
)
from polargrass.wedge import plucker_coords

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


def matrices(max_rows=6, max_cols=6):
    @st.composite
    def build(draw):
        F = make_field(*draw(st.sampled_from(FIELDS)))
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        M = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
        return F, np.array(M, dtype=np.int64).reshape(r, c)

    return build()


def test_identity_and_zero():
    F = make_field(3)
    I = np.eye(4, dtype=np.int64)
    R, r, piv = rref(F, I)
    assert np.array_equal(R, I) and r == 4 and piv == [0, 1, 2, 3]
    Z = np.zeros((3, 3), dtype=np.int64)
    assert rref(F, Z)[1] == 0
    assert kernel_basis(F, I).shape[0] == 0
    assert same_span(F, kernel_basis(F, Z), I[:3, :3])


def test_gf2_dependent_rows():
    F = make_field(2)
    assert rank(F, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_gf3_kernel_of_single_row():
    F = make_field(3)
    M = np.array([[1, 2, 0]])
    K = kernel_basis(F, M)
    assert K.shape == (2, 3)
    assert not F.matmul(M, K.T).any()


def test_span_dim_examples():
    F = make_field(2)
    assert span_dim(F, [[1, 0], [0, 1], [1, 1]]) == 2
    assert span_dim(F, []) == 0
    with pytest.raises(ShapeMismatch):
        span_dim(F, [[1, 0], [1, 0, 0]])


@pytest.mark.parametrize("p,k,sigma", [(3, 1, 0), (2, 2, 1), (3, 2, 1)])
def test_six_independent_isotropic_wedges_for_hyperbolic_form(p, k, sigma):
    """Six totally isotropic lines of the n=4 hyperbolic form with independent wedges."""
    F = make_field(p, k, sigma_exp=sigma)
    t = next(int(x) for x in F.elements() if int(F.add(x, F.sigma(x))) == 1)
    m = lambda x: int(F.neg(x))
    e = np.eye(4, dtype=np.int64)
    pairs = [
        (e[0], e[2]),
        (e[1], e[3]),
        (e[0], e[3]),
        (e[1], e[2]),
        (np.array([1, 0, m(1), 0]), np.array([0, 1, 0, 1])),
        (np.array([m(t), 1, t, 1]), np.array([m(t), 0, int(F.sub(t, F.sigma(t))), 1])),
    ]
    phi = np.zeros((4, 4), dtype=np.int64)
    phi[0, 1] = phi[1, 0] = phi[2, 3] = phi[3, 2] = 1
    for u, v in pairs:
        for x in (u, v):
            for y in (u, v):
                assert int(F.dot(F.sigma(x)[None, :], F.matmul(phi, y[:, None]).T)[0]) == 0
    W = [plucker_coords(F, u, v) for u, v in pairs]
    assert span_dim(F, W) == 6


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_agrees_with_reference(FM):
    F, M = FM
    R = RefField(F.p, F.modulus, 0)
    assert rank(F, M) == ref_rank(R, M.tolist())


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity_transpose_and_idempotence(FM):
    F, M = FM
    r = rank(F, M)
    K = kernel_basis(F, M)
    assert r + K.shape[0] == M.shape[1]
    assert not F.matmul(M, K.T).any() if K.size else True
    assert rank(F, M.T) == r
    R = rref(F, M)[0]
    assert np.array_equal(rref(F, R)[0], R)
    assert same_span(F, R[:r], M)


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5), st.data())
def test_intersection_by_membership(FM, data):
    F, A = FM
    rows = data.draw(st.integers(1, 5))
    B = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=rows * A.shape[1], max_size=rows * A.shape[1])))
    B = B.reshape(rows, A.shape[1])
    I = intersect(F, A, B)
    for v in I:
        assert in_span(F, A, v) and in_span(F, B, v)
    assert I.shape[0] == rank(F, A) + rank(F, B) - rank(F, np.vstack([A, B]))


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5))
def test_solve_and_inverse(FM):
    F, M = FM
    n = min(M.shape)
    S = M[:n, :n]
    if rank(F, S) == n:
        Inv = inverse(F, S)
        assert np.array_equal(F.matmul(S, Inv), np.eye(n, dtype=np.int64))
    else:
        with pytest.raises(SingularMatrix):
            inverse(F, S)
    b = F.matmul(M, np.ones((M.shape[1], 1), dtype=np.int64))[:, 0]
    x = solve(F, M, b)
    assert x is not None and np.array_equal(F.matmul(M, x[:, None])[:, 0], b)
