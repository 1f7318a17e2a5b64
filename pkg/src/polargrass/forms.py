"""Reflexive sesquilinear forms and quadratic forms, with the matrix tests for
isotropy of lines.

A line is handed over either as a :class:`~polargrass.wedge.ProjLine` or as a
2 x n matrix whose rows span it.  ``X`` always denotes the anti-symmetric
matrix ``x y^T - y x^T`` of a spanning pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gfield import BadEpsilon, FieldCtx, parse_field, trace_value_set
from .linalg import as_mat, kernel_basis, rank, span_basis
from .wedge import ProjLine, enumerate_points, wedge_product

__all__ = [
    "FormError",
    "NotReflexive",
    "LineMeetsRadical",
    "SingularQuadForm",
    "SesquiForm",
    "QuadForm",
    "eval_form",
    "lambda_map",
    "radical",
    "totally_isotropic",
    "naive_totally_isotropic",
    "perp_relation",
    "meets_radical",
    "eval_quad",
    "totally_singular",
    "naive_totally_singular",
    "column_quad_values",
    "is_trace_valued",
    "witt_index",
    "parse_form",
    "format_form",
]


class FormError(ValueError):
    pass


class NotReflexive(FormError):
    pass


class LineMeetsRadical(FormError):
    pass


class SingularQuadForm(FormError):
    pass


def _line_rows(line) -> np.ndarray:
    if isinstance(line, ProjLine):
        return line.matrix()
    return np.asarray(line, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SesquiForm:
    """``phi(x, y) = (x^sigma)^T Phi y`` with ``Phi^T = eps * Phi^sigma``.

    sigma is the automorphism carried by ``F``.
    """

    F: FieldCtx
    phi: np.ndarray
    eps: int = 1

    def __post_init__(self):
        F = self.F
        phi = as_mat(F, self.phi)
        object.__setattr__(self, "phi", phi)
        eps = F.element(self.eps)
        object.__setattr__(self, "eps", eps)
        if phi.shape[0] != phi.shape[1]:
            raise FormError("Gram matrix must be square")
        if int(F.mul(F.sigma(eps), eps)) != 1:
            raise BadEpsilon("eps^sigma * eps != 1")
        if not np.array_equal(phi.T, F.mul(eps, F.sigma(phi))):
            raise NotReflexive("Phi^T != eps * Phi^sigma")

    @property
    def n(self) -> int:
        return self.phi.shape[0]

    @cached_property
    def phi_sigma(self) -> np.ndarray:
        return self.F.sigma(self.phi)

    @cached_property
    def is_alternating(self) -> bool:
        F, P = self.F, self.phi
        return not np.diag(P).any() and np.array_equal(P.T, F.neg(P))

    @cached_property
    def radical_basis(self) -> np.ndarray:
        return kernel_basis(self.F, self.phi)

    @property
    def is_degenerate(self) -> bool:
        return self.radical_basis.shape[0] > 0

    @property
    def is_null(self) -> bool:
        return not self.phi.any()

    def value(self, x, y):
        """Batched evaluation; ``x`` and ``y`` broadcast over leading axes."""
        F = self.F
        xs = F.sigma(np.asarray(x, dtype=np.int64))
        t = F.matmul(xs[..., None, :], self.phi)[..., 0, :]
        return F.dot(t, np.asarray(y, dtype=np.int64))

    def isotropic_lines_mask(self, lines) -> np.ndarray:
        """For a batch ``(L, 2, n)`` of spanning pairs: which lines are totally isotropic."""
        x, y = lines[:, 0], lines[:, 1]
        return (self.value(x, x) == 0) & (self.value(x, y) == 0) & (self.value(y, y) == 0)

    def isotropic_points_mask(self, pts) -> np.ndarray:
        return self.value(pts, pts) == 0

    def __repr__(self) -> str:
        return f"SesquiForm({self.F!r}, n={self.n}, eps={self.F.format(self.eps)})"


@dataclass(frozen=True, eq=False)
class QuadForm:
    """``chi(x) = x^T U x`` for an upper-triangular ``U``; sigma must be the identity.

    The polar form is ``Phi = U + U^T``.  In characteristic 2 singularity of a
    point is not decided by the polar form, so it is kept separately.
    """

    F: FieldCtx
    upper: np.ndarray
    check_nonsingular: bool = field(default=True, compare=False)

    def __post_init__(self):
        F = self.F
        U = as_mat(F, self.upper)
        if U.shape[0] != U.shape[1]:
            raise FormError("coefficient matrix must be square")
        if np.tril(U, -1).any():
            # fold the lower triangle into the upper one
            U = np.triu(F.add(U, np.tril(U, -1).T))
        object.__setattr__(self, "upper", U)
        if not F.sigma_is_identity:
            raise FormError("quadratic forms need sigma = id")
        if self.check_nonsingular and not self.is_nonsingular:
            raise SingularQuadForm("chi vanishes on a nonzero radical vector")

    @property
    def n(self) -> int:
        return self.upper.shape[0]

    @cached_property
    def polar(self) -> SesquiForm:
        U = self.upper
        return SesquiForm(self.F, self.F.add(U, U.T), 1)

    @property
    def phi(self) -> np.ndarray:
        return self.polar.phi

    @cached_property
    def is_nonsingular(self) -> bool:
        R = self.polar.radical_basis
        if R.shape[0] == 0:
            return True
        F = self.F
        coeffs = enumerate_points(F, R.shape[0])
        vecs = F.matmul(coeffs, R)
        return bool(np.all(self.value(vecs) != 0))

    def value(self, x):
        F = self.F
        x = np.asarray(x, dtype=np.int64)
        t = F.matmul(x[..., None, :], self.upper)[..., 0, :]
        return F.dot(t, x)

    def singular_lines_mask(self, lines) -> np.ndarray:
        x, y = lines[:, 0], lines[:, 1]
        return (self.value(x) == 0) & (self.value(y) == 0) & (self.polar.value(x, y) == 0)

    def isotropic_points_mask(self, pts) -> np.ndarray:
        return self.value(pts) == 0

    def __repr__(self) -> str:
        return f"QuadForm({self.F!r}, n={self.n})"


# -- sesquilinear operations ----------------------------------------------------


def eval_form(f: SesquiForm, x, y) -> int:
    return int(f.value(x, y))


def lambda_map(f: SesquiForm, x) -> np.ndarray:
    """The covector ``eps * Phi^sigma x^sigma`` of ``y -> phi(x, y)``."""
    F = f.F
    xs = F.sigma(np.asarray(x, dtype=np.int64))
    return F.mul(f.eps, F.matmul(f.phi_sigma, xs[:, None])[:, 0])


def radical(f: SesquiForm) -> np.ndarray:
    """Basis (rows) of ``{v : phi(v, y) = 0 for all y}``."""
    return f.radical_basis


def _X(f, line) -> np.ndarray:
    M = _line_rows(line)
    return wedge_product(f.F, M[0], M[1])


def meets_radical(f: SesquiForm, line) -> bool:
    """``Phi X Phi^sigma = O``: the line meets the radical nontrivially."""
    F = f.F
    X = _X(f, line)
    return not F.matmul(F.matmul(f.phi, X), f.phi_sigma).any()


def _isotropy_product_vanishes(f: SesquiForm, X, Y) -> bool:
    F = f.F
    L = F.matmul(f.phi_sigma, F.sigma(X))
    return not F.matmul(F.matmul(L, f.phi), Y).any()


def naive_totally_isotropic(f: SesquiForm, line) -> bool:
    """Reference definition: every pair of points of the line is orthogonal."""
    M = _line_rows(line)
    from .wedge import line_points

    P = line_points(f.F, M)
    vals = f.value(P[:, None, :], P[None, :, :])
    return not np.asarray(vals).any()


def totally_isotropic(f: SesquiForm, line) -> bool:
    """Whether the line is totally isotropic.

    Lines meeting the radical are decided on a spanning pair; otherwise the
    answer is ``Phi^sigma X^sigma Phi X = O`` (``X^sigma Phi X = O`` when the
    form is nondegenerate).
    """
    M = _line_rows(line)
    if meets_radical(f, M):
        x, y = M[0], M[1]
        return f.value(x, x) == 0 and f.value(x, y) == 0 and f.value(y, y) == 0
    X = _X(f, M)
    F = f.F
    if not f.is_degenerate:
        return not F.matmul(F.matmul(F.sigma(X), f.phi), X).any()
    return _isotropy_product_vanishes(f, X, X)


def perp_relation(f: SesquiForm, s, s2) -> bool:
    """Whether every vector of ``s2`` is orthogonal to every vector of ``s``.

    Decided by ``Phi^sigma X^sigma Phi Y = O``; needs ``s`` to miss the radical.
    """
    if meets_radical(f, s):
        raise LineMeetsRadical("the first line meets the radical")
    return _isotropy_product_vanishes(f, _X(f, s), _X(f, s2))


def is_trace_valued(f: SesquiForm) -> bool:
    """Whether ``phi(x, x)`` lies in ``{t + eps t^sigma}`` for every ``x``."""
    T = np.array(sorted(trace_value_set(f.F, f.eps)), dtype=np.int64)
    P = enumerate_points(f.F, f.n)
    return bool(np.isin(f.value(P, P), T).all())


# -- quadratic operations ---------------------------------------------------------


def eval_quad(q: QuadForm, x) -> int:
    return int(q.value(x))


def column_quad_values(q: QuadForm, X) -> np.ndarray:
    """``chi`` of each column ``(x_ik)_i`` of ``X``."""
    return q.value(np.asarray(X, dtype=np.int64).T)


def naive_totally_singular(q: QuadForm, line) -> bool:
    from .wedge import line_points

    P = line_points(q.F, _line_rows(line))
    return not q.value(P).any() and not np.asarray(q.polar.value(P[:, None, :], P[None, :, :])).any()


def totally_singular(q: QuadForm, line) -> bool:
    """Whether every point of the line is singular.

    Characteristic 2: ``Phi X Phi X = O`` together with ``chi`` vanishing on
    every column of ``X``.  Odd characteristic: total isotropy for the polar form.
    """
    F = q.F
    M = _line_rows(line)
    if F.p != 2:
        return totally_isotropic(q.polar, M)
    X = wedge_product(F, M[0], M[1])
    P = q.phi
    if F.matmul(F.matmul(F.matmul(P, X), P), X).any():
        return False
    return not column_quad_values(q, X).any()


# -- Witt index -------------------------------------------------------------------


def witt_index(form) -> int:
    """Dimension of a maximal totally isotropic (singular) subspace, by greedy search."""
    F = form.F
    pol = form.polar if isinstance(form, QuadForm) else form
    P = enumerate_points(F, form.n)
    iso = P[form.isotropic_points_mask(P)]
    basis = np.zeros((0, form.n), dtype=np.int64)
    while True:
        if basis.shape[0]:
            orth = np.ones(len(iso), dtype=bool)
            for b in basis:
                orth &= pol.value(b[None, :], iso) == 0
            cand = iso[orth]
        else:
            cand = iso
        grew = False
        r = basis.shape[0]
        for v in cand:
            ext = np.vstack([basis, v[None, :]])
            if rank(F, ext) > r:
                basis = span_basis(F, ext)
                grew = True
                break
        if not grew:
            return r


# -- text format --------------------------------------------------------------------


def _parse_rows(F: FieldCtx, text: str) -> np.ndarray:
    rows = [r.strip() for r in text.strip().split(";") if r.strip()]
    return as_mat(F, [[c for c in r.replace(",", " ").split()] for r in rows])


def parse_form(text: str, F: FieldCtx | None = None):
    """Parse a form description.

    Recognised lines (``#`` starts a comment)::

        field 2^2/1,1,1/1         optional when ``F`` is given
        gram  r11,r12,...; r21,...  Gram matrix of a sesquilinear form
        quad  u11,u12,...; ...      upper-triangular matrix of a quadratic form
        eps   1                    default 1
        sigma 1                    overrides the field's sigma exponent
    """
    entries: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        key = key.rstrip(":").lower()
        if key not in {"field", "gram", "quad", "eps", "sigma"}:
            raise FormError(f"unknown form key {key!r}")
        entries[key] = rest.strip()
    if "field" in entries:
        F = parse_field(entries["field"])
    if F is None:
        raise FormError("no field given")
    if "sigma" in entries:
        F = F.with_sigma(int(entries["sigma"]))
    if ("gram" in entries) == ("quad" in entries):
        raise FormError("exactly one of 'gram' or 'quad' is required")
    if "quad" in entries:
        return QuadForm(F, _parse_rows(F, entries["quad"]))
    eps = F.parse(entries["eps"]) if "eps" in entries else 1
    return SesquiForm(F, _parse_rows(F, entries["gram"]), eps)


def format_form(form) -> str:
    F = form.F
    if isinstance(form, QuadForm):
        key, M, extra = "quad", form.upper, []
    else:
        key, M, extra = "gram", form.phi, [f"eps {F.format(form.eps)}"]
    rows = "; ".join(",".join(F.format(c) for c in r) for r in M)
    return "\n".join([f"field {F.spec}", f"{key} {rows}", *extra]) + "\n"
