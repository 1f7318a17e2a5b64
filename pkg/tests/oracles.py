"""Slow, independent reference implementations used only by the tests.

Everything here works on plain Python ints and tuples and shares no code with
the package. Field elements use the same integer encoding (base-p digits of the
coefficient vector, low degree first) so results can be compared directly.
"""

from __future__ import annotations

from itertools import product


class RefField:
    """GF(p^k) by schoolbook polynomial arithmetic modulo ``modulus`` (low-to-high, monic)."""

    def __init__(self, p: int, modulus: tuple[int, ...] = (0, 1), sigma_exp: int = 0):
        self.p = p
        self.k = len(modulus) - 1
        self.q = p**self.k
        self.modulus = modulus
        self.sigma_exp = sigma_exp

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def code(self, c) -> int:
        return sum((x % self.p) * self.p**i for i, x in enumerate(c))

    def add(self, a: int, b: int) -> int:
        return self.code([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.code([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] += u * v
        for d in range(2 * self.k - 1, self.k - 1, -1):
            c = prod[d] % self.p
            if c:
                for i, m in enumerate(self.modulus):
                    prod[d - self.k + i] -= c * m
        return self.code(prod[: self.k])

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a: int) -> int:
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def sigma(self, a: int) -> int:
        return self.pow(a, self.p**self.sigma_exp)


def ref_rank(R: RefField, rows) -> int:
    """Rank by textbook Gaussian elimination."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = R.inv(M[r][c])
        M[r] = [R.mul(iv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def all_vectors(q: int, n: int):
    return product(range(q), repeat=n)


def projective_points(R: RefField, n: int) -> list[tuple[int, ...]]:
    """Vectors whose first nonzero entry is 1."""
    out = []
    for v in all_vectors(R.q, n):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            out.append(v)
    return out


def minors(R: RefField, x, y) -> tuple[int, ...]:
    """Plücker coordinates x_i y_j - x_j y_i for i < j in lex order."""
    n = len(x)
    return tuple(R.sub(R.mul(x[i], y[j]), R.mul(x[j], y[i])) for i in range(n) for j in range(i + 1, n))


def normalized(R: RefField, v) -> tuple[int, ...]:
    v = tuple(int(a) for a in v)
    lead = next(a for a in v if a)
    iv = R.inv(lead)
    return tuple(R.mul(iv, a) for a in v)


def lines_by_pairs(R: RefField, n: int) -> dict[tuple, list[tuple]]:
    """Every line of PG(n-1, q) as {normalized Plücker vector: its points}."""
    pts = projective_points(R, n)
    lines: dict[tuple, set] = {}
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            w = normalized(R, minors(R, x, y))
            lines.setdefault(w, set()).update((x, y))
    return {w: sorted(s) for w, s in lines.items()}


def sesqui(R: RefField, phi, x, y) -> int:
    """sum_ij sigma(x_i) phi_ij y_j."""
    s = 0
    for i, row in enumerate(phi):
        for j, c in enumerate(row):
            if c:
                s = R.add(s, R.mul(R.mul(R.sigma(x[i]), c), y[j]))
    return s


def quad(R: RefField, upper, x) -> int:
    s = 0
    for i, row in enumerate(upper):
        for j, c in enumerate(row):
            if c:
                s = R.add(s, R.mul(R.mul(x[i], c), x[j]))
    return s


def line_vectors(R: RefField, pts) -> list[tuple[int, ...]]:
    """All nonzero vectors of the 2-space spanned by two points."""
    x, y = pts[0], pts[1]
    out = []
    for a in range(R.q):
        for b in range(R.q):
            if a or b:
                out.append(tuple(R.add(R.mul(a, u), R.mul(b, v)) for u, v in zip(x, y)))
    return out


def totally_isotropic_brute(R: RefField, phi, pts) -> bool:
    vs = line_vectors(R, pts)
    return all(sesqui(R, phi, u, v) == 0 for u in vs for v in vs)


def totally_singular_brute(R: RefField, upper, pts) -> bool:
    return all(quad(R, upper, v) == 0 for v in line_vectors(R, pts))
