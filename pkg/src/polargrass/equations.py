"""Polynomial systems in Plücker (or Veronese) coordinates, with a text format.

Text grammar (one polynomial per line, ``#`` lines are headers)::

    # field <p^k/modulus/sigma_exp>
    # vars x_i_j lex n=<n>        (wedge coordinates, i < j)
    # vars x_i_j sym n=<n>        (Veronese coordinates, i <= j)
    # group <name> [implied]
    poly    := ['-'] term (('+' | '-') term)*
    term    := coef | [coef '*'] factor ('*' factor)*
    coef    := integer | '(' field-literal ')'
    factor  := var ['^q' | '^' integer]

``x_i_j^q`` is the image of the variable under sigma; ``x_i_j^2`` is a square.
A group marked ``implied`` lies in the degree-2 part of the ideal generated by
the preceding groups and is not part of :meth:`EqnSystem.generators`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .gfield import FieldCtx, parse_field
from .linalg import rank

__all__ = ["Poly", "EqnGroup", "EqnSystem", "parse_eqn_system", "EqnParseError"]


class EqnParseError(ValueError):
    pass


Monomial = tuple[int, ...]


class Poly:
    """Sparse polynomial over ``F``.

    A monomial is a sorted tuple of factor codes: ``v`` is variable ``v`` and
    ``nvars + v`` is its sigma-conjugate.
    """

    __slots__ = ("F", "nvars", "terms")

    def __init__(self, F: FieldCtx, nvars: int, terms: dict[Monomial, int] | None = None):
        self.F = F
        self.nvars = nvars
        self.terms = {m: int(c) for m, c in (terms or {}).items() if int(c)}

    @classmethod
    def linear(cls, F, coeffs) -> "Poly":
        return cls(F, len(coeffs), {(v,): int(c) for v, c in enumerate(coeffs) if c})

    @classmethod
    def quadratic(cls, F, C, sigma_left: bool = False) -> "Poly":
        """From a coefficient matrix ``C[a, b]`` of ``u_a * x_b`` (``u = x`` or ``x^sigma``)."""
        m = C.shape[0]
        terms: dict[Monomial, int] = {}
        for a, b in zip(*np.nonzero(C)):
            fa = m + int(a) if sigma_left else int(a)
            mono = tuple(sorted((fa, int(b))))
            terms[mono] = int(F.add(terms.get(mono, 0), C[a, b]))
        return cls(F, m, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    @property
    def uses_sigma(self) -> bool:
        return any(f >= self.nvars for m in self.terms for f in m)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    def scale(self, c) -> "Poly":
        F = self.F
        return Poly(F, self.nvars, {m: int(F.mul(v, c)) for m, v in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lead = self.terms[self.monomials()[0]]
        return self.scale(int(self.F.inv(lead)))

    def __add__(self, other: "Poly") -> "Poly":
        F = self.F
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = int(F.add(t.get(m, 0), c))
        return Poly(F, self.nvars, t)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.F
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                t[m] = int(F.add(t.get(m, 0), F.mul(c1, c2)))
        return Poly(F, self.nvars, t)

    def evaluate(self, V) -> np.ndarray:
        """Values on a batch of coordinate vectors ``(N, nvars)`` (or a single vector)."""
        F = self.F
        V = np.asarray(V, dtype=np.int64)
        single = V.ndim == 1
        V = np.atleast_2d(V)
        Vs = F.sigma(V)
        out = np.zeros(V.shape[0], dtype=np.int64)
        for mono, c in self.terms.items():
            val = np.full(V.shape[0], c, dtype=np.int64)
            for f in mono:
                col = Vs[:, f - self.nvars] if f >= self.nvars else V[:, f]
                val = F.mul(val, col)
            out = F.add(out, val)
        return out[0] if single else out

    def format(self, names: list[str]) -> str:
        F = self.F
        if not self.terms:
            return "0"
        parts: list[tuple[str, str]] = []
        for mono in self.monomials():
            c = self.terms[mono]
            sign = "+"
            if F.k == 1 and F.p > 2 and c > F.p // 2:
                sign, c = "-", F.p - c
            factors = []
            i = 0
            while i < len(mono):
                f = mono[i]
                j = i
                while j < len(mono) and mono[j] == f:
                    j += 1
                base = names[f - self.nvars] + "^q" if f >= self.nvars else names[f]
                e = j - i
                if f >= self.nvars:
                    factors.extend([base] * e)
                else:
                    factors.append(base if e == 1 else f"{base}^{e}")
                i = j
            if c == 1 and factors:
                body = "*".join(factors)
            else:
                lit = F.format(c)
                lit = lit if F.k == 1 or lit.isdigit() else f"({lit})"
                body = "*".join([lit] + factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _quad_basis(m: int) -> dict[Monomial, int]:
    return {mono: t for t, mono in enumerate(combinations_with_replacement(range(m), 2))}


def coefficient_matrix(polys: list[Poly]) -> tuple[np.ndarray, list[Monomial]]:
    """Rows of coefficients over the union of monomials (sorted)."""
    monos = sorted({m for p in polys for m in p.terms})
    idx = {m: t for t, m in enumerate(monos)}
    A = np.zeros((len(polys), len(monos)), dtype=np.int64)
    for r, p in enumerate(polys):
        for m, c in p.terms.items():
            A[r, idx[m]] = c
    return A, monos


def _vectors(polys: list[Poly], monos: dict[Monomial, int]) -> np.ndarray:
    A = np.zeros((len(polys), len(monos)), dtype=np.int64)
    for r, p in enumerate(polys):
        for m, c in p.terms.items():
            A[r, monos[m]] = c
    return A


def greedy_independent(F: FieldCtx, candidates: list[Poly], base: list[Poly] | None = None) -> list[Poly]:
    """Keep candidates (in order) that are independent modulo ``base`` and earlier keeps."""
    base = list(base or [])
    allp = base + candidates
    monos = {m: t for t, m in enumerate(sorted({m for p in allp for m in p.terms}))}
    if not monos:
        return []
    B = _vectors(base, monos)
    r = rank(F, B) if len(base) else 0
    kept: list[Poly] = []
    seen: set = set()
    for p in candidates:
        if not p:
            continue
        mp = p.monic()
        if mp in seen:
            continue
        seen.add(mp)
        trial = np.vstack([B, _vectors([p], monos)])
        r2 = rank(F, trial)
        if r2 > r:
            B, r = trial, r2
            kept.append(mp)
    return kept


def in_span(F: FieldCtx, polys: list[Poly], target: Poly) -> bool:
    if not target:
        return True
    monos = {m: t for t, m in enumerate(sorted({m for p in polys + [target] for m in p.terms}))}
    B = _vectors(polys, monos)
    r = rank(F, B) if polys else 0
    return rank(F, np.vstack([B, _vectors([target], monos)])) == r


def linear_part(F: FieldCtx, raw: list[Poly], m: int) -> list[Poly]:
    """Linear forms ``L`` forced by a system of quadrics (sigma = id).

    ``L`` is returned when ``x_v * L`` lies in the span of ``raw`` for every
    variable ``x_v``; in characteristic 2 it suffices that ``L^2`` does.  In
    both cases ``L`` vanishes on every nonzero common zero of ``raw``.
    """
    from .linalg import kernel_basis, span_basis

    basis = _quad_basis(m)
    R = _vectors(raw, basis) if raw else np.zeros((0, len(basis)), dtype=np.int64)
    K = kernel_basis(F, R) if R.shape[0] else np.eye(len(basis), dtype=np.int64)
    # K v = 0  <=>  v in rowspan(R)
    if F.p == 2:
        # L^2 = sum c_v^2 x_v^2: linear in d = c^2
        S = np.zeros((len(basis), m), dtype=np.int64)
        for v in range(m):
            S[basis[(v, v)], v] = 1
        sol = kernel_basis(F, F.matmul(K, S)) if K.shape[0] else np.eye(m, dtype=np.int64)
        inv_sq = F.pow(F.elements(), F.q // 2)  # square root in GF(2^k)
        sol = inv_sq[sol] if sol.size else sol
    else:
        blocks = []
        for w in range(m):
            Mw = np.zeros((len(basis), m), dtype=np.int64)
            for v in range(m):
                Mw[basis[tuple(sorted((v, w)))], v] = 1
            blocks.append(F.matmul(K, Mw) if K.shape[0] else np.zeros((0, m), dtype=np.int64))
        sys = np.vstack(blocks)
        sol = kernel_basis(F, sys) if sys.shape[0] else np.eye(m, dtype=np.int64)
    if sol.shape[0] == 0:
        return []
    return [Poly.linear(F, r) for r in span_basis(F, sol)]


def linear_multiples(F: FieldCtx, lin: list[Poly], m: int) -> list[Poly]:
    out = []
    for L in lin:
        for v in range(m):
            out.append(L * Poly.linear(F, [1 if u == v else 0 for u in range(m)]))
        if F.p == 2:
            out.append(L * L)
    return out


@dataclass
class EqnGroup:
    name: str
    polys: list[Poly]
    implied: bool = False


@dataclass
class EqnSystem:
    """Named groups of polynomials in the variables ``names``."""

    F: FieldCtx
    n: int
    names: list[str]
    groups: list[EqnGroup] = field(default_factory=list)
    layout: str = "lex"

    def generators(self) -> list[Poly]:
        return [p for g in self.groups if not g.implied for p in g.polys]

    def all_polys(self) -> list[Poly]:
        return [p for g in self.groups for p in g.polys]

    def group(self, name: str) -> EqnGroup:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(name)

    def satisfied(self, V, generators_only: bool = False) -> np.ndarray:
        """Boolean mask of rows of ``V`` on which every polynomial vanishes."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        ok = np.ones(V.shape[0], dtype=bool)
        for p in self.generators() if generators_only else self.all_polys():
            ok &= p.evaluate(V) == 0
        return ok

    def format(self) -> str:
        lines = [f"# field {self.F.spec}", f"# vars x_i_j {self.layout} n={self.n}"]
        for g in self.groups:
            lines.append(f"# group {g.name}" + (" implied" if g.implied else ""))
            lines.extend(p.format(self.names) for p in g.polys)
        return "\n".join(lines) + "\n"

    def generator_strings(self) -> list[str]:
        return [p.format(self.names) for p in self.generators()]


def variable_names(n: int, layout: str = "lex") -> list[str]:
    if layout == "lex":
        return [f"x_{i + 1}_{j + 1}" for i in range(n) for j in range(i + 1, n)]
    if layout == "sym":
        return [f"x_{i + 1}_{j + 1}" for i in range(n) for j in range(i, n)]
    raise EqnParseError(f"unknown variable layout {layout!r}")


def _split_terms(s: str) -> list[tuple[str, str]]:
    out, depth, cur, sign = [], 0, "", "+"
    s = s.strip()
    if s.startswith("-"):
        sign, s = "-", s[1:]
    elif s.startswith("+"):
        s = s[1:]
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith("^"):
            out.append((sign, cur.strip()))
            sign, cur = ch, ""
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def parse_poly(F: FieldCtx, names: list[str], text: str) -> Poly:
    idx = {nm: t for t, nm in enumerate(names)}
    m = len(names)
    terms: dict[Monomial, int] = {}
    for sign, body in _split_terms(text):
        coef = 1
        mono: list[int] = []
        for tok in body.split("*"):
            tok = tok.strip()
            if not tok:
                raise EqnParseError(f"empty factor in {body!r}")
            if tok.startswith("("):
                coef = int(F.mul(coef, F.parse(tok[1:-1])))
                continue
            if tok.isdigit():
                coef = int(F.mul(coef, F.from_int(int(tok))))
                continue
            base, _, exp = tok.partition("^")
            if base not in idx:
                raise EqnParseError(f"unknown variable {base!r}")
            v = idx[base]
            if exp == "q":
                mono.append(m + v)
            elif exp:
                mono.extend([v] * int(exp))
            else:
                mono.append(v)
        if sign == "-":
            coef = int(F.neg(coef))
        key = tuple(sorted(mono))
        terms[key] = int(F.add(terms.get(key, 0), coef))
    return Poly(F, m, terms)


def parse_eqn_system(text: str) -> EqnSystem:
    F = None
    n = None
    layout = "lex"
    groups: list[EqnGroup] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if not words:
                continue
            if words[0] == "field":
                F = parse_field(words[1])
            elif words[0] == "vars":
                layout = words[2] if len(words) > 2 else "lex"
                for w in words[3:]:
                    if w.startswith("n="):
                        n = int(w[2:])
            elif words[0] == "group":
                groups.append(EqnGroup(words[1], [], "implied" in words[2:]))
            continue
        if not groups:
            groups.append(EqnGroup("main", []))
        groups[-1].polys.append(line)  # type: ignore[arg-type]
    if F is None or n is None:
        raise EqnParseError("missing '# field' or '# vars ... n=' header")
    names = variable_names(n, layout)
    for g in groups:
        g.polys = [parse_poly(F, names, s) for s in g.polys]  # type: ignore[arg-type]
    return EqnSystem(F, n, names, groups, layout)
