"""Finite fields GF(p^k) with vectorised arithmetic.

Elements are plain integers ``0 .. q-1``: the polynomial-basis coefficient
vector ``(c_0, ..., c_{k-1})`` is stored as ``sum(c_i * p**i)``.  All
arithmetic methods accept ints or integer numpy arrays and broadcast.

The field carries one involutory automorphism ``sigma(t) = t**(p**e)``.
"""

from __future__ import annotations

import re
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

__all__ = [
    "FieldError",
    "NonPrime",
    "ReducibleModulus",
    "NonInvolutorySigma",
    "BadEpsilon",
    "FieldCtx",
    "make_field",
    "parse_field",
    "frobenius",
    "trace_value_set",
    "DEFAULT_MODULI",
]

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 1024

# low-to-high coefficients, monic
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (2, 0, 1),
}


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class NonInvolutorySigma(FieldError):
    pass


class BadEpsilon(FieldError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` (low-to-high)."""
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            for i in range(dm + 1):
                a[top - dm + i] = (a[top - dm + i] - c * m[i]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    k = len(m) - 1
    if k <= 1:
        return True
    # trial division by every monic polynomial of degree 1..k//2
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_poly_mod(list(m), g, p)):
                return False
    return True


class FieldCtx:
    """The field GF(p^k) together with ``sigma: t -> t^(p^sigma_exp)``.

    Instances are immutable; build them with :func:`make_field`.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...], sigma_exp: int):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self.sigma_exp = sigma_exp
        self._build_tables()

    # -- construction ---------------------------------------------------

    def _mul_codes(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), p))

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        if self.k == 1:
            self._exp = self._log = None
        else:
            # find a primitive element, then exp/log tables
            for g in range(2, q):
                exp = np.empty(q - 1, dtype=np.int64)
                x = 1
                for i in range(q - 1):
                    exp[i] = x
                    x = self._mul_codes(x, g)
                if len(set(exp.tolist())) == q - 1:
                    break
            else:  # pragma: no cover - q=2^k always has a primitive element
                raise FieldError("no primitive element found")
            log = np.zeros(q, dtype=np.int64)
            log[exp] = np.arange(q - 1)
            self._exp, self._log = exp, log
            self.generator = int(g)
        # digit weights for digit-wise addition
        self._weights = p ** np.arange(self.k, dtype=np.int64)
        if self.k > 1 and q <= _TABLE_LIMIT:
            a = np.arange(q)
            self._add_t = self._add_digits(a[:, None], a[None, :])
            self._mul_t = self._mul_log(a[:, None], a[None, :])
        else:
            self._add_t = self._mul_t = None
        idx = np.arange(q, dtype=np.int64)
        self._neg_t = self._neg_digits(idx)
        self._inv_t = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self._inv_t[a] = self._pow_scalar(a, q - 2)
        self._frob_t = np.array([self._pow_scalar(a, p**self.sigma_exp) for a in range(q)], dtype=np.int64)
        self._frob1_t = np.array([self._pow_scalar(a, p) for a in range(q)], dtype=np.int64)

    def _pow_scalar(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self._mul_codes(r, b) if self.k > 1 else (r * b) % self.p
            b = self._mul_codes(b, b) if self.k > 1 else (b * b) % self.p
            e >>= 1
        return r

    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._weights) % self.p

    def _add_digits(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        d = (self._digits(a) + self._digits(b)) % self.p
        return (d * self._weights).sum(-1)

    def _neg_digits(self, a):
        d = (-self._digits(a)) % self.p
        return (d * self._weights).sum(-1)

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        z = (a == 0) | (b == 0)
        la = self._log[np.where(a == 0, 1, a)]
        lb = self._log[np.where(b == 0, 1, b)]
        return np.where(z, 0, self._exp[(la + lb) % (self.q - 1)])

    # -- element encoding -------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        return [(int(a) // self.p**i) % self.p for i in range(self.k)]

    def from_coeffs(self, c) -> int:
        return int(sum((int(x) % self.p) * self.p**i for i, x in enumerate(c)))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    @property
    def char(self) -> int:
        return self.p

    @property
    def sigma_is_identity(self) -> bool:
        return self.sigma_exp % self.k == 0

    @property
    def sqrt_q(self) -> int:
        """``q0`` with ``sigma(t) = t^q0`` when sigma is the involution of GF(q0^2)."""
        return self.p ** (self.sigma_exp % self.k)

    def with_sigma(self, sigma_exp: int) -> "FieldCtx":
        return make_field(self.p, self.k, self.modulus, sigma_exp)

    def element(self, x) -> int:
        """Coerce an int or a literal string into an element code."""
        if isinstance(x, str):
            return self.parse(x)
        x = int(x)
        if self.k == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise FieldError(f"element code {x} out of range for GF({self.q})")
        return x

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return int(n) % self.p

    # -- arithmetic -------------------------------------------------------

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self._add_t is not None:
            return self._add_t[a, b]
        return self._add_digits(a, b)

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self._neg_t[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self._mul_t is not None:
            return self._mul_t[a, b]
        return self._mul_log(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv_t[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = np.ones_like(a)
        b = a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def sigma(self, a):
        """The involutory automorphism ``t -> t^(p^sigma_exp)``."""
        return self._frob_t[a]

    def frob(self, a):
        """The absolute Frobenius ``t -> t^p``."""
        return self._frob1_t[a]

    def sum(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.add(out, row)
        return out

    def dot(self, a, b, axis=-1):
        return self.sum(self.mul(a, b), axis=axis)

    def matmul(self, A, B):
        """Product over the field; both arguments may carry leading batch axes."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.k == 1:
            return (A @ B) % self.p
        n = A.shape[-1]
        out = None
        for t in range(n):
            term = self.mul(A[..., :, t, None], B[..., None, t, :])
            out = term if out is None else self.add(out, term)
        return out

    def is_square(self, a) -> bool:
        a = int(a)
        if a == 0 or self.p == 2:
            return True
        return int(self.pow(a, (self.q - 1) // 2)) == 1

    # -- literals ---------------------------------------------------------

    def format(self, a) -> str:
        """Literal for one element: an integer in prime fields, a polynomial in ``w`` otherwise."""
        a = int(a)
        if self.k == 1:
            return str(a)
        c = self.coeffs(a)
        terms = []
        for i in range(self.k - 1, -1, -1):
            if not c[i]:
                continue
            if i == 0:
                terms.append(str(c[i]))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c[i] == 1 else f"{c[i]}*{mono}")
        return "+".join(terms) if terms else "0"

    _TERM = re.compile(r"^(?:(\d+)\*?)?(w)(?:\^(\d+))?$|^(\d+)$")

    def parse(self, s: str) -> int:
        s = s.replace(" ", "")
        if not s:
            raise FieldError("empty field literal")
        neg = False
        if s.startswith("-"):
            neg, s = True, s[1:]
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        c = [0] * max(self.k, 1)
        for term in s.split("+"):
            m = self._TERM.match(term)
            if not m:
                raise FieldError(f"bad field literal {s!r}")
            if m.group(4) is not None:
                c[0] += int(m.group(4))
            else:
                deg = int(m.group(3) or 1)
                if deg >= self.k:
                    raise FieldError(f"literal {s!r} has degree >= {self.k}")
                c[deg] += int(m.group(1) or 1)
        x = self.from_coeffs(c)
        return int(self.neg(x)) if neg else x

    @property
    def spec(self) -> str:
        if self.k == 1:
            return str(self.p)
        mod = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.k}/{mod}/{self.sigma_exp}"

    def __repr__(self) -> str:
        s = "id" if self.sigma_is_identity else f"t^{self.sqrt_q}"
        return f"GF({self.q}, sigma={s})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.modulus, self.sigma_exp)
            == (other.p, other.k, other.modulus, other.sigma_exp)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus, self.sigma_exp))

    @cached_property
    def subfield_fixed_by_sigma(self) -> np.ndarray:
        e = self.elements()
        return e[self.sigma(e) == e]


@lru_cache(maxsize=None)
def _make(p: int, k: int, modulus: tuple[int, ...], sigma_exp: int) -> FieldCtx:
    return FieldCtx(p, k, modulus, sigma_exp)


def make_field(p: int, k: int = 1, modulus=None, sigma_exp: int = 0) -> FieldCtx:
    """Build GF(p^k); ``modulus`` is low-to-high and monic (default moduli are shipped).

    Raises NonPrime, ReducibleModulus or NonInvolutorySigma.
    """
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise FieldError(f"GF({p}^{k}) exceeds the supported size {MAX_ORDER}")
    if k == 1:
        modulus = (0, 1)
    else:
        if not modulus:
            if (p, k) not in DEFAULT_MODULI:
                raise FieldError(f"no default modulus for GF({p}^{k}); pass one")
            modulus = DEFAULT_MODULI[(p, k)]
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    if not 0 <= sigma_exp <= k:
        raise NonInvolutorySigma(f"sigma_exp must lie in [0, {k}]")
    if (2 * sigma_exp) % k:
        raise NonInvolutorySigma(f"t -> t^({p}^{sigma_exp}) is not an involution of GF({p}^{k})")
    F = _make(p, k, modulus, sigma_exp)
    e = F.elements()
    if not np.array_equal(F.sigma(F.sigma(e)), e):  # pragma: no cover - guarded above
        raise NonInvolutorySigma("sigma^2 != id")
    return F


def parse_field(spec: str) -> FieldCtx:
    """Parse ``p^k/modulus-coeffs/sigma_exp``; the last two parts are optional.

    >>> parse_field("2^2/1,1,1/1")
    GF(4, sigma=t^2)
    """
    parts = spec.strip().split("/")
    head = parts[0]
    if "^" in head:
        p, k = (int(x) for x in head.split("^"))
    else:
        p, k = int(head), 1
    mod = None
    if len(parts) > 1 and parts[1].strip():
        mod = [int(c) for c in parts[1].split(",")]
    sig = int(parts[2]) if len(parts) > 2 and parts[2].strip() else 0
    return make_field(p, k, mod, sig)


def frobenius(F: FieldCtx, x):
    """``x^(p^sigma_exp)``."""
    return F.sigma(x)


def trace_value_set(F: FieldCtx, eps) -> frozenset[int]:
    """``{t + eps * t^sigma : t in F}``; requires ``eps^sigma * eps == 1``."""
    eps = F.element(eps)
    if int(F.mul(F.sigma(eps), eps)) != 1:
        raise BadEpsilon(f"eps^sigma * eps != 1 for eps={F.format(eps)}")
    t = F.elements()
    return frozenset(F.add(t, F.mul(eps, F.sigma(t))).tolist())
