"""Tutte polynomials, Gaussian binomials, and the photo-count formula."""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BadArguments, BadDimensions, GroundSetTooLarge, NonIntegralResult, NonPrimeModulus
from .gf import field_of_order
from .laman import is_laman_independent
from .matroid import LinearMatroid, dual, spanning_reduction

TUTTE_LIMIT = 22


# ---------------------------------------------------------------------------
# polynomial containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TuttePoly:
    """``sum c[i, j] x^i y^j`` with integer coefficients; zero terms are dropped."""

    coeffs: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], int]) -> TuttePoly:
        return cls(tuple(sorted((k, v) for k, v in terms.items() if v)))

    @classmethod
    def one(cls) -> TuttePoly:
        return cls.from_dict({(0, 0): 1})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.as_dict().get(ij, 0)

    def __add__(self, other: TuttePoly) -> TuttePoly:
        out = Counter(self.as_dict())
        for k, v in other.coeffs:
            out[k] += v
        return TuttePoly.from_dict(out)

    def __mul__(self, other: TuttePoly) -> TuttePoly:
        out: Counter = Counter()
        for (i, j), a in self.coeffs:
            for (k, l), b in other.coeffs:
                out[i + k, j + l] += a * b
        return TuttePoly.from_dict(out)

    def shift(self, dx: int = 0, dy: int = 0) -> TuttePoly:
        """Multiply by ``x^dx y^dy``."""
        return TuttePoly(tuple(((i + dx, j + dy), c) for (i, j), c in self.coeffs))

    def swap(self) -> TuttePoly:
        return TuttePoly.from_dict({(j, i): c for (i, j), c in self.coeffs})

    def evaluate(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.coeffs)

    def substitute_q(self, x_exp: int, y_exp: int = 1) -> QPoly:
        """The univariate polynomial ``T(q^x_exp, q^y_exp)``."""
        out: Counter = Counter()
        for (i, j), c in self.coeffs:
            out[x_exp * i + y_exp * j] += c
        return QPoly.from_dict(out)

    def to_lines(self) -> list[str]:
        return [f"({i},{j}): {c}" for (i, j), c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e)
            parts.append(mono if c == 1 and mono else f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


@dataclass(frozen=True)
class QPoly:
    """Univariate integer polynomial in ``q``."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> QPoly:
        return cls(tuple(sorted((k, v) for k, v in terms.items() if v)))

    @classmethod
    def from_list(cls, coeffs: list[int]) -> QPoly:
        return cls.from_dict(dict(enumerate(coeffs)))

    def as_list(self) -> list[int]:
        if not self.coeffs:
            return []
        out = [0] * (self.degree + 1)
        for k, v in self.coeffs:
            out[k] = v
        return out

    @property
    def degree(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1][1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __add__(self, other: QPoly) -> QPoly:
        out = Counter(dict(self.coeffs))
        for k, v in other.coeffs:
            out[k] += v
        return QPoly.from_dict(out)

    def __mul__(self, other: QPoly) -> QPoly:
        out: Counter = Counter()
        for i, a in self.coeffs:
            for j, b in other.coeffs:
                out[i + j] += a * b
        return QPoly.from_dict(out)

    def shift(self, k: int) -> QPoly:
        return QPoly(tuple((i + k, c) for i, c in self.coeffs))

    def divexact(self, other: QPoly) -> QPoly:
        """Polynomial division that must leave no remainder."""
        num = self.as_list()
        den = other.as_list()
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        quot = [0] * max(len(num) - len(den) + 1, 0)
        for i in range(len(quot) - 1, -1, -1):
            c, rem = divmod(num[i + len(den) - 1], den[-1])
            if rem:
                raise NonIntegralResult("non-integral polynomial quotient")
            quot[i] = c
            for j, b in enumerate(den):
                num[i + j] -= c * b
        if any(num):
            raise NonIntegralResult("polynomial division left a remainder")
        return QPoly.from_list(quot)

    def __call__(self, q):
        return sum(c * q ** k for k, c in self.coeffs)

    def __str__(self) -> str:
        return " + ".join(f"{c}*q^{k}" for k, c in reversed(self.coeffs)) or "0"


# ---------------------------------------------------------------------------
# Tutte polynomial
# ---------------------------------------------------------------------------

def _guard(M: LinearMatroid) -> None:
    if M.n > TUTTE_LIMIT:
        raise GroundSetTooLarge(f"Tutte polynomial for n={M.n}")


def tutte_corank_nullity(M: LinearMatroid) -> TuttePoly:
    """Sum of ``(x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`` over all subsets."""
    _guard(M)
    n = M.n
    table = M.rank_table()
    full = table[(1 << n) - 1]
    size = [0] * (1 << n)
    counts: Counter = Counter()
    for A in range(1 << n):
        if A:
            size[A] = size[A & (A - 1)] + 1
        rk = table[A]
        counts[full - rk, size[A] - rk] += 1
    out: Counter = Counter()
    for (a, b), mult in counts.items():
        for i in range(a + 1):
            ci = comb(a, i) * (-1) ** (a - i)
            for j in range(b + 1):
                out[i, j] += mult * ci * comb(b, j) * (-1) ** (b - j)
    T = TuttePoly.from_dict(out)
    assert all(c > 0 for _, c in T.coeffs), "negative Tutte coefficient"
    return T


def tutte_recursive(M: LinearMatroid) -> TuttePoly:
    """Deletion and contraction of the lowest surviving element, memoized.

    A minor is described by its surviving elements ``S`` and a contracted set
    ``C``; its rank function is ``r(B | C) - r(C)``, which depends on ``C``
    only through its closure, so ``(S, closure(C))`` is the memo key.
    """
    _guard(M)
    rank = M.rank_of
    closure = M.closure
    memo: dict[tuple[int, int], TuttePoly] = {}
    x_poly = TuttePoly.from_dict({(1, 0): 1})
    y_poly = TuttePoly.from_dict({(0, 1): 1})

    def solve(S: int, C: int) -> TuttePoly:
        if S == 0:
            return TuttePoly.one()
        key = (S, C)
        hit = memo.get(key)
        if hit is not None:
            return hit
        v = S & -S
        rest = S ^ v
        if v & C:
            result = y_poly * solve(rest, C)
        elif rank(S | C) > rank(rest | C):
            result = x_poly * solve(rest, closure(C | v))
        else:
            result = solve(rest, C) + solve(rest, closure(C | v))
        memo[key] = result
        return result

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * M.n + 100))
    try:
        return solve(M.ground, closure(0))
    finally:
        sys.setrecursionlimit(limit)


def tutte(M: LinearMatroid) -> TuttePoly:
    return tutte_recursive(M)


def laman_via_tutte(M: LinearMatroid, d: int, T: TuttePoly | None = None) -> bool:
    """Whether ``T(q^(d-1), q)`` is monic of degree ``(d-1) r(M)``."""
    if not isinstance(d, int) or d < 1:
        raise BadArguments("d must be a positive integer")
    T = tutte_recursive(M) if T is None else T
    P = T.substitute_q(d - 1, 1)
    return P.degree == (d - 1) * M.rank and P.is_monic()


def laman_tutte_agrees(M: LinearMatroid, d: int) -> bool:
    return laman_via_tutte(M, d) == is_laman_independent(M, d).independent


# ---------------------------------------------------------------------------
# Gaussian binomials
# ---------------------------------------------------------------------------

def _check_dk(d: int, k: int) -> None:
    if not (isinstance(d, int) and isinstance(k, int)) or not 0 <= k <= d:
        raise BadArguments(f"need integers 0 <= k <= d, got d={d}, k={k}")


def qbinomial(d: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``GF(q)^d``."""
    _check_dk(d, k)
    if q < 2:
        raise BadArguments("q must be at least 2")
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def _qint(n: int) -> QPoly:
    return QPoly.from_list([1] * n)


def qbinomial_poly(d: int, k: int) -> QPoly:
    """``[d]!_q / ([k]!_q [d-k]!_q)`` as a polynomial, by exact division."""
    _check_dk(d, k)
    num = QPoly.from_list([1])
    den = QPoly.from_list([1])
    for i in range(k):
        num = num * _qint(d - i)
        den = den * _qint(i + 1)
    return num.divexact(den)


# ---------------------------------------------------------------------------
# photo counts
# ---------------------------------------------------------------------------

def _check_prime_power(q: int) -> None:
    try:
        field_of_order(q)
    except (NonPrimeModulus, ValueError) as exc:
        raise BadArguments(f"q={q} is not a prime power") from exc


def photo_parameters(k: int, d: int, q: int) -> tuple[int, int, int, int]:
    """``(a, b, c, dhat)``: per-element weights in the deletion-contraction recursion."""
    if not (isinstance(k, int) and isinstance(d, int)) or not 0 < k < d:
        raise BadDimensions(f"need integers 0 < k < d, got k={k}, d={d}")
    a = qbinomial(d - 1, k - 1, q)
    b = q ** k * qbinomial(d - 1, k, q)
    c = q ** k * qbinomial(d, k, q)
    dhat = qbinomial(d, k, q)
    return a, b, c, dhat


def photo_count_formula(M: LinearMatroid, k: int, d: int, q: int | None = None,
                        T: TuttePoly | None = None) -> int:
    """``a^(n-r) b^r T(c/b, dhat/a)``, times ``q^(d (r_ambient - r))`` when the columns do not span."""
    q = M.field.q if q is None else q
    _check_prime_power(q)
    a, b, c, dhat = photo_parameters(k, d, q)
    T = tutte_recursive(M) if T is None else T
    r, n = M.rank, M.n
    value = Fraction(a) ** (n - r) * Fraction(b) ** r * T.evaluate(Fraction(c, b), Fraction(dhat, a))
    value *= Fraction(q) ** (d * (M.r_ambient - r))
    if value.denominator != 1:
        raise NonIntegralResult(f"photo count evaluated to {value}")
    return value.numerator


@dataclass(frozen=True)
class DualityReport:
    left: int
    right: int

    @property
    def holds(self) -> bool:
        return self.left == self.right

    def __bool__(self) -> bool:
        return self.holds


def dual_symmetry_check(M: LinearMatroid, k: int, d: int, q: int | None = None) -> DualityReport:
    """Compare ``q^(d r) |X_(d-k,d)(dual)|`` with ``q^((d-k) n) |X_(k,d)(M)|`` on a spanning representation."""
    q = M.field.q if q is None else q
    S = spanning_reduction(M)
    D = dual(S)
    left = q ** (d * S.rank) * photo_count_formula(D, d - k, d, q)
    right = q ** ((d - k) * S.n) * photo_count_formula(S, k, d, q)
    return DualityReport(left, right)
