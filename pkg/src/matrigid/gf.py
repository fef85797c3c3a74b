"""Exact arithmetic and linear algebra over GF(p) and GF(p^s).

Field elements are stored as plain integers in ``range(q)``.  For a prime
field the integer is the residue itself.  For an extension field the integer
encodes the coefficient vector ``(c_0, ..., c_{s-1})`` of a polynomial in the
generator ``x`` in base ``p`` (``c_0`` least significant), so over GF(2^s)
the encoding is the usual bit-packed polynomial.

Matrices (:class:`FFMatrix`) and the incremental :class:`Echelon` basis work on
these raw integers; :class:`FieldElement` is a thin operator-overloading
wrapper for interactive use and tests.
"""

from __future__ import annotations

import functools
from random import Random
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2

from .errors import DimensionMismatch, FieldMismatch, NoIrreducibleFound, NonPrimeModulus


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), used only for choosing a modulus
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, f, p)


def _poly_powmod(base: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _bpoly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _bpoly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bpoly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` (low-to-high coefficients)."""
    s = len(f) - 1
    if s == 1:
        return True
    if f[0] == 0:
        return False
    if p <= 64 and any(sum(c * pow(t, i, p) for i, c in enumerate(f)) % p == 0 for t in range(p)):
        return False
    if p == 2:
        fi = sum(1 << i for i, c in enumerate(f) if c)

        def frob(k: int) -> int:
            h = 2
            for _ in range(k):
                h = _bpoly_mod(_clmul(h, h), fi)
            return h

        if frob(s) != 2:
            return False
        return all(_bpoly_gcd(fi, frob(s // l) ^ 2) == 1 for l in _prime_factors(s))

    def frob(k: int) -> list[int]:
        h = [0, 1]
        for _ in range(k):
            h = _poly_powmod(h, p, f, p)
        return h

    # cheap rejection of polynomials with a root: gcd(x^p - x, f) != 1
    h = frob(1) + [0, 0]
    h[1] = (h[1] - 1) % p
    if len(_poly_gcd(f, _trim(h), p)) != 1:
        return False
    if _trim(frob(s)) != [0, 1]:
        return False
    for l in _prime_factors(s):
        h = frob(s // l)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(f, _trim(h), p)) != 1:
            return False
    return True


def _least_irreducible(p: int, s: int) -> tuple[int, ...]:
    # candidates x^s + t(x), ordered by the base-p integer value of t
    for t in range(p**s):
        coeffs, u = [], t
        for _ in range(s):
            u, c = divmod(u, p)
            coeffs.append(c)
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise NoIrreducibleFound(f"no monic irreducible of degree {s} over GF({p})")


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class FiniteField:
    """The finite field GF(p^s) with a fixed monic irreducible modulus.

    Build instances with :func:`field_new`; elements are ints in ``range(q)``.
    """

    p: int
    s: int
    q: int
    modulus: tuple[int, ...]
    zero = 0
    one = 1

    def __init__(self, p: int, s: int, modulus: tuple[int, ...]):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = modulus

    @property
    def modulus_poly(self) -> tuple[int, ...]:
        """Coefficients ``(c_0, ..., c_s)`` of the modulus, constant term first."""
        return self.modulus

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.q

    def __repr__(self) -> str:
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.s})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.modulus))

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coeffs(value))

    # encoding
    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> GF(q)."""
        return n % self.p

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.s:
            raise DimensionMismatch(f"{len(coeffs)} coefficients for {self!r}")
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + c % self.p
        return value

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    # arithmetic, overridden by the concrete subclasses
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def random(self, rng: Random) -> int:
        return rng.randrange(self.q)

    def random_nonzero(self, rng: Random) -> int:
        return rng.randrange(1, self.q)

    def elements(self) -> range:
        return range(self.q)


class _PrimeField(FiniteField):
    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)


class _BinaryField(FiniteField):
    def __init__(self, p, s, modulus):
        super().__init__(p, s, modulus)
        self._f = sum(1 << i for i, c in enumerate(modulus) if c)

    def from_int(self, n):
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if not a or not b:
            return 0
        return _bpoly_mod(_clmul(a, b), self._f)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        # extended Euclid on bit-packed polynomials
        r0, r1, s0, s1 = self._f, a, 0, 1
        while r1:
            shift = r0.bit_length() - r1.bit_length()
            if shift < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << shift
            s0 ^= s1 << shift
        # r0 == 1 here since the modulus is irreducible
        return _bpoly_mod(s0, self._f)


class _ExtensionField(FiniteField):
    def __init__(self, p, s, modulus):
        super().__init__(p, s, modulus)
        self._tail = [(-c) % p for c in modulus[:-1]]
        self._powers = [p**i for i in range(s)]

    def _decode(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.s):
            a, c = divmod(a, p)
            out.append(c)
        return out

    def _encode(self, coeffs: list[int]) -> int:
        p = self.p
        value = 0
        for c in reversed(coeffs):
            value = value * p + c % p
        return value

    def add(self, a, b):
        x, y = self._decode(a), self._decode(b)
        return self._encode([u + v for u, v in zip(x, y)])

    def sub(self, a, b):
        x, y = self._decode(a), self._decode(b)
        return self._encode([u - v for u, v in zip(x, y)])

    def neg(self, a):
        return self._encode([-u for u in self._decode(a)])

    def mul(self, a, b):
        if not a or not b:
            return 0
        p, s = self.p, self.s
        x, y = self._decode(a), self._decode(b)
        prod = [0] * (2 * s - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] += u * v
        tail = self._tail
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k] % p
            if c:
                base = k - s
                for j, t in enumerate(tail):
                    prod[base + j] += c * t
        return self._encode(prod[:s])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        p = self.p
        # extended Euclid in GF(p)[x]: keep r_i = t_i * a (mod modulus)
        r0, r1 = list(self.modulus), _trim(self._decode(a))
        t0, t1 = [], [1]
        while r1:
            quotient = [0] * max(len(r0) - len(r1) + 1, 0)
            rem = list(r0)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1):
                c = rem[-1] * inv_lead % p
                shift = len(rem) - len(r1)
                quotient[shift] = c
                for i, x in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - c * x) % p
                _trim(rem)
            prod = [0] * (len(quotient) + len(t1))
            for i, x in enumerate(quotient):
                for j, y in enumerate(t1):
                    prod[i + j] += x * y
            t_new = [((t0[i] if i < len(t0) else 0) - (prod[i] if i < len(prod) else 0)) % p
                     for i in range(max(len(t0), len(prod)))]
            r0, r1, t0, t1 = r1, rem, t1, _trim(t_new)
        # r0 is a nonzero constant because the modulus is irreducible
        scale = pow(r0[0], p - 2, p)
        return self._encode([x * scale for x in t0])


@functools.lru_cache(maxsize=None)
def field_new(p: int, s: int = 1) -> FiniteField:
    """Return GF(p^s) with the lexicographically least monic irreducible modulus.

    Candidates ``x^s + t(x)`` are scanned in increasing order of the base-p
    integer encoding of ``t`` (highest-degree coefficient most significant),
    so equal arguments always give the same modulus.
    """
    if not isinstance(p, int) or p < 2 or not gmpy2.is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be at least 1")
    if s == 1:
        return _PrimeField(p, 1, (0, 1))
    modulus = _least_irreducible(p, s)
    if p == 2:
        return _BinaryField(p, s, modulus)
    return _ExtensionField(p, s, modulus)


def field_of_order(q: int) -> FiniteField:
    """GF(q) for a prime power ``q``."""
    for p in _prime_factors(q):
        s, u = 0, q
        while u % p == 0:
            u //= p
            s += 1
        if u == 1:
            return field_new(p, s)
        break
    raise NonPrimeModulus(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        if self.field.s == 1:
            return f"{self.value} in {self.field!r}"
        return f"{list(self.coeffs)} in {self.field!r}"


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FFMatrix:
    """Dense row-major matrix of raw field elements."""

    field: FiniteField
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Sequence[Sequence[int]], cols: int | None = None) -> FFMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(field, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: FiniteField, columns: Sequence[Sequence[int]], rows: int | None = None) -> FFMatrix:
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise DimensionMismatch("ragged columns")
        return cls(field, rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> FFMatrix:
        return cls(field, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> FFMatrix:
        return cls(field, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> FFMatrix:
        return FFMatrix.from_rows(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def select_rows(self, idx: Iterable[int]) -> FFMatrix:
        return FFMatrix.from_rows(self.field, [self.row(i) for i in idx], self.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        F = self.field
        out = []
        for i in range(self.rows):
            acc = 0
            for a, b in zip(self.row(i), v):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: FFMatrix) -> FFMatrix:
        if other.rows != self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return FFMatrix.from_columns(self.field, cols, self.rows)


def _eliminate(field: FiniteField, rows: list[list[int]], cols: int, normalize: bool) -> list[int]:
    """In-place row reduction; returns pivot columns.

    Pivoting takes the first nonzero entry in each column.  With
    ``normalize=False`` the elimination is fraction-free (no inversions);
    with ``normalize=True`` the result is the reduced row echelon form.
    """
    F = field
    pivots: list[int] = []
    nrows = len(rows)
    top = 0
    prime = F.s == 1
    p = F.p
    for c in range(cols):
        if top == nrows:
            break
        found = next((i for i in range(top, nrows) if rows[i][c]), None)
        if found is None:
            continue
        rows[top], rows[found] = rows[found], rows[top]
        prow = rows[top]
        if normalize:
            inv = F.inv(prow[c])
            if prime:
                prow[:] = [x * inv % p for x in prow]
            else:
                prow[:] = [F.mul(x, inv) for x in prow]
            targets = range(nrows)
        else:
            targets = range(top + 1, nrows)
        a = prow[c]
        for i in targets:
            if i == top:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            if prime:
                if normalize:
                    row[:] = [(x - b * y) % p for x, y in zip(row, prow)]
                else:
                    row[:] = [(a * x - b * y) % p for x, y in zip(row, prow)]
            elif normalize:
                row[:] = [F.sub(x, F.mul(b, y)) for x, y in zip(row, prow)]
            else:
                row[:] = [F.sub(F.mul(a, x), F.mul(b, y)) for x, y in zip(row, prow)]
        pivots.append(c)
        top += 1
    return pivots


def rank(m: FFMatrix) -> int:
    """Row rank by fraction-free Gaussian elimination."""
    rows = m.to_rows()
    return len(_eliminate(m.field, rows, m.cols, normalize=False))


def rref(m: FFMatrix) -> tuple[FFMatrix, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    rows = m.to_rows()
    pivots = _eliminate(m.field, rows, m.cols, normalize=True)
    return FFMatrix.from_rows(m.field, rows[:len(pivots)], m.cols), pivots


def nullspace_basis(m: FFMatrix) -> list[tuple[int, ...]]:
    """Basis of the right nullspace, one vector per free column."""
    F = m.field
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [0] * m.cols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = F.neg(reduced[i, free])
        basis.append(tuple(v))
    return basis


class Echelon:
    """An incrementally grown echelon basis for span tests.

    Every stored row has a unit pivot and zeros in the pivot columns of the
    rows stored before it, so reducing a vector against the rows in insertion
    order leaves it zero exactly when it lies in their span.
    """

    __slots__ = ("field", "width", "rows", "pivots")

    def __init__(self, field: FiniteField, width: int):
        self.field = field
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.field
        v = list(v)
        if F.s == 1:
            p = F.p
            for piv, row in zip(self.pivots, self.rows):
                c = v[piv]
                if c:
                    v = [(x - c * y) % p for x, y in zip(v, row)]
        else:
            for piv, row in zip(self.pivots, self.rows):
                c = v[piv]
                if c:
                    v = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; return False (and leave the basis unchanged) if dependent."""
        w = self.reduce(v)
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return False
        self._push(w, piv)
        return True

    def _push(self, w: list[int], piv: int) -> None:
        F = self.field
        inv = F.inv(w[piv])
        if inv != 1:
            w = [F.mul(x, inv) if x else 0 for x in w]
        self.rows.append(w)
        self.pivots.append(piv)

    def pop(self) -> None:
        self.rows.pop()
        self.pivots.pop()
