"""Laman independence for rational slopes, Laman and slope complexes, exchange checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadDimensions, BadSlope, EpsOutOfRange, GroundSetTooLarge, LoopPresent
from .matroid import Complex, LinearMatroid, elements, popcount, submasks

COMPLEX_LIMIT = 22
BRUTE_CHECK_LIMIT = 15


@dataclass(frozen=True)
class RationalSlope:
    """A slope ``num/den >= 1`` in lowest terms, or infinity (``den == 0``).

    Slope 1 is admitted so that the integer family starts at ``d = 1``, where
    Laman independence is plain independence.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den == 0:
            if self.num != 1:
                raise BadSlope("infinity is stored as 1/0")
            return
        if self.den < 0 or math.gcd(self.num, self.den) != 1:
            raise BadSlope(f"{self.num}/{self.den} is not a reduced positive fraction")
        if self.num < self.den:
            raise BadSlope(f"slope {self.num}/{self.den} is below 1")

    @classmethod
    def of(cls, value) -> RationalSlope:
        """Accepts a RationalSlope, int, Fraction, or strings like ``"5/2"``, ``"3"``, ``"inf"``."""
        if isinstance(value, RationalSlope):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "infinity", "oo"):
                return cls.infinity()
            try:
                value = Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise BadSlope(f"cannot read slope {value!r}") from exc
        if isinstance(value, float):
            raise BadSlope("floating-point slopes are not accepted; pass a fraction")
        frac = Fraction(value)
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def infinity(cls) -> RationalSlope:
        return cls(1, 0)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise BadSlope("infinite slope has no fraction value")
        return Fraction(self.num, self.den)

    def strictly_exceeds(self, rank: int, size: int) -> bool:
        """The integer test ``m * rank > size``."""
        if self.is_infinite:
            return rank > 0 or size == 0
        return self.num * rank > self.den * size

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"


@dataclass(frozen=True)
class LamanReport:
    independent: bool
    witness: int = 0

    def __bool__(self) -> bool:
        return self.independent


def _violates(m: RationalSlope, rank: int, size: int) -> bool:
    return size > 0 and not m.strictly_exceeds(rank, size)


def laman_brute(M: LinearMatroid, m, A: int) -> LamanReport:
    """All-subsets oracle: returns the smallest violating subset if any."""
    m = RationalSlope.of(m)
    bad = [B for B in submasks(A) if _violates(m, M.rank_of(B), popcount(B))]
    if not bad:
        return LamanReport(True, 0)
    return LamanReport(False, min(bad, key=lambda B: (popcount(B), B)))


def is_laman_independent(M: LinearMatroid, m, A: int | None = None, check: bool = True) -> LamanReport:
    """Whether every nonempty ``A' <= A`` satisfies ``m * r(A') > |A'|``.

    Only flats of the restriction to ``A`` are examined, since replacing ``A'``
    by its closure within ``A`` keeps the rank and can only grow the size.
    The witness is a violating flat of the restriction (or a loop for
    infinite slope).  With ``check`` set and ``|A| <= 15`` the answer is
    compared against the all-subsets oracle.
    """
    m = RationalSlope.of(m)
    A = M.ground if A is None else A
    if m.is_infinite:
        loops = M.loops & A
        return LamanReport(not loops, loops & -loops)
    witness = 0
    for F in M.flats(within=A):
        if _violates(m, M.rank_of(F), popcount(F)):
            witness = F
            break
    report = LamanReport(witness == 0, witness)
    if check and popcount(A) <= BRUTE_CHECK_LIMIT:
        assert laman_brute(M, m, A).independent == report.independent, "flat test disagrees with brute force"
    return report


def laman_complex(M: LinearMatroid, m, facets: bool = False) -> Complex | list[int]:
    """The complex of m-Laman independent sets (or its facets, sorted)."""
    m = RationalSlope.of(m)
    n = M.n
    if n > COMPLEX_LIMIT:
        raise GroundSetTooLarge(f"Laman complex for n={n}")
    if m.is_infinite:
        loops = M.loops
        faces = frozenset(A for A in range(1 << n) if not A & loops)
    else:
        table = M.rank_table()
        num, den = m.num, m.den
        face = bytearray(1 << n)
        face[0] = 1
        size = [0] * (1 << n)
        for A in range(1, 1 << n):
            low = A & -A
            size[A] = size[A ^ low] + 1
            if num * table[A] <= den * size[A]:
                continue
            B = A
            ok = True
            while B:
                bit = B & -B
                if not face[A ^ bit]:
                    ok = False
                    break
                B ^= bit
            face[A] = ok
        faces = frozenset(A for A in range(1 << n) if face[A])
    C = Complex(n, faces)
    return C.facets() if facets else C


def slope_to_laman(k: int, d: int) -> RationalSlope:
    """The slope ``d / (d - k)`` whose Laman complex is the (k, d)-slope complex."""
    if not (isinstance(k, int) and isinstance(d, int)) or not 0 < k < d:
        raise BadDimensions(f"need integers 0 < k < d, got k={k}, d={d}")
    return RationalSlope.of(Fraction(d, d - k))


def slope_complex(M: LinearMatroid, k: int, d: int, facets: bool = False) -> Complex | list[int]:
    return laman_complex(M, slope_to_laman(k, d), facets)


@dataclass(frozen=True)
class ExchangeReport:
    """Outcome of the augmentation-axiom check; ``pair`` is a violating ``(I, J)``."""

    passed: bool
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.passed


def verify_exchange(C: Complex) -> ExchangeReport:
    """Check that for faces ``|I| < |J|`` some ``x`` in ``J - I`` extends ``I``.

    For each face ``I`` let ``ext(I)`` be the elements that extend it.  The
    axiom fails at ``I`` exactly when the largest face avoiding ``ext(I)`` is
    bigger than ``I``; that largest face is read from a table of maximum face
    size inside every subset.
    """
    n = C.n
    if n > COMPLEX_LIMIT:
        raise GroundSetTooLarge(f"exchange check for n={n}")
    faces = C.faces
    full = (1 << n) - 1
    best_size = [0] * (1 << n)
    best = [0] * (1 << n)
    for S in range(1, 1 << n):
        if S in faces:
            best_size[S] = popcount(S)
            best[S] = S
            continue
        B = S
        while B:
            bit = B & -B
            T = S ^ bit
            if best_size[T] > best_size[S]:
                best_size[S] = best_size[T]
                best[S] = best[T]
            B ^= bit
    for I in sorted(faces, key=lambda f: (popcount(f), f)):
        ext = 0
        for x in elements(full & ~I):
            if I | (1 << x) in faces:
                ext |= 1 << x
        avoid = full & ~ext
        if best_size[avoid] > popcount(I):
            return ExchangeReport(False, (I, best[avoid]))
    return ExchangeReport(True, None)


def check_exchange_pair(C: Complex, pair: tuple[int, int]) -> bool:
    """True when ``pair`` genuinely violates the augmentation axiom."""
    I, J = pair
    if I not in C or J not in C or popcount(I) >= popcount(J):
        return False
    return not any(I | (1 << x) in C for x in elements(J & ~I))


def default_eps(M: LinearMatroid, m) -> Fraction:
    m = RationalSlope.of(m)
    return Fraction(1, m.den * M.rank + 1)


def polymatroid_rank(M: LinearMatroid, m, A: int, eps=None, brute: bool = False) -> Fraction:
    """``min over A' <= A of (m - eps) r(A') + |A - A'|`` in exact arithmetic.

    ``eps`` must lie in ``(0, 1/(den * r(M)))`` where ``m = num/den``; in that
    range ``m r > |A'|`` and ``(m - eps) r >= |A'|`` agree for every nonempty
    ``A'``.  The minimum is attained on a flat of the restriction to ``A``, which
    is what the default path scans; ``brute`` scans every subset instead.
    """
    m = RationalSlope.of(m)
    if m.is_infinite:
        raise BadSlope("polymatroid rank needs a finite slope")
    if M.loops:
        raise LoopPresent("polymatroid rank is defined for loopless matroids")
    eps = default_eps(M, m) if eps is None else Fraction(eps)
    upper = Fraction(1, m.den * M.rank) if M.rank else None
    if eps <= 0 or (upper is not None and eps >= upper):
        raise EpsOutOfRange(f"eps={eps} outside (0, {upper if upper is not None else 'inf'})")
    coef = m.as_fraction() - eps
    size = popcount(A)
    candidates = submasks(A) if brute else M.flats(within=A)
    return min(coef * M.rank_of(B) + size - popcount(B) for B in candidates)
