"""Represented matroids, subset bitmasks, simplicial complexes and constructors.

A subset of the ground set ``{0, ..., n-1}`` is an ``int`` bitmask (bit ``i``
set means element ``i`` is present).  :class:`LinearMatroid` wraps a list of
column vectors over a :class:`~matrigid.gf.FiniteField` and answers rank,
closure and flat queries.  For ground sets up to :data:`TABLE_LIMIT` the rank
of every subset is tabulated once and reused.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    FieldTooSmall,
    GroundSetTooLarge,
    IntegerSlope,
    BadSlope,
    VertexOutOfRange,
)
from .gf import Echelon, FFMatrix, FiniteField, field_new, nullspace_basis, rref

TABLE_LIMIT = 16
FLATS_LIMIT = 25


# ---------------------------------------------------------------------------
# bitmask helpers
# ---------------------------------------------------------------------------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        mask |= 1 << i
    return mask


def elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# simplicial complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Complex:
    """A simplicial complex on ``{0..n-1}`` stored as its full face set."""

    n: int
    faces: frozenset[int]

    def __post_init__(self):
        full = (1 << self.n) - 1
        if any(f & ~full for f in self.faces):
            raise ValueError("face outside the ground set")

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[int]) -> Complex:
        faces = frozenset(faces)
        for f in faces:
            for i in elements(f):
                if f & ~(1 << i) not in faces:
                    raise ValueError(f"face set is not closed downward at {f}")
        return cls(n, faces)

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[int]) -> Complex:
        faces: set[int] = set()
        for facet in facets:
            if facet in faces:
                continue
            faces.update(submasks(facet))
        return cls(n, frozenset(faces))

    @classmethod
    def uniform(cls, r: int, n: int) -> Complex:
        """The independence complex of U(r, n): all subsets of size <= r."""
        return cls(n, frozenset(m for m in range(1 << n) if popcount(m) <= r))

    @classmethod
    def simplex(cls, n: int) -> Complex:
        return cls(n, frozenset(range(1 << n)))

    def __contains__(self, mask: int) -> bool:
        return mask in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __le__(self, other: Complex) -> bool:
        return self.n == other.n and self.faces <= other.faces

    def __lt__(self, other: Complex) -> bool:
        return self.n == other.n and self.faces < other.faces

    @property
    def dimension_rank(self) -> int:
        """Size of a largest face."""
        return max((popcount(f) for f in self.faces), default=0)

    def facets(self) -> list[int]:
        out = []
        for f in self.faces:
            free = ((1 << self.n) - 1) & ~f
            if not any(f | (1 << i) in self.faces for i in elements(free)):
                out.append(f)
        return sorted(out, key=lambda m: (popcount(m), m))

    def is_full(self) -> bool:
        return len(self.faces) == 1 << self.n

    def first_difference(self, other: Complex) -> int | None:
        """Some mask in exactly one of the two complexes, or None if equal."""
        diff = self.faces ^ other.faces
        return min(diff, key=lambda m: (popcount(m), m)) if diff else None

    def to_lines(self, header: dict | None = None) -> list[str]:
        import json

        head = {"n": self.n}
        head.update(header or {})
        return [json.dumps(head, sort_keys=True)] + [str(m) for m in sorted(self.faces)]


# ---------------------------------------------------------------------------
# linear matroids
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearMatroid:
    """The column matroid of vectors ``columns[0..n-1]`` in ``F^r_ambient``."""

    field: FiniteField
    columns: tuple[tuple[int, ...], ...]
    r_ambient: int
    name: str = ""

    def __post_init__(self):
        for c in self.columns:
            if len(c) != self.r_ambient:
                raise DimensionMismatch(
                    f"column of length {len(c)} in ambient dimension {self.r_ambient}"
                )
            if any(not 0 <= x < self.field.q for x in c):
                raise ValueError("column entries must be reduced field elements")

    def __repr__(self) -> str:
        label = self.name or "LinearMatroid"
        return f"<{label}: n={self.n}, rank={self.rank}, over {self.field!r}>"

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def matrix(self) -> FFMatrix:
        return FFMatrix.from_columns(self.field, self.columns, self.r_ambient)

    # rank oracle -----------------------------------------------------------

    def rank_table(self) -> bytearray:
        """Ranks of all ``2^n`` subsets, indexed by bitmask."""
        return self._rank_table

    @cached_property
    def _rank_table(self) -> bytearray:
        n = self.n
        if n > 24:
            raise GroundSetTooLarge(f"rank table for n={n}")
        table = bytearray(1 << n)
        ech = Echelon(self.field, self.r_ambient)
        cols = self.columns

        # depth-first over subsets, extending by increasing element index
        def visit(mask: int, start: int) -> None:
            rk = len(ech)
            for i in range(start, n):
                child = mask | (1 << i)
                if ech.add(cols[i]):
                    table[child] = rk + 1
                    visit(child, i + 1)
                    ech.pop()
                else:
                    table[child] = rk
                    visit(child, i + 1)

        visit(0, 0)
        return table

    def _has_table(self) -> bool:
        return "_rank_table" in self.__dict__

    def rank_of(self, A: int) -> int:
        if self._has_table() or self.n <= TABLE_LIMIT:
            return self._rank_table[A]
        ech = Echelon(self.field, self.r_ambient)
        for i in elements(A):
            ech.add(self.columns[i])
        return len(ech)

    @cached_property
    def rank(self) -> int:
        return self.rank_of(self.ground)

    def is_independent(self, A: int) -> bool:
        return self.rank_of(A) == popcount(A)

    @cached_property
    def loops(self) -> int:
        return mask_of(i for i, c in enumerate(self.columns) if not any(c))

    def closure(self, A: int) -> int:
        """All elements whose column lies in the span of the columns of ``A``."""
        if self._has_table() or self.n <= TABLE_LIMIT:
            table = self._rank_table
            rk = table[A]
            return A | mask_of(i for i in range(self.n) if table[A | (1 << i)] == rk)
        ech = Echelon(self.field, self.r_ambient)
        for i in elements(A):
            ech.add(self.columns[i])
        return A | mask_of(i for i, c in enumerate(self.columns) if ech.contains(c))

    def flats(self, within: int | None = None) -> list[int]:
        """All flats, sorted by size then mask.

        With ``within=A`` the flats of the restriction to ``A`` are returned
        (sets of the form ``closure(B) & A``).  Flats are generated by walking
        the lattice upward from the closure of the empty set.
        """
        if self.n > FLATS_LIMIT:
            raise GroundSetTooLarge(f"flat enumeration for n={self.n}")
        A = self.ground if within is None else within
        bottom = self.closure(0) & A
        seen = {bottom}
        frontier = [bottom]
        while frontier:
            nxt = []
            for F in frontier:
                for i in elements(A & ~F):
                    G = self.closure(F | (1 << i)) & A
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
            frontier = nxt
        return sorted(seen, key=lambda m: (popcount(m), m))

    def independence_complex(self) -> Complex:
        table = self._rank_table
        return Complex(self.n, frozenset(m for m in range(1 << self.n) if table[m] == popcount(m)))

    def circuits(self) -> list[int]:
        table = self._rank_table
        out = []
        for m in range(1, 1 << self.n):
            k = popcount(m)
            if table[m] == k - 1 and all(table[m & ~(1 << i)] == k - 1 for i in elements(m)):
                out.append(m)
        return sorted(out, key=lambda m: (popcount(m), m))


# ---------------------------------------------------------------------------
# construction and minors
# ---------------------------------------------------------------------------

def from_matrix(field: FiniteField, columns: Sequence[Sequence[int]], r_ambient: int | None = None,
                name: str = "") -> LinearMatroid:
    """Matroid of the given column vectors; integer entries are reduced into the field."""
    columns = [tuple(field.from_int(x) if field.s == 1 else x for x in c) for c in columns]
    if r_ambient is None:
        if not columns:
            raise DimensionMismatch("ambient dimension needed for an empty ground set")
        r_ambient = len(columns[0])
    return LinearMatroid(field, tuple(columns), r_ambient, name)


def spanning_reduction(M: LinearMatroid) -> LinearMatroid:
    """Re-express the columns in coordinates on their own span (ambient dim = rank)."""
    if M.n == 0:
        return LinearMatroid(M.field, (), 0, M.name)
    reduced, pivots = rref(M.matrix())
    cols = tuple(reduced.column(j) for j in range(M.n))
    return LinearMatroid(M.field, cols, len(pivots), M.name)


def delete(M: LinearMatroid, A: int) -> LinearMatroid:
    keep = [c for i, c in enumerate(M.columns) if not A >> i & 1]
    return LinearMatroid(M.field, tuple(keep), M.r_ambient, M.name and f"{M.name}\\del")


def contract(M: LinearMatroid, A: int) -> LinearMatroid:
    """Contract ``A`` by projecting the remaining columns along span(A)."""
    F = M.field
    basis_idx = []
    ech = Echelon(F, M.r_ambient)
    for i in elements(A):
        if ech.add(M.columns[i]):
            basis_idx.append(i)
    t = len(basis_idx)
    # rows of [basis | all columns]; eliminating on the basis block first
    order = basis_idx + list(range(M.n))
    rows = [[M.columns[j][i] for j in order] for i in range(M.r_ambient)]
    from .gf import _eliminate

    pivots = _eliminate(F, rows, t, normalize=True)
    assert len(pivots) == t
    keep = [j for j in range(M.n) if not A >> j & 1]
    cols = tuple(tuple(rows[i][t + j] for i in range(t, M.r_ambient)) for j in keep)
    return LinearMatroid(F, cols, M.r_ambient - t, M.name and f"{M.name}/con")


def minor(M: LinearMatroid, op: str, A: int) -> LinearMatroid:
    if op == "delete":
        return delete(M, A)
    if op == "contract":
        return contract(M, A)
    raise ValueError(f"unknown minor operation {op!r}")


def dual(M: LinearMatroid) -> LinearMatroid:
    """Orthogonal-complement representation; bases are complements of bases."""
    S = spanning_reduction(M)
    if S.n == 0:
        return LinearMatroid(M.field, (), 0, "")
    if S.r_ambient == 0:
        null = [tuple(int(i == j) for j in range(S.n)) for i in range(S.n)]
    else:
        null = nullspace_basis(S.matrix())
    k = len(null)
    cols = tuple(tuple(null[i][j] for i in range(k)) for j in range(S.n))
    return LinearMatroid(M.field, cols, k, M.name and f"{M.name}*")


def direct_sum(M1: LinearMatroid, M2: LinearMatroid) -> LinearMatroid:
    if M1.field != M2.field:
        raise FieldMismatch(f"{M1.field!r} vs {M2.field!r}")
    z1, z2 = (0,) * M1.r_ambient, (0,) * M2.r_ambient
    cols = tuple(c + z2 for c in M1.columns) + tuple(z1 + c for c in M2.columns)
    return LinearMatroid(M1.field, cols, M1.r_ambient + M2.r_ambient)


def parallel_extension(M: LinearMatroid, t: int) -> LinearMatroid:
    """``t`` consecutive copies of each column; copy ``c`` of element ``i`` is ``i*t + c``."""
    cols = tuple(c for c in M.columns for _ in range(t))
    return LinearMatroid(M.field, cols, M.r_ambient, M.name and f"{t}{M.name}")


def clone_element(M: LinearMatroid, e: int) -> LinearMatroid:
    """Append an exact copy of column ``e`` as element ``n``."""
    return LinearMatroid(M.field, M.columns + (M.columns[e],), M.r_ambient, M.name)


# ---------------------------------------------------------------------------
# named examples
# ---------------------------------------------------------------------------

DEFAULT_FIELD_P = 10007


def _default_field(field: FiniteField | None) -> FiniteField:
    return field if field is not None else field_new(DEFAULT_FIELD_P)


def graphic(n_vertices: int, edges: Sequence[Sequence[int]], field: FiniteField | None = None,
            name: str = "") -> LinearMatroid:
    """Columns ``e_i - e_j`` in ``F^{n_vertices}`` for each edge ``{i, j}``."""
    F = field if field is not None else field_new(2)
    cols = []
    for i, j in edges:
        if not (0 <= i < n_vertices and 0 <= j < n_vertices):
            raise VertexOutOfRange(f"edge ({i}, {j}) with {n_vertices} vertices")
        v = [0] * n_vertices
        if i != j:
            v[i] = F.one
            v[j] = F.neg(F.one)
        cols.append(tuple(v))
    return LinearMatroid(F, tuple(cols), n_vertices, name or "graphic")


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def k4(field: FiniteField | None = None) -> LinearMatroid:
    return graphic(4, complete_graph_edges(4), field, "M(K4)")


def k4_minus_edge(field: FiniteField | None = None) -> LinearMatroid:
    return graphic(4, complete_graph_edges(4)[:-1], field, "M(K4-e)")


def k3(field: FiniteField | None = None) -> LinearMatroid:
    return graphic(3, complete_graph_edges(3), field, "M(K3)")


def uniform(r: int, n: int, field: FiniteField | None = None) -> LinearMatroid:
    """U(r, n) from Vandermonde columns ``(1, t, ..., t^{r-1})`` at distinct ``t``.

    When ``n = q + 1`` the column ``(0, ..., 0, 1)`` (the point at infinity)
    is appended, which keeps every ``r`` columns independent.  ``r = n`` uses
    the identity and ``r <= 1`` has no field-size requirement.
    """
    F = _default_field(field)
    if not 0 <= r <= n:
        raise ValueError(f"U({r},{n}) needs 0 <= r <= n")
    if r == 0:
        cols = [()] * n
    elif r == 1:
        cols = [(1,)] * n
    elif r == n:
        cols = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    else:
        if n > F.q + 1:
            raise FieldTooSmall(f"U({r},{n}) needs a field with at least {n - 1} elements")
        points = list(range(min(n, F.q)))
        cols = [tuple(F.pow(t, k) if k else 1 for k in range(r)) for t in points]
        if n == F.q + 1:
            cols.append(tuple(int(k == r - 1) for k in range(r)))
    M = LinearMatroid(F, tuple(tuple(c) for c in cols), r, f"U({r},{n})")
    if n <= 12:
        table = M.rank_table()
        assert all(table[m] == min(popcount(m), r) for m in range(1 << n)), "uniform check failed"
    return M


def isthmus(field: FiniteField | None = None) -> LinearMatroid:
    return LinearMatroid(_default_field(field), ((1,),), 1, "isthmus")


def loop(field: FiniteField | None = None) -> LinearMatroid:
    return LinearMatroid(_default_field(field), ((),), 0, "loop")


def fano() -> LinearMatroid:
    """The 7 nonzero vectors of GF(2)^3; element ``i`` is the binary digits of ``i + 1``."""
    F = field_new(2)
    cols = tuple(tuple((v >> b) & 1 for b in range(3)) for v in range(1, 8))
    return LinearMatroid(F, cols, 3, "Fano")


GRID_E = [(1, 0, 0), (1, 0, 1), (1, 0, 2), (1, 1, 0), (1, 1, 1), (1, 1, 2), (1, 2, 0), (1, 2, 1), (1, 2, 2)]
GRID_E_PRIME = [(1, 0, 0), (1, 0, 1), (1, 0, 3), (1, 2, 0), (1, 2, 1), (1, 2, 3), (1, 3, 0), (1, 4, 1), (1, 6, 3)]


def grid_examples(field: FiniteField | None = None) -> tuple[LinearMatroid, LinearMatroid]:
    """The two nine-point planar configurations, embedded in a prime field with p > 7."""
    F = _default_field(field)
    if F.s != 1 or F.p <= 7:
        raise FieldTooSmall("grid examples need a prime field of characteristic > 7")
    M = from_matrix(F, GRID_E, name="grid")
    Mp = from_matrix(F, GRID_E_PRIME, name="grid'")
    return M, Mp


def lines_of_size(M: LinearMatroid, rank: int, size: int) -> list[int]:
    return [f for f in M.flats() if M.rank_of(f) == rank and popcount(f) == size]


def counterexample_parameters(m: Fraction) -> tuple[int, int, int]:
    """``(a, b, c)`` for the non-matroidal Laman example at non-integer slope ``m``.

    Searches ``b = 1, 2, ...`` and, for each, ``r = 1..b`` for the first pair with
    ``(2r-1)/(2b-1) < m - floor(m) <= r/b``; then ``a = b*floor(m) + r``.
    """
    m = Fraction(m)
    if m <= 1:
        raise BadSlope(f"slope {m} must exceed 1")
    if m.denominator == 1:
        raise IntegerSlope(f"slope {m} is an integer")
    c = m.numerator // m.denominator
    frac = m - c
    b = 1
    while True:
        for r in range(1, b + 1):
            if Fraction(2 * r - 1, 2 * b - 1) < frac <= Fraction(r, b):
                return b * c + r, b, c
        b += 1


def laman_counterexample(m, field: FiniteField | None = None, seed: int = 0,
                         max_tries: int = 50) -> LinearMatroid:
    """The represented matroid ``X u Y1 u Y2`` in ``F^{2b-1}`` whose m-Laman complex is not a matroid.

    ``X`` holds ``c`` distinct multiples of the line ``V1 & V2 = <e_0>``;
    ``Y_i`` are ``a - c`` random vectors of the ``b``-dimensional subspaces
    ``V1 = <e_0..e_{b-1}>`` and ``V2 = <e_0, e_b..e_{2b-2}>``.  Random choices
    are resampled until every ``J`` inside ``Y_i`` has rank ``min(|J|, b)`` and
    adding a point of ``X`` raises that to ``min(|J|+1, b)``.
    """
    F = _default_field(field)
    a, b, c = counterexample_parameters(Fraction(m))
    dim = 2 * b - 1
    if F.q <= c:
        raise FieldTooSmall(f"need {c} distinct nonzero scalars")
    rng = random.Random(f"laman-counterexample:{seed}")
    V1 = list(range(b))
    V2 = [0] + list(range(b, dim))
    X = [tuple(F.from_int(k + 1) if i == 0 else 0 for i in range(dim)) for k in range(c)]
    k = a - c
    for _ in range(max_tries):
        Ys = []
        for basis in (V1, V2):
            Y = []
            for _ in range(k):
                v = [0] * dim
                for i in basis:
                    v[i] = F.random(rng)
                Y.append(tuple(v))
            Ys.append(Y)
        cols = tuple(X + Ys[0] + Ys[1])
        M = LinearMatroid(F, cols, dim, f"M_{a},{b},{c}")
        if _generic_enough(M, c, k, b):
            return M
    raise FieldTooSmall(f"no generic choice found in {max_tries} tries over {F!r}")


def _generic_enough(M: LinearMatroid, c: int, k: int, b: int) -> bool:
    x = 1 if c else 0
    for start in (c, c + k):
        Y = mask_of(range(start, start + k))
        for J in submasks(Y):
            size = popcount(J)
            if M.rank_of(J) != min(size, b):
                return False
            if x and J and M.rank_of(J | x) != min(size + 1, b):
                return False
    return True
