"""Randomized generic rigidity, hyperplane-marking and parallel complexes.

Transcendental entries are replaced by uniform random elements of a large
field with the characteristic of the input matroid.  A random specialization
can only lower ranks, so a set declared independent in any trial is truly
independent; a dependent verdict is wrong with probability at most the
Schwartz-Zippel bound recorded in :class:`GenericComplexReport`.

Vectors in ``F^r (x) F^d`` use the index ``j * r + k`` for the product of
coordinate ``k`` of the ``F^r`` factor with coordinate ``j`` of the ``F^d``
factor.  A map ``psi: F^r -> F^d`` given as a ``d x r`` matrix is flattened
row by row, so the pairing of ``v (x) x`` with ``psi`` is ``<x, psi(v)>``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import (
    BadArguments,
    BadMu,
    CharacteristicTwoQuadratic,
    GroundSetTooLarge,
    LoopPresent,
    UnsupportedField,
)
from .gf import Echelon, FFMatrix, FiniteField, field_new, rank
from .laman import laman_complex, slope_complex
from .matroid import (
    Complex,
    LinearMatroid,
    graphic,
    parallel_extension,
    popcount,
    spanning_reduction,
)

GENERIC_LIMIT = 18
MIN_ORDER_BITS = 60
KINDS = ("R", "H", "P")


def sampling_field(field: FiniteField) -> FiniteField:
    """Smallest field ``GF(p^s)`` with ``p^s > 2^60`` containing the prime field of ``field``."""
    if field.q > 1 << MIN_ORDER_BITS:
        return field
    if field.s != 1:
        raise UnsupportedField(
            f"embedding {field!r} into a larger extension is not implemented; "
            "represent the matroid over a prime field or a field of order > 2^60"
        )
    p = field.p
    s = 1
    while p ** s <= 1 << MIN_ORDER_BITS:
        s += 1
    return field_new(p, s)


def _rng(seed, trial: int, purpose: str) -> random.Random:
    return random.Random(f"{seed}:{trial}:{purpose}")


def _lift(M: LinearMatroid, big: FiniteField) -> list[tuple[int, ...]]:
    """Columns of ``M`` as vectors over ``big`` (prime-field values embed as constants)."""
    if M.field == big:
        return list(M.columns)
    if M.field.s != 1:
        raise UnsupportedField(f"cannot embed {M.field!r} into {big!r}")
    if M.field.p != big.p:
        return [tuple(big.from_int(x) for x in c) for c in M.columns]
    return list(M.columns)


def _dot(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _kron(F: FiniteField, v: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    return tuple(F.mul(xj, vk) if xj and vk else 0 for xj in x for vk in v)


@dataclass(frozen=True)
class GenericSample:
    """A random specialization: ``phi`` (``d x r``), the images ``phi(v_i)`` and normals ``eta_i``."""

    field: FiniteField
    d: int
    r: int
    phi: FFMatrix
    columns: tuple[tuple[int, ...], ...]
    images: tuple[tuple[int, ...], ...]
    etas: tuple[tuple[int, ...], ...]
    seed: object
    trial: int = 0


def _normal(F: FiniteField, w: Sequence[int], rng: random.Random) -> tuple[int, ...]:
    """Uniform nonzero vector ``x`` with ``<x, w> = 0`` for nonzero ``w``.

    The hyperplane has basis ``w_p e_j - w_j e_p`` (``j != p``) where ``p`` is the
    first nonzero coordinate of ``w``; random coefficients on that basis give
    a uniform point, redrawn if zero.
    """
    d = len(w)
    piv = next(i for i, x in enumerate(w) if x)
    while True:
        eta = [0] * d
        for j in range(d):
            if j == piv:
                continue
            t = F.random(rng)
            if not t:
                continue
            eta[j] = F.add(eta[j], F.mul(t, w[piv]))
            eta[piv] = F.sub(eta[piv], F.mul(t, w[j]))
        if any(eta):
            assert _dot(F, eta, w) == 0
            return tuple(eta)
        if d == 1:
            raise BadArguments("no nonzero normal exists in dimension 1")


def sample_generic(M: LinearMatroid, d: int, seed=0, trial: int = 0,
                   field: FiniteField | None = None, normals: bool = True) -> GenericSample:
    """Draw ``phi`` and (when ``d >= 2`` and ``normals``) the normals ``eta_i``.

    ``field`` overrides the sampling field; a different characteristic is
    allowed only for matroids over a prime field, whose entries are then read
    as integers.
    """
    if d < 1:
        raise BadArguments("d must be positive")
    if M.loops:
        raise LoopPresent("generic sampling needs a loopless matroid")
    F = sampling_field(M.field) if field is None else field
    cols = _lift(M, F)
    r = M.r_ambient
    rng = _rng(seed, trial, f"phi:{d}")
    while True:
        phi = FFMatrix.from_rows(F, [[F.random(rng) for _ in range(r)] for _ in range(d)], r)
        images = [phi.apply(c) for c in cols]
        if all(any(w) for w in images):
            break
    etas: list[tuple[int, ...]] = []
    if normals and d >= 2:
        nrng = _rng(seed, trial, f"eta:{d}")
        etas = [_normal(F, w, nrng) for w in images]
    return GenericSample(F, d, r, phi, tuple(cols), tuple(images), tuple(etas), seed, trial)


def rigidity_rows(M: LinearMatroid, sample: GenericSample) -> FFMatrix:
    """Rows ``v_i (x) phi(v_i)``, an ``n x dr`` matrix."""
    F = sample.field
    rows = [_kron(F, v, w) for v, w in zip(sample.columns, sample.images)]
    return FFMatrix.from_rows(F, rows, sample.d * sample.r)


def hyperplane_rows(M: LinearMatroid, sample: GenericSample) -> FFMatrix:
    """Rows ``v_i (x) eta_i``, an ``n x dr`` matrix."""
    if not sample.etas and M.n:
        raise BadArguments("sample has no normals (needs d >= 2)")
    F = sample.field
    rows = [_kron(F, v, eta) for v, eta in zip(sample.columns, sample.etas)]
    return FFMatrix.from_rows(F, rows, sample.d * sample.r)


def independent_sets(F: FiniteField, rows: Sequence[Sequence[int]], width: int) -> set[int]:
    """All index sets of linearly independent rows, by depth-first search."""
    n = len(rows)
    found = {0}
    ech = Echelon(F, width)

    def visit(mask: int, start: int) -> None:
        for i in range(start, n):
            if ech.add(rows[i]):
                child = mask | (1 << i)
                found.add(child)
                visit(child, i + 1)
                ech.pop()

    visit(0, 0)
    return found


@dataclass(frozen=True)
class GenericComplexReport:
    complex: Complex
    d: int
    kind: str
    field_order: int
    trials: int
    failure_bound: Fraction
    seed: object

    def facets(self) -> list[int]:
        return self.complex.facets()


def failure_bound(n: int, kind: str, field_order: int, trials: int) -> Fraction:
    """``(deg * 2^n / field_order)^trials`` with ``deg = n`` for R and ``2n`` otherwise.

    Each maximal minor for a subset has total degree at most ``deg`` in the
    random entries (normals are quadratic in the samples), so a fixed
    independent subset looks dependent in one trial with probability at most
    ``deg / field_order``; the union over ``2^n`` subsets gives the base.
    """
    deg = n if kind == "R" else 2 * n
    return min(Fraction(1), Fraction(deg * 2 ** n, field_order)) ** trials


def generic_complex(M: LinearMatroid, d: int, kind: str = "R", trials: int = 3, seed=0,
                    field: FiniteField | None = None) -> GenericComplexReport:
    """The complex of ``R^d``, ``H^d`` or ``P^d`` by union over random trials.

    ``P^d`` lives on the ``(d-1)``-fold parallel extension; copy ``c`` of
    element ``i`` is element ``i * (d - 1) + c``.
    """
    kind = kind.upper()
    if kind not in KINDS:
        raise BadArguments(f"kind must be one of {KINDS}")
    if trials < 2:
        raise BadArguments("at least two trials are required")
    if kind in ("H", "P") and d < 2:
        raise BadArguments("hyperplane and parallel complexes need d >= 2")
    base = parallel_extension(M, d - 1) if kind == "P" else M
    if base.n > GENERIC_LIMIT:
        raise GroundSetTooLarge(f"generic complex for n={base.n}")
    if base.loops:
        raise LoopPresent("generic complexes need a loopless matroid")
    faces: set[int] = set()
    F = None
    for t in range(trials):
        sample = sample_generic(base, d, seed=(seed, kind), trial=t, field=field, normals=kind != "R")
        F = sample.field
        mat = rigidity_rows(base, sample) if kind == "R" else hyperplane_rows(base, sample)
        faces |= independent_sets(F, mat.to_rows(), mat.cols)
    order = (F or sampling_field(M.field)).q
    return GenericComplexReport(
        Complex(base.n, frozenset(faces)), d, kind, order, trials,
        failure_bound(base.n, kind, order, trials), seed,
    )


# ---------------------------------------------------------------------------
# explicit identities
# ---------------------------------------------------------------------------

def u24_representation(mu: int, field: FiniteField | None = None) -> LinearMatroid:
    """``{e1, e1+e2, e2, e1+mu e2}``, a rank-2 four-point line when ``mu`` is not 0 or 1."""
    F = field if field is not None else field_new((1 << 61) - 1)
    m = F.from_int(mu) if F.s == 1 else mu
    if m in (0, 1):
        raise BadMu(f"mu={mu} does not give four distinct points")
    cols = ((1, 0), (1, 1), (0, 1), (1, m))
    return LinearMatroid(F, cols, 2, f"U(2,4)[mu={mu}]")


def dependence_witness_u24(mu: int, d: int, sample: GenericSample | None = None, seed=0) -> bool:
    """Check ``(mu-1) w1 - mu w2 + (mu - mu^2) w3 + w4 = 0`` for ``w_i = v_i (x) phi(v_i)``."""
    if d < 2:
        raise BadArguments("d must be at least 2")
    if sample is None:
        M = u24_representation(mu)
        sample = sample_generic(M, d, seed=seed, normals=False)
    F = sample.field
    m = F.from_int(mu) if F.s == 1 else mu
    if m in (0, 1):
        raise BadMu(f"mu={mu} does not give four distinct points")
    W = rigidity_rows(None, sample).to_rows()
    coefs = [F.sub(m, 1), F.neg(m), F.sub(m, F.mul(m, m)), 1]
    total = [0] * len(W[0])
    for c, w in zip(coefs, W):
        total = [F.add(t, F.mul(c, x)) for t, x in zip(total, w)]
    return not any(total)


def random_alternating(F: FiniteField, d: int, rng: random.Random) -> FFMatrix:
    """A ``d x d`` matrix with ``s^T = -s`` and zero diagonal (alternating in every characteristic)."""
    entries = [[0] * d for _ in range(d)]
    for i, j in itertools.combinations(range(d), 2):
        x = F.random(rng)
        entries[i][j] = x
        entries[j][i] = F.neg(x)
    return FFMatrix.from_rows(F, entries, d)


def flatten_map(psi: FFMatrix) -> tuple[int, ...]:
    """A ``d x r`` map as a vector in ``F^r (x) F^d`` (row-major)."""
    return psi.entries


def trivial_motion_bound(d: int, rank_A: int) -> int:
    """Dimension of ``{sigma o phi restricted to span(A)}`` for generic ``phi``.

    The image of ``span(A)`` has dimension ``s = min(r(A), d)`` and the skew maps
    vanishing on it form a space of dimension ``C(d - s, 2)``.
    """
    s = min(rank_A, d)
    return comb(d, 2) - comb(d - s, 2)


@dataclass
class NullvectorReport:
    skew_ok: bool
    phi_in_hyperplane_kernel: bool
    count_ok: bool
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.skew_ok and self.phi_in_hyperplane_kernel and self.count_ok


def nullvector_checks(M: LinearMatroid, d: int, sample: GenericSample | None = None, seed=0,
                      trials: int = 3, sigmas: int = 3) -> NullvectorReport:
    """Known kernel vectors of the rigidity and hyperplane matrices, plus the count they imply.

    (a) ``sigma o phi`` is killed by the rigidity matrix for alternating ``sigma``;
    (b) ``phi`` is killed by the hyperplane matrix;
    (c) every rigidity-independent ``A`` has ``|A| <= d r(A) - trivial_motion_bound(d, r(A))``.
    """
    if d < 2:
        raise BadArguments("d must be at least 2")
    sample = sample_generic(M, d, seed=seed) if sample is None else sample
    F = sample.field
    R = rigidity_rows(M, sample)
    H = hyperplane_rows(M, sample)
    rng = _rng(seed, 0, "sigma")
    violations = []
    skew_ok = True
    for _ in range(sigmas):
        sigma = random_alternating(F, d, rng)
        if any(R.apply(flatten_map(sigma @ sample.phi))):
            skew_ok = False
            violations.append("rigidity matrix does not kill sigma o phi")
    phi_ok = not any(H.apply(flatten_map(sample.phi)))
    if not phi_ok:
        violations.append("hyperplane matrix does not kill phi")
    count_ok = True
    rep = generic_complex(M, d, "R", trials=trials, seed=seed)
    for A in rep.complex.faces:
        rk = M.rank_of(A)
        if popcount(A) > d * rk - trivial_motion_bound(d, rk):
            count_ok = False
            violations.append(f"independent set {A} exceeds the trivial-motion count")
            break
    return NullvectorReport(skew_ok, phi_ok, count_ok, violations)


def quadratic_first_order(sample: GenericSample, psi: FFMatrix) -> bool:
    """Whether ``Q((phi + e psi)(v_i)) = Q(phi(v_i)) mod e^2`` for all ``i``, with ``Q`` the sum of squares."""
    F = sample.field
    if F.p == 2:
        raise CharacteristicTwoQuadratic("the quadratic-form reading needs odd characteristic")
    for v, w in zip(sample.columns, sample.images):
        if _dot(F, w, psi.apply(v)):
            return False
    return True


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

@dataclass
class NestingReport:
    d: int
    complexes: dict[str, Complex]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _inclusion(name_a: str, A: Complex, name_b: str, B: Complex, failures: list[str]) -> None:
    extra = A.faces - B.faces
    if extra:
        bad = min(extra, key=lambda m: (popcount(m), m))
        failures.append(f"{name_a} not inside {name_b}: subset {bad}")


def _equality(name_a: str, A: Complex, name_b: str, B: Complex, failures: list[str]) -> None:
    bad = A.first_difference(B)
    if bad is not None:
        failures.append(f"{name_a} != {name_b}: subset {bad}")


def nesting_check(M: LinearMatroid, d: int, trials: int = 3, seed=0) -> NestingReport:
    """``S^{1,d} <= R^d <= L^d = H^d``; for ``d = 2`` also everything equal to ``P^2``."""
    if d < 2:
        raise BadArguments("d must be at least 2")
    if M.n > 16:
        raise GroundSetTooLarge(f"nesting check for n={M.n}")
    S = slope_complex(M, 1, d)
    R = generic_complex(M, d, "R", trials, seed).complex
    L = laman_complex(M, d)
    H = generic_complex(M, d, "H", trials, seed).complex
    found = {"S": S, "R": R, "L": L, "H": H}
    failures: list[str] = []
    _inclusion("S", S, "R", R, failures)
    _inclusion("R", R, "L", L, failures)
    _equality("L", L, "H", H, failures)
    if d == 2:
        P = generic_complex(M, 2, "P", trials, seed).complex
        found["P"] = P
        for name in ("R", "L", "H", "P"):
            _equality("S", S, name, found[name], failures)
    return NestingReport(d, found, failures)


@dataclass
class StabilizationReport:
    dims: tuple[int, ...]
    equal: bool
    complexes: dict[int, Complex]


def stabilization_check(M: LinearMatroid, trials: int = 3, seed=0) -> StabilizationReport:
    """``R^d`` for ``d = r, r+1, r+2`` on the spanning reduction; all should agree."""
    S = spanning_reduction(M)
    r = max(S.rank, 1)
    dims = (r, r + 1, r + 2)
    found = {d: generic_complex(S, d, "R", trials, seed).complex for d in dims}
    first = found[dims[0]]
    return StabilizationReport(dims, all(found[d] == first for d in dims), found)


def graphic_boolean_check(n_vertices: int, edges, trials: int = 3, seed=0) -> bool:
    """Whether ``R^{|V|}`` of the graphic matroid is the full simplex."""
    if n_vertices > 6:
        raise BadArguments("graphic Boolean check is limited to 6 vertices")
    M = graphic(n_vertices, edges, field_new((1 << 61) - 1))
    return generic_complex(M, n_vertices, "R", trials, seed).complex.is_full()


@dataclass
class ProbeReport:
    equal: bool
    scales: tuple[int, ...]
    transform: FFMatrix
    difference: int | None


def projective_probe(M: LinearMatroid, d: int, seed=0, trials: int = 3) -> ProbeReport:
    """Rescale columns and apply an invertible map, then compare ``R^d`` complexes."""
    F = M.field
    r = M.r_ambient
    rng = _rng(seed, 0, "projective")
    scales = tuple(F.random_nonzero(rng) for _ in range(M.n))
    while True:
        g = FFMatrix.from_rows(F, [[F.random(rng) for _ in range(r)] for _ in range(r)], r)
        if rank(g) == r:
            break
    cols = tuple(tuple(F.mul(c, x) for x in g.apply(v)) for c, v in zip(scales, M.columns))
    M2 = LinearMatroid(F, cols, r, M.name and f"{M.name}'")
    A = generic_complex(M, d, "R", trials, seed).complex
    B = generic_complex(M2, d, "R", trials, (seed, "probe")).complex
    return ProbeReport(A == B, scales, g, A.first_difference(B))


def generic_matroid_rank(M: LinearMatroid, d: int, kind: str = "R", trials: int = 3, seed=0) -> int:
    rep = generic_complex(M, d, kind, trials, seed)
    return rep.complex.dimension_rank


def rows_block_pattern(mat: FFMatrix, r: int) -> list[tuple[int, ...]]:
    """For each row, the coordinates ``k`` of ``F^r`` whose ``d`` entries are not all zero.

    For a graphic matroid this is the pair of endpoints of each edge.
    """
    d = mat.cols // r if r else 0
    out = []
    for i in range(mat.rows):
        row = mat.row(i)
        out.append(tuple(k for k in range(r) if any(row[j * r + k] for j in range(d))))
    return out
