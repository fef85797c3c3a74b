"""Counting photos over small finite fields, and cellule dimensions.

A (k, d)-photo of vectors ``v_1..v_n`` in ``F^r`` is a linear map
``phi: F^r -> F^d`` together with k-planes ``W_i`` containing ``phi(v_i)``.
Photos are grouped into cellules by the kernel set ``{i : phi(v_i) = 0}``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass

from .errors import BadDimensions, GroundSetTooLarge, TooLarge
from .gf import FiniteField
from .laman import slope_complex
from .matroid import LinearMatroid, popcount, spanning_reduction
from .tutte import qbinomial

BRUTE_LIMIT = 1 << 24
LITERAL_LIMIT = 1 << 22
DIMS_LIMIT = 20


@dataclass(frozen=True)
class PhotoCensus:
    total: int
    by_flat: dict[int, int]
    q: int
    k: int
    d: int

    def to_json(self) -> str:
        cells = [{"flat": F, "count": str(c)} for F, c in sorted(self.by_flat.items())]
        return json.dumps({"total": str(self.total), "cellules": cells}, sort_keys=True)


def _check_kd(k: int, d: int) -> None:
    if not (isinstance(k, int) and isinstance(d, int)) or not 0 < k < d:
        raise BadDimensions(f"need integers 0 < k < d, got k={k}, d={d}")


def _dot(F: FiniteField, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def _functionals(M: LinearMatroid):
    F = M.field
    return itertools.product(range(F.q), repeat=M.r_ambient)


def _zero_mask(M: LinearMatroid, f) -> int:
    F = M.field
    mask = 0
    for i, v in enumerate(M.columns):
        if not _dot(F, f, v):
            mask |= 1 << i
    return mask


def photo_count_brute(M: LinearMatroid, k: int, d: int, method: str = "histogram") -> PhotoCensus:
    """Count photos over the field of ``M`` without touching the Tutte polynomial.

    A map ``phi`` is ``d`` linear functionals, and ``phi(v_i) = 0`` exactly when
    every functional vanishes on ``v_i``; so the kernel set of ``phi`` is the
    AND of the functionals' zero sets.  Given the kernel set ``K`` the planes
    contribute ``[d,k]^|K| [d-1,k-1]^(n-|K|)`` (any plane through 0; planes
    through a fixed nonzero vector).

    ``method``: ``"histogram"`` combines zero-set counts of the ``q^r``
    functionals ``d`` times; ``"maps"`` walks all ``q^(dr)`` maps one by one;
    ``"literal"`` additionally enumerates every k-plane tuple and tests
    membership, checking the per-map weights themselves.
    """
    _check_kd(k, d)
    F = M.field
    q, n, r = F.q, M.n, M.r_ambient
    if q ** (d * r) > BRUTE_LIMIT:
        raise TooLarge(f"q^(dr) = {q}^{d * r} exceeds 2^24")
    full_w = qbinomial(d, k, q)
    through_w = qbinomial(d - 1, k - 1, q)

    kernels: Counter = Counter()
    if method == "histogram":
        hist: Counter = Counter(_zero_mask(M, f) for f in _functionals(M))
        kernels = Counter({M.ground: 1})
        for _ in range(d):
            nxt: Counter = Counter()
            for a, ca in kernels.items():
                for b, cb in hist.items():
                    nxt[a & b] += ca * cb
            kernels = nxt
    elif method in ("maps", "literal"):
        masks = [_zero_mask(M, f) for f in _functionals(M)]
        if method == "maps":
            for combo in itertools.product(masks, repeat=d):
                K = M.ground
                for m in combo:
                    K &= m
                kernels[K] += 1
        else:
            return _literal(M, k, d)
    else:
        raise ValueError(f"unknown method {method!r}")

    by_flat: dict[int, int] = {}
    total = 0
    for K, count in kernels.items():
        assert M.closure(K) == K, f"kernel set {K} is not a flat"
        size = popcount(K)
        value = count * full_w ** size * through_w ** (n - size)
        by_flat[K] = by_flat.get(K, 0) + value
        total += value
    return PhotoCensus(total, by_flat, q, k, d)


def subspaces(F: FiniteField, d: int, k: int) -> list[frozenset[tuple[int, ...]]]:
    """All k-dimensional subspaces of ``F^d``, each as its set of vectors."""
    vectors = list(itertools.product(range(F.q), repeat=d))
    seen: set[frozenset] = set()
    for basis in itertools.combinations(vectors, k):
        span = {tuple([0] * d)}
        for b in basis:
            span = {tuple(F.add(x, F.mul(c, y)) for x, y in zip(s, b)) for s in span for c in range(F.q)}
        if len(span) == F.q ** k:
            seen.add(frozenset(span))
    return sorted(seen, key=sorted)


def _literal(M: LinearMatroid, k: int, d: int) -> PhotoCensus:
    F = M.field
    q, n, r = F.q, M.n, M.r_ambient
    planes = subspaces(F, d, k)
    if q ** (d * r) * len(planes) ** n > LITERAL_LIMIT:
        raise TooLarge("literal enumeration exceeds 2^22 photo candidates")
    functionals = list(_functionals(M))
    by_flat: Counter = Counter()
    for rows in itertools.product(functionals, repeat=d):
        images = [tuple(_dot(F, f, v) for f in rows) for v in M.columns]
        K = sum(1 << i for i, w in enumerate(images) if not any(w))
        count = 0
        for Ws in itertools.product(planes, repeat=n):
            if all(w in W for w, W in zip(images, Ws)):
                count += 1
        if count:
            assert M.closure(K) == K, f"kernel set {K} is not a flat"
            by_flat[K] += count
    return PhotoCensus(sum(by_flat.values()), dict(by_flat), q, k, d)


def cellule_dims(M: LinearMatroid, k: int, d: int) -> dict[int, int]:
    """``d(r - r(F)) + (n - |F|)(k-1)(d-k) + |F| k (d-k)`` for every flat ``F``."""
    _check_kd(k, d)
    if M.n > DIMS_LIMIT:
        raise GroundSetTooLarge(f"cellule dimensions for n={M.n}")
    S = spanning_reduction(M)
    r, n = S.rank, S.n
    return {
        F: d * (r - S.rank_of(F)) + (n - popcount(F)) * (k - 1) * (d - k) + popcount(F) * k * (d - k)
        for F in S.flats()
    }


def generic_cellule_dim(M: LinearMatroid, k: int, d: int) -> int:
    """Dimension of the cellule where no ``v_i`` is annihilated: ``dr + n(k-1)(d-k)``."""
    _check_kd(k, d)
    return d * M.rank + M.n * (k - 1) * (d - k)


def slope_independent_via_dims(M: LinearMatroid, k: int, d: int) -> bool:
    """Every nonempty flat's cellule is strictly smaller than the generic one."""
    top = generic_cellule_dim(M, k, d)
    return all(dim < top for F, dim in cellule_dims(M, k, d).items() if F)


def slope_dims_agree(M: LinearMatroid, k: int, d: int) -> bool:
    return slope_independent_via_dims(M, k, d) == (M.ground in slope_complex(M, k, d))
