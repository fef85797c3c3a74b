"""Matroid partitioning into independent sets, Edmonds decompositions, Recski independence."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import BadArguments, GroundSetTooLarge, LoopPresent, PartsInvalid
from .laman import is_laman_independent
from .matroid import LinearMatroid, clone_element, elements, popcount, submasks

EDMONDS_LIMIT = 18
EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class PartitionCertificate:
    """Exactly one of ``decomposition`` and ``violator`` is set."""

    decomposition: Decomposition | None = None
    violator: int | None = None

    @property
    def partitionable(self) -> bool:
        return self.decomposition is not None

    def __bool__(self) -> bool:
        return self.partitionable


def _check_decomposition(M: LinearMatroid, parts) -> None:
    seen = 0
    for P in parts:
        if P & seen:
            raise PartsInvalid("parts overlap")
        if P & ~M.ground:
            raise PartsInvalid("part outside the ground set")
        if not M.is_independent(P):
            raise PartsInvalid(f"part {P} is dependent")
        seen |= P
    if seen != M.ground:
        raise PartsInvalid("parts do not cover the ground set")


def matroid_partition(M: LinearMatroid, d: int) -> PartitionCertificate:
    """Split the ground set into ``d`` independent sets, or return ``A`` with ``d r(A) < |A|``.

    Elements are inserted one at a time.  For an uncovered element a shortest
    path is sought in the exchange graph (``x -> y`` when ``y`` is in a part
    ``I`` not containing ``x`` and ``I - y + x`` is independent) ending at an
    element that some part accepts outright.  Swapping along a shortest path
    keeps all parts independent.  If no path exists, every part spans the set
    of reached elements, and that set is the violator.
    """
    if d < 1:
        raise BadArguments("need at least one part")
    parts = [0] * d
    owner: dict[int, int] = {}
    indep = M.is_independent

    for e in range(M.n):
        parent: dict[int, int] = {e: -1}
        queue = deque([e])
        end = None
        while queue and end is None:
            x = queue.popleft()
            bit = 1 << x
            for j in range(d):
                if owner.get(x) == j:
                    continue
                I = parts[j]
                if indep(I | bit):
                    end = (x, j)
                    break
                for y in elements(I):
                    if y not in parent and indep((I & ~(1 << y)) | bit):
                        parent[y] = x
                        queue.append(y)
        if end is None:
            reached = 0
            for x in parent:
                reached |= 1 << x
            assert d * M.rank_of(reached) < popcount(reached), "violator failed self-check"
            return PartitionCertificate(violator=reached)
        # walk back: x goes into part j, displacing nothing; each parent takes its child's slot
        x, j = end
        while x != -1:
            prev_part = owner.get(x)
            if prev_part is not None:
                parts[prev_part] &= ~(1 << x)
            parts[j] |= 1 << x
            owner[x] = j
            j = prev_part
            x = parent[x]
            if x != -1 and j is None:
                raise AssertionError("augmenting path broke")
    _check_decomposition(M, parts)
    return PartitionCertificate(decomposition=Decomposition(tuple(parts)))


@dataclass(frozen=True)
class EdmondsCheck:
    """``violation`` is a tuple of sub-parts with a common span, if any."""

    valid: bool
    violation: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.valid


def is_edmonds_decomposition(M: LinearMatroid, parts) -> EdmondsCheck:
    """Whether no choice of sub-parts (not all empty) has all spans equal.

    Subsets of each part are bucketed by closure; a violation is a closure
    shared by every part other than the closure of the empty set (which, in a
    loopless matroid, only the all-empty choice reaches).
    """
    parts = tuple(parts)
    if M.n > EDMONDS_LIMIT:
        raise GroundSetTooLarge(f"Edmonds check for n={M.n}")
    if M.loops:
        raise LoopPresent("Edmonds decompositions are checked on loopless matroids")
    _check_decomposition(M, parts)
    bottom = M.closure(0)
    buckets = []
    for P in parts:
        table: dict[int, int] = {}
        for S in submasks(P):
            table.setdefault(M.closure(S), S)
        buckets.append(table)
    common = set(buckets[0])
    for table in buckets[1:]:
        common &= set(table)
    common.discard(bottom)
    if not common:
        return EdmondsCheck(True)
    key = min(common, key=lambda F: (popcount(F), F))
    return EdmondsCheck(False, tuple(table[key] for table in buckets))


def all_partitions(M: LinearMatroid, d: int):
    """Every split of the ground set into ``d`` independent parts, up to relabelling parts."""
    n = M.n
    parts = [0] * d

    def place(e: int, used: int):
        if e == n:
            yield tuple(parts)
            return
        for j in range(min(used + 1, d)):
            cand = parts[j] | (1 << e)
            if M.is_independent(cand):
                parts[j] = cand
                yield from place(e + 1, max(used, j + 1))
                parts[j] &= ~(1 << e)

    yield from place(0, 0)


@dataclass(frozen=True)
class RecskiReport:
    independent: bool
    element: int | None = None
    violator: int | None = None

    def __bool__(self) -> bool:
        return self.independent


def is_recski_independent(M: LinearMatroid, d: int) -> RecskiReport:
    """Whether each one-element clone of the ground set splits into ``d`` independent sets.

    ``violator`` is reported in the ground set of the cloned matroid, where the
    clone has index ``n``.
    """
    for e in range(M.n):
        cert = matroid_partition(clone_element(M, e), d)
        if not cert.partitionable:
            return RecskiReport(False, e, cert.violator)
    return RecskiReport(True)


@dataclass
class EquivalenceReport:
    d: int
    edmonds: bool | None
    laman: bool
    recski: bool
    decomposition: tuple[int, ...] | None = None
    laman_witness: int = 0
    recski_element: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.edmonds == self.laman == self.recski


def has_edmonds_decomposition(M: LinearMatroid, d: int) -> tuple[bool | None, tuple[int, ...] | None, str]:
    cert = matroid_partition(M, d)
    if not cert.partitionable:
        return False, None, f"no split into {d} independent sets; violator {cert.violator}"
    first = cert.decomposition.parts
    if is_edmonds_decomposition(M, first):
        return True, first, "first split is an Edmonds decomposition"
    if M.n > EXHAUSTIVE_LIMIT:
        return None, None, "first split fails; exhaustive search skipped for n > 12"
    for parts in all_partitions(M, d):
        if is_edmonds_decomposition(M, parts):
            return True, parts, "found by exhaustive search"
    return False, None, "no split is an Edmonds decomposition"


def equivalence_report(M: LinearMatroid, d: int) -> EquivalenceReport:
    """Compute the Edmonds, Laman and Recski predicates for the whole ground set."""
    if M.n > EDMONDS_LIMIT:
        raise GroundSetTooLarge(f"equivalence report for n={M.n}")
    edmonds, parts, note = has_edmonds_decomposition(M, d)
    lam = is_laman_independent(M, d)
    rec = is_recski_independent(M, d)
    return EquivalenceReport(
        d=d,
        edmonds=edmonds,
        laman=lam.independent,
        recski=rec.independent,
        decomposition=parts,
        laman_witness=lam.witness,
        recski_element=rec.element,
        notes=[note],
    )
