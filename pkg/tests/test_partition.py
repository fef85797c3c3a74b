from __future__ import annotations

import itertools

import pytest

from matrigid import matroid as mt
from matrigid.errors import BadArguments, LoopPresent, PartsInvalid
from matrigid.gf import field_new
from matrigid.partition import (
    all_partitions,
    equivalence_report,
    is_edmonds_decomposition,
    is_recski_independent,
    matroid_partition,
)
from matrigid.matroid import popcount, submasks


def _splittable_by_colouring(M, d):
    for colours in itertools.product(range(d), repeat=M.n):
        parts = [0] * d
        for e, c in enumerate(colours):
            parts[c] |= 1 << e
        if all(M.is_independent(P) for P in parts):
            return True
    return False


def _edmonds_by_definition(M, parts):
    choices = [list(submasks(P)) for P in parts]
    for pick in itertools.product(*choices):
        if not any(pick):
            continue
        spans = {M.closure(S) for S in pick}
        if len(spans) == 1:
            return False
    return True


CASES = [
    (mt.k4(), 2), (mt.k4(), 3), (mt.k4_minus_edge(), 2), (mt.fano(), 2), (mt.fano(), 3),
    (mt.uniform(2, 5), 2), (mt.uniform(2, 5), 3), (mt.k3(), 1), (mt.k3(), 2),
]


@pytest.mark.parametrize("M,d", CASES)
def test_partition_matches_colouring(M, d):
    cert = matroid_partition(M, d)
    assert cert.partitionable == _splittable_by_colouring(M, d)
    if cert.partitionable:
        parts = cert.decomposition.parts
        assert len(parts) == d
        assert sum(popcount(P) for P in parts) == M.n
        assert all(M.is_independent(P) for P in parts)
    else:
        R = cert.violator
        assert d * M.rank_of(R) < popcount(R)


@pytest.mark.parametrize("M,d", [(mt.k4(), 2), (mt.k4_minus_edge(), 2), (mt.fano(), 3), (mt.uniform(2, 4), 2)])
def test_edmonds_check_matches_definition(M, d):
    for parts in all_partitions(M, d):
        assert is_edmonds_decomposition(M, parts).valid == _edmonds_by_definition(M, parts)


def test_edmonds_violation_shares_span():
    M = mt.uniform(2, 4)
    check = is_edmonds_decomposition(M, (0b0011, 0b1100))
    assert not check.valid
    spans = {M.closure(S) for S in check.violation}
    assert len(spans) == 1


def test_recski_k4():
    assert not is_recski_independent(mt.k4(), 2).independent
    assert is_recski_independent(mt.k4_minus_edge(), 2).independent


@pytest.mark.parametrize("d", [1, 2, 3])
def test_equivalence_three_way(d):
    for M in (mt.k4(), mt.k4_minus_edge(), mt.fano(), mt.uniform(2, 4), mt.k3()):
        report = equivalence_report(M, d)
        assert report.agree, (M, d, report)


def test_equivalence_k4_values():
    r = equivalence_report(mt.k4(), 2)
    assert (r.edmonds, r.laman, r.recski) == (False, False, False)
    r = equivalence_report(mt.k4_minus_edge(), 2)
    assert (r.edmonds, r.laman, r.recski) == (True, True, True)


def test_partition_errors():
    with pytest.raises(BadArguments):
        matroid_partition(mt.k3(), 0)
    with pytest.raises(PartsInvalid):
        is_edmonds_decomposition(mt.k3(), (0b011, 0b011))
    M = mt.from_matrix(field_new(3), [[0, 0], [1, 0]])
    with pytest.raises(LoopPresent):
        is_edmonds_decomposition(M, (0b01, 0b10))
