from __future__ import annotations

import random
from fractions import Fraction

import pytest

from matrigid import matroid as mt
from matrigid.errors import BadArguments, BadMu, CharacteristicTwoQuadratic, LoopPresent
from matrigid.gf import FFMatrix, field_new, rank
from matrigid.laman import laman_complex
from matrigid.matroid import Complex, popcount
from matrigid.rigidity import (
    dependence_witness_u24,
    failure_bound,
    flatten_map,
    generic_complex,
    graphic_boolean_check,
    hyperplane_rows,
    independent_sets,
    nesting_check,
    nullvector_checks,
    projective_probe,
    quadratic_first_order,
    random_alternating,
    rigidity_rows,
    rows_block_pattern,
    sample_generic,
    sampling_field,
    stabilization_check,
    trivial_motion_bound,
    u24_representation,
)


@pytest.mark.parametrize("p", [2, 3, 10007])
def test_sampling_field_is_least_large_power(p):
    F = sampling_field(field_new(p))
    assert F.p == p
    assert F.q > 1 << 60 >= p ** (F.s - 1)


def test_sampling_field_keeps_large_prime():
    F = field_new((1 << 61) - 1)
    assert sampling_field(F) is F


def test_normals_are_orthogonal():
    M = mt.fano()
    s = sample_generic(M, 3, seed=5)
    F = s.field
    assert F.p == 2 and F.s == 61
    for eta, w in zip(s.etas, s.images):
        assert any(eta)
        acc = 0
        for x, y in zip(eta, w):
            acc = F.add(acc, F.mul(x, y))
        assert acc == 0


def test_kronecker_row_single_element():
    M = mt.isthmus()
    s = sample_generic(M, 2, seed=1)
    row = rigidity_rows(M, s).row(0)
    # v = e1, so row j*r + 0 carries phi(e1)_j = phi[j, 0]
    assert row == (s.phi[0, 0], s.phi[1, 0])


def test_k4_rigidity_matrix_shape_and_blocks():
    M = mt.k4()
    s = sample_generic(M, 4, seed=0)
    R = rigidity_rows(M, s)
    assert (R.rows, R.cols) == (6, 16)
    assert rows_block_pattern(R, 4) == mt.complete_graph_edges(4)


def test_parallel_hyperplane_rows():
    M = mt.k3()
    P = mt.parallel_extension(M, 2)
    s = sample_generic(P, 3, seed=2)
    H = hyperplane_rows(P, s)
    assert H.rows == 6
    assert s.columns[0] == s.columns[1]
    assert s.etas[0] != s.etas[1]


def _complex_by_rank(F, rows, n):
    faces = []
    for A in range(1 << n):
        idx = [i for i in range(n) if A >> i & 1]
        if not idx or rank(FFMatrix.from_rows(F, [rows[i] for i in idx])) == len(idx):
            faces.append(A)
    return set(faces)


def test_independent_sets_matches_subset_ranks():
    M = mt.k4()
    s = sample_generic(M, 2, seed=3)
    R = rigidity_rows(M, s)
    assert independent_sets(s.field, R.to_rows(), R.cols) == _complex_by_rank(s.field, R.to_rows(), M.n)


def test_known_rigidity_complexes():
    assert generic_complex(mt.uniform(2, 3), 2).complex.is_full()
    for d in (2, 3):
        assert generic_complex(mt.uniform(2, 4), d).complex == Complex.uniform(3, 4)
    assert generic_complex(mt.fano(), 2).complex == Complex.uniform(5, 7)


@pytest.mark.parametrize("M", [mt.k4(), mt.fano(), mt.uniform(2, 4)], ids=["K4", "Fano", "U24"])
def test_r1_is_the_matroid(M):
    assert generic_complex(M, 1).complex == M.independence_complex()


def test_k4_boolean_in_dimension_four():
    assert graphic_boolean_check(4, mt.complete_graph_edges(4))
    assert generic_complex(mt.k4(), 4).complex.is_full()


def test_seed_determinism():
    a = generic_complex(mt.k4(), 2, "H", seed=7)
    b = generic_complex(mt.k4(), 2, "H", seed=7)
    assert a.complex == b.complex


def test_failure_bound():
    assert failure_bound(6, "R", 1 << 61, 3) == Fraction(6 * 64, 1 << 61) ** 3
    assert failure_bound(6, "H", 1 << 61, 3) == Fraction(12 * 64, 1 << 61) ** 3
    rep = generic_complex(mt.k4(), 2)
    assert rep.failure_bound < Fraction(1, 1 << 80)


def test_u24_dependence_identity():
    for mu in (2, 5, 123456789):
        for d in (2, 3):
            assert dependence_witness_u24(mu, d, seed=mu)
    with pytest.raises(BadMu):
        u24_representation(1)


def test_alternating_and_trivial_motions():
    F = field_new(2, 61)
    sigma = random_alternating(F, 4, random.Random(0))
    for i in range(4):
        assert sigma[i, i] == 0
        for j in range(4):
            assert sigma[j, i] == F.neg(sigma[i, j])
    assert trivial_motion_bound(3, 1) == 2
    assert trivial_motion_bound(3, 3) == 3
    assert trivial_motion_bound(2, 5) == 1


@pytest.mark.parametrize("d", [2, 3])
def test_nullvector_checks(d):
    for M in (mt.k4(), mt.fano()):
        assert nullvector_checks(M, d).ok


def test_quadratic_reading():
    M = mt.k4(field_new(10007))
    s = sample_generic(M, 3, seed=0)
    sigma = random_alternating(s.field, 3, random.Random(1))
    assert quadratic_first_order(s, sigma @ s.phi)
    assert flatten_map(s.phi) == s.phi.entries
    with pytest.raises(CharacteristicTwoQuadratic):
        quadratic_first_order(sample_generic(mt.k4(), 3), s.phi)


@pytest.mark.parametrize("d", [2, 3])
def test_nesting(d):
    report = nesting_check(mt.k4_minus_edge(), d)
    assert report.ok, report.failures
    assert report.complexes["L"] == laman_complex(mt.k4_minus_edge(), d)


def test_stabilization_and_probe():
    assert stabilization_check(mt.k4()).equal
    assert projective_probe(mt.uniform(2, 4), 2).equal


def test_rigidity_errors():
    M = mt.from_matrix(field_new(3), [[1, 0], [0, 0]])
    with pytest.raises(LoopPresent):
        sample_generic(M, 2)
    with pytest.raises(BadArguments):
        generic_complex(mt.k3(), 2, trials=1)
    with pytest.raises(BadArguments):
        generic_complex(mt.k3(), 2, kind="Q")
    assert popcount(generic_complex(mt.k3(), 2).complex.facets()[0]) == 3
