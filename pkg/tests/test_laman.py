from __future__ import annotations

import math
from fractions import Fraction

import pytest

from matrigid import matroid as mt

from matrigid.errors import BadDimensions, BadSlope, EpsOutOfRange, LoopPresent
from matrigid.gf import field_new
from matrigid.laman import (
    RationalSlope,
    check_exchange_pair,
    is_laman_independent,
    laman_complex,
    polymatroid_rank,
    slope_complex,
    slope_to_laman,
    verify_exchange,
)
from matrigid.matroid import Complex, popcount, submasks


def _laman_by_definition(M, m):
    m = Fraction(m)
    faces = []
    for A in range(1 << M.n):
        if all(m * M.rank_of(B) > popcount(B) for B in submasks(A) if B):
            faces.append(A)
    return Complex(M.n, frozenset(faces))


def _augmentation_holds(C):
    faces = list(C.faces)
    for I in faces:
        for J in faces:
            if popcount(I) < popcount(J):
                if not any(I | (1 << x) in C for x in range(C.n) if J >> x & 1 and not I >> x & 1):
                    return False
    return True


def test_slope_parsing():
    assert RationalSlope.of("5/2") == RationalSlope(5, 2)
    assert RationalSlope.of(3) == RationalSlope(3, 1)
    assert RationalSlope.of("inf").is_infinite
    assert str(RationalSlope.of(Fraction(6, 4))) == "3/2"
    for bad in ("1/2", "x", 0.5):
        with pytest.raises(BadSlope):
            RationalSlope.of(bad)


def test_k4_and_k4_minus_edge():
    report = is_laman_independent(mt.k4(), 2)
    assert not report.independent
    assert report.witness == mt.k4().ground
    assert is_laman_independent(mt.k4_minus_edge(), 2).independent


@pytest.mark.parametrize("m", [Fraction(3, 2), 2, Fraction(5, 2), 3])
def test_complex_matches_definition(m):
    for M in (mt.fano(), mt.k4(), mt.uniform(2, 5), mt.k3()):
        assert laman_complex(M, m) == _laman_by_definition(M, m)


@pytest.mark.parametrize("r,n", [(1, 3), (2, 4), (2, 6), (3, 6)])
@pytest.mark.parametrize("m", [Fraction(3, 2), 2, Fraction(5, 2)])
def test_uniform_laman_complex(r, n, m):
    s = min(math.ceil(Fraction(m) * r) - 1, n)
    assert laman_complex(mt.uniform(r, n), m) == Complex.uniform(s, n)


def test_infinite_slope_is_loopless_sets():
    F = field_new(3)
    M = mt.from_matrix(F, [[1, 0], [0, 0], [1, 1]])
    C = laman_complex(M, "inf")
    assert C == Complex(3, frozenset(A for A in range(8) if not A & 0b010))


def test_slope_to_laman():
    assert slope_to_laman(1, 2) == RationalSlope(2, 1)
    assert slope_to_laman(1, 3) == RationalSlope(3, 2)
    assert slope_complex(mt.k4(), 1, 2) == laman_complex(mt.k4(), 2)
    with pytest.raises(BadDimensions):
        slope_to_laman(2, 2)


@pytest.mark.parametrize("d", [2, 3])
def test_exchange_on_integer_slopes(d):
    for M in (mt.fano(), mt.k4(), mt.uniform(2, 4)):
        C = laman_complex(M, d)
        assert verify_exchange(C).passed
        assert _augmentation_holds(C)


def test_counterexample_violates_exchange():
    M = mt.laman_counterexample(Fraction(3, 2))
    C = laman_complex(M, Fraction(3, 2))
    report = verify_exchange(C)
    assert not report.passed
    I, J = report.pair
    assert popcount(I) < popcount(J)
    assert check_exchange_pair(C, report.pair)
    assert not _augmentation_holds(C)


def test_exchange_detects_non_matroid():
    C = Complex.from_facets(4, [0b0011, 0b1100])
    assert not verify_exchange(C).passed
    assert verify_exchange(Complex.uniform(2, 4)).passed


@pytest.mark.parametrize("m", [Fraction(3, 2), 2])
def test_polymatroid_rank_detects_independence(m):
    for M in (mt.fano(), mt.k4(), mt.uniform(2, 5)):
        for A in range(1 << M.n):
            rho = polymatroid_rank(M, m, A)
            assert rho == polymatroid_rank(M, m, A, brute=True)
            assert (rho == popcount(A)) == is_laman_independent(M, m, A).independent


def test_polymatroid_eps_range():
    M = mt.fano()
    with pytest.raises(EpsOutOfRange):
        polymatroid_rank(M, Fraction(3, 2), M.ground, eps=Fraction(1, 6))
    polymatroid_rank(M, Fraction(3, 2), M.ground, eps=Fraction(1, 7))
    F = field_new(3)
    with pytest.raises(LoopPresent):
        polymatroid_rank(mt.from_matrix(F, [[0, 0]]), 2, 1)
