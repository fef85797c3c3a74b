from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from matrigid import matroid as mt
from matrigid.errors import BadSlope, DimensionMismatch, FieldTooSmall, IntegerSlope, VertexOutOfRange
from matrigid.gf import field_new
from matrigid.matroid import Complex, mask_of, popcount


def _span_rank(F, vectors):
    if not vectors:
        return 0
    span = {tuple([0] * len(vectors[0]))}
    for v in vectors:
        span = {tuple(F.add(x, F.mul(c, y)) for x, y in zip(s, v)) for s in span for c in range(F.q)}
    r = 0
    while F.q ** r < len(span):
        r += 1
    return r


def _forest_rank(n_vertices, edges):
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    r = 0
    for i, j in edges:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            r += 1
    return r


def _bases(M):
    return [A for A in range(1 << M.n) if popcount(A) == M.rank and M.is_independent(A)]


def test_fano_rank_matches_span_count():
    M = mt.fano()
    for A in range(1 << M.n):
        assert M.rank_of(A) == _span_rank(M.field, [M.columns[i] for i in mt.elements(A)])
    assert len(_bases(M)) == 35 - 7
    assert len(mt.lines_of_size(M, 2, 3)) == 7


def test_graphic_rank_is_forest_rank():
    edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 4)]
    M = mt.graphic(5, edges)
    for A in range(1 << len(edges)):
        assert M.rank_of(A) == _forest_rank(5, [edges[i] for i in mt.elements(A)])


def test_k4_spanning_trees():
    # Cayley: 4^(4-2) spanning trees
    assert len(_bases(mt.k4())) == 16
    assert len(_bases(mt.k4_minus_edge())) == 8
    assert mt.k4().rank == 3


@pytest.mark.parametrize("r,n", [(1, 3), (2, 4), (2, 5), (3, 6), (4, 8)])
def test_uniform(r, n):
    M = mt.uniform(r, n)
    assert M.independence_complex() == Complex.uniform(r, n)
    assert all(popcount(C) == r + 1 for C in M.circuits())


def test_uniform_uses_point_at_infinity():
    M = mt.uniform(2, 4, field_new(3))
    assert M.independence_complex() == Complex.uniform(2, 4)
    with pytest.raises(FieldTooSmall):
        mt.uniform(2, 5, field_new(3))


def test_closure_and_flats():
    M = mt.fano()
    flats = M.flats()
    assert len(flats) == 1 + 7 + 7 + 1
    for A in range(1 << M.n):
        c = M.closure(A)
        assert M.closure(c) == c
        assert M.rank_of(c) == M.rank_of(A)
        assert c in flats
    within = M.flats(within=0b0000111)
    assert all(F & ~0b0000111 == 0 for F in within)


def test_loops_and_circuits():
    F = field_new(3)
    M = mt.from_matrix(F, [[1, 0], [0, 0], [2, 0], [0, 1]])
    assert M.loops == 0b0010
    assert 0b0010 in M.circuits()
    assert 0b0101 in M.circuits()


def test_dual_bases_are_complements():
    for M in (mt.fano(), mt.k4(), mt.uniform(2, 5)):
        D = mt.dual(M)
        assert D.rank == M.n - M.rank
        assert sorted(_bases(D)) == sorted(M.ground & ~B for B in _bases(M))


def test_contract_rank_formula():
    M = mt.k4()
    A = 0b000011
    C = mt.contract(M, A)
    rest = [j for j in range(M.n) if not A >> j & 1]
    for B in range(1 << C.n):
        orig = mask_of(rest[i] for i in mt.elements(B))
        assert C.rank_of(B) == M.rank_of(orig | A) - M.rank_of(A)
    assert mt.minor(M, "delete", A).n == 4


def test_direct_sum_and_parallel_extension():
    S = mt.direct_sum(mt.k3(), mt.fano())
    assert S.rank == 2 + 3
    P = mt.parallel_extension(mt.k3(), 2)
    assert P.n == 6 and P.rank == 2
    assert not P.is_independent(0b11)
    assert mt.clone_element(mt.k3(), 0).columns[3] == mt.k3().columns[0]


def _collinear_triples(points):
    out = []
    for tri in itertools.combinations(range(len(points)), 3):
        (a, b, c), (d, e, f), (g, h, i) = (points[t] for t in tri)
        if a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g) == 0:
            out.append(mask_of(tri))
    return sorted(out)


def test_grid_lines_match_integer_determinants():
    M, Mp = mt.grid_examples()
    assert sorted(mt.lines_of_size(M, 2, 3)) == _collinear_triples(mt.GRID_E)
    assert len(mt.lines_of_size(M, 2, 3)) == 8
    assert sorted(mt.lines_of_size(Mp, 2, 3)) == _collinear_triples(mt.GRID_E_PRIME)
    assert M.rank == Mp.rank == 3


@pytest.mark.parametrize("m", [Fraction(3, 2), Fraction(5, 2), Fraction(7, 3), Fraction(11, 4)])
def test_counterexample_parameters_minimal(m):
    a, b, c = mt.counterexample_parameters(m)
    frac = m - (m.numerator // m.denominator)
    r = a - b * c
    assert c == m.numerator // m.denominator
    assert Fraction(2 * r - 1, 2 * b - 1) < frac <= Fraction(r, b)
    for bb in range(1, b):
        assert not any(Fraction(2 * rr - 1, 2 * bb - 1) < frac <= Fraction(rr, bb) for rr in range(1, bb + 1))


def test_counterexample_values():
    assert mt.counterexample_parameters(Fraction(3, 2)) == (3, 2, 1)
    with pytest.raises(IntegerSlope):
        mt.counterexample_parameters(2)
    with pytest.raises(BadSlope):
        mt.counterexample_parameters(Fraction(1, 2))
    M = mt.laman_counterexample(Fraction(3, 2))
    assert M.n == 1 + 2 * 2 and M.r_ambient == 3


def test_complex_operations():
    C = Complex.from_facets(3, [0b011, 0b110])
    assert 0b001 in C and 0b101 not in C
    assert C.facets() == [0b011, 0b110]
    assert C <= Complex.simplex(3) and C < Complex.simplex(3)
    assert C.first_difference(Complex.simplex(3)) == 0b101
    assert C.dimension_rank == 2
    with pytest.raises(ValueError):
        Complex.from_faces(2, [0b11])


def test_constructor_errors():
    F = field_new(2)
    with pytest.raises(DimensionMismatch):
        mt.LinearMatroid(F, ((1, 0), (1,)), 2)
    with pytest.raises(VertexOutOfRange):
        mt.graphic(3, [(0, 3)])
    with pytest.raises(FieldTooSmall):
        mt.grid_examples(field_new(7))
