from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matrigid.errors import DimensionMismatch, NonPrimeModulus
from matrigid.gf import Echelon, FFMatrix, field_new, field_of_order, nullspace_basis, rank, rref


def _polydivides(g, f, p):
    # naive long division over GF(p), coefficients constant term first
    f = list(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, x in enumerate(g):
            f[shift + i] = (f[shift + i] - c * x) % p
        while f and f[-1] == 0:
            f.pop()
    return not f


def _irreducible_by_trial(f, p):
    s = len(f) - 1
    for deg in range(1, s // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _polydivides(list(low) + [1], f, p):
                return False
    return True


def _least_by_trial(p, s):
    for t in range(p**s):
        coeffs = [(t // p**i) % p for i in range(s)]
        if _irreducible_by_trial(coeffs + [1], p):
            return tuple(coeffs + [1])


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_is_least_irreducible(p, s):
    assert field_new(p, s).modulus_poly == _least_by_trial(p, s)


def test_gf256_modulus_and_product():
    F = field_new(2, 8)
    packed = sum(c << i for i, c in enumerate(F.modulus_poly))
    assert packed == 0x11B
    # x^7+x^6+x^4+x^2+x+1 times x^7+x+1 reduced mod 0x11b, by shift-and-add
    a, b, acc = 0x57, 0x83, 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
        b >>= 1
    assert F.mul(0x57, 0x83) == acc == 0xC1


def _schoolbook(F, a, b):
    p, f = F.p, F.modulus_poly
    x, y = F.to_coeffs(a), F.to_coeffs(b)
    prod = [0] * (len(x) + len(y) - 1)
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            prod[i + j] = (prod[i + j] + u * v) % p
    for k in range(len(prod) - 1, F.s - 1, -1):
        c = prod[k]
        for i, m in enumerate(f):
            prod[k - F.s + i] = (prod[k - F.s + i] - c * m) % p
    return F.from_coeffs(prod[:F.s])


@pytest.mark.parametrize("p,s", [(3, 2), (5, 2), (2, 3)])
def test_extension_multiplication_table(p, s):
    F = field_new(p, s)
    for a in F.elements():
        for b in F.elements():
            assert F.mul(a, b) == _schoolbook(F, a, b)


FIELDS = [field_new(2), field_new(7), field_new(2, 5), field_new(3, 3), field_new(2, 61), field_new(3, 38)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@pytest.mark.parametrize("F", [field_new(2, 4), field_new(3, 2), field_new(5)])
def test_multiplicative_group_order(F):
    for a in range(1, F.q):
        assert F.pow(a, F.q - 1) == 1


def test_field_element_wrapper():
    F = field_new(3, 2)
    x = F([0, 1])
    assert x.coeffs == (0, 1)
    assert (x * x.inverse()) == F(1)
    assert x ** 8 == F(1)
    assert x - x == F(0)


def test_field_errors():
    with pytest.raises(NonPrimeModulus):
        field_new(4)
    with pytest.raises(NonPrimeModulus):
        field_of_order(6)
    assert field_of_order(9) == field_new(3, 2)
    with pytest.raises(ZeroDivisionError):
        field_new(5).inv(0)


def _span_size(F, rows):
    span = {tuple([0] * len(rows[0]))} if rows else {()}
    for r in rows:
        span = {tuple(F.add(x, F.mul(c, y)) for x, y in zip(s, r)) for s in span for c in range(F.q)}
    return len(span)


matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(0, 2), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_span_count(rows):
    F = field_new(3)
    m = FFMatrix.from_rows(F, rows)
    r = rank(m)
    assert F.q ** r == _span_size(F, rows)
    assert rank(m.transpose()) == r


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_and_rref(rows):
    F = field_new(3)
    m = FFMatrix.from_rows(F, rows)
    basis = nullspace_basis(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert not any(m.apply(v))
    reduced, pivots = rref(m)
    for i, c in enumerate(pivots):
        assert reduced[i, c] == 1
        assert all(reduced[j, c] == 0 for j in range(reduced.rows) if j != i)


def test_matrix_shape_errors():
    F = field_new(2)
    with pytest.raises(DimensionMismatch):
        FFMatrix.from_rows(F, [[1, 0], [1]])
    I = FFMatrix.identity(F, 3)
    assert (I @ I).to_rows() == I.to_rows()


def test_echelon_add_pop():
    F = field_new(5)
    E = Echelon(F, 3)
    assert E.add([1, 2, 3])
    assert not E.add([2, 4, 1])
    assert E.add([0, 1, 0])
    assert E.contains([1, 0, 3])
    E.pop()
    assert not E.contains([1, 0, 3])
    assert len(E) == 1
