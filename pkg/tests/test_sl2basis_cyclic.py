from fractions import Fraction
from math import comb

import pytest

from slodowy import linalg as la
from slodowy.cyclic import cyclic_element, gram_bracket_terms, is_squarefree, minimal_polynomial, opposite_cartan_basis
from slodowy.liealg import build_lie_algebra, dynkin_grading, principal_sl2
from slodowy.sl2basis import lowest_weight_vectors, normalize_basis

ALGEBRAS = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("D", 4)]


def _setup(t, r):
    data = build_lie_algebra(t, r, use_cache=False)
    tr = principal_sl2(data)
    low = lowest_weight_vectors(data, tr, dynkin_grading(data, tr))
    return data, tr, low, normalize_basis(data, tr, low)


@pytest.mark.parametrize("t,r", ALGEBRAS)
def test_pairing_pattern(t, r):
    data, tr, _, basis = _setup(t, r)
    for i, eta in enumerate(basis.exponents, 1):
        for I in range(-eta, eta + 1):
            got = data.pair(basis.X(i, I), basis.X(i, -I))
            assert got == basis.nu[i - 1] * (-1) ** (eta - I + 1) * comb(2 * eta, eta - I)
            for k, eta_k in enumerate(basis.exponents, 1):
                for J in range(-eta_k, eta_k + 1):
                    if (k, J) != (i, -I):
                        assert data.pair(basis.X(i, I), basis.X(k, J)) == 0
    assert basis.nu[0] == 1
    assert la.det(basis.change_of_basis()) != 0


@pytest.mark.parametrize("t,r", ALGEBRAS)
def test_ladder_relations(t, r):
    data, tr, _, basis = _setup(t, r)
    for i, eta in enumerate(basis.exponents, 1):
        for I in range(-eta, eta + 1):
            x = basis.X(i, I)
            assert data.bracket(tr.h, x) == la.scale(2 * I, x)
            back = data.bracket(tr.f, data.bracket(tr.e, x))
            assert back == la.scale((eta - I) * (eta + I + 1), x)


def test_a1_basis_is_f_h_minus_e():
    data, tr, low, basis = _setup("A", 1)
    assert low == [tr.f]
    assert basis.X(1, -1) == tr.f and basis.X(1, 0) == tr.h and basis.X(1, 1) == la.scale(-1, tr.e)
    assert data.pair(basis.X(1, 0), basis.X(1, 0)) == 2


def test_a2_lowest_vector_degrees():
    data, tr, low, _ = _setup("A", 2)
    degs = []
    for v in low:
        hv = data.bracket(tr.h, v)
        k = next(n for n, c in enumerate(v) if c)
        assert hv == la.scale(hv[k] / v[k], v)
        degs.append(hv[k] / v[k])
    assert sorted(degs) == [-4, -2]


def test_repeated_exponent_gives_two_modules():
    _, _, low, basis = _setup("D", 4)
    assert basis.exponents.count(3) == 2
    assert la.rank(low) == len(low) == 4


@pytest.mark.parametrize("t,r", ALGEBRAS)
def test_cyclic_element_and_gram(t, r):
    data, tr, _, basis = _setup(t, r)
    a, y1 = cyclic_element(data, tr, basis)
    assert y1 == la.add(tr.e, a)
    ad = data.ad(y1)
    assert data.dim - la.rank(ad) == r
    assert is_squarefree(minimal_polynomial(ad))
    cyc = opposite_cartan_basis(data, tr, basis, a, y1)
    for y in cyc.y:
        assert la.is_zero(data.bracket(y1, y))
    A = cyc.A
    h = max(basis.exponents) + 1
    for i in range(r):
        for j in range(r):
            assert A[i][j] == A[j][i]
            if basis.exponents[i] + basis.exponents[j] != h:
                assert A[i][j] == 0
    assert la.det(A) != 0
    assert gram_bracket_terms(data, basis, a) == A


def test_a1_cyclic_values():
    data, tr, _, basis = _setup("A", 1)
    a, y1 = cyclic_element(data, tr, basis)
    assert a == tr.f and y1 == la.add(tr.e, tr.f)
    assert opposite_cartan_basis(data, tr, basis, a, y1).A == [[Fraction(2)]]


def test_a2_gram_is_off_diagonal():
    data, tr, _, basis = _setup("A", 2)
    a, y1 = cyclic_element(data, tr, basis)
    A = opposite_cartan_basis(data, tr, basis, a, y1).A
    assert A[0][0] == A[1][1] == 0 and A[0][1] == A[1][0] != 0
