from fractions import Fraction

import pytest

from conftest import pipeline
from slodowy.dirac import bareiss_inverse, invert_polynomial
from slodowy.errors import SingularBlock
from slodowy.poly import MPoly


def test_a1_ordered_basis_and_slice_matrix():
    res = pipeline("A", 1)
    # xi = (f, h, -e) here; flipping the last sign recovers the (f, h, e) convention
    assert res.obd.labels == [(1, -1), (1, 0), (1, 1)]
    D = [1, 1, -1]
    z = MPoly.var(1, 0)
    zero, one = MPoly(1), MPoly.const(1, 1)
    F = [[res.slice_F[i][j] * (D[i] * D[j]) for j in range(3)] for i in range(3)]
    assert F == [[zero, -z, zero], [z, zero, -one], [zero, one, zero]]
    g = [[res.obd.gtilde[i][j] * D[i] * D[j] for j in range(3)] for i in range(3)]
    assert g == [[0, 0, 1], [0, Fraction(1, 2), 0], [1, 0, 0]]
    assert res.dirac.g2 == [[z * 2]]
    assert res.dirac.F2 == [[zero]]


@pytest.mark.parametrize("t,r", [("A", 2), ("B", 2), ("G", 2)])
def test_ordered_basis_structure(t, r):
    obd = pipeline(t, r).obd
    exps = pipeline(t, r).basis.exponents
    n = len(obd.labels)
    assert obd.labels[:r] == [(i, -eta) for i, eta in enumerate(exps, 1)]
    for I in range(n):
        assert obd.degree(I) == -obd.degree(n - 1 - I) or obd.labels[I][1] == 0
    mid = [I for I in range(n) if obd.labels[I][1] == 0]
    for I in range(n):
        for K in range(n):
            if obd.gram[I][K] and not (I + K == n - 1 or (I in mid and K in mid)):
                pytest.fail(f"gram entry ({I}, {K}) off the antidiagonal")


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_dirac_route_matches_leibniz_route(t, r):
    res = pipeline(t, r)
    assert res.dirac.g2 == res.leading.g2
    assert all(not x for row in res.dirac.F2 for x in row)
    assert res.dirac.block_degrees_ok


def test_bareiss_inverse_small():
    x = MPoly.var(1, 0)
    one = MPoly.const(1, 1)
    m = [[one, x], [MPoly(1), one * 2]]
    inv = invert_polynomial(m)
    prod = [[sum((m[i][k] * inv[k][j] for k in range(2)), MPoly(1)) for j in range(2)] for i in range(2)]
    assert prod == [[one, MPoly(1)], [MPoly(1), one]]
    num, det = bareiss_inverse(m)
    assert det.is_constant()


def test_nonconstant_determinant_is_rejected():
    x = MPoly.var(1, 0)
    with pytest.raises(SingularBlock):
        invert_polynomial([[x, MPoly(1)], [MPoly(1), MPoly.const(1, 1)]])


def test_singular_block_is_rejected():
    zero = MPoly(1)
    with pytest.raises(SingularBlock):
        invert_polynomial([[zero, zero], [zero, MPoly.const(1, 1)]])
