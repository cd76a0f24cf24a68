import pytest

from conftest import pipeline
from slodowy.diffpoly import DiffPolynomial
from slodowy.dsred import GaugeFixResult, XAlgebra, gauge_fix, random_gauge_check
from slodowy.liealg import build_lie_algebra, dynkin_grading, principal_sl2
from slodowy.sl2basis import lowest_weight_vectors, normalize_basis


def q(i, I, m=0):
    return DiffPolynomial.var((i, I, m))


def _basis(t, r):
    data = build_lie_algebra(t, r, use_cache=False)
    tr = principal_sl2(data)
    return data, normalize_basis(data, tr, lowest_weight_vectors(data, tr, dynkin_grading(data, tr)))


def test_a1_virasoro_density():
    data, basis = _basis("A", 1)
    z = gauge_fix(data, basis).z
    assert z == [q(1, 1) - q(1, 0, 1) + q(1, 0) * q(1, 0)]


@pytest.mark.parametrize("t,r", [("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_leading_terms_and_degrees(t, r):
    data, basis = _basis(t, r)
    z = gauge_fix(data, basis).z
    for i, (zi, eta) in enumerate(zip(z, basis.exponents), 1):
        assert zi.coefficient(((((i, eta, 0)), 1),)) == 1
        assert zi.coefficient(((((i, eta - 1, 1)), 1),)) == -1
        assert zi.degrees() == {2 * eta + 2}


def test_a2_second_generator():
    data, basis = _basis("A", 2)
    z2 = gauge_fix(data, basis).z[1]
    assert z2.coefficient((((2, 2, 0), 1),)) == 1
    assert z2.degree() == 6


def test_z1_contains_the_virasoro_quadratic_part():
    # z^1 = q_1^1 - d_x q_1^0 + 1/2 sum_i <X^i_0, X^i_0> (q_i^0)^2 at the leading order
    data, basis = _basis("A", 2)
    alg = XAlgebra(data, basis)
    z1 = gauge_fix(data, basis, alg).z[0]
    for i in (1, 2):
        assert z1.coefficient((((i, 0, 0), 2),)) == alg.pairing[(i, 0)] / 2


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2)])
def test_random_gauge_invariance(t, r):
    res = pipeline(t, r)
    ok, n = random_gauge_check(res.alg, res.zgen, trials=25, seed=7)
    assert ok and n == 25


def test_gauge_check_detects_a_non_invariant():
    res = pipeline("A", 2)
    tampered = list(res.zgen.z)
    tampered[1] = tampered[1] + q(2, 1)
    ok, n = random_gauge_check(res.alg, GaugeFixResult(res.zgen.exponents, tampered, {}), trials=25)
    assert not ok and n <= 25
