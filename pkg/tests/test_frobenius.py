from fractions import Fraction

import pytest

from conftest import pipeline
from slodowy.frobenius import (FrobeniusResult, flat_coordinates, lie_derivative, relabel_unity_first,
                               transform_pencil, verify_wdvv)
from slodowy.poly import MPoly


def test_a1_prepotential_and_pencil():
    res = pipeline("A", 1)
    t = MPoly.var(1, 0)
    assert res.flat.t_of_z == [t]
    assert res.flat.eta == [[2]]
    assert res.flat.g2 == [[t * 2]]
    assert res.frob.F == t ** 3 * Fraction(1, 12)
    assert res.R == [[Fraction(1, 2)]]
    assert res.frob.charge == 0


def test_a2_values():
    res = pipeline("A", 2)
    t1, t2 = MPoly.var(2, 0), MPoly.var(2, 1)
    assert res.frob.F == t1 ** 4 * Fraction(1, 54) + t1 * t2 ** 2 * Fraction(1, 6)
    T2 = res.flat.t_of_z[1] - t2
    assert set(T2.terms) <= {(2, 0)}
    assert lie_derivative(res.flat.unity(), res.flat.g1) == [[MPoly(2)] * 2] * 2


@pytest.mark.parametrize("t,r", [("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_flat_pencil_shape(t, r):
    res = pipeline(t, r)
    flat, exps = res.flat, res.basis.exponents
    n = len(exps)
    h = max(exps) + 1
    for i in range(n):
        for j in range(n):
            on_anti = exps[i] + exps[j] == h
            assert (flat.eta[i][j] != 0) == on_anti
            if on_anti:
                assert flat.eta[i][j] == res.leading.g1[i][j].constant_term()
            assert flat.g2[i][j].diff(n - 1) == flat.eta[i][j]
        assert flat.g2[0][i] == MPoly.var(n, i, exps[i] + 1)
        for k in range(n):
            assert flat.Gamma2[0][i][k] == MPoly.const(n, exps[i] if i == k else 0)
    mu = Fraction(-2, h)
    E = flat.euler()
    lie = lie_derivative(E, flat.g2)
    assert lie == [[x * mu for x in row] for row in flat.g2]


def test_flat_coordinates_are_idempotent():
    res = pipeline("B", 2)
    again = flat_coordinates(res.flat.g1, res.flat.Gamma1, res.basis.exponents)
    assert again.t_of_z == [MPoly.var(2, 0), MPoly.var(2, 1)]


def test_a3_wdvv_is_nontrivial():
    res = pipeline("A", 3)
    assert verify_wdvv(res.frob) == {"wdvv": True, "metric_from_F": True, "quasihomogeneity": True}
    broken = FrobeniusResult(res.frob.exponents, res.frob.degrees, res.frob.charge, res.frob.eta,
                             res.frob.F + MPoly.var(3, 0) ** 2 * MPoly.var(3, 1) ** 2 * Fraction(1, 7))
    assert not verify_wdvv(broken)["wdvv"]


def test_rank_one_and_two_wdvv_are_vacuous():
    for t, r in [("A", 1), ("A", 2), ("G", 2)]:
        assert verify_wdvv(pipeline(t, r).frob)["wdvv"]


def test_relabel_reverses_variables():
    F = pipeline("A", 2).frob.F
    G = relabel_unity_first(F)
    assert G.terms == {(2, 1): Fraction(1, 6), (0, 4): Fraction(1, 54)}
    assert relabel_unity_first(G) == F


@pytest.mark.slow
@pytest.mark.parametrize("t,r", [("C", 3), ("B", 3), ("D", 4)])
def test_rank_three_and_four(t, r):
    res = pipeline(t, r, gauge_trials=5)
    assert res.ok, res.failed()
