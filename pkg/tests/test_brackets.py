from fractions import Fraction

import pytest

from conftest import pipeline
from slodowy.brackets import base_tables, coordinates, slice_restriction, to_mpoly
from slodowy.diffpoly import DiffPolynomial, dispersionless_coefficient, leibnitz_bracket
from slodowy.poly import MPoly


def _tables(res):
    r = len(res.basis.exponents)
    return base_tables(res.alg, (r, -res.basis.exponents[-1]))


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2)])
def test_base_tables_are_skew_and_graded(t, r):
    res = pipeline(t, r)
    p1, p2 = _tables(res)
    kappa = max(res.basis.exponents)
    coords = coordinates(res.basis.exponents)
    for A in coords:
        for B in coords:
            for table in (p1, p2):
                x, y = table.get((A, B)), table.get((B, A))
                if x is None or y is None:
                    assert not x and not y
                else:
                    assert x == -y.swapped()
            if A[1] + B[1] != kappa:
                assert not p1.get((A, B))


def test_a1_first_table():
    res = pipeline("A", 1)
    p1, _ = _tables(res)
    entry = p1[((1, 0), (1, 1))]
    assert set(entry.entries) == {(-1, 0)}
    assert entry[(-1, 0)].degrees() == {0}


def _constants(p1):
    out = {}
    for key, series in p1.items():
        p = series[(-1, 0)]
        if p:
            out[key] = p.terms[()]
    return out


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2)])
def test_closed_form_agrees_with_leibniz_expansion(t, r):
    res = pipeline(t, r)
    p1, _ = _tables(res)
    rs = slice_restriction(res.basis.exponents)
    consts = _constants(p1)
    for i, zi in enumerate(res.zgen.z):
        for j, zj in enumerate(res.zgen.z):
            full = leibnitz_bracket(zi, zj, p1, rs)
            assert full[(0, 1)] == rs(dispersionless_coefficient(zi, zj, consts, rs))


def test_closed_form_gives_g1_on_the_antidiagonal():
    res = pipeline("B", 2)
    p1, _ = _tables(res)
    rs = slice_restriction(res.basis.exponents)
    consts = _constants(p1)
    z = res.zgen.z
    assert dispersionless_coefficient(z[0], z[0], consts, rs) == DiffPolynomial()
    val = dispersionless_coefficient(z[1], z[0], consts, rs)
    assert to_mpoly(val, res.basis.exponents) == res.leading.g1[1][0]


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_virasoro_row_hydrodynamic_part(t, r):
    res = pipeline(t, r)
    exps = res.basis.exponents
    nv = len(exps)
    for j, eta in enumerate(exps):
        assert res.leading.g2[0][j] == MPoly.var(nv, j, eta + 1)
        assert res.red2[0][j][(0, 0)] == DiffPolynomial.var((j + 1, eta, 1), eta)


def test_virasoro_central_term_value():
    # eps-grading: one power per x-derivative, so delta''' sits at eps^2 here
    for t, r in [("A", 1), ("A", 2), ("B", 2)]:
        series = pipeline(t, r).red2[0][0]
        assert series[(2, 3)] == DiffPolynomial.const(Fraction(-1, 2))
        assert not series[(1, 3)]


@pytest.mark.parametrize("t,r", [("A", 2), ("B", 2)])
def test_reduced_matrix_is_skew(t, r):
    res = pipeline(t, r)
    for red in (res.red1, res.red2):
        for i, row in enumerate(red):
            for j, entry in enumerate(row):
                assert entry == -red[j][i].swapped()


def test_parallel_reduction_matches_serial():
    from slodowy.brackets import reduce

    res = pipeline("B", 2)
    _, p2 = _tables(res)
    assert reduce(res.zgen, p2, jobs=2) == res.red2


def test_b2_first_metric():
    g1 = pipeline("B", 2).leading.g1
    z1 = MPoly.var(2, 0)
    assert g1 == [[MPoly(2), MPoly.const(2, 4)], [MPoly.const(2, 4), z1 * Fraction(-14, 15)]]
