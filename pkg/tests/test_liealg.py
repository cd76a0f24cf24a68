import itertools
from fractions import Fraction

import pytest

from slodowy import linalg as la
from slodowy.errors import RankBound, UnsupportedType
from slodowy.liealg import build_lie_algebra, dynkin_grading, principal_sl2, read_structure_constants, cache_path


@pytest.mark.parametrize("t,r,dim,exps", [
    ("A", 1, 3, [1]), ("A", 2, 8, [1, 2]), ("B", 2, 10, [1, 3]), ("G", 2, 14, [1, 5]),
    ("A", 3, 15, [1, 2, 3]), ("C", 3, 21, [1, 3, 5]), ("D", 4, 28, [1, 3, 3, 5]),
])
def test_dimension_and_exponents(t, r, dim, exps):
    data = build_lie_algebra(t, r, use_cache=False)
    assert data.dim == dim
    assert data.exponents == exps
    h = max(exps) + 1
    assert sorted(exps) == sorted(h - e for e in exps)


@pytest.mark.parametrize("t,r", [("A", 2), ("B", 2), ("G", 2)])
@pytest.mark.parametrize("backend", ["chevalley", "matrix"])
def test_jacobi_and_invariant_form(t, r, backend):
    data = build_lie_algebra(t, r, backend, use_cache=False)
    basis = [data.unit(k) for k in range(data.dim)]
    for x, y, z in itertools.combinations(basis, 3):
        jac = la.add(la.add(data.bracket(x, data.bracket(y, z)), data.bracket(y, data.bracket(z, x))),
                     data.bracket(z, data.bracket(x, y)))
        assert la.is_zero(jac)
    for x, y, z in itertools.product(basis[:5], repeat=3):
        assert data.pair(data.bracket(x, y), z) == data.pair(x, data.bracket(y, z))
    assert la.det(data.form) != 0


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_principal_triple(t, r):
    data = build_lie_algebra(t, r, use_cache=False)
    tr = principal_sl2(data)
    assert data.bracket(tr.e, tr.f) == tr.h
    assert data.bracket(tr.h, tr.e) == la.scale(2, tr.e)
    assert data.bracket(tr.h, tr.f) == la.scale(-2, tr.f)
    assert data.pair(tr.e, tr.f) == 1
    assert data.dim - la.rank(data.ad(tr.e)) == r


def test_b2_grading_is_even():
    data = build_lie_algebra("B", 2, use_cache=False)
    grading = dynkin_grading(data, principal_sl2(data))
    assert set(grading.degrees) <= {-6, -4, -2, 0, 2, 4, 6}
    assert all(d % 2 == 0 for d in grading.degrees)


@pytest.mark.parametrize("t,r,dim_b,dim_n", [("A", 1, 2, 1), ("A", 2, 5, 3), ("G", 2, 8, 6)])
def test_borel_and_nilpotent_dimensions(t, r, dim_b, dim_n):
    data = build_lie_algebra(t, r, use_cache=False)
    grading = dynkin_grading(data, principal_sl2(data))
    assert len(grading.borel) == dim_b
    assert len(grading.nilpotent) == dim_n


@pytest.mark.parametrize("t,r", [("E", 9), ("A", 0), ("B", 1), ("G", 3), ("X", 2)])
def test_unsupported_types(t, r):
    with pytest.raises(UnsupportedType):
        build_lie_algebra(t, r)


def test_rank_bound():
    with pytest.raises(RankBound):
        build_lie_algebra("A", 5)


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SLODOWY_CACHE_DIR", str(tmp_path))
    fresh = build_lie_algebra("B", 2, use_cache=True)
    path = cache_path("B", 2, "chevalley")
    assert path.exists()
    dim, table, _ = read_structure_constants(path)
    assert dim == fresh.dim and table == fresh.structure_constants
    cached = build_lie_algebra("B", 2, use_cache=True)
    assert cached == fresh


def test_corrupt_cache_is_ignored(tmp_path, monkeypatch):
    monkeypatch.setenv("SLODOWY_CACHE_DIR", str(tmp_path))
    path = cache_path("A", 2, "chevalley")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("garbage\n")
    assert build_lie_algebra("A", 2).exponents == [1, 2]
