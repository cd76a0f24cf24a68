"""The two structure-constant backends agree up to the sign freedom X^i -> -X^i."""

import itertools

import pytest

from conftest import pipeline
from slodowy.poly import MPoly


def _sign_images(signs):
    n = len(signs)
    return [MPoly.var(n, k, s) for k, s in enumerate(signs)]


def _equivalent(a, b):
    r = len(a.basis.exponents)
    for tail in itertools.product((1, -1), repeat=r - 1):
        signs = (1,) + tail
        img = _sign_images(signs)
        if all(b.leading.g2[i][j].subs(img) * (signs[i] * signs[j]) == a.leading.g2[i][j]
               for i in range(r) for j in range(r)):
            return True
    return False


@pytest.mark.parametrize("t,r", [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_matrix_backend_agrees(t, r):
    a = pipeline(t, r, "chevalley", 10)
    b = pipeline(t, r, "matrix", 10)
    assert b.ok, b.failed()
    assert a.basis.exponents == b.basis.exponents and a.basis.nu == b.basis.nu
    assert a.cyclic.A == b.cyclic.A
    assert _equivalent(a, b)
    assert a.frob.F == b.frob.F
    assert a.frob.charge == b.frob.charge
