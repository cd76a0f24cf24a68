"""Cyclic element y1 = e + a and the opposite Cartan subalgebra ker ad y1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import AnsatzUnsolvable, NotRegularSemisimple
from .liealg import LieAlgebraData, SL2Triple
from .sl2basis import NormalizedBasis


@dataclass(frozen=True)
class OppositeCartanData:
    a: list[Fraction]
    y1: list[Fraction]
    y: list[list[Fraction]]
    v: list[list[Fraction]]
    u: list[list[Fraction]]
    A: list[list[Fraction]]


# --- univariate polynomials over Q, coefficient lists, lowest degree first ---

def _ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmod(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k, x in enumerate(b):
            a[k + shift] -= c * x
        a = _ptrim(a)
    return a


def poly_gcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b)
    return [x / a[-1] for x in a] if a else a


def minimal_polynomial(m: list[list[Fraction]]) -> list[Fraction]:
    """Monic minimal polynomial via the first linear dependency among I, M, M^2, ..."""
    n = len(m)
    powers = [la.identity(n)]
    while True:
        flats = [[x for row in p for x in row] for p in powers]
        nxt = la.matmul(powers[-1], m)
        cand = [x for row in nxt for x in row]
        sol = la.solve(la.transpose(flats), cand)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)]
        powers.append(nxt)


def is_squarefree(p: list[Fraction]) -> bool:
    dp = [k * c for k, c in enumerate(p)][1:]
    return len(poly_gcd(p, dp)) == 1


def cyclic_element(data: LieAlgebraData, triple: SL2Triple, basis: NormalizedBasis):
    r = basis.rank
    kappa = basis.exponents[-1]
    a = basis.X(r, -kappa)
    y1 = la.add(triple.e, a)
    ad = data.ad(y1)
    kernel_dim = data.dim - la.rank(ad)
    if kernel_dim != data.rank:
        raise NotRegularSemisimple(f"dim ker ad y1 = {kernel_dim}, expected {data.rank}")
    if not is_squarefree(minimal_polynomial(ad)):
        raise NotRegularSemisimple("ad y1 is not semisimple")
    return a, y1


def opposite_cartan_basis(data: LieAlgebraData, triple: SL2Triple, basis: NormalizedBasis,
                          a: list[Fraction], y1: list[Fraction]) -> OppositeCartanData:
    """Solve [e, v_i] = [a, X^i_{eta_i}] with v_i of degree 2 eta_i - 2 kappa - 2."""
    kappa = basis.exponents[-1]
    labels = basis.labels()
    ys, vs, us = [], [], []
    for i, eta in enumerate(basis.exponents, 1):
        target = data.bracket(a, basis.X(i, eta))
        deg = 2 * eta - 2 * kappa - 2
        comp = [basis.X(j, J) for j, J in labels if 2 * J == deg]
        images = [data.bracket(triple.e, w) for w in comp]
        coeffs = la.solve(la.transpose(images), target) if comp else None
        if coeffs is None:
            if not comp and not any(target):
                coeffs = []
            else:
                raise AnsatzUnsolvable(f"no v_{i} with [e, v] = [a, X_eta]")
        v = [Fraction(0)] * data.dim
        for c, w in zip(coeffs, comp):
            v = la.add(v, la.scale(c, w))
        u = la.scale(Fraction(-1), basis.X(i, eta))
        y = la.add(v, u)
        if any(data.bracket(y1, y)):
            raise AnsatzUnsolvable(f"y_{i} does not commute with y1")
        ys.append(y)
        vs.append(v)
        us.append(u)
    A = [[data.pair(yi, yj) for yj in ys] for yi in ys]
    return OppositeCartanData(a, y1, ys, vs, us, A)


def gram_bracket_terms(data: LieAlgebraData, basis: NormalizedBasis, a: list[Fraction]) -> list[list[Fraction]]:
    """<[a,X^i_eta_i], X^j_{eta_j-1}>/(2 eta_j) + (i <-> j), to be compared with A."""
    etas = basis.exponents
    r = len(etas)

    def term(i, j):
        return data.pair(data.bracket(a, basis.X(i, etas[i - 1])), basis.X(j, etas[j - 1] - 1)) / (2 * etas[j - 1])

    return [[term(i, j) + term(j, i) for j in range(1, r + 1)] for i in range(1, r + 1)]
