"""Leading terms of the second reduced bracket via Dirac reduction.

This is an independent route to g_2: no gauge fixing, no Leibniz expansion.
The finite Lie-Poisson matrix is evaluated on the slice

    F~^{IJ}(b) = <b, [xi*_I, xi*_J]>,   b = e + sum_i z^i X^i_{-eta_i},

with the constant shift from e included, and the constraint block is inverted
over Q[z] by fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dsred import XAlgebra
from .errors import OrderingFailure, SingularBlock
from .poly import MPoly

Label = tuple[int, int]


@dataclass(frozen=True)
class OrderedBasisData:
    labels: list[Label]          # xi_1 .. xi_n as X-labels
    gram: list[list[Fraction]]   # <xi_I, xi_J>
    dual: list[dict]             # xi*_I in X-coordinates
    gtilde: list[list[Fraction]] # <xi*_I, xi*_J>
    rank: int

    def degree(self, I: int) -> int:
        """Dynkin degree of xi_I (0-based position)."""
        return 2 * self.labels[I][1]


def ordered_basis(alg: XAlgebra) -> OrderedBasisData:
    """g^f first, then the rest by ascending degree, mirrored partners at n+1-I.

    The r weight-zero vectors occupy the middle as a diagonal block, since a
    vector paired with itself can only sit on the antidiagonal at the center.
    """
    exps = alg.basis.exponents
    r = len(exps)
    head = [(i, -eta) for i, eta in enumerate(exps, 1)]
    rest = sorted(((i, J) for i, J in alg.labels if J < 0 and (i, J) not in head),
                  key=lambda lab: (lab[1], lab[0]))
    zero = [(i, 0) for i in range(1, r + 1)]
    lower = head + rest
    labels = lower + zero + [(i, -J) for i, J in reversed(lower)]
    n = len(labels)
    if n != len(alg.labels):
        raise OrderingFailure("ordered basis does not cover g")

    gram = [[Fraction(0)] * n for _ in range(n)]
    for I, (i, J) in enumerate(labels):
        for K, (k, L) in enumerate(labels):
            if i == k and J == -L:
                gram[I][K] = alg.pairing[(i, J)]
    lo, hi = len(lower), len(lower) + r
    for I in range(n):
        for K in range(n):
            if gram[I][K] and not (I + K == n - 1 or (lo <= I < hi and lo <= K < hi)):
                raise OrderingFailure(f"Gram entry ({I + 1},{K + 1}) off the antidiagonal")
    dual = []
    for i, J in labels:
        dual.append({(i, -J): 1 / alg.pairing[(i, J)]})
    for I, d in enumerate(dual):
        (lab, _), = d.items()
        if 2 * lab[1] != -2 * labels[I][1]:
            raise OrderingFailure("dual vector has the wrong degree")
    gtilde = [[_pair_const(alg, dual[I], dual[K]) for K in range(n)] for I in range(n)]
    return OrderedBasisData(labels, gram, dual, gtilde, r)


def _pair_const(alg: XAlgebra, x: dict, y: dict) -> Fraction:
    total = Fraction(0)
    for (i, J), c in x.items():
        d = y.get((i, -J))
        if d:
            total += c * d * alg.pairing[(i, J)]
    return total


def slice_matrix(alg: XAlgebra, obd: OrderedBasisData) -> list[list[MPoly]]:
    """F~^{IJ} on the slice as polynomials in z^1..z^r."""
    r = obd.rank
    n = len(obd.labels)
    # <b, X^i_J> for b = e + sum z^k X^k_{-eta_k}
    b_dot: dict[Label, MPoly] = {(1, -1): MPoly.const(r, -alg.pairing[(1, 1)])}
    for k, eta in enumerate(alg.basis.exponents, 1):
        b_dot[(k, eta)] = b_dot.get((k, eta), MPoly(r)) + MPoly.var(r, k - 1, alg.pairing[(k, -eta)])
    F = [[MPoly(r) for _ in range(n)] for _ in range(n)]
    for I in range(n):
        for K in range(I + 1, n):
            comm = alg.bracket(obd.dual[I], obd.dual[K])
            val = MPoly(r)
            for lab, c in comm.items():
                if lab in b_dot:
                    val = val + b_dot[lab] * c
            F[I][K] = val
            F[K][I] = -val
    return F


def bareiss_inverse(m: list[list[MPoly]]) -> tuple[list[list[MPoly]], MPoly]:
    """Fraction-free Gauss-Jordan: returns (adj-like matrix N, d) with m^-1 = N / d."""
    n = len(m)
    nv = m[0][0].nvars if n else 0
    one = MPoly.const(nv, 1)
    a = [list(row) + [one if i == j else MPoly(nv) for j in range(n)] for i, row in enumerate(m)]
    prev = one
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            raise SingularBlock("constraint block is singular")
        # prefer a constant pivot to keep intermediate degrees low
        for i in range(k, n):
            if a[i][k] and a[i][k].is_constant():
                p = i
                break
        if p != k:
            a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        for i in range(n):
            if i == k:
                continue
            f = a[i][k]
            a[i] = [(piv * x - f * y).divexact(prev) if (piv * x - f * y) else MPoly(nv)
                    for x, y in zip(a[i], a[k])]
        prev = piv
    # the last pivot is the determinant up to sign; every row is rescaled to it
    det = a[n - 1][n - 1]
    inv_num = []
    for i in range(n):
        d = a[i][i]
        # row i reads d * x = row; rescale to the common denominator det
        q = det.divexact(d)
        inv_num.append([x * q for x in a[i][n:]])
    return inv_num, det


def invert_polynomial(m: list[list[MPoly]]) -> list[list[MPoly]]:
    """Inverse over Q[z]; requires a nonzero constant determinant."""
    num, det = bareiss_inverse(m)
    if not det.is_constant() or not det:
        raise SingularBlock(f"constraint block determinant is not a nonzero constant: {det}")
    c = det.constant_term()
    return [[x / c for x in row] for row in num]


@dataclass(frozen=True)
class DiracResult:
    F2: list[list[MPoly]]
    g2: list[list[MPoly]]
    block_inverse: list[list[MPoly]]
    block_degrees_ok: bool


def dirac_formula(F: list[list[MPoly]], gtilde: list[list[Fraction]], r: int,
                  xi_degrees: list[int], exponents: list[int]) -> DiracResult:
    """Apply the Dirac formulas to a slice matrix F~ and constant Gram g~."""
    n = len(F)
    nv = F[0][0].nvars
    zero = MPoly(nv)
    greek = list(range(r, n))
    latin = list(range(r))
    inv = invert_polynomial([[F[a][b] for b in greek] for a in greek])

    def sub(rows, cols, fn):
        return [[fn(i, j) for j in cols] for i in rows]

    def mul(x, y):
        return [[sum((row[k] * y[k][j] for k in range(len(y)) if row[k] and y[k][j]), zero)
                 for j in range(len(y[0]))] for row in x]

    def const(c):
        return MPoly.const(nv, c)

    F_ia = sub(latin, greek, lambda i, a: F[i][a])
    F_aj = sub(greek, latin, lambda a, j: F[a][j])
    g_ia = sub(latin, greek, lambda i, a: const(gtilde[i][a]))
    g_aj = sub(greek, latin, lambda a, j: const(gtilde[a][j]))
    g_ab = sub(greek, greek, lambda a, b: const(gtilde[a][b]))
    left = mul(F_ia, inv)    # F~^{i beta} F~_{beta alpha}
    right = mul(inv, F_aj)   # F~_{beta alpha} F~^{alpha j}
    F2 = [[F[i][j] - x for j, x in enumerate(row)] for i, row in enumerate(mul(left, F_aj))]
    t2 = mul(g_ia, right)
    t3 = mul(mul(left, g_ab), right)
    t4 = mul(left, g_aj)
    g2 = [[const(gtilde[i][j]) - t2[i][j] + t3[i][j] - t4[i][j] for j in latin] for i in latin]

    weights = [2 * eta + 2 for eta in exponents]
    ok = all(not inv[x][y] or inv[x][y].is_quasihomogeneous(weights, xi_degrees[a] + xi_degrees[b] - 2)
             for x, a in enumerate(greek) for y, b in enumerate(greek))
    return DiracResult(F2, g2, inv, ok)


def dirac_leading_terms(alg: XAlgebra, obd: OrderedBasisData) -> DiracResult:
    F = slice_matrix(alg, obd)
    degrees = [obd.degree(I) for I in range(len(obd.labels))]
    return dirac_formula(F, obd.gtilde, obd.rank, degrees, alg.basis.exponents)
