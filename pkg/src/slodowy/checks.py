"""Invariant checks shared by the pipeline and by report verification.

Every function takes plain values (rationals, MPoly matrices, DiffPolynomials)
so the same code runs on freshly computed objects and on deserialized reports.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

from . import linalg as la
from .diffpoly import DiffPolynomial
from .poly import MPoly


def dispersionless_limit(F1, F2) -> bool:
    return all(not x for M in (F1, F2) for row in M for x in row)


def g1_shape(g1, exponents: list[int]) -> bool:
    """Zero above the antidiagonal (eta_i + eta_j < kappa+1), constant on it."""
    h = max(exponents) + 1
    r = len(exponents)
    for i in range(r):
        for j in range(r):
            s = exponents[i] + exponents[j]
            if s < h and g1[i][j]:
                return False
            if s == h and not g1[i][j].is_constant():
                return False
    return True


def det_identity(g1, A, nu: list[int], exponents: list[int]) -> bool:
    """det g1 = det A once both are expressed in the unit-pairing normalization.

    With <X^i_eta, X^i_-eta> = -nu_i the two determinants carry the factors
    (prod nu)^-2 and 1 respectively; rescaling X^i by sqrt(nu_i) gives
    det A / prod nu and det g1 * prod nu. Entrywise: g1^{ij} nu_i nu_j = A_ij
    on the antidiagonal.
    """
    if not g1_shape(g1, exponents):
        return False
    h = max(exponents) + 1
    r = len(exponents)
    anti = [[g1[i][j].constant_term() if exponents[i] + exponents[j] == h else Fraction(0)
             for j in range(r)] for i in range(r)]
    if any(anti[i][j] * nu[i] * nu[j] != A[i][j] for i in range(r) for j in range(r)
           if exponents[i] + exponents[j] == h):
        return False
    p = prod(nu)
    return la.det(anti) * p == la.det(A) / p


def differential_relation(g1, g2) -> bool:
    r = len(g1)
    return all(g2[i][j].diff(r - 1) == g1[i][j] for i in range(r) for j in range(r))


def _z_jet(i: int, exponents, m: int = 0) -> DiffPolynomial:
    return DiffPolynomial.var((i, exponents[i - 1], m))


def virasoro_hydrodynamic(row: list[dict], exponents: list[int]) -> bool:
    """{z^1, z^j}_2 at eps^0 equals (eta_j+1) z^j delta' + eta_j z^j_x delta."""
    for j, series in enumerate(row, 1):
        eta = exponents[j - 1]
        if series.get((0, 1), DiffPolynomial()) != _z_jet(j, exponents).scale(eta + 1):
            return False
        if series.get((0, 0), DiffPolynomial()) != _z_jet(j, exponents, 1).scale(eta):
            return False
        extra = {key for key, p in series.items() if p and key[0] <= 0 and key not in ((0, 0), (0, 1))}
        if extra:
            return False
    return True


def virasoro_central(row: list[dict]) -> Fraction | None:
    """Constant coefficient of delta''' in {z^1, z^1}_2, or None if not of that form."""
    series = row[0]
    dispersive = {key: p for key, p in series.items() if p and key[0] > 0}
    if set(dispersive) != {(2, 3)}:
        return None
    p = dispersive[(2, 3)]
    if set(p.terms) != {()}:
        return None
    return p.terms[()]


def dirac_oracle(g2_dirac, F2_dirac, g2) -> bool:
    return g2_dirac == g2 and all(not x for row in F2_dirac for x in row)


def z_degrees(z: list[DiffPolynomial], exponents: list[int]) -> bool:
    return all(zi.degree() == 2 * eta + 2 for zi, eta in zip(z, exponents))


def g2_degrees(g2, exponents: list[int]) -> bool:
    w = [2 * eta + 2 for eta in exponents]
    r = len(exponents)
    return all(g2[i][j].is_quasihomogeneous(w, 2 * exponents[i] + 2 * exponents[j])
               for i in range(r) for j in range(r))


def block_inverse_degrees(inv, degrees_greek: list[int], exponents: list[int]) -> bool:
    """Entry (a, b) of the constraint-block inverse has degree mu_a + mu_b - 2.

    Here mu is the Dynkin degree of xi_a, i.e. minus that of its dual.
    """
    w = [2 * eta + 2 for eta in exponents]
    return all(not x or x.is_quasihomogeneous(w, degrees_greek[a] + degrees_greek[b] - 2)
               for a, row in enumerate(inv) for b, x in enumerate(row))


def block_inverse_exact(block, inv) -> bool:
    n = len(block)
    if not n:
        return True
    nv = block[0][0].nvars
    for i in range(n):
        for j in range(n):
            acc = MPoly(nv)
            for k in range(n):
                if block[i][k] and inv[k][j]:
                    acc = acc + block[i][k] * inv[k][j]
            if acc != MPoly.const(nv, 1 if i == j else 0):
                return False
    return True


def charge_matches(charge: Fraction, exponents: list[int]) -> bool:
    k = max(exponents)
    return charge == Fraction(k - 1, k + 1)


def gram_bracket_identity(bracket_terms, A) -> bool:
    return bracket_terms == A


def A_antidiagonal(A, exponents: list[int]) -> bool:
    h = max(exponents) + 1
    r = len(exponents)
    if any(A[i][j] for i in range(r) for j in range(r) if exponents[i] + exponents[j] != h):
        return False
    return la.det(A) != 0 and all(A[i][j] == A[j][i] for i in range(r) for j in range(r))
