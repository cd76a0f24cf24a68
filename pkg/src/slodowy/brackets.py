"""Base Poisson tables on the Borel coordinates and their reduction to the z^i.

Coordinates are ``q_A``, ``A = (i, I)`` with ``0 <= I <= eta_i``, the
coefficient of ``X^i_{-I}``. The dual vector is ``xi*_A = X^i_I / Xi_A`` with
``Xi_A = <X^i_I, X^i_{-I}>``. The two base brackets are

    {q_A(x), q_B(y)}_2 = <xi*_A, xi*_B> delta' + eps^-1 <e + q, [xi*_B, xi*_A]> delta
    {q_A(x), q_B(y)}_1 = eps^-1 <a, [xi*_B, xi*_A]> delta

Every jet derivative in the Leibniz expansion adds one power of eps, so the
hydrodynamic leading terms sit at eps^0.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .diffpoly import DeltaSeries, DiffPolynomial, leibnitz_bracket
from .dsred import GaugeFixResult, XAlgebra
from .errors import NoDispersionlessLimit, NotInvariant
from .poly import MPoly

Coord = tuple[int, int]
BaseBracketTable = dict[tuple[Coord, Coord], DeltaSeries]


def coordinates(exponents: list[int]) -> list[Coord]:
    return [(i, I) for i, eta in enumerate(exponents, 1) for I in range(eta + 1)]


def _pair(alg: XAlgebra, x: dict, y: dict):
    total = 0
    for (i, J), cx in x.items():
        cy = y.get((i, -J))
        if cy:
            total = cy * cx * alg.pairing[(i, J)] + total
    return total


def _dual(alg: XAlgebra, A: Coord) -> dict:
    i, I = A
    return {(i, I): 1 / alg.pairing[(i, I)]}


def base_tables(alg: XAlgebra, a_label: tuple[int, int]) -> tuple[BaseBracketTable, BaseBracketTable]:
    """(P1, P2); ``a_label`` is the X-label of the cyclic element's ``a``."""
    exps = alg.basis.exponents
    coords = coordinates(exps)
    b = {(i, -I): DiffPolynomial.var((i, I, 0)) for i, I in coords}
    b[(1, 1)] = DiffPolynomial.const(-1)
    a = {a_label: Fraction(1)}
    duals = {A: _dual(alg, A) for A in coords}
    p1: BaseBracketTable = {}
    p2: BaseBracketTable = {}
    for A in coords:
        for B in coords:
            comm = alg.bracket(duals[B], duals[A])
            entries: dict = {}
            if A[1] == 0 and B[1] == 0:
                g = _pair(alg, duals[A], duals[B])
                if g:
                    entries[(0, 1)] = DiffPolynomial.const(g)
            ultra = _pair(alg, b, {k: DiffPolynomial.const(v) for k, v in comm.items()})
            if ultra:
                entries[(-1, 0)] = ultra
            if entries:
                p2[(A, B)] = DeltaSeries(entries)
            c1 = _pair(alg, a, comm)
            if c1:
                p1[(A, B)] = DeltaSeries({(-1, 0): DiffPolynomial.const(c1)})
    return p1, p2


def slice_restriction(exponents: list[int]):
    """Ring map setting every q_i^I with I != eta_i (and its jets) to zero."""
    def keep(v):
        return v[1] == exponents[v[0] - 1]
    return lambda p: p.restrict(keep)


def _entry(args):
    zi, zj, table, exponents = args
    return leibnitz_bracket(zi, zj, table, slice_restriction(exponents))


def reduce(zgen: GaugeFixResult, table: BaseBracketTable, jobs: int = 1,
           check_antisymmetry: bool = True) -> list[list[DeltaSeries]]:
    """Reduced bracket matrix {z^i(x), z^j(y)} evaluated on the slice."""
    r = len(zgen.z)
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    args = [(zgen.z[i], zgen.z[j], table, zgen.exponents) for i, j in pairs]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_entry, args))
    else:
        results = [_entry(x) for x in args]
    out: list[list[DeltaSeries | None]] = [[None] * r for _ in range(r)]
    for (i, j), res in zip(pairs, results):
        out[i][j] = res
        if i != j:
            out[j][i] = -res.swapped()
        elif check_antisymmetry and res != -res.swapped():
            raise NotInvariant(f"reduced bracket ({i + 1},{i + 1}) is not skew")
    return out  # type: ignore[return-value]


# ---------------------------------------------------------------------------

def z_var_index(exponents: list[int]):
    """Map slice jets (i, eta_i, 0) to MPoly variable indices."""
    return {(i, eta, 0): i - 1 for i, eta in enumerate(exponents, 1)}


def to_mpoly(p: DiffPolynomial, exponents: list[int]) -> MPoly:
    idx = z_var_index(exponents)
    r = len(exponents)
    out: dict = {}
    for mono, c in p.terms.items():
        e = [0] * r
        for v, k in mono:
            if v not in idx:
                raise NotInvariant(f"unexpected jet {v} in a leading term")
            e[idx[v]] += k
        out[tuple(e)] = c
    return MPoly(r, out)


def split_first_jets(p: DiffPolynomial, exponents: list[int]) -> list[MPoly]:
    """Write p = sum_k c_k(z) z^k_x and return [c_k]."""
    r = len(exponents)
    out = [DiffPolynomial() for _ in range(r)]
    for mono, c in p.terms.items():
        firsts = [(v, e) for v, e in mono if v[2] == 1]
        if len(firsts) != 1 or firsts[0][1] != 1 or any(v[2] > 1 for v, _ in mono):
            raise NotInvariant(f"delta coefficient is not linear in first jets: {p}")
        v = firsts[0][0]
        rest = tuple((w, e) for w, e in mono if w != v)
        out[v[0] - 1] = out[v[0] - 1] + DiffPolynomial({rest: c})
    return [to_mpoly(q, exponents) for q in out]


@dataclass(frozen=True)
class LeadingTerms:
    exponents: list[int]
    F1: list[list[MPoly]]
    F2: list[list[MPoly]]
    g1: list[list[MPoly]]
    g2: list[list[MPoly]]
    Gamma1: list[list[list[MPoly]]]
    Gamma2: list[list[list[MPoly]]]


def _extract(mat, exponents):
    r = len(exponents)
    F = [[to_mpoly(mat[i][j][(-1, 0)], exponents) for j in range(r)] for i in range(r)]
    g = [[to_mpoly(mat[i][j][(0, 1)], exponents) for j in range(r)] for i in range(r)]
    G = [[split_first_jets(mat[i][j][(0, 0)], exponents) for j in range(r)] for i in range(r)]
    return F, g, G


def leading_terms(red1, red2, exponents: list[int], require_limit: bool = True) -> LeadingTerms:
    F1, g1, G1 = _extract(red1, exponents)
    F2, g2, G2 = _extract(red2, exponents)
    if require_limit:
        for name, F in (("F1", F1), ("F2", F2)):
            bad = [(i + 1, j + 1) for i, row in enumerate(F) for j, x in enumerate(row) if x]
            if bad:
                raise NoDispersionlessLimit(f"{name} nonzero at {bad}")
    return LeadingTerms(list(exponents), F1, F2, g1, g2, G1, G2)
