"""Flat coordinates, pencil axioms and the WDVV prepotential.

Index conventions: matrices are 0-based lists, ``Gamma[i][j][k]`` is the
coefficient of ``z^k_x delta`` in ``{z^i(x), z^j(y)}``. With that convention a
function ``t`` is flat for ``(g, Gamma)`` iff

    g^{is} d_s d_j t + Gamma^{is}_j d_s t = 0   for all i, j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .errors import AnsatzExhausted, AxiomFailure, IntegrabilityFailure
from .poly import MPoly

Matrix = list[list[MPoly]]


def z_weights(exponents: list[int]) -> list[int]:
    return [2 * eta + 2 for eta in exponents]


def monomials_of_degree(weights: list[int], degree: int, nvars_used: int) -> list[tuple[int, ...]]:
    """Exponent tuples over the first ``nvars_used`` variables with weighted degree ``degree``."""
    out = []
    n = len(weights)

    def rec(k, remaining, acc):
        if k == nvars_used:
            if remaining == 0:
                out.append(tuple(acc + [0] * (n - nvars_used)))
            return
        e = 0
        while e * weights[k] <= remaining:
            rec(k + 1, remaining - e * weights[k], acc + [e])
            e += 1

    rec(0, degree, [])
    return out


def _flatness_residual(g: Matrix, G, t: MPoly) -> list[MPoly]:
    r = len(g)
    dt = [t.diff(s) for s in range(r)]
    out = []
    for i in range(r):
        for j in range(r):
            acc = MPoly(t.nvars)
            for s in range(r):
                if g[i][s]:
                    acc = acc + g[i][s] * dt[s].diff(j)
                if G[i][s][j]:
                    acc = acc + G[i][s][j] * dt[s]
            out.append(acc)
    return out


def solve_flat_coordinate(g: Matrix, G, exponents: list[int], i: int) -> MPoly:
    """t^i = z^i + T^i(z^1..z^{i-1}), quasihomogeneous, flat for (g, Gamma)."""
    r = len(exponents)
    w = z_weights(exponents)
    base = MPoly.var(r, i)
    monos = monomials_of_degree(w, w[i], i)
    res0 = _flatness_residual(g, G, base)
    res_m = [_flatness_residual(g, G, MPoly(r, {m: 1})) for m in monos]
    keys = sorted({e for p in res0 for e in p.terms} | {e for rs in res_m for p in rs for e in p.terms})
    rows, rhs = [], []
    for idx in range(len(res0)):
        for e in keys:
            rows.append([rs[idx].terms.get(e, Fraction(0)) for rs in res_m])
            rhs.append(-res0[idx].terms.get(e, Fraction(0)))
    if not monos:
        if any(rhs):
            raise AnsatzExhausted(f"z^{i + 1} is not flat and no correction monomials exist")
        return base
    sol = la.solve(rows, rhs)
    if sol is None:
        raise AnsatzExhausted(f"no quasihomogeneous flat coordinate t^{i + 1}")
    return base + MPoly(r, {m: c for m, c in zip(monos, sol)})


def invert_triangular(t_of_z: list[MPoly]) -> list[MPoly]:
    """z^i as polynomials in t for t^i = z^i + T^i(z^1..z^{i-1})."""
    r = len(t_of_z)
    z_of_t: list[MPoly] = []
    tv = [MPoly.var(r, k) for k in range(r)]
    for i in range(r):
        corr = t_of_z[i] - tv[i]
        # corr only involves z^0..z^{i-1}, already expressed in t
        images = z_of_t + [MPoly(r)] * (r - i)
        z_of_t.append(tv[i] - corr.subs(images))
    return z_of_t


def transform_metric(g: Matrix, jac: Matrix) -> Matrix:
    """g'^{ab} = J^a_i J^b_j g^{ij} with J^a_i = dt^a/dz^i (still in z)."""
    r = len(g)
    zero = MPoly(g[0][0].nvars)
    gj = [[sum((g[i][j] * jac[b][j] for j in range(r) if g[i][j] and jac[b][j]), zero)
           for b in range(r)] for i in range(r)]
    return [[sum((jac[a][i] * gj[i][b] for i in range(r) if jac[a][i] and gj[i][b]), zero)
             for b in range(r)] for a in range(r)]


def transform_connection(g: Matrix, G, t_of_z: list[MPoly], z_of_t: list[MPoly]):
    """Gamma'^{ab}_c(t) = (J^a_i J^b_j Gamma^{ij}_k + J^a_i g^{ij} d_k d_j t^b) dz^k/dt^c."""
    r = len(g)
    nv = g[0][0].nvars
    zero = MPoly(nv)
    jac = [[t_of_z[a].diff(i) for i in range(r)] for a in range(r)]
    hess = [[[t_of_z[b].diff(j).diff(k) for k in range(r)] for j in range(r)] for b in range(r)]
    inv_jac_t = [[z_of_t[k].diff(c) for c in range(r)] for k in range(r)]
    out = [[[zero] * r for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            E = []
            for k in range(r):
                acc = zero
                for i in range(r):
                    if not jac[a][i]:
                        continue
                    for j in range(r):
                        if G[i][j][k] and jac[b][j]:
                            acc = acc + jac[a][i] * jac[b][j] * G[i][j][k]
                        if g[i][j] and hess[b][j][k]:
                            acc = acc + jac[a][i] * g[i][j] * hess[b][j][k]
                E.append(acc.subs(z_of_t) if acc else zero)
            for c in range(r):
                out[a][b][c] = sum((E[k] * inv_jac_t[k][c] for k in range(r) if E[k] and inv_jac_t[k][c]), zero)
    return out


@dataclass
class FlatPencilData:
    exponents: list[int]
    t_of_z: list[MPoly]
    z_of_t: list[MPoly]
    eta: list[list[Fraction]]
    g1: Matrix = field(default_factory=list)
    g2: Matrix = field(default_factory=list)
    Gamma1: list = field(default_factory=list)
    Gamma2: list = field(default_factory=list)

    @property
    def kappa(self) -> int:
        return max(self.exponents)

    @property
    def charge(self) -> Fraction:
        return Fraction(self.kappa - 1, self.kappa + 1)

    @property
    def degrees(self) -> list[Fraction]:
        return [Fraction(eta + 1, self.kappa + 1) for eta in self.exponents]

    def euler(self) -> list[MPoly]:
        r = len(self.exponents)
        return [MPoly.var(r, k, d) for k, d in enumerate(self.degrees)]

    def unity(self) -> list[MPoly]:
        r = len(self.exponents)
        return [MPoly.const(r, 1 if k == r - 1 else 0) for k in range(r)]

    def tau(self) -> MPoly:
        return MPoly.var(len(self.exponents), 0, Fraction(1, self.kappa + 1))


def _to_t(m: Matrix, z_of_t) -> Matrix:
    return [[x.subs(z_of_t) if x else x for x in row] for row in m]


def flat_coordinates(g1: Matrix, Gamma1, exponents: list[int]) -> FlatPencilData:
    r = len(exponents)
    t_of_z = [solve_flat_coordinate(g1, Gamma1, exponents, i) for i in range(r)]
    z_of_t = invert_triangular(t_of_z)
    jac = [[t_of_z[a].diff(i) for i in range(r)] for a in range(r)]
    g1t = _to_t(transform_metric(g1, jac), z_of_t)
    if not all(x.is_constant() for row in g1t for x in row):
        raise AnsatzExhausted("g1 is not constant in the computed coordinates")
    eta = [[x.constant_term() for x in row] for row in g1t]
    data = FlatPencilData(list(exponents), t_of_z, z_of_t, eta)
    data.g1 = g1t
    data.Gamma1 = transform_connection(g1, Gamma1, t_of_z, z_of_t)
    return data


def transform_pencil(data: FlatPencilData, g2: Matrix, Gamma2) -> FlatPencilData:
    r = len(data.exponents)
    jac = [[data.t_of_z[a].diff(i) for i in range(r)] for a in range(r)]
    data.g2 = _to_t(transform_metric(g2, jac), data.z_of_t)
    data.Gamma2 = transform_connection(g2, Gamma2, data.t_of_z, data.z_of_t)
    return data


# --- axioms ------------------------------------------------------------------------

def lie_derivative(X: list[MPoly], g: Matrix) -> Matrix:
    """L_X g^{ij} = X^s d_s g^{ij} - g^{sj} d_s X^i - g^{is} d_s X^j."""
    r = len(X)
    zero = MPoly(X[0].nvars)
    dX = [[X[i].diff(s) for s in range(r)] for i in range(r)]
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = sum((X[s] * g[i][j].diff(s) for s in range(r) if X[s] and g[i][j]), zero)
            acc = acc - sum((g[s][j] * dX[i][s] for s in range(r) if g[s][j] and dX[i][s]), zero)
            acc = acc - sum((g[i][s] * dX[j][s] for s in range(r) if g[i][s] and dX[j][s]), zero)
            row.append(acc)
        out.append(row)
    return out


def vector_bracket(X: list[MPoly], Y: list[MPoly]) -> list[MPoly]:
    r = len(X)
    zero = MPoly(X[0].nvars)
    return [sum((X[s] * Y[i].diff(s) - Y[s] * X[i].diff(s) for s in range(r)), zero) for i in range(r)]


def gradient_field(g: Matrix, f: MPoly) -> list[MPoly]:
    r = len(g)
    df = [f.diff(s) for s in range(r)]
    zero = MPoly(f.nvars)
    return [sum((g[i][s] * df[s] for s in range(r) if g[i][s] and df[s]), zero) for i in range(r)]


def verify_pencil_axioms(data: FlatPencilData, raise_on_failure: bool = True) -> dict[str, bool]:
    r = len(data.exponents)
    d = data.charge
    tau = data.tau()
    E = gradient_field(data.g2, tau)
    e = gradient_field(data.g1, tau)
    cert: dict[str, bool] = {}
    cert["euler_field"] = E == data.euler()
    cert["unity_field"] = e == data.unity()
    cert["e_E_bracket"] = vector_bracket(e, E) == e
    LEg2 = lie_derivative(E, data.g2)
    cert["lie_E_g2"] = all(LEg2[i][j] == data.g2[i][j] * (d - 1) for i in range(r) for j in range(r))
    Leg2 = lie_derivative(e, data.g2)
    cert["lie_e_g2"] = all(Leg2[i][j] == data.g1[i][j] for i in range(r) for j in range(r))
    Leg1 = lie_derivative(e, data.g1)
    cert["lie_e_g1"] = all(not x for row in Leg1 for x in row)
    cert["gamma1_flat"] = all(not x for plane in data.Gamma1 for row in plane for x in row)
    R = regularity_tensor(data)
    expected = [[Fraction(eta, data.kappa + 1) if i == j else Fraction(0) for j in range(r)]
                for i, eta in enumerate(data.exponents)]
    cert["regularity"] = R == expected and la.det(R) != 0
    if raise_on_failure:
        for name, ok in cert.items():
            if not ok:
                raise AxiomFailure(name, "pencil axiom violated")
    return cert


def regularity_tensor(data: FlatPencilData) -> list[list[Fraction]]:
    """R_i^j = (d-1)/2 delta + (nabla_1)_i E^j; in flat coordinates nabla_1 = d."""
    r = len(data.exponents)
    E = gradient_field(data.g2, data.tau())
    R = []
    for i in range(r):
        row = []
        for j in range(r):
            v = E[j].diff(i)
            if not v.is_constant():
                raise AxiomFailure("regularity", "nabla E is not constant")
            row.append(v.constant_term() + ((data.charge - 1) / 2 if i == j else 0))
        R.append(row)
    return R


# --- potential ------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusResult:
    exponents: list[int]
    degrees: list[Fraction]
    charge: Fraction
    eta: list[list[Fraction]]
    F: MPoly


def hessian_target(data: FlatPencilData) -> Matrix:
    """M_ij = eta_{ia} eta_{jb} g2^{ab} / (d - 1 + d_a + d_b).

    The Euler denominator belongs to the upper indices of g2.
    """
    r = len(data.exponents)
    inv = la.inverse(data.eta)
    zero = MPoly(r)
    d = data.charge
    degs = data.degrees
    scaled = []
    for a in range(r):
        row = []
        for b in range(r):
            den = d - 1 + degs[a] + degs[b]
            if den <= 0:
                raise IntegrabilityFailure(f"nonpositive denominator at ({a + 1},{b + 1})")
            row.append(data.g2[a][b] / den)
        scaled.append(row)
    M = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = zero
            for a in range(r):
                for b in range(r):
                    if inv[i][a] and inv[j][b] and scaled[a][b]:
                        acc = acc + scaled[a][b] * (inv[i][a] * inv[j][b])
            row.append(acc)
        M.append(row)
    return M


def potential(data: FlatPencilData) -> FrobeniusResult:
    r = len(data.exponents)
    M = hessian_target(data)
    for i, j in itertools.product(range(r), repeat=2):
        if M[i][j] != M[j][i]:
            raise IntegrabilityFailure(f"M not symmetric at ({i + 1},{j + 1})")
    for i, j, k in itertools.product(range(r), repeat=3):
        if M[i][j].diff(k) != M[i][k].diff(j):
            raise IntegrabilityFailure(f"mixed partials differ at ({i + 1},{j + 1},{k + 1})")
    d = data.charge
    degs = data.degrees
    zero = MPoly(r)
    tv = [MPoly.var(r, k) for k in range(r)]
    # Euler: (3 - d - d_j) d_j F = sum_i d_i t^i M_ij, then (3 - d) F = sum_j d_j t^j d_j F
    grad = [sum((tv[i] * M[i][j] * degs[i] for i in range(r)), zero) / (3 - d - degs[j]) for j in range(r)]
    F = sum((tv[j] * grad[j] * degs[j] for j in range(r)), zero) / (3 - d)
    for i, j in itertools.product(range(r), repeat=2):
        if F.diff(i).diff(j) != M[i][j]:
            raise IntegrabilityFailure(f"Hessian of F differs from M at ({i + 1},{j + 1})")
    return FrobeniusResult(list(data.exponents), degs, d, data.eta, F)


def verify_wdvv(res: FrobeniusResult) -> dict[str, bool]:
    r = len(res.exponents)
    F = res.F
    third = {}
    for i, j, k in itertools.combinations_with_replacement(range(r), 3):
        third[(i, j, k)] = F.diff(i).diff(j).diff(k)

    def c(i, j, k):
        return third[tuple(sorted((i, j, k)))]

    eta = res.eta
    zero = MPoly(r)
    wdvv = True
    for i, j, q, s in itertools.product(range(r), repeat=4):
        lhs = sum((c(i, j, k) * c(p, q, s) * eta[k][p] for k in range(r) for p in range(r) if eta[k][p]), zero)
        rhs = sum((c(s, j, k) * c(p, q, i) * eta[k][p] for k in range(r) for p in range(r) if eta[k][p]), zero)
        if lhs != rhs:
            wdvv = False
            break
    inv = la.inverse(eta)
    metric = all(c(r - 1, i, j) == inv[i][j] for i in range(r) for j in range(r))
    euler = sum((F.diff(i) * MPoly.var(r, i, res.degrees[i]) for i in range(r)), zero) == F * (3 - res.charge)
    return {"wdvv": wdvv, "metric_from_F": metric, "quasihomogeneity": euler}


def relabel_unity_first(p: MPoly) -> MPoly:
    """Reverse the variable order so the unity direction becomes t^1."""
    return MPoly(p.nvars, {tuple(reversed(e)): c for e, c in p.terms.items()})
