"""Gauge fixing on the loop algebra: the classical W-algebra generators z^i.

Elements of g with function coefficients are dicts ``{(i, J): coeff}`` in the
normalized basis, ``(i, J)`` standing for ``X^i_J``. The coordinate ``q_i^I``
multiplies ``X^i_{-I}``. Solving

    exp(ad s)(d/dx + e + q) - d/dx - e  in  span{X^i_{-eta_i}}

degree by degree is a scalar problem in this basis, because
``ad e X^i_{-j-1} = (eta_i - j) X^i_{-j}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from . import linalg as la
from .diffpoly import DiffPolynomial
from .errors import GradedSolveFailure
from .liealg import LieAlgebraData
from .sl2basis import NormalizedBasis

Label = tuple[int, int]


class XAlgebra:
    """Structure constants of g in the normalized X-basis."""

    def __init__(self, data: LieAlgebraData, basis: NormalizedBasis):
        self.basis = basis
        self.labels: list[Label] = basis.labels()
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        pinv = la.inverse(basis.change_of_basis())
        vecs = [basis.X(*lab) for lab in self.labels]
        self.table: dict[tuple[Label, Label], tuple[tuple[Label, Fraction], ...]] = {}
        for a, la_ in enumerate(self.labels):
            for b in range(a + 1, len(self.labels)):
                lb = self.labels[b]
                coords = la.matvec(pinv, data.bracket(vecs[a], vecs[b]))
                out = tuple((self.labels[k], c) for k, c in enumerate(coords) if c)
                if out:
                    self.table[(la_, lb)] = out
                    self.table[(lb, la_)] = tuple((lab, -c) for lab, c in out)
        self.pairing = {lab: basis.expected_pairing(*lab) for lab in self.labels}

    @staticmethod
    def degree(label: Label) -> int:
        return 2 * label[1]

    def bracket(self, x: dict, y: dict, min_degree: int | None = None) -> dict:
        out: dict = {}
        for la_, ca in x.items():
            for lb, cb in y.items():
                if min_degree is not None and 2 * (la_[1] + lb[1]) < min_degree:
                    continue
                entry = self.table.get((la_, lb))
                if not entry:
                    continue
                prod = ca * cb
                if not prod:
                    continue
                for lc, c in entry:
                    term = prod * c
                    out[lc] = out[lc] + term if lc in out else term
        return {k: v for k, v in out.items() if v}


def _add_into(acc: dict, x: dict, factor: Fraction = Fraction(1)) -> None:
    for k, v in x.items():
        term = v * factor if factor != 1 else v
        acc[k] = acc[k] + term if k in acc else term


def gauge_action(alg: XAlgebra, s: dict, b: dict, deriv: Callable, min_degree: int) -> dict:
    """exp(ad s)(d/dx + b) - d/dx, truncated below ``min_degree``.

    Coefficients may be any ring elements supporting ``+``, ``*`` and
    multiplication by a Fraction; ``deriv`` is the x-derivative on them.
    """
    out: dict = {}
    term = dict(b)
    k = 0
    while term:
        _add_into(out, term, Fraction(1))
        k += 1
        term = alg.bracket(s, term, min_degree)
        term = {lab: v * Fraction(1, k) for lab, v in term.items()}
    # exp(ad s)(d/dx) - d/dx = -sum_{k>=1} (ad s)^(k-1)(s') / k!
    term = {lab: deriv(v) for lab, v in s.items()}
    term = {lab: v for lab, v in term.items() if v and 2 * lab[1] >= min_degree}
    k = 1
    while term:
        _add_into(out, term, Fraction(-1))
        k += 1
        term = alg.bracket(s, term, min_degree)
        term = {lab: v * Fraction(1, k) for lab, v in term.items()}
    return {lab: v for lab, v in out.items() if v and 2 * lab[1] >= min_degree}


def q_var(i: int, I: int) -> DiffPolynomial:
    return DiffPolynomial.var((i, I, 0))


def generic_b(basis: NormalizedBasis) -> dict:
    """e + sum q_i^I X^i_{-I} with symbolic coordinates; e = -X^1_1."""
    b = {(i, -I): q_var(i, I) for i, eta in enumerate(basis.exponents, 1) for I in range(eta + 1)}
    b[(1, 1)] = DiffPolynomial.const(-1)
    return b


@dataclass(frozen=True)
class GaugeFixResult:
    exponents: list[int]
    z: list[DiffPolynomial]
    s: dict[Label, DiffPolynomial]

    def evaluate(self, jets) -> list[Fraction]:
        return [zi.evaluate(jets) for zi in self.z]


def solve_gauge(alg: XAlgebra, b: dict, deriv: Callable, zero) -> tuple[dict, dict]:
    """Return (s, reduced element) for a b = e + (b-part) with arbitrary coefficients."""
    etas = alg.basis.exponents
    kappa = max(etas)
    s: dict = {}
    for j in range(kappa):
        cur = gauge_action(alg, s, b, deriv, -2 * j)
        for i, eta in enumerate(etas, 1):
            if eta <= j:
                continue
            r = cur.get((i, -j), zero)
            if r:
                s[(i, -j - 1)] = r * Fraction(1, eta - j)
    red = gauge_action(alg, s, b, deriv, -2 * kappa)
    return s, red


def gauge_fix(data: LieAlgebraData, basis: NormalizedBasis, alg: XAlgebra | None = None) -> GaugeFixResult:
    alg = alg or XAlgebra(data, basis)
    b = generic_b(basis)
    s, red = solve_gauge(alg, b, lambda p: p.dx(), DiffPolynomial())
    etas = basis.exponents
    e_label = (1, 1)
    for lab, v in red.items():
        if lab == e_label and v == DiffPolynomial.const(-1):
            continue
        if lab[1] == -etas[lab[0] - 1]:
            continue
        raise GradedSolveFailure(f"component X^{lab[0]}_{lab[1]} survives gauge fixing: {v}")
    z = [red.get((i, -eta), DiffPolynomial()) for i, eta in enumerate(etas, 1)]
    s_out = {(i, -J): v for (i, J), v in s.items()}
    return GaugeFixResult(list(etas), z, s_out)


# ---------------------------------------------------------------------------
# randomized gauge-invariance check on truncated Taylor jets
# ---------------------------------------------------------------------------

class TaylorJet:
    """Polynomial in x truncated below x^order; supports +, *, d/dx."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = [Fraction(x) for x in coeffs]

    def __bool__(self):
        return any(self.c)

    def __add__(self, other):
        return TaylorJet([a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, TaylorJet):
            return TaylorJet([a * other for a in self.c])
        n = len(self.c)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.c):
            if a:
                for j in range(n - i):
                    if other.c[j]:
                        out[i + j] += a * other.c[j]
        return TaylorJet(out)

    __rmul__ = __mul__

    def dx(self):
        return TaylorJet([k * a for k, a in enumerate(self.c) if k] + [Fraction(0)])

    def jet(self, m: int) -> Fraction:
        """m-th derivative at x = 0."""
        return self.c[m] * factorial(m)


def _jets_at_zero(b: dict, basis: NormalizedBasis, order: int) -> dict:
    vals = {}
    for i, eta in enumerate(basis.exponents, 1):
        for I in range(eta + 1):
            f = b.get((i, -I))
            for m in range(order):
                vals[(i, I, m)] = f.jet(m) if f is not None else Fraction(0)
    return vals


def random_gauge_check(alg: XAlgebra, zgen: GaugeFixResult, trials: int = 100,
                       seed: int = 0, coeff_range: int = 3) -> tuple[bool, int]:
    """Compare z at x = 0 before and after random N-valued gauge transformations.

    Returns (all equal, number of trials run).
    """
    rng = random.Random(seed)
    basis = alg.basis
    kappa = max(basis.exponents)
    max_m = max((v[2] for zi in zgen.z for v in zi.variables()), default=0)
    order = max_m + 2

    def rand_jet():
        return TaylorJet([Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, coeff_range))
                          for _ in range(order)])

    zero = TaylorJet([0] * order)
    for _ in range(trials):
        b = {(i, -I): rand_jet() for i, eta in enumerate(basis.exponents, 1) for I in range(eta + 1)}
        b[(1, 1)] = TaylorJet([-1] + [0] * (order - 1))
        n = {(i, -J): rand_jet() for i, eta in enumerate(basis.exponents, 1) for J in range(1, eta + 1)}
        moved = gauge_action(alg, n, b, lambda f: f.dx(), -2 * kappa)
        if any(lab[1] > 0 and lab != (1, 1) for lab in moved):
            return False, _ + 1
        e_part = moved.get((1, 1), zero)
        if e_part.c[: order - 1] != b[(1, 1)].c[: order - 1]:
            return False, _ + 1
        before = zgen.evaluate(_jets_at_zero(b, basis, max_m + 1))
        after = zgen.evaluate(_jets_at_zero(moved, basis, max_m + 1))
        if before != after:
            return False, _ + 1
    return True, trials
