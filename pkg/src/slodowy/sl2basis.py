"""Decomposition of g into irreducible modules of the principal sl2.

Each module ``V^i`` has a ladder basis ``X(i, I)``, ``I = -eta_i..eta_i``,
generated from a lowest-weight vector by ``X_I = ad(e)^(eta+I) X_{-eta} / (eta+I)!``.

Normalization. The pairing ``<X_eta, X_{-eta}>`` is quadratic in the lowest
vector, so prescribing it to be exactly ``-1`` needs a square root; for even
``eta`` it would even need an imaginary scale. We therefore fix
``<X^i_eta, X^i_{-eta}> = -nu_i`` where ``nu_i`` is the squarefree integer in the
square class of the raw pairing. When ``-1`` is reachable over Q this gives
``nu_i = 1``; the principal module always has ``nu_1 = 1`` and
``X^1 = (f, h, -e)``. Every pairing then reads

    <X^i_I, X^j_J> = nu_i delta_ij delta_{I,-J} (-1)^(eta_i - I + 1) binom(2 eta_i, eta_i - I).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg as la
from .errors import DimensionMismatch, NormalizationFailure
from .liealg import GradingMap, LieAlgebraData, SL2Triple


@dataclass(frozen=True)
class NormalizedBasis:
    exponents: list[int]
    nu: list[int]
    vectors: dict[tuple[int, int], list[Fraction]]

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def X(self, i: int, I: int) -> list[Fraction]:
        """Module index ``i`` is 1-based to match exponent numbering."""
        return self.vectors[(i, I)]

    def labels(self) -> list[tuple[int, int]]:
        return [(i, I) for i, eta in enumerate(self.exponents, 1) for I in range(-eta, eta + 1)]

    def expected_pairing(self, i: int, I: int) -> Fraction:
        """<X^i_I, X^i_{-I}> predicted by the normalization."""
        eta = self.exponents[i - 1]
        return Fraction(self.nu[i - 1] * (-1) ** (eta - I + 1) * comb(2 * eta, eta - I))

    def change_of_basis(self) -> list[list[Fraction]]:
        """Columns are the X-vectors in ``labels()`` order."""
        return la.transpose([self.vectors[lab] for lab in self.labels()])


def lowest_weight_vectors(data: LieAlgebraData, triple: SL2Triple, grading: GradingMap) -> list[list[Fraction]]:
    """Basis of ker ad f, one homogeneous vector per module, ascending exponent.

    Within a degree shared by two modules the vectors come out of the nullspace
    computation; their order is made canonical by lexicographic sort.
    """
    adf = data.ad(triple.f)
    out: list[tuple[int, list[Fraction]]] = []
    for deg in sorted(set(grading.degrees), reverse=True):
        if deg >= 0:
            continue
        comp = grading.component(deg)
        # ker ad f restricted to g_deg: combinations sum c_k v_k with ad f (sum) = 0
        images = [la.matvec(adf, v) for v in comp]
        ker = la.nullspace(la.transpose(images), ncols=len(comp))
        vecs = []
        for coeffs in ker:
            v = [sum((c * comp[k][t] for k, c in enumerate(coeffs) if c), Fraction(0)) for t in range(data.dim)]
            vecs.append(v)
        for v in sorted(vecs, key=_lex_key):
            out.append((-deg // 2, v))
    if len(out) != data.rank:
        raise DimensionMismatch(f"ker ad f has dimension {len(out)}, rank is {data.rank}")
    return [v for _, v in out]


def _lex_key(v):
    return tuple((-abs(x), -x) for x in v)


def _ladder(data: LieAlgebraData, e: list[Fraction], low: list[Fraction], eta: int) -> dict[int, list[Fraction]]:
    out = {-eta: low}
    cur = low
    for k in range(1, 2 * eta + 1):
        cur = data.bracket(e, cur)
        out[-eta + k] = [x / factorial(k) for x in cur]
    return out


def normalize_basis(data: LieAlgebraData, triple: SL2Triple, lowest: list[list[Fraction]]) -> NormalizedBasis:
    e = triple.e
    adh = data.ad(triple.h)
    etas = []
    for v in lowest:
        hv = la.matvec(adh, v)
        k = next(i for i, x in enumerate(v) if x)
        etas.append(int(-hv[k] / v[k]) // 2)
    lowest = list(lowest)
    # the principal module is the sl2 itself; pin its lowest vector to f
    lowest[0] = list(triple.f)
    # orthogonalize modules of equal dimension through their weight-zero vectors
    for a in range(len(lowest)):
        for b in range(a):
            if etas[a] != etas[b]:
                continue
            xa = _ladder(data, e, lowest[a], etas[a])[0]
            xb = _ladder(data, e, lowest[b], etas[b])[0]
            nb = data.pair(xb, xb)
            if nb == 0:
                raise NormalizationFailure("degenerate weight-zero block")
            c = data.pair(xa, xb) / nb
            lowest[a] = la.sub(lowest[a], la.scale(c, lowest[b]))
    vectors: dict[tuple[int, int], list[Fraction]] = {}
    nus: list[int] = []
    for i, (eta, low) in enumerate(zip(etas, lowest), 1):
        lad = _ladder(data, e, low, eta)
        p = data.pair(lad[eta], lad[-eta])
        if p == 0:
            raise NormalizationFailure(f"module {i}: <X_eta, X_-eta> vanishes")
        nu, c = la.squarefree_split(-p)
        # -p * s^2 = nu  with  s = 1/c
        s = 1 / c
        vectors.update({(i, I): la.scale(s, vec) for I, vec in lad.items()})
        nus.append(nu)
    return NormalizedBasis(etas, nus, vectors)
