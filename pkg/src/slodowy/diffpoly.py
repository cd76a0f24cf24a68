"""Differential polynomials in jet variables and finite delta-function series.

A jet variable ``(i, I, m)`` stands for the m-th x-derivative of the coordinate
``q_i^I`` (coefficient of ``X^i_{-I}``). Its quasihomogeneous degree is
``2I + 2m + 2``.

A :class:`DeltaSeries` stores ``sum eps^k h_{k,s}(x) delta^(s)(x-y)`` with every
coefficient a function of ``x``. ``eps`` is bookkeeping only: a monomial with
``l`` derivatives in front of ``delta^(s)`` sits at ``k = l + s + offset``, the
offset being fixed by the base table (``-1`` for Lie-Poisson brackets).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping

JetVar = tuple[int, int, int]
Monomial = tuple[tuple[JetVar, int], ...]

_ZERO = Fraction(0)


def jet_degree(v: JetVar) -> int:
    return 2 * v[1] + 2 * v[2] + 2


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class DiffPolynomial:
    """Sparse polynomial with exact rational coefficients; treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "DiffPolynomial":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, v: JetVar, coeff=1) -> "DiffPolynomial":
        return cls({((tuple(v), 1),): Fraction(coeff)})

    # -- ring operations -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiffPolynomial.const(other)
        return isinstance(other, DiffPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        if isinstance(other, (int, Fraction)):
            other = DiffPolynomial.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPolynomial":
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        return self + (-other)

    def scale(self, c) -> "DiffPolynomial":
        c = Fraction(c)
        if not c:
            return DiffPolynomial()
        return _raw({m: c * x for m, x in self.terms.items()})

    def __mul__(self, other) -> "DiffPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, _ZERO) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPolynomial":
        out = DiffPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- calculus --------------------------------------------------------------

    def variables(self) -> set[JetVar]:
        return {v for m in self.terms for v, _ in m}

    def partial(self, v: JetVar) -> "DiffPolynomial":
        v = tuple(v)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, _ZERO) + c * e
        return DiffPolynomial(out)

    def dx(self) -> "DiffPolynomial":
        """Total x-derivative."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for v, e in m:
                d = dict(m)
                if e == 1:
                    del d[v]
                else:
                    d[v] = e - 1
                w = (v[0], v[1], v[2] + 1)
                d[w] = d.get(w, 0) + 1
                key = tuple(sorted(d.items()))
                s = out.get(key, _ZERO) + c * e
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _raw(out)

    def dx_n(self, n: int) -> "DiffPolynomial":
        p = self
        for _ in range(n):
            p = p.dx()
        return p

    # -- grading and substitution ------------------------------------------------

    def degrees(self, weight: Callable[[JetVar], int] = jet_degree) -> set[int]:
        return {sum(weight(v) * e for v, e in m) for m in self.terms}

    def degree(self, weight: Callable[[JetVar], int] = jet_degree) -> int | None:
        """Quasihomogeneous degree, ``None`` for zero or inhomogeneous input."""
        ds = self.degrees(weight)
        return ds.pop() if len(ds) == 1 else None

    def restrict(self, keep: Callable[[JetVar], bool]) -> "DiffPolynomial":
        """Set every variable rejected by ``keep`` to zero."""
        return _raw({m: c for m, c in self.terms.items() if all(keep(v) for v, _ in m)})

    def evaluate(self, values: Mapping[JetVar, Fraction]) -> Fraction:
        total = _ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= values.get(v, _ZERO) ** e
                if not t:
                    break
            total += t
        return total

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), _ZERO)

    # -- canonical text ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        def key(item):
            m = item[0]
            total = sum(e for _, e in m)
            return (-total, [(v, -e) for v, e in m])

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        return format_diffpoly(self)

    def __repr__(self) -> str:
        return f"DiffPolynomial({format_diffpoly(self)!r})"


def _raw(terms: dict[Monomial, Fraction]) -> DiffPolynomial:
    p = DiffPolynomial.__new__(DiffPolynomial)
    p.terms = terms
    return p


ZERO_POLY = DiffPolynomial()


def format_rational(c: Fraction) -> str:
    return f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_diffpoly(p: DiffPolynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        factors = [f"q[{v[0]},{v[1]},{v[2]}]" + (f"^{e}" if e > 1 else "") for v, e in m]
        parts.append("*".join([format_rational(c)] + factors))
    return " + ".join(parts)


_TERM_RE = re.compile(r"q\[(\d+),(\d+),(\d+)\](?:\^(\d+))?")


def parse_diffpoly(text: str) -> DiffPolynomial:
    text = text.strip()
    if text == "0":
        return DiffPolynomial()
    out: dict[Monomial, Fraction] = {}
    for term in text.split(" + "):
        coeff, *factors = term.split("*")
        mono: dict[JetVar, int] = {}
        for f in factors:
            mt = _TERM_RE.fullmatch(f)
            if not mt:
                raise ValueError(f"bad factor {f!r}")
            v = (int(mt.group(1)), int(mt.group(2)), int(mt.group(3)))
            mono[v] = mono.get(v, 0) + int(mt.group(4) or 1)
        key = tuple(sorted(mono.items()))
        out[key] = out.get(key, _ZERO) + Fraction(coeff)
    return DiffPolynomial(out)


# ---------------------------------------------------------------------------
# delta-function series
# ---------------------------------------------------------------------------

class DeltaSeries:
    """Finite sum of ``eps^k * coeff(x) * delta^(s)(x - y)`` keyed by ``(k, s)``."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[tuple[int, int], DiffPolynomial] | None = None):
        self.entries: dict[tuple[int, int], DiffPolynomial] = {
            key: p for key, p in (entries or {}).items() if p}

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, DeltaSeries) and self.entries == other.entries

    def __getitem__(self, key: tuple[int, int]) -> DiffPolynomial:
        return self.entries.get(key, ZERO_POLY)

    def __add__(self, other: "DeltaSeries") -> "DeltaSeries":
        out = dict(self.entries)
        for key, p in other.entries.items():
            out[key] = out[key] + p if key in out else p
        return DeltaSeries(out)

    def __neg__(self) -> "DeltaSeries":
        return DeltaSeries({key: -p for key, p in self.entries.items()})

    def __sub__(self, other: "DeltaSeries") -> "DeltaSeries":
        return self + (-other)

    def times(self, f: DiffPolynomial) -> "DeltaSeries":
        """Multiply by a function of x."""
        return DeltaSeries({key: f * p for key, p in self.entries.items()})

    def scale(self, c) -> "DeltaSeries":
        return DeltaSeries({key: p.scale(c) for key, p in self.entries.items()})

    def shift_eps(self, n: int) -> "DeltaSeries":
        return DeltaSeries({(k + n, s): p for (k, s), p in self.entries.items()})

    def dx(self) -> "DeltaSeries":
        """d/dx of the whole distribution."""
        out: dict[tuple[int, int], DiffPolynomial] = {}
        for (k, s), p in self.entries.items():
            for key, q in (((k, s), p.dx()), ((k, s + 1), p)):
                if q:
                    out[key] = out[key] + q if key in out else q
        return DeltaSeries(out)

    def dy(self) -> "DeltaSeries":
        """d/dy; coefficients depend on x only, so only delta is hit."""
        return DeltaSeries({(k, s + 1): -p for (k, s), p in self.entries.items()})

    def times_y(self, f: DiffPolynomial) -> "DeltaSeries":
        """Multiply by f(y) and rewrite with x-dependent coefficients.

        f(y) delta^(t)(x-y) = sum_j binom(t, j) f^(j)(x) delta^(t-j)(x-y).
        """
        if not self.entries:
            return DeltaSeries()
        top = max(s for _, s in self.entries)
        derivs = [f]
        for _ in range(top):
            derivs.append(derivs[-1].dx())
        out: dict[tuple[int, int], DiffPolynomial] = {}
        for (k, t), p in self.entries.items():
            for j in range(t + 1):
                if not derivs[j]:
                    continue
                q = (p * derivs[j]).scale(comb(t, j))
                key = (k, t - j)
                out[key] = out[key] + q if key in out else q
        return DeltaSeries(out)

    def swapped(self) -> "DeltaSeries":
        """The same distribution with x and y exchanged, in normal form.

        h(y) delta^(s)(y-x) = (-1)^s h(y) delta^(s)(x-y).
        """
        out = DeltaSeries()
        for (k, s), p in self.entries.items():
            single = DeltaSeries({(k, s): DiffPolynomial.const((-1) ** s)})
            out = out + single.times_y(p)
        return out

    def map(self, fn: Callable[[DiffPolynomial], DiffPolynomial]) -> "DeltaSeries":
        return DeltaSeries({key: fn(p) for key, p in self.entries.items()})

    def __repr__(self) -> str:
        items = ", ".join(f"{key}: {p}" for key, p in sorted(self.entries.items()))
        return f"DeltaSeries({{{items}}})"


BaseTable = Mapping[tuple[tuple[int, int], tuple[int, int]], DeltaSeries]


def jet_partials(u: DiffPolynomial) -> dict[tuple[tuple[int, int], int], DiffPolynomial]:
    """Map ``((i, I), m)`` to the partial derivative of ``u`` by that jet."""
    return {((v[0], v[1]), v[2]): u.partial(v) for v in sorted(u.variables())}


def leibnitz_bracket(u: DiffPolynomial, v: DiffPolynomial, base: BaseTable,
                     restrict: Callable[[DiffPolynomial], DiffPolynomial] | None = None) -> DeltaSeries:
    """{u(x), v(y)} from the coordinate brackets {q_A(x), q_B(y)} = base[A, B].

    ``restrict`` (if given) is applied to every partial derivative and base
    coefficient before combining; it must be a ring map commuting with d/dx.
    """
    rs = restrict or (lambda p: p)
    up = {key: rs(p) for key, p in jet_partials(u).items()}
    vp = {key: rs(p) for key, p in jet_partials(v).items()}
    up = {key: p for key, p in up.items() if p}
    vp = {key: p for key, p in vp.items() if p}
    coords_u = sorted({a for a, _ in up})
    coords_v = sorted({b for b, _ in vp})
    total = DeltaSeries()
    for a in coords_u:
        # W_a(x, y) = sum_{B, n} V_{B,n}(y) d_y^n {q_a(x), q_B(y)}
        w = DeltaSeries()
        for b in coords_v:
            entry = base.get((a, b))
            if not entry:
                continue
            entry = entry.map(rs)
            for (bb, n), vb in vp.items():
                if bb != b:
                    continue
                term = entry
                for _ in range(n):
                    term = term.dy()
                w = w + term.times_y(vb)
        if not w:
            continue
        ms = sorted(m for aa, m in up if aa == a)
        cur, cur_m = w, 0
        for m in ms:
            while cur_m < m:
                cur = cur.dx()
                cur_m += 1
            total = total + cur.times(up[(a, m)])
    return regrade(total, eps_offset(base))


def derivative_count(mono: Monomial) -> int:
    return sum(v[2] * e for v, e in mono)


def eps_offset(base: BaseTable) -> int:
    """The common value of k - l - s over all base entries."""
    offsets = {k - derivative_count(m) - s
               for series in base.values() for (k, s), p in series.entries.items() for m in p.terms}
    if len(offsets) > 1:
        raise ValueError(f"base table mixes eps offsets {sorted(offsets)}")
    return offsets.pop() if offsets else 0


def regrade(series: DeltaSeries, offset: int) -> DeltaSeries:
    """Re-bucket every monomial at k = (derivatives) + s + offset."""
    out: dict[tuple[int, int], dict[Monomial, Fraction]] = {}
    for (_, s), p in series.entries.items():
        for m, c in p.terms.items():
            bucket = out.setdefault((derivative_count(m) + s + offset, s), {})
            c2 = bucket.get(m, _ZERO) + c
            if c2:
                bucket[m] = c2
            else:
                bucket.pop(m)
    return DeltaSeries({key: DiffPolynomial(t) for key, t in out.items()})


def dispersionless_coefficient(v: DiffPolynomial, u: DiffPolynomial,
                               constants: Mapping[tuple[tuple[int, int], tuple[int, int]], Fraction],
                               restrict: Callable[[DiffPolynomial], DiffPolynomial] | None = None) -> DiffPolynomial:
    """delta' coefficient of {v(x), u(y)} for an ultralocal constant base bracket.

    ``constants[(B, A)]`` is c in {q_B(x), q_A(y)} = c delta(x-y). Closed form:
    sum (-1)^h (l+h) c V_{B,l} d_x^(h+l-1) U_{A,h}.
    """
    rs = restrict or (lambda p: p)
    vp = {key: rs(p) for key, p in jet_partials(v).items()}
    up = {key: rs(p) for key, p in jet_partials(u).items()}
    total = DiffPolynomial()
    for (b, l), vb in vp.items():
        if not vb:
            continue
        for (a, h), ua in up.items():
            c = constants.get((b, a))
            if not c or not ua or l + h == 0:
                continue
            total = total + (vb * ua.dx_n(h + l - 1)).scale((-1) ** h * (l + h) * c)
    return total


def iter_monomials(vars_by_degree: Iterable[tuple[JetVar, int]], degree: int) -> list[Monomial]:
    """All monomials of the given quasihomogeneous degree in the listed variables."""
    vs = sorted(vars_by_degree)
    out: list[Monomial] = []

    def rec(idx, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if idx == len(vs):
            return
        v, d = vs[idx]
        e = 0
        while e * d <= remaining:
            rec(idx + 1, remaining - e * d, acc + ([(v, e)] if e else []))
            e += 1

    rec(0, degree, [])
    return out
