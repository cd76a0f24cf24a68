"""Sparse multivariate polynomials over Q in a fixed number of variables."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .diffpoly import format_rational

Exps = tuple[int, ...]
_ZERO = Fraction(0)


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exps, Fraction] = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, k: int, c=1) -> "MPoly":
        """The variable with 0-based index ``k``."""
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): Fraction(c)})

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.nvars, other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = Fraction(other)
            if not c:
                return MPoly(self.nvars)
            return _raw(self.nvars, {e: c * x for e, x in self.terms.items()})
        out: dict[Exps, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _raw(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "MPoly":
        return self * (1 / Fraction(c))

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    # --- calculus and grading ---------------------------------------------------

    def diff(self, k: int) -> "MPoly":
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * e[k]
        return _raw(self.nvars, out)

    def weighted_degrees(self, weights: Sequence) -> set:
        return {sum(w * x for w, x in zip(weights, e)) for e in self.terms}

    def is_quasihomogeneous(self, weights: Sequence, degree) -> bool:
        return all(d == degree for d in self.weighted_degrees(weights))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, _ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def subs(self, images: Sequence["MPoly"]) -> "MPoly":
        """Substitute variable k by ``images[k]`` (all in a common ring)."""
        n = images[0].nvars if images else 0
        out = MPoly(n)
        cache: dict[tuple[int, int], MPoly] = {}
        for e, c in self.terms.items():
            t = MPoly.const(n, c)
            for k, x in enumerate(e):
                if x:
                    key = (k, x)
                    if key not in cache:
                        cache[key] = images[k] ** x
                    t = t * cache[key]
            out = out + t
        return out

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = _ZERO
        for e, c in self.terms.items():
            t = c
            for k, x in zip(e, point):
                if k:
                    t *= Fraction(x) ** k
            total += t
        return total

    def leading(self) -> tuple[Exps, Fraction]:
        """Leading term in lex order (largest exponent tuple)."""
        e = max(self.terms)
        return e, self.terms[e]

    def divexact(self, other: "MPoly") -> "MPoly":
        """Exact division; raises ArithmeticError if ``other`` does not divide."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        quot = MPoly(self.nvars)
        le, lc = other.leading()
        while rem:
            e, c = rem.leading()
            if any(x < y for x, y in zip(e, le)):
                raise ArithmeticError("inexact polynomial division")
            m = _raw(self.nvars, {tuple(x - y for x, y in zip(e, le)): c / lc})
            quot = quot + m
            rem = rem - m * other
        return quot

    # --- text ----------------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"t{k + 1}" for k in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [names[k] + (f"^{x}" if x > 1 else "") for k, x in enumerate(e) if x]
            parts.append("*".join([format_rational(c)] + factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.to_str()!r})"


def _raw(nvars: int, terms: dict) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.nvars = nvars
    p.terms = terms
    return p


_FACTOR = re.compile(r"([A-Za-z_]+)(\d+)(?:\^(\d+))?")


def parse_mpoly(text: str, nvars: int, prefix: str = "t") -> MPoly:
    """Inverse of :meth:`MPoly.to_str` for names ``<prefix>1 .. <prefix>n``."""
    text = text.strip()
    if text == "0":
        return MPoly(nvars)
    out: dict[Exps, Fraction] = {}
    for term in text.split(" + "):
        coeff, *factors = term.split("*")
        e = [0] * nvars
        for f in factors:
            m = _FACTOR.fullmatch(f)
            if not m or m.group(1) != prefix:
                raise ValueError(f"bad factor {f!r}")
            k = int(m.group(2)) - 1
            if not 0 <= k < nvars:
                raise ValueError(f"variable index out of range in {f!r}")
            e[k] += int(m.group(3) or 1)
        key = tuple(e)
        out[key] = out.get(key, _ZERO) + Fraction(coeff)
    return MPoly(nvars, out)
