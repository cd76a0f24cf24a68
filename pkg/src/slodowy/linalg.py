"""Dense exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`. Sizes in this
package never exceed a few hundred, so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return [x + y for x, y in zip(u, v)]


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return [x - y for x, y in zip(u, v)]


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return [c * x for x in v]


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(map(frac, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column, free entry set to 1."""
    if not m:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    a, pivots = rref(m)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for row, pc in zip(a, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """One solution of m x = b (free variables zero), or None if inconsistent."""
    n = len(m[0]) if m else 0
    aug = [list(row) + [frac(bi)] for row, bi in zip(m, b)]
    a, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row, pc in zip(a, pivots):
        x[pc] = row[n]
    return x


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in a]


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(map(frac, row)) for row in m]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    kept: list[int] = []
    echelon: list[tuple[int, Vector]] = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for pc, row in echelon:
            if w[pc]:
                f = w[pc]
                w = [x - f * y for x, y in zip(w, row)]
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            continue
        inv = ONE / w[pc]
        w = [x * inv for x in w]
        echelon.append((pc, w))
        kept.append(idx)
    return kept


def squarefree_split(q: Fraction) -> tuple[int, Fraction]:
    """Write q = s * c**2 with s a squarefree integer (sign included), c > 0 rational."""
    if q == 0:
        raise ValueError("zero has no square class")
    sign = 1 if q > 0 else -1
    n = abs(q.numerator) * q.denominator
    s, m = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    s *= n
    # q = sign*s*m^2 / den^2
    return sign * s, Fraction(m, q.denominator)
