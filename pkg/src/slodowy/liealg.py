"""Simple Lie algebras over Q: structure constants, invariant form, principal sl2.

Two backends produce the same algebra in different bases:

* ``chevalley`` -- root system plus Chevalley structure constants fixed by
  positive signs on extraspecial pairs. Covers every valid type up to the
  rank bound.
* ``matrix`` -- classical matrix algebras (sl, so, sp) and G2 obtained by
  folding so(8) under triality, with structure constants read off matrix
  commutators.

In both cases the basis is ordered by Dynkin degree of the principal grading
(negative root vectors, Cartan, positive root vectors) and simple root vectors
are basis elements, so ``e`` is the sum of the simple basis vectors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from pathlib import Path

from . import linalg as la
from .errors import OddDegree, RankBound, SolveFailure, UnsupportedType

DEFAULT_RANK_BOUND = 4
CACHE_FORMAT_VERSION = 1
CACHE_ENV = "SLODOWY_CACHE_DIR"

Q = Fraction
StructTable = dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]

_EXPONENT_TABLE = {
    "A": lambda n: list(range(1, n + 1)),
    "B": lambda n: list(range(1, 2 * n, 2)),
    "C": lambda n: list(range(1, 2 * n, 2)),
    "D": lambda n: sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]),
    "E": lambda n: {6: [1, 4, 5, 7, 8, 11], 7: [1, 5, 7, 9, 11, 13, 17],
                    8: [1, 7, 11, 13, 17, 19, 23, 29]}[n],
    "F": lambda n: [1, 5, 7, 11],
    "G": lambda n: [1, 5],
}


def standard_exponents(type_label: str, rank: int) -> list[int]:
    """Textbook exponents, used only to cross-check the computed ones."""
    return _EXPONENT_TABLE[type_label](rank)


def validate_type(type_label: str, rank: int, rank_bound: int = DEFAULT_RANK_BOUND) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(type_label, False)
    if not ok:
        raise UnsupportedType(f"no simple Lie algebra of type {type_label}{rank}")
    if rank > rank_bound:
        raise RankBound(f"rank {rank} exceeds the configured bound {rank_bound}")


# ---------------------------------------------------------------------------
# root systems
# ---------------------------------------------------------------------------

def simple_root_gram(type_label: str, rank: int) -> list[list[Fraction]]:
    """Matrix of (alpha_i, alpha_j) for the simple roots, Bourbaki numbering."""
    n = rank
    g = la.zeros(n, n)
    for i in range(n - 1):
        g[i][i + 1] = g[i + 1][i] = Q(-1)
    for i in range(n):
        g[i][i] = Q(2)
    if type_label == "B":
        g[n - 1][n - 1] = Q(1)
    elif type_label == "C":
        for i in range(n - 1):
            g[i][i] = Q(1)
        for i in range(n - 2):
            g[i][i + 1] = g[i + 1][i] = Q(-1, 2)
        g[n - 2][n - 1] = g[n - 1][n - 2] = Q(-1)
    elif type_label == "D":
        g[n - 2][n - 1] = g[n - 1][n - 2] = Q(0)
        g[n - 3][n - 1] = g[n - 1][n - 3] = Q(-1)
    elif type_label == "E":
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        g = la.zeros(n, n)
        for i in range(n):
            g[i][i] = Q(2)
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for a, b in edges:
            g[a][b] = g[b][a] = Q(-1)
    elif type_label == "F":
        g[2][2] = g[3][3] = Q(1)
        g[2][3] = g[3][2] = Q(-1, 2)
    elif type_label == "G":
        g = [[Q(2), Q(-3)], [Q(-3), Q(6)]]
    return g


def positive_roots(gram: list[list[Fraction]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
    r = len(gram)
    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                while True:
                    cand = tuple(b - (p + 1) * (j == i) for j, b in enumerate(beta))
                    if cand in roots:
                        p += 1
                    else:
                        break
                pairing = 2 * sum(beta[j] * gram[j][i] for j in range(r)) / gram[i][i]
                if p - pairing > 0:
                    new = tuple(b + (j == i) for j, b in enumerate(beta))
                    if new not in roots:
                        roots.add(new)
                        nxt.append(new)
        layer = nxt
    return sorted(roots, key=lambda a: (sum(a), tuple(-x for x in a)))


class _ChevalleyConstants:
    """N_{alpha,beta} for a Chevalley basis, extraspecial signs all positive."""

    def __init__(self, gram, pos_roots):
        self.gram = gram
        self.pos = pos_roots
        self.order = {a: k for k, a in enumerate(pos_roots)}
        self.roots = set(pos_roots) | {self.neg(a) for a in pos_roots}
        self.cache: dict[tuple, Fraction] = {}
        self.extraspecial = {}
        for xi in pos_roots:
            if sum(xi) == 1:
                continue
            for alpha in pos_roots:
                beta = self.sub(xi, alpha)
                if beta in self.order:
                    self.extraspecial[xi] = (alpha, beta)
                    break

    @staticmethod
    def neg(a):
        return tuple(-x for x in a)

    @staticmethod
    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def ip(self, a, b) -> Fraction:
        r = len(a)
        return sum((a[i] * b[j] * self.gram[i][j] for i in range(r) for j in range(r) if a[i] and b[j]), Q(0))

    def is_pos(self, a):
        return a in self.order

    def p_value(self, alpha, beta) -> int:
        p = 0
        while self.sub(beta, tuple((p + 1) * x for x in alpha)) in self.roots:
            p += 1
        return p

    def N(self, alpha, beta) -> Fraction:
        s = self.add(alpha, beta)
        if s not in self.roots:
            return Q(0)
        key = (alpha, beta)
        if key in self.cache:
            return self.cache[key]
        val = self._compute(alpha, beta, s)
        self.cache[key] = val
        return val

    def _compute(self, alpha, beta, s) -> Fraction:
        pa, pb = self.is_pos(alpha), self.is_pos(beta)
        if pa and pb:
            if self.order[alpha] > self.order[beta]:
                return -self.N(beta, alpha)
            xi = s
            a1, b1 = self.extraspecial[xi]
            if (alpha, beta) == (a1, b1):
                return Q(self.p_value(alpha, beta) + 1)
            n1 = self.N(a1, b1)
            total = Q(0)
            d = self.sub(beta, a1)
            if d in self.roots:
                total += self.N(beta, self.neg(a1)) * self.N(alpha, self.neg(b1)) / self.ip(d, d)
            d = self.sub(alpha, a1)
            if d in self.roots:
                total += self.N(self.neg(a1), alpha) * self.N(beta, self.neg(b1)) / self.ip(d, d)
            return self.ip(xi, xi) / n1 * total
        if not pa and not pb:
            return -self.N(self.neg(alpha), self.neg(beta))
        if not pa:
            return -self.N(beta, alpha)
        gamma = self.neg(s)
        if self.is_pos(s):
            return self.ip(gamma, gamma) / self.ip(alpha, alpha) * self.N(beta, gamma)
        return self.ip(gamma, gamma) / self.ip(beta, beta) * self.N(gamma, alpha)


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LieAlgebraData:
    type_label: str
    rank: int
    dim: int
    backend: str
    structure_constants: StructTable
    form: list[list[Fraction]]
    exponents: list[int]
    simple_e: list[int]
    simple_f: list[int]
    cartan: list[int]
    labels: list[str] = field(default_factory=list)

    @property
    def coxeter_minus_one(self) -> int:
        return self.exponents[-1]

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def bracket(self, x, y) -> list[Fraction]:
        out = [Q(0)] * self.dim
        nx = [(i, a) for i, a in enumerate(x) if a]
        ny = [(j, b) for j, b in enumerate(y) if b]
        sc = self.structure_constants
        for i, a in nx:
            for j, b in ny:
                terms = sc.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] += ab * c
        return out

    def ad(self, x) -> list[list[Fraction]]:
        """Matrix of ad x acting on column coordinate vectors."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return la.transpose(cols)

    def pair(self, x, y) -> Fraction:
        f = self.form
        return sum((x[i] * f[i][j] * y[j] for i in range(self.dim) if x[i]
                    for j in range(self.dim) if y[j] and f[i][j]), Q(0))

    def unit(self, i: int) -> list[Fraction]:
        v = [Q(0)] * self.dim
        v[i] = Q(1)
        return v

    @cached_property
    def e(self) -> list[Fraction]:
        v = [Q(0)] * self.dim
        for i in self.simple_e:
            v[i] = Q(1)
        return v


@dataclass(frozen=True)
class SL2Triple:
    e: list[Fraction]
    h: list[Fraction]
    f: list[Fraction]


@dataclass(frozen=True)
class GradingMap:
    """Ad h eigenbasis: ``basis[k]`` has Dynkin degree ``degrees[k]``."""

    basis: list[list[Fraction]]
    degrees: list[int]
    change_of_basis: list[list[Fraction]]

    def component(self, degree: int) -> list[list[Fraction]]:
        return [v for v, d in zip(self.basis, self.degrees) if d == degree]

    @property
    def borel(self) -> list[list[Fraction]]:
        return [v for v, d in zip(self.basis, self.degrees) if d <= 0]

    @property
    def nilpotent(self) -> list[list[Fraction]]:
        return [v for v, d in zip(self.basis, self.degrees) if d <= -2]


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _table_from_dense(brackets: dict[tuple[int, int], list[Fraction]]) -> StructTable:
    table: StructTable = {}
    for (i, j), vec in brackets.items():
        terms = tuple((k, c) for k, c in enumerate(vec) if c)
        if terms:
            table[(i, j)] = terms
    return table


def _chevalley_table(type_label: str, rank: int):
    gram = simple_root_gram(type_label, rank)
    pos = positive_roots(gram)
    cc = _ChevalleyConstants(gram, pos)
    neg = [cc.neg(a) for a in reversed(pos)]
    roots = neg + pos
    r = rank
    # basis: negative roots (lowest first), h_1..h_r, positive roots
    index = {a: k for k, a in enumerate(neg)}
    index.update({a: len(neg) + r + k for k, a in enumerate(pos)})
    dim = len(roots) + r
    cartan = list(range(len(neg), len(neg) + r))

    def coroot(alpha):
        # alpha^vee = sum_i k_i (alpha_i,alpha_i)/(alpha,alpha) alpha_i^vee
        na = cc.ip(alpha, alpha)
        return [Q(alpha[i]) * gram[i][i] / na for i in range(r)]

    dense: dict[tuple[int, int], list[Fraction]] = {}
    for a, b in product(roots, roots):
        vec = [Q(0)] * dim
        s = cc.add(a, b)
        if all(x == 0 for x in s):
            sign = 1 if cc.is_pos(a) else -1
            for i, c in enumerate(coroot(a if sign > 0 else b)):
                vec[cartan[i]] = sign * c
        elif s in cc.roots:
            vec[index[s]] = cc.N(a, b)
        else:
            continue
        dense[(index[a], index[b])] = vec
    for i in range(r):
        for b in roots:
            val = 2 * cc.ip(b, tuple(int(j == i) for j in range(r))) / gram[i][i]
            if val:
                vec = [Q(0)] * dim
                vec[index[b]] = val
                dense[(cartan[i], index[b])] = vec
                dense[(index[b], cartan[i])] = [-x for x in vec]
    simple = [tuple(int(j == i) for j in range(r)) for i in range(r)]
    simple_e = [index[a] for a in simple]
    simple_f = [index[cc.neg(a)] for a in simple]
    labels = [f"e{'_'.join(map(str, a))}".replace("-", "m") for a in neg]
    labels += [f"h{i + 1}" for i in range(r)]
    labels += [f"e{'_'.join(map(str, a))}" for a in pos]
    return dim, _table_from_dense(dense), simple_e, simple_f, cartan, labels


# --- matrix backend ---------------------------------------------------------

def _E(n, a, b):
    m = la.zeros(n, n)
    m[a][b] = Q(1)
    return m


def _madd(*ms):
    out = [row[:] for row in ms[0]]
    for m in ms[1:]:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                out[i][j] += x
    return out


def _msub(a, b):
    return _madd(a, [[-x for x in row] for row in b])


def _comm(a, b):
    return _msub(la.matmul(a, b), la.matmul(b, a))


def _flat(m):
    return [x for row in m for x in row]


def _classical_generators(type_label: str, n: int):
    """Simple root vectors e_i and f_i = e_i^T as matrices."""
    if type_label == "A":
        N = n + 1
        es = [_E(N, i, i + 1) for i in range(n)]
    else:
        N = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[type_label]
        if type_label == "C":
            M = la.zeros(N, N)
            for i in range(n):
                M[i][N - 1 - i] = Q(1)
                M[N - 1 - i][i] = Q(-1)
        else:
            M = la.zeros(N, N)
            for i in range(N):
                M[i][N - 1 - i] = Q(1)

        def member(X):
            t = _madd(la.matmul(la.transpose(X), M), la.matmul(M, X))
            return not any(_flat(t))

        def root_vector(a, b):
            ap, bp = N - 1 - a, N - 1 - b
            for s in (Q(-1), Q(1)):
                X = _madd(_E(N, a, b), [[s * x for x in row] for row in _E(N, bp, ap)])
                if any(_flat(X)) and member(X):
                    return X
            raise SolveFailure("no root vector in matrix algebra")

        es = [root_vector(i, i + 1) for i in range(n - 1)]
        if type_label == "B":
            es.append(root_vector(n - 1, n))
        elif type_label == "C":
            es.append(root_vector(n - 1, n))
        else:
            es.append(root_vector(n - 2, n))
    fs = [la.transpose(x) for x in es]
    return es, fs


def _g2_generators():
    es, fs = _classical_generators("D", 4)
    # triality folds nodes 1,3,4 of D4 onto the short simple root of G2
    return ([_madd(es[0], es[2], es[3]), es[1]],
            [_madd(fs[0], fs[2], fs[3]), fs[1]])


def _matrix_table(type_label: str, rank: int):
    if type_label == "G":
        es, fs = _g2_generators()
    elif type_label in "ABCD":
        es, fs = _classical_generators(type_label, rank)
    else:
        raise UnsupportedType(f"matrix backend has no realization of type {type_label}")
    r = len(es)

    def grow(gens):
        levels = [list(gens)]
        flat = [_flat(g) for g in gens]
        while True:
            nxt = []
            for x in levels[-1]:
                for g in gens:
                    y = _comm(g, x)
                    fy = _flat(y)
                    if la.independent_subset(flat + [fy])[-1:] == [len(flat)]:
                        flat.append(fy)
                        nxt.append(y)
            if not nxt:
                return levels
            levels.append(nxt)

    pos_levels = grow(es)
    neg_levels = grow(fs)
    cartan_m = [_comm(es[i], fs[i]) for i in range(r)]
    neg = [m for lvl in reversed(neg_levels) for m in reversed(lvl)]
    pos = [m for lvl in pos_levels for m in lvl]
    basis = neg + cartan_m + pos
    dim = len(basis)
    flat = [_flat(m) for m in basis]
    cols = la.independent_subset(la.transpose(flat))
    if len(cols) != dim:
        raise SolveFailure("matrix basis is degenerate")
    sq = [[flat[k][c] for k in range(dim)] for c in cols]
    sq_inv = la.inverse(sq)

    def coords(m):
        fm = _flat(m)
        return la.matvec(sq_inv, [fm[c] for c in cols])

    dense = {}
    for i, j in product(range(dim), range(dim)):
        if i < j:
            v = coords(_comm(basis[i], basis[j]))
            if any(v):
                dense[(i, j)] = v
                dense[(j, i)] = [-x for x in v]
    nneg = len(neg)
    simple_e = [nneg + r + k for k in range(r)]
    simple_f = [nneg - 1 - k for k in range(r)]
    labels = [f"n{k}" for k in range(nneg)] + [f"h{k + 1}" for k in range(r)] + [f"p{k}" for k in range(len(pos))]
    return dim, _table_from_dense(dense), simple_e, simple_f, list(range(nneg, nneg + r)), labels


# --- cache ------------------------------------------------------------------

def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "slodowy"))


def cache_path(type_label: str, rank: int, backend: str) -> Path:
    return cache_dir() / f"{type_label}{rank}-{backend}-v{CACHE_FORMAT_VERSION}.sc"


def write_structure_constants(path: Path, dim: int, table: StructTable, meta: dict[str, str]) -> None:
    lines = [f"# {k} {v}" for k, v in sorted(meta.items())]
    lines.append(f"# dim {dim}")
    entries = sorted((i, j, k, c) for (i, j), terms in table.items() for k, c in terms)
    lines += [f"{i} {j} {k} {c.numerator}/{c.denominator}" for i, j, k, c in entries]
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def read_structure_constants(path: Path) -> tuple[int, StructTable, dict[str, str]]:
    meta: dict[str, str] = {}
    acc: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition(" ")
            meta[key] = val
            continue
        i, j, k, c = line.split()
        acc.setdefault((int(i), int(j)), []).append((int(k), Fraction(c)))
    dim = int(meta.pop("dim"))
    return dim, {key: tuple(v) for key, v in acc.items()}, meta


# --- assembly -----------------------------------------------------------------

def _killing(dim: int, table: StructTable) -> list[list[Fraction]]:
    ads = []
    for i in range(dim):
        m = la.zeros(dim, dim)
        for j in range(dim):
            for k, c in table.get((i, j), ()):
                m[k][j] = c
        ads.append(m)
    kf = la.zeros(dim, dim)
    for i in range(dim):
        for j in range(i, dim):
            ai, aj = ads[i], ads[j]
            t = sum((ai[a][b] * aj[b][a] for a in range(dim) for b in range(dim) if ai[a][b] and aj[b][a]), Q(0))
            kf[i][j] = kf[j][i] = t
    return kf


def build_lie_algebra(type_label: str, rank: int, backend: str = "chevalley",
                      rank_bound: int = DEFAULT_RANK_BOUND, use_cache: bool = True) -> LieAlgebraData:
    validate_type(type_label, rank, rank_bound)
    if backend not in ("chevalley", "matrix"):
        raise UnsupportedType(f"unknown backend {backend!r}")
    path = cache_path(type_label, rank, backend)
    loaded = None
    if use_cache and path.exists():
        try:
            dim, table, meta = read_structure_constants(path)
            loaded = (dim, table, [int(x) for x in meta["simple_e"].split(",")],
                      [int(x) for x in meta["simple_f"].split(",")],
                      [int(x) for x in meta["cartan"].split(",")], meta["labels"].split(","))
        except (OSError, KeyError, ValueError):
            loaded = None
    if loaded is None:
        if backend == "chevalley":
            loaded = _chevalley_table(type_label, rank)
        else:
            loaded = _matrix_table(type_label, rank)
        if use_cache:
            dim, table, se, sf, ca, labels = loaded
            meta = {"type": type_label, "rank": str(rank), "backend": backend,
                    "format": str(CACHE_FORMAT_VERSION), "simple_e": ",".join(map(str, se)),
                    "simple_f": ",".join(map(str, sf)), "cartan": ",".join(map(str, ca)),
                    "labels": ",".join(labels)}
            try:
                write_structure_constants(path, dim, table, meta)
            except OSError:
                pass
    dim, table, simple_e, simple_f, cartan, labels = loaded
    kf = _killing(dim, table)
    raw = LieAlgebraData(type_label, rank, dim, backend, table, kf, [], simple_e, simple_f, cartan, labels)
    trip = principal_sl2(raw)
    scale = raw.pair(trip.e, trip.f)
    form = [[x / scale for x in row] for row in kf]
    partial = LieAlgebraData(type_label, rank, dim, backend, table, form, [], simple_e, simple_f, cartan, labels)
    grading = dynkin_grading(partial, trip)
    exps = exponents_from_grading(grading)
    return LieAlgebraData(type_label, rank, dim, backend, table, form, exps, simple_e, simple_f, cartan, labels)


def exponents_from_grading(grading: GradingMap) -> list[int]:
    """k appears dim g_{2k} - dim g_{2k+2} times (root-height partition)."""
    dims: dict[int, int] = {}
    for d in grading.degrees:
        dims[d] = dims.get(d, 0) + 1
    out = []
    k = 1
    while dims.get(2 * k, 0):
        out += [k] * (dims[2 * k] - dims.get(2 * k + 2, 0))
        k += 1
    return out


def principal_sl2(data: LieAlgebraData) -> SL2Triple:
    n, r = data.dim, data.rank
    e = data.e
    # h in the Cartan span with [h, e_i] = 2 e_i
    rows, rhs = [], []
    for si in data.simple_e:
        for k in range(n):
            row = []
            for c in data.cartan:
                row.append(data.bracket(data.unit(c), data.unit(si))[k])
            rows.append(row)
            rhs.append(Q(2) if k == si else Q(0))
    coeffs = la.solve(rows, rhs)
    if coeffs is None:
        raise SolveFailure("no Cartan element grading e with degree 2")
    h = [Q(0)] * n
    for c, x in zip(data.cartan, coeffs):
        h[c] = x
    # f in span of simple f_i with [e, f] = h
    cols = [data.bracket(e, data.unit(sf)) for sf in data.simple_f]
    coeffs = la.solve(la.transpose(cols), h)
    if coeffs is None:
        raise SolveFailure("no f with [e,f] = h")
    f = [Q(0)] * n
    for sf, x in zip(data.simple_f, coeffs):
        f[sf] = x
    if data.bracket(h, f) != [-2 * x for x in f]:
        raise SolveFailure("[h,f] != -2f")
    return SL2Triple(e, h, f)


def dynkin_grading(data: LieAlgebraData, triple: SL2Triple) -> GradingMap:
    adh = data.ad(triple.h)
    n = data.dim
    basis: list[list[Fraction]] = []
    degrees: list[int] = []
    lam = -2 * n
    while len(basis) < n and lam <= 2 * n:
        shifted = [[adh[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        ker = la.nullspace(shifted)
        if ker and lam % 2:
            raise OddDegree(f"ad h has odd eigenvalue {lam}")
        basis += ker
        degrees += [lam] * len(ker)
        lam += 1
    if len(basis) != n:
        raise OddDegree("ad h is not diagonalizable with integer eigenvalues")
    return GradingMap(basis, degrees, la.transpose(basis))
