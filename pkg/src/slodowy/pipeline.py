"""End-to-end computation for one simple Lie algebra."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import checks
from .brackets import LeadingTerms, base_tables, leading_terms, reduce
from .cyclic import OppositeCartanData, cyclic_element, gram_bracket_terms, opposite_cartan_basis
from .dirac import DiracResult, OrderedBasisData, dirac_leading_terms, ordered_basis, slice_matrix
from .dsred import GaugeFixResult, XAlgebra, gauge_fix, random_gauge_check
from .frobenius import (FlatPencilData, FrobeniusResult, flat_coordinates, potential,
                        regularity_tensor, transform_pencil, verify_pencil_axioms, verify_wdvv)
from .liealg import DEFAULT_RANK_BOUND, LieAlgebraData, build_lie_algebra, dynkin_grading, principal_sl2
from .sl2basis import NormalizedBasis, lowest_weight_vectors, normalize_basis

log = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    data: LieAlgebraData
    basis: NormalizedBasis
    cyclic: OppositeCartanData
    alg: XAlgebra
    zgen: GaugeFixResult
    red1: list
    red2: list
    leading: LeadingTerms
    obd: OrderedBasisData
    slice_F: list
    dirac: DiracResult
    flat: FlatPencilData
    frob: FrobeniusResult
    R: list[list[Fraction]]
    checks: dict[str, bool] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    central_charge: Fraction | None = None
    gauge_trials: int = 0
    gauge_seed: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


class _Timer:
    def __init__(self, sink: dict, name: str):
        self.sink, self.name = sink, name

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        self.sink[self.name] = self.sink.get(self.name, 0.0) + time.perf_counter() - self.t
        log.debug("%s: %.3fs", self.name, self.sink[self.name])


def run(type_label: str, rank: int, backend: str = "chevalley", jobs: int = 1,
        gauge_trials: int = 100, seed: int = 0, rank_bound: int = DEFAULT_RANK_BOUND,
        use_cache: bool = True) -> PipelineResult:
    tm: dict[str, float] = {}
    with _Timer(tm, "liealg"):
        data = build_lie_algebra(type_label, rank, backend, rank_bound=rank_bound, use_cache=use_cache)
        triple = principal_sl2(data)
        grading = dynkin_grading(data, triple)
    with _Timer(tm, "sl2basis"):
        basis = normalize_basis(data, triple, lowest_weight_vectors(data, triple, grading))
    with _Timer(tm, "cyclic"):
        a, y1 = cyclic_element(data, triple, basis)
        cyc = opposite_cartan_basis(data, triple, basis, a, y1)
        bracket_terms = gram_bracket_terms(data, basis, a)
    with _Timer(tm, "dsred"):
        alg = XAlgebra(data, basis)
        zgen = gauge_fix(data, basis, alg)
    with _Timer(tm, "brackets"):
        r = len(basis.exponents)
        p1, p2 = base_tables(alg, (r, -basis.exponents[-1]))
        red1 = reduce(zgen, p1, jobs=jobs)
        red2 = reduce(zgen, p2, jobs=jobs)
        lt = leading_terms(red1, red2, basis.exponents)
    with _Timer(tm, "dirac"):
        obd = ordered_basis(alg)
        sF = slice_matrix(alg, obd)
        dr = dirac_leading_terms(alg, obd)
    with _Timer(tm, "frobenius"):
        flat = flat_coordinates(lt.g1, lt.Gamma1, basis.exponents)
        transform_pencil(flat, lt.g2, lt.Gamma2)
        axioms = verify_pencil_axioms(flat, raise_on_failure=True)
        R = regularity_tensor(flat)
        frob = potential(flat)
        wdvv = verify_wdvv(frob)

    res = PipelineResult(data, basis, cyc, alg, zgen, red1, red2, lt, obd, sF, dr, flat, frob, R, timings=tm)
    exps = basis.exponents
    row = [red2[0][j].entries for j in range(r)]
    c = res.checks
    c["gram_bracket_identity"] = checks.gram_bracket_identity(bracket_terms, cyc.A)
    c["A_antidiagonal"] = checks.A_antidiagonal(cyc.A, exps)
    c["dispersionless_limit"] = checks.dispersionless_limit(lt.F1, lt.F2)
    c["det_identity"] = checks.det_identity(lt.g1, cyc.A, basis.nu, exps)
    c["differential_relation"] = checks.differential_relation(lt.g1, lt.g2)
    c["virasoro_row"] = checks.virasoro_hydrodynamic(row, exps)
    res.central_charge = checks.virasoro_central(row)
    c["virasoro_central_term"] = res.central_charge is not None and res.central_charge != 0
    c["dirac_oracle"] = checks.dirac_oracle(dr.g2, dr.F2, lt.g2)
    c["quasihomogeneity"] = (checks.z_degrees(zgen.z, exps) and checks.g2_degrees(lt.g2, exps)
                             and dr.block_degrees_ok)
    for name, ok in axioms.items():
        c[f"pencil_{name}"] = ok
    for name, ok in wdvv.items():
        c[f"frobenius_{name}"] = ok
    c["charge"] = checks.charge_matches(frob.charge, exps)
    with _Timer(tm, "gauge_invariance"):
        ok, _ = random_gauge_check(alg, zgen, trials=gauge_trials, seed=seed)
    c["gauge_invariance"] = ok
    res.gauge_trials, res.gauge_seed = gauge_trials, seed
    return res
