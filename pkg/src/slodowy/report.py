"""JSON run reports: serialization, offline verification, LaTeX rendering.

Rationals are ``"p/q"`` strings and polynomials use the canonical text of
:mod:`slodowy.poly` (variables ``z1..zr`` before the flat change, ``t1..tr``
after) and :mod:`slodowy.diffpoly`. No floats appear unless timings are
requested explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import checks
from .cyclic import cyclic_element, gram_bracket_terms, opposite_cartan_basis
from .diffpoly import format_rational, parse_diffpoly
from .dirac import dirac_formula
from .dsred import GaugeFixResult, XAlgebra, random_gauge_check
from .errors import PipelineError
from .frobenius import (FlatPencilData, FrobeniusResult, hessian_target, invert_triangular,
                        relabel_unity_first, transform_connection, transform_metric, verify_pencil_axioms,
                        verify_wdvv)
from .liealg import build_lie_algebra, dynkin_grading, principal_sl2
from .poly import MPoly, parse_mpoly
from .sl2basis import lowest_weight_vectors, normalize_basis

SCHEMA_VERSION = 1


class ReportError(ValueError):
    """Malformed or unsupported report file."""


# --- encoding ------------------------------------------------------------------------

def _q(x: Fraction) -> str:
    return format_rational(Fraction(x))


def _qmat(m) -> list:
    return [[_q(x) for x in row] for row in m]


def _names(prefix: str, r: int) -> list[str]:
    return [f"{prefix}{k}" for k in range(1, r + 1)]


def _pmat(m, prefix: str) -> list:
    if not m:
        return []
    names = _names(prefix, m[0][0].nvars)
    return [[x.to_str(names) for x in row] for row in m]


def _pvec(v, prefix: str) -> list:
    names = _names(prefix, v[0].nvars) if v else []
    return [x.to_str(names) for x in v]


def _ptensor(G, prefix: str) -> list:
    return [_pmat(plane, prefix) for plane in G]


def _series(entries: dict) -> dict:
    return {f"{k},{s}": str(p) for (k, s), p in sorted(entries.items()) if p}


def build_report(res, relabel_unity_first_flag: bool = False, include_timings: bool = False) -> dict:
    data, basis, lt, flat, frob = res.data, res.basis, res.leading, res.flat, res.frob
    r = len(basis.exponents)
    F = frob.F
    if relabel_unity_first_flag:
        F = relabel_unity_first(F)
    obd = res.obd
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "algebra": {"type": data.type_label, "rank": data.rank, "dim": data.dim, "backend": data.backend},
        "exponents": list(basis.exponents),
        "kappa": max(basis.exponents),
        "nu": list(basis.nu),
        "A": _qmat(res.cyclic.A),
        "z": [str(zi) for zi in res.zgen.z],
        "leading_terms": {
            "F1": _pmat(lt.F1, "z"), "F2": _pmat(lt.F2, "z"),
            "g1": _pmat(lt.g1, "z"), "g2": _pmat(lt.g2, "z"),
            "Gamma1": _ptensor(lt.Gamma1, "z"), "Gamma2": _ptensor(lt.Gamma2, "z"),
        },
        "virasoro_row": [_series(res.red2[0][j].entries) for j in range(r)],
        "central_coefficient": None if res.central_charge is None else _q(res.central_charge),
        "dirac": {
            "xi_labels": [list(lab) for lab in obd.labels],
            "xi_degrees": [obd.degree(I) for I in range(len(obd.labels))],
            "gtilde": _qmat(obd.gtilde),
            "slice_matrix": _pmat(res.slice_F, "z"),
            "block_inverse": _pmat(res.dirac.block_inverse, "z"),
            "g2": _pmat(res.dirac.g2, "z"),
            "F2": _pmat(res.dirac.F2, "z"),
        },
        "flat": {
            "t_of_z": _pvec(flat.t_of_z, "z"),
            "z_of_t": _pvec(flat.z_of_t, "t"),
            "eta": _qmat(flat.eta),
            "g2": _pmat(flat.g2, "t"),
            "Gamma2": _ptensor(flat.Gamma2, "t"),
        },
        "euler": _pvec(flat.euler(), "t"),
        "unity": _pvec(flat.unity(), "t"),
        "R": _qmat(res.R),
        "degrees": [_q(d) for d in frob.degrees],
        "charge": _q(frob.charge),
        "labeling": "unity-first" if relabel_unity_first_flag else "unity-last",
        "prepotential": F.to_str(_names("t", r)),
        "gauge_trials": {"count": res.gauge_trials, "seed": res.gauge_seed},
        "checks": {k: v for k, v in res.checks.items()},
    }
    if include_timings:
        report["timings"] = {k: round(v, 4) for k, v in res.timings.items()}
    return report


# --- decoding ------------------------------------------------------------------------

def _fr(s) -> Fraction:
    try:
        return Fraction(s)
    except (TypeError, ValueError) as exc:
        raise ReportError(f"bad rational {s!r}") from exc


def _parse_mat(m, r: int, prefix: str):
    try:
        return [[parse_mpoly(x, r, prefix) for x in row] for row in m]
    except (TypeError, ValueError) as exc:
        raise ReportError(f"bad polynomial matrix: {exc}") from exc


def _parse_series(d: dict) -> dict:
    out = {}
    for key, text in d.items():
        k, s = (int(x) for x in key.split(","))
        out[(k, s)] = parse_diffpoly(text)
    return out


def verify_report(rep: dict, gauge: bool = True) -> dict[str, bool]:
    """Re-run every invariant check on serialized data."""
    try:
        if rep.get("schema_version") != SCHEMA_VERSION:
            raise ReportError(f"unsupported schema version {rep.get('schema_version')!r}")
        exps = [int(x) for x in rep["exponents"]]
        r = len(exps)
        nu = [int(x) for x in rep["nu"]]
        A = [[_fr(x) for x in row] for row in rep["A"]]
        z = [parse_diffpoly(s) for s in rep["z"]]
        ltr = rep["leading_terms"]
        F1, F2 = _parse_mat(ltr["F1"], r, "z"), _parse_mat(ltr["F2"], r, "z")
        g1, g2 = _parse_mat(ltr["g1"], r, "z"), _parse_mat(ltr["g2"], r, "z")
        G1 = [_parse_mat(p, r, "z") for p in ltr["Gamma1"]]
        G2 = [_parse_mat(p, r, "z") for p in ltr["Gamma2"]]
        row = [_parse_series(d) for d in rep["virasoro_row"]]
        dr = rep["dirac"]
        sF = _parse_mat(dr["slice_matrix"], r, "z")
        gtilde = [[_fr(x) for x in row_] for row_ in dr["gtilde"]]
        xi_deg = [int(x) for x in dr["xi_degrees"]]
        inv_saved = _parse_mat(dr["block_inverse"], r, "z")
        fl = rep["flat"]
        t_of_z = [parse_mpoly(s, r, "z") for s in fl["t_of_z"]]
        eta_saved = [[_fr(x) for x in row_] for row_ in fl["eta"]]
        g2t_saved = _parse_mat(fl["g2"], r, "t")
        charge = _fr(rep["charge"])
        F = parse_mpoly(rep["prepotential"], r, "t")
        if rep.get("labeling") == "unity-first":
            F = relabel_unity_first(F)
        algebra = rep["algebra"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"malformed report: {exc}") from exc

    c: dict[str, bool] = {}
    c["A_antidiagonal"] = checks.A_antidiagonal(A, exps)
    c["dispersionless_limit"] = checks.dispersionless_limit(F1, F2)
    c["det_identity"] = checks.det_identity(g1, A, nu, exps)
    c["differential_relation"] = checks.differential_relation(g1, g2)
    c["virasoro_row"] = checks.virasoro_hydrodynamic(row, exps)
    cc = checks.virasoro_central(row)
    c["virasoro_central_term"] = cc is not None and cc != 0
    try:
        d = dirac_formula(sF, gtilde, r, xi_deg, exps)
        c["dirac_oracle"] = checks.dirac_oracle(d.g2, d.F2, g2)
        c["dirac_block_inverse"] = d.block_inverse == inv_saved
        block_ok = d.block_degrees_ok
    except PipelineError:
        c["dirac_oracle"] = False
        block_ok = False
    c["quasihomogeneity"] = checks.z_degrees(z, exps) and checks.g2_degrees(g2, exps) and block_ok

    # flat pencil, recomputed from the z-side data and the recorded change map
    try:
        z_of_t = invert_triangular(t_of_z)
        jac = [[t_of_z[a].diff(i) for i in range(r)] for a in range(r)]
        g1t = [[x.subs(z_of_t) for x in row_] for row_ in transform_metric(g1, jac)]
        ok_const = all(x.is_constant() for row_ in g1t for x in row_)
        eta = [[x.constant_term() for x in row_] for row_ in g1t]
        flat = FlatPencilData(exps, t_of_z, z_of_t, eta)
        flat.g1 = g1t
        flat.g2 = [[x.subs(z_of_t) for x in row_] for row_ in transform_metric(g2, jac)]
        flat.Gamma1 = transform_connection(g1, G1, t_of_z, z_of_t)
        flat.Gamma2 = transform_connection(g2, G2, t_of_z, z_of_t)
        c["flat_metric_constant"] = ok_const and eta == eta_saved and flat.g2 == g2t_saved
        for name, ok in verify_pencil_axioms(flat, raise_on_failure=False).items():
            c[f"pencil_{name}"] = ok
        M = hessian_target(flat)
        c["prepotential_matches_pencil"] = all(F.diff(i).diff(j) == M[i][j] for i in range(r) for j in range(r))
    except PipelineError:
        c["flat_metric_constant"] = False
        eta = eta_saved
    frob = FrobeniusResult(exps, [Fraction(e + 1, max(exps) + 1) for e in exps], charge, eta, F)
    for name, ok in verify_wdvv(frob).items():
        c[f"frobenius_{name}"] = ok
    c["charge"] = checks.charge_matches(charge, exps)

    if gauge:
        c.update(_recheck_algebra(algebra, exps, A, z, rep.get("gauge_trials", {})))
    return c


def _recheck_algebra(algebra: dict, exps, A, z, gauge_cfg: dict) -> dict[str, bool]:
    """Checks that need the Lie algebra itself (rebuilt; no reduction is rerun)."""
    data = build_lie_algebra(algebra["type"], int(algebra["rank"]), algebra.get("backend", "chevalley"))
    triple = principal_sl2(data)
    basis = normalize_basis(data, triple, lowest_weight_vectors(data, triple, dynkin_grading(data, triple)))
    a, y1 = cyclic_element(data, triple, basis)
    cyc = opposite_cartan_basis(data, triple, basis, a, y1)
    out = {
        "algebra_matches": basis.exponents == exps and cyc.A == A,
        "gram_bracket_identity": checks.gram_bracket_identity(gram_bracket_terms(data, basis, a), cyc.A),
    }
    alg = XAlgebra(data, basis)
    ok, _ = random_gauge_check(alg, GaugeFixResult(exps, z, {}),
                               trials=int(gauge_cfg.get("count", 100)), seed=int(gauge_cfg.get("seed", 0)))
    out["gauge_invariance"] = ok
    return out


# --- LaTeX ------------------------------------------------------------------------------

def _sub(k: int) -> str:
    return str(k) if k < 10 else f"{{{k}}}"


def latex_poly(p: MPoly, symbol: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = " ".join(f"{symbol}_{_sub(i + 1)}" + (f"^{_sub(x)}" if x > 1 else "")
                        for i, x in enumerate(e) if x)
        a = abs(c)
        if a == 1 and mono:
            coef = ""
        elif a.denominator == 1:
            coef = str(a.numerator)
        else:
            coef = f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
        body = " ".join(x for x in (coef, mono) if x)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def latex_matrix(m) -> str:
    rows = [" & ".join(latex_poly(x) if isinstance(x, MPoly) else _latex_q(x) for x in row) for row in m]
    return "\\begin{pmatrix} " + " \\\\ ".join(rows) + " \\end{pmatrix}"


def _latex_q(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    s = "-" if x < 0 else ""
    return f"{s}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def render_latex(rep: dict) -> str:
    try:
        r = len(rep["exponents"])
        F = parse_mpoly(rep["prepotential"], r, "t")
        eta = [[_fr(x) for x in row] for row in rep["flat"]["eta"]]
        g2 = _parse_mat(rep["flat"]["g2"], r, "t")
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"malformed report: {exc}") from exc
    return "\n".join([
        f"F = {latex_poly(F)}",
        f"\\eta = {latex_matrix(eta)}",
        f"g_2 = {latex_matrix(g2)}",
    ]) + "\n"
