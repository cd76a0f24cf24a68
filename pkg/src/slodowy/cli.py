"""Command line entry point.

Exit codes: 0 all invariants hold, 1 an invariant failed (names on stderr),
2 usage error or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import PipelineError, UsageError
from .liealg import validate_type
from .pipeline import run
from .report import ReportError, build_report, render_latex, verify_report

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slodowy", description="Polynomial Frobenius manifolds from Drinfeld-Sokolov reduction.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="run the full pipeline for one simple Lie algebra")
    c.add_argument("type", help="Cartan type: A, B, C, D or G")
    c.add_argument("rank", type=int)
    c.add_argument("--out", help="write the JSON report here instead of stdout")
    c.add_argument("--latex", action="store_true", help="print the LaTeX summary instead of JSON")
    c.add_argument("--backend", choices=["chevalley", "matrix"], default="chevalley")
    c.add_argument("--relabel-unity-first", action="store_true",
                   help="reverse flat coordinates so the unity direction is t1")
    c.add_argument("--jobs", type=int, default=1, help="worker processes for bracket reduction")
    c.add_argument("--gauge-trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")

    v = sub.add_parser("verify", help="re-check every invariant recorded in a report")
    v.add_argument("file")
    v.add_argument("--skip-gauge", action="store_true", help="skip the checks that rebuild the algebra")

    l_ = sub.add_parser("latex", help="render a report as LaTeX")
    l_.add_argument("file")
    return p


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            rep = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(rep, dict):
        raise UsageError(f"{path} does not contain a report object")
    return rep


def _report_failures(names: list[str]) -> int:
    if names:
        for name in names:
            print(f"invariant failed: {name}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def _compute(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    if args.gauge_trials < 1:
        raise UsageError("--gauge-trials must be positive")
    validate_type(args.type, args.rank)
    res = run(args.type, args.rank, backend=args.backend, jobs=args.jobs,
              gauge_trials=args.gauge_trials, seed=args.seed)
    rep = build_report(res, args.relabel_unity_first, args.timings)
    text = render_latex(rep) if args.latex else _dump(rep)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(_dump(rep))
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
        if args.latex:
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return _report_failures(res.failed())


def _verify(args) -> int:
    rep = _load(args.file)
    try:
        result = verify_report(rep, gauge=not args.skip_gauge)
    except ReportError as exc:
        raise UsageError(str(exc)) from exc
    for name, ok in sorted(result.items()):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return _report_failures([k for k, ok in sorted(result.items()) if not ok])


def _latex(args) -> int:
    try:
        sys.stdout.write(render_latex(_load(args.file)))
    except ReportError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                            format="%(levelname)s %(name)s: %(message)s")
        return {"compute": _compute, "verify": _verify, "latex": _latex}[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineError as exc:
        print(f"pipeline failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
