"""Command-line interface.

Subcommands: ``norm`` (space norm of a function file), ``apply`` (operator
file applied to a function file), ``criterion`` (Lambda sweep), ``report``
(composite boundedness and compactness reports), ``opnorm`` (test-function
or finite-section lower bounds), ``verify`` (the full catalog suite).

Reports serialize as JSON to stdout or to ``--out PATH``; with ``--out``,
sweep commands also write a CSV of the sampled field or traces next to the
JSON and, unless ``--no-figures`` is passed, rendered PNG figures.  Usage
and precondition errors exit 2; ``verify`` exits 1 when any check fails or
the golden baseline disagrees.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .boundary import BoundaryGrid
from .carleson import (CriterionSpec, compactness_trace, composition_report,
                       criterion_sup, multiplication_report, s2p_boundedness_report)
from .errors import DiscLabError
from .operators import _symbol_degree, apply, expanded, operator_from_json, opnorm_matrix_p2, opnorm_lower_bound, default_test_family
from .series import spec_from_json
from .spaces import SPACE_TAGS, NormParams, space_norm
from .verify import compare_reports, run_verification

DEFAULT_SAMPLES = 4096
DEFAULT_DEGREE = 512
DEFAULT_LEVELS = 12
DEFAULT_SEED = 42


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _function_file(path: str):
    return spec_from_json(_load_json(path))


def _operator_file(path: str):
    return operator_from_json(_load_json(path))


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sibling(out: str, suffix: str) -> str:
    return os.path.splitext(out)[0] + suffix


def _write_samples_csv(report, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a_re", "a_im", "lambda", "refined"])
        for a, value, refined in report.samples or ():
            writer.writerow([f"{a.real:.17g}", f"{a.imag:.17g}",
                             f"{value:.17g}", int(refined)])


def _write_trace_csv(traces, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["weight", "eps", "kappa"])
        for label, report in traces:
            for level in report.levels:
                writer.writerow([label, f"{level.eps:.17g}", f"{level.kappa:.17g}"])


def _grid(args) -> BoundaryGrid:
    return BoundaryGrid(args.samples)


def _expand_file(path: str, degree: int):
    spec = _function_file(path)
    return expanded(spec, _symbol_degree(spec, degree))


# =============================================================================
# Handlers
# =============================================================================


def _cmd_norm(args) -> int:
    fn = _expand_file(args.function, args.degree)
    value = space_norm(fn, NormParams(args.space, args.p), _grid(args))
    _emit({"space": args.space, "p": args.p, "value": value}, args.out)
    return 0


def _cmd_apply(args) -> int:
    op = _operator_file(args.operator)
    fn = _expand_file(args.function, args.degree)
    result = apply(op, fn, args.degree, _grid(args))
    payload = {
        "kind": "poly",
        "coeffs": [[c.real, c.imag] for c in result.coeffs],
        "tail_bound": result.tail_bound,
    }
    _emit(payload, args.out)
    return 0


def _cmd_criterion(args) -> int:
    spec = CriterionSpec(_function_file(args.phi), _function_file(args.weight),
                         args.p, args.q)
    report = criterion_sup(spec, _grid(args), args.levels, args.degree,
                           keep_samples=bool(args.out))
    _emit(report.to_dict(), args.out)
    if args.out:
        _write_samples_csv(report, _sibling(args.out, ".csv"))
        if not args.no_figures:
            from .figures import render_field_figure, render_trace_figure
            render_field_figure(report, _sibling(args.out, ".png"))
            render_trace_figure([("weight", report)], _sibling(args.out, "-trace.png"))
    return 0


def _require(args, parser: argparse.ArgumentParser, **needed) -> None:
    missing = [flag for flag, value in needed.items() if value is None]
    if missing:
        parser.error(f"report kind {args.kind!r} requires --" + ", --".join(missing))


def _cmd_report(args, parser: argparse.ArgumentParser) -> int:
    g = _grid(args)
    if args.kind == "s2p":
        _require(args, parser, phi=args.phi, psi=args.psi)
        rep = s2p_boundedness_report(_function_file(args.phi), _function_file(args.psi),
                                     args.p, g, args.levels, args.degree)
        traces = [("order1", rep.order1), ("order2", rep.order2)]
    elif args.kind == "composition":
        _require(args, parser, phi=args.phi)
        rep = composition_report(_function_file(args.phi), args.p, g,
                                 args.levels, args.degree)
        traces = [("order1", rep.order1), ("order2", rep.order2)]
    elif args.kind == "multiplication":
        _require(args, parser, psi=args.psi)
        rep = multiplication_report(_function_file(args.psi), args.p, g,
                                    args.levels, args.degree)
        traces = [("order1", rep.order1), ("order2", rep.order2)]
    else:
        _require(args, parser, phi=args.phi, psi=args.psi)
        rep = compactness_trace(_function_file(args.phi), _function_file(args.psi),
                                args.p, g, args.levels, args.degree)
        traces = [("order0", rep.order0), ("order1", rep.order1),
                  ("order2", rep.order2)]
    _emit(rep.to_dict(), args.out)
    if args.out:
        _write_trace_csv(traces, _sibling(args.out, ".csv"))
        if not args.no_figures:
            from .figures import render_trace_figure
            render_trace_figure(traces, _sibling(args.out, ".png"))
    return 0


def _cmd_opnorm(args) -> int:
    op = _operator_file(args.operator)
    if args.method == "matrix":
        value = opnorm_matrix_p2(op, args.matrix_space, args.basis)
        payload = {"method": "matrix", "space": args.matrix_space,
                   "basis": args.basis, "value": value}
    else:
        family = default_test_family(args.in_p, min(args.degree, 384))
        value = opnorm_lower_bound(op, NormParams(args.in_space, args.in_p),
                                   NormParams(args.out_space, args.out_p),
                                   family, _grid(args), args.degree)
        payload = {"method": "testfns",
                   "in_space": args.in_space, "in_p": args.in_p,
                   "out_space": args.out_space, "out_p": args.out_p,
                   "value": value}
    _emit(payload, args.out)
    return 0


def _cmd_verify(args) -> int:
    report = run_verification(_grid(args), args.levels, args.degree, args.seed)
    payload = report.to_dict()
    problems = []
    if args.golden:
        problems = compare_reports(payload, _load_json(args.golden))
        for problem in problems:
            print(f"golden mismatch: {problem}", file=sys.stderr)
    _emit(payload, args.out)
    return 0 if report.passed and not problems else 1


# =============================================================================
# Parser
# =============================================================================


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disclab",
        description="Norms, operators, and boundedness criteria on the unit disc.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                        help="boundary grid size, a power of two (default 4096)")
    common.add_argument("--degree", type=int, default=DEFAULT_DEGREE,
                        help="working truncation degree (default 512)")
    common.add_argument("--levels", type=int, default=DEFAULT_LEVELS,
                        help="dyadic sweep depth (default 12)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="corpus seed (default 42)")
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--no-figures", action="store_true",
                        help="suppress PNG rendering next to --out")

    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", parents=[common], help="space norm of a function file")
    p_norm.add_argument("function", help="FunctionSpec JSON file")
    p_norm.add_argument("--space", choices=SPACE_TAGS, required=True)
    p_norm.add_argument("--p", type=float, default=2.0)
    p_norm.set_defaults(handler=_cmd_norm)

    p_apply = sub.add_parser("apply", parents=[common],
                             help="apply an operator file to a function file")
    p_apply.add_argument("operator", help="OperatorSpec JSON file")
    p_apply.add_argument("function", help="FunctionSpec JSON file")
    p_apply.set_defaults(handler=_cmd_apply)

    p_crit = sub.add_parser("criterion", parents=[common],
                            help="dyadic sup sweep of the criterion field")
    p_crit.add_argument("--phi", required=True, help="self-map FunctionSpec JSON file")
    p_crit.add_argument("--weight", required=True, help="weight FunctionSpec JSON file")
    p_crit.add_argument("--p", type=float, default=2.0)
    p_crit.add_argument("--q", type=float, default=None,
                        help="target exponent, defaults to p")
    p_crit.set_defaults(handler=_cmd_criterion)

    p_rep = sub.add_parser("report", parents=[common], help="composite reports")
    p_rep.add_argument("kind", choices=("s2p", "composition", "multiplication",
                                        "compactness"))
    p_rep.add_argument("--phi", help="symbol FunctionSpec JSON file")
    p_rep.add_argument("--psi", help="weight FunctionSpec JSON file")
    p_rep.add_argument("--p", type=float, default=2.0)
    p_rep.set_defaults(handler=lambda a, _p=p_rep: _cmd_report(a, _p))

    p_op = sub.add_parser("opnorm", parents=[common], help="operator norm lower bounds")
    p_op.add_argument("operator", help="OperatorSpec JSON file")
    p_op.add_argument("--method", choices=("testfns", "matrix"), required=True)
    p_op.add_argument("--in-space", choices=SPACE_TAGS, default="s2p")
    p_op.add_argument("--out-space", choices=SPACE_TAGS, default="s2p")
    p_op.add_argument("--in-p", type=float, default=2.0)
    p_op.add_argument("--out-p", type=float, default=2.0)
    p_op.add_argument("--matrix-space", choices=("h2", "s2h"), default="h2")
    p_op.add_argument("--basis", type=int, default=64)
    p_op.set_defaults(handler=_cmd_opnorm)

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run the catalog verification suite")
    p_ver.add_argument("--golden", help="baseline report JSON to compare against")
    p_ver.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DiscLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
