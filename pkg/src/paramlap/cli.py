"""``paramlap`` command-line interface.

Exit codes: 0 success, 1 an identity check failed, 2 usage or domain error,
3 sample point outside a validity region.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .derivatives import DerivTarget, Wrt, deriv_array, deriv_fd_oracle, deriv_series
from .efros import EfrosKernelSpec, efros_phi
from .errors import AccuracyError, DomainError, ParamlapError, RangeError, ValidityError
from .identities import (
    Verdict,
    catalog,
    check_identity,
    get_identity,
    preset_from_dict,
    run_all,
)
from .quadrature import QuadratureConfig, laplace_forward
from .report import TABLE_FMT, dumps, format_float, reports_to_csv, reports_to_json, reports_to_table
from .series import FunctionFamily, ParamSet, ProfileMode, eval_series, profile_array, singularity_exponent, time_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_VALIDITY = 0, 1, 2, 3
DEFAULT_TOL = 1e-10
FORMATS = ("table", "json", "csv")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_tol() -> float:
    env = os.environ.get("PARAMLAP_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise DomainError(f"PARAMLAP_TOL is not a number: {env!r}") from None


def _param_flags(p: argparse.ArgumentParser, family=True):
    if family:
        p.add_argument("family", choices=[f.value for f in FunctionFamily])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--alpha2", type=float)
    p.add_argument("--beta2", type=float)
    p.add_argument("--mode", choices=[m.value for m in ProfileMode], default=ProfileMode.BETA.value,
                   help="time subject: beta t^(β-1)f(λt^α), gamma t^(γ-1)f(λt), plain f(λt)")


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=FORMATS, default="table")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="paramlap", description="Parameter derivatives and Laplace transforms of "
                                                "Mittag-Leffler type functions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a series at z, or its time profile at t")
    _param_flags(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--z", type=float)
    g.add_argument("--t", type=float)
    _common_flags(p)

    p = sub.add_parser("deriv", help="parameter derivative of a time profile")
    _param_flags(p)
    p.add_argument("--wrt", required=True, choices=[w.value for w in Wrt])
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--oracle", action="store_true", help="also print the finite-difference value")
    _common_flags(p)

    p = sub.add_parser("laplace", help="numerical Laplace transform of a profile or its derivative")
    p.add_argument("subject", choices=("profile", "deriv"))
    _param_flags(p)
    p.add_argument("--wrt", choices=[w.value for w in Wrt])
    p.add_argument("--s", type=float, required=True)
    _common_flags(p)

    p = sub.add_parser("check", help="check one identity, or all of them")
    p.add_argument("identity", help='identity id or "all"')
    p.add_argument("--report", help="write the report to this file (.json or .csv by extension)")
    p.add_argument("--preset-file", help="JSON array of parameter presets replacing the defaults")
    p.add_argument("--printed", action="store_true", help="check the printed variant of flagged formulas")
    p.add_argument("--jobs", type=int, default=1)
    _common_flags(p)

    p = sub.add_parser("kernel", help="pointwise Efros kernel Φ_{a,b}(t, t')")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tprime", type=float, required=True)
    _common_flags(p)

    sub.add_parser("list", help="list catalog identities")
    return ap


def _params(args) -> ParamSet:
    return ParamSet(alpha=args.alpha, beta=args.beta, gamma=args.gamma, lam=args.lam, alpha2=args.alpha2,
                    beta2=args.beta2, mode=args.mode)


def _cfg(args) -> QuadratureConfig:
    tol = args.tol if args.tol is not None else _default_tol()
    return QuadratureConfig(rel_tol=tol)


SERIES_TOL = 1e-15


def _series_tol(args) -> float:
    # series default is tighter than the quadrature one: truncation is cheap
    tol = args.tol if args.tol is not None else SERIES_TOL
    return min(max(tol, 1e-15), 1e-2)


def _emit(args, record: dict):
    if args.format == "json":
        sys.stdout.write(dumps(record))
    elif args.format == "csv":
        keys = list(record)
        sys.stdout.write(",".join(keys) + "\n")
        sys.stdout.write(",".join(_csv_cell(record[k]) for k in keys) + "\n")
    else:
        width = max(len(k) for k in record)
        for k, v in record.items():
            sys.stdout.write(f"{k.ljust(width)}  {_table_cell(v)}\n")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    return format_float(v) if isinstance(v, float) else str(v)


def _table_cell(v) -> str:
    if v is None:
        return "-"
    return format_float(v, TABLE_FMT) if isinstance(v, float) else str(v)


def cmd_eval(args) -> int:
    fam = FunctionFamily(args.family)
    p = _params(args)
    tol = _series_tol(args)
    if args.z is not None:
        sv = eval_series(fam, p, args.z, tol)
        _emit(args, {"value": sv.value, "terms_used": sv.terms_used, "tail_bound": sv.tail_bound})
    else:
        _emit(args, {"value": time_profile(fam, p, args.t, tol)})
    return EXIT_OK


def cmd_deriv(args) -> int:
    target = DerivTarget(FunctionFamily(args.family), Wrt(args.wrt))
    p = _params(args)
    sv = deriv_series(target, p, args.t, _series_tol(args))
    record = {"value": sv.value, "terms_used": sv.terms_used, "tail_bound": sv.tail_bound}
    if args.oracle:
        fd = deriv_fd_oracle(target, p, args.t)
        record["fd_value"] = fd
        record["rel_diff"] = abs(fd - sv.value) / abs(sv.value) if sv.value != 0 else abs(fd)
    _emit(args, record)
    return EXIT_OK


def _transform_gate(fam, wrt, p: ParamSet, s: float):
    """Apply the validity predicates of the matching catalog transform."""
    if not s > 0:
        raise DomainError("s must be positive")
    for ident in catalog():
        if ident.domain == "s" and ident.family is fam and ident.wrt is wrt and ident.mode is p.mode:
            bad = ident.violated(p, s)
            if bad is not None and bad != "γ = 2":
                raise ValidityError(f"outside validity region {bad}", predicate=bad)
            if bad is None:
                return


def cmd_laplace(args) -> int:
    fam = FunctionFamily(args.family)
    p = _params(args)
    p.validate(fam)
    if args.subject == "deriv":
        if args.wrt is None:
            raise DomainError("laplace deriv requires --wrt")
        target = DerivTarget(fam, Wrt(args.wrt))
        wrt = target.wrt
        fn = lambda t: deriv_array(target, p, t)  # noqa: E731
    else:
        wrt = None
        fn = lambda t: profile_array(fam, p, t)  # noqa: E731
    _transform_gate(fam, wrt, p, args.s)
    res = laplace_forward(fn, args.s, _cfg(args), singularity_exp=singularity_exponent(fam, p))
    _emit(args, {"value": res.value, "abs_error_est": res.abs_error_est, "evaluations": res.evaluations})
    return EXIT_OK


def _load_presets(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read preset file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"preset file is not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise DomainError("preset file must hold a JSON array")
    return [preset_from_dict(d) for d in data]


def cmd_check(args) -> int:
    cfg = _cfg(args)
    ids = None
    if args.identity != "all":
        try:
            get_identity(args.identity)
        except DomainError:
            raise DomainError(f"unknown identity {args.identity!r}") from None
        ids = [args.identity]
    if args.printed:
        chosen = [i for i in catalog() if (ids is None or i.id in ids) and i.has_printed_variant]
        if not chosen:
            raise DomainError(f"{args.identity} has no printed variant")
        reports = [check_identity(i.id, p, cfg=cfg, printed=True) for i in chosen for p in i.presets]
    else:
        presets = _load_presets(args.preset_file) if args.preset_file else None
        reports = run_all(presets, cfg=cfg, ids=ids, jobs=max(1, args.jobs))
    render = {"json": reports_to_json, "csv": reports_to_csv, "table": reports_to_table}
    sys.stdout.write(render[args.format](reports))
    if args.report:
        kind = "csv" if args.report.lower().endswith(".csv") else "json" if args.report.lower().endswith(
            ".json") else args.format
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            fh.write(render[kind](reports))
    if any(r.degraded for r in reports):
        print("warning: some oracle values did not reach the quadrature tolerance", file=sys.stderr)
    return EXIT_FAIL if any(r.verdict is Verdict.FAIL for r in reports) else EXIT_OK


def cmd_kernel(args) -> int:
    spec = EfrosKernelSpec(args.a, args.b)
    _emit(args, {"value": efros_phi(spec, args.t, args.tprime, _cfg(args))})
    return EXIT_OK


def cmd_list(args) -> int:
    for ident in catalog():
        preds = "; ".join(p.name for p in ident.validity)
        flag = f"  [{ident.erratum}]" if ident.erratum else ""
        sys.stdout.write(f"{ident.id:14s} {ident.tol_class.value:6s} {ident.lhs.value:24s} {preds}{flag}\n")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "deriv": cmd_deriv,
    "laplace": cmd_laplace,
    "check": cmd_check,
    "kernel": cmd_kernel,
    "list": cmd_list,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "tol", None) is not None:
            QuadratureConfig(rel_tol=args.tol)
        return COMMANDS[args.command](args)
    except ValidityError as exc:
        print(f"paramlap: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except (DomainError, RangeError) as exc:
        print(f"paramlap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        best = exc.best_estimate
        extra = "" if best is None else f" (best estimate {format_float(float(np.ravel(best)[0]))})"
        print(f"paramlap: {exc}{extra}", file=sys.stderr)
        return EXIT_USAGE
    except ParamlapError as exc:  # pragma: no cover
        print(f"paramlap: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
