"""Command-line front end.

Exit codes: 0 success, 2 bad parameters or malformed input, 3 a verification
check failed, 4 an exact computation exceeded the enumeration limit.
stdout carries JSON/CSV only; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .conv_core import (
    ENUMERATION_LIMIT,
    InfeasibleError,
    PreconditionError,
    distance_profile,
    free_distance_upper,
    is_mdp,
)
from .construction import (
    ConstructionError,
    ConvCode,
    VerificationError,
    construct_code,
    default_q,
    verify_all,
    verify_construction,
    verify_dual_mdp,
)
from .erasure import census, census_csv, simulate
from .gf_tower import FieldError, make_extension

EXIT_OK, EXIT_PARAM, EXIT_VERIFY, EXIT_INFEASIBLE = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARAM):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> ConvCode:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return ConvCode.from_json(data)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except (ValueError, FieldError) as exc:
        raise CliError(f"malformed code file {path}: {exc}")


def _echo_config(args: argparse.Namespace, **resolved) -> None:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg.update(resolved)
    print("config: " + json.dumps(cfg, sort_keys=True), file=sys.stderr)


# -- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    q = args.q if args.q is not None else default_q(args.n)
    _echo_config(args, q=q, t=2 * args.k)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            code = construct_code(args.n, args.k, q, lambda_seed=args.lambda_seed)
        except VerificationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VERIFY
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(_dump(code.to_json()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    _echo_config(args)
    code = _load(args.file)
    if args.mode == "mdp":
        try:
            res = is_mdp(code)
        except PreconditionError as exc:
            _emit(_dump({"schema": 1, "is_mdp": None, "precondition_failed": str(exc)}))
            return EXIT_VERIFY
        report = {"schema": 1, **res.to_dict()}
        ok = res.is_mdp
    elif args.mode == "dual":
        report = {"schema": 1, **verify_dual_mdp(code, rule=args.rule)}
        ok = report["dual_mdp"]
    elif args.mode == "construction":
        report = {"schema": 1, **verify_construction(code)}
        ok = report["ok"]
    else:
        try:
            report = verify_all(code)
        except PreconditionError as exc:
            _emit(_dump({"schema": 1, "ok": False, "precondition_failed": str(exc)}))
            return EXIT_VERIFY
        ok = report["ok"]
        if code.verified:
            report["matches_embedded"] = report == {
                k: v for k, v in code.verified.items()
            }
    _emit(_dump(report))
    return EXIT_OK if ok else EXIT_VERIFY


def _auto_max_deg(code: ConvCode) -> int | None:
    best = None
    for d in range(4):
        if code.field.order ** (code.k * (d + 1)) <= ENUMERATION_LIMIT:
            best = d
    return best


def cmd_profile(args) -> int:
    code = _load(args.file)
    max_deg = args.max_deg if args.max_deg is not None else _auto_max_deg(code)
    _echo_config(args, resolved_max_deg=max_deg)
    try:
        prof = distance_profile(code.generator, args.jmax, engine=args.engine)
        free = free_distance_upper(code.generator, max_deg) if max_deg is not None else None
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PreconditionError as exc:
        raise CliError(str(exc))
    text = prof.to_csv()
    if free is None:
        text += f"# free_distance_upper=not_checked,singleton_bound={prof.free_bound}\n"
    else:
        text += (
            f"# free_distance_upper={free.weight},max_deg={free.max_deg},"
            f"converged={'yes' if free.converged else 'no'},singleton_bound={prof.free_bound}\n"
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    _echo_config(args)
    code = _load(args.file)
    if args.exhaustive:
        try:
            rows = census(code, args.j)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INFEASIBLE)
        if args.csv:
            _emit(census_csv(rows), args.csv)
        n_ok = sum(ok for _, ok in rows)
        _emit(_dump({"schema": 1, "j": args.j, "patterns": len(rows), "recoverable": n_ok}))
        return EXIT_OK
    if args.p is None or args.trials is None or args.seed is None:
        raise CliError("--p, --trials and --seed are required unless --exhaustive")
    try:
        rep = simulate(code, args.j, args.p, args.trials, args.seed)
    except ValueError as exc:
        raise CliError(str(exc))
    print(f"wall_clock: {rep.wall_clock:.3f}s", file=sys.stderr)
    _emit(_dump(rep.to_dict()))
    return EXIT_OK


def cmd_field_info(args) -> int:
    _echo_config(args)
    try:
        F = make_extension(args.q, args.t)
    except FieldError as exc:
        raise CliError(str(exc))
    info = {"schema": 1, **F.descriptor(), "size": F.order,
            "conjugacy_classes": F.q, "class_size": (F.order - 1) // (F.q - 1),
            "backend": F.kernel.backend}
    _emit(_dump(info))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _positive(v: str) -> int:
    iv = int(v)
    if iv < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return iv


def _nonneg(v: str) -> int:
    iv = int(v)
    if iv < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return iv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewmdp", description="Skew-polynomial unit-memory MDP convolutional codes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and verify a code, write its JSON")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--q", type=_positive, help="prime >= max(3, n); default smallest such")
    p.add_argument("--lambda-seed", type=int, dest="lambda_seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-run verification on a code file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["mdp", "dual", "construction", "all"], default="all")
    p.add_argument("--rule", choices=["structural", "literal"], default="structural",
                   help="parity-kind index filter for --mode dual")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="column-distance profile as CSV")
    p.add_argument("file")
    p.add_argument("--jmax", type=_nonneg, default=1)
    p.add_argument("--max-deg", type=_nonneg, dest="max_deg")
    p.add_argument("--engine", choices=["auto", "message", "support"], default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("simulate", help="windowed erasure-recovery simulation")
    p.add_argument("file")
    p.add_argument("--j", type=_nonneg, default=1)
    p.add_argument("--p", type=float)
    p.add_argument("--trials", type=_nonneg)
    p.add_argument("--seed", type=int)
    p.add_argument("--exhaustive", action="store_true",
                   help="census of all erasure patterns instead of sampling")
    p.add_argument("--csv", help="per-pattern CSV path (exhaustive mode)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("field-info", help="describe the canonical F_{q^t}")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.set_defaults(func=cmd_field_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ConstructionError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
