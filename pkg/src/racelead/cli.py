"""Command-line interface: ``racelead <subcommand> <target> [options]``.

Exit codes: 0 ok, 1 usage error, 2 precondition violation, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import secrets
import sys
import time
from fractions import Fraction

from . import exact, reference
from .errors import DomainError, ResourceLimitError, VerificationError
from .simulate import (
    DistributionSpec,
    EventSpec,
    estimate_probability,
    ownership_pattern_counts,
)
from .verify import SCOPES, run_checks

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3

FIELDS = ("command", "params", "result", "status", "seed", "trials", "ci_low", "ci_high", "ties", "elapsed_ms")

DEFAULT_CAPS = {"enumeration": 10, "genericity": 12, "majorization": 12, "rank_oracle": 4}

DIST_NAMES = {"uniform": "uniform", "exp": "exponential", "normal": "normal", "lognormal": "lognormal", "pow3": "powers_of_three"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _jsonable(value):
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, exact.Path):
        return value.steps
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for {args.command} {args.target}")
    return value


def _rationals(text: str) -> list[Fraction]:
    return [exact.to_fraction(t) for t in text.split(",") if t.strip()]


def _cap(args, kind: str) -> int:
    return args.max_n if args.max_n is not None else DEFAULT_CAPS[kind]


# ---------------------------------------------------------------------------
# subcommand handlers return (result, extra report fields)

FORMULAS = {
    "lead": (reference.lead_prob, ("n",)),
    "ballot-count": (reference.ballot_signed_perm_count, ("n",)),
    "tied-lead": (reference.tied_lead_prob, ("m",)),
    "srw": (reference.srw_nonneg_prob, ("n",)),
    "ballot": (reference.ballot_never_behind_prob, ("a", "b")),
    "walk-end": (reference.walk_nonneg_given_end_prob, ("n", "t")),
    "motzkin": (reference.motzkin_nonneg_prob, ("L",)),
    "majorization": (reference.composition_majorization_prob, ("n",)),
    "alternation": (reference.alternation_exponential_prob, ("n",)),
    "comparable": (reference.comparable_vectors_prob, ("n",)),
}


def do_formula(args):
    fn, names = FORMULAS[args.target]
    return fn(*(_need(args, k) for k in names)), {}


def do_enumerate(args):
    t = args.target
    if t == "ballot":
        values = _rationals(_need(args, "set"))
        cap = _cap(args, "enumeration")
        if len(values) > cap:
            raise ResourceLimitError(f"ballot enumeration capped at n={cap}")
        A = exact.GenericSet(tuple(values))
        return exact.count_ballot_signed_perms(A, max_n=cap), {}
    if t == "generic":
        return exact.is_generic(_rationals(_need(args, "set")), max_n=_cap(args, "genericity")), {}
    if t == "collisions":
        A = exact.GenericSet(tuple(_rationals(_need(args, "set"))), "collision_free")
        return list(exact.collision_deltas(A, exact.to_fraction(_need(args, "target_value")))), {}
    if t == "majorization":
        return exact.majorization_probability_exact(_need(args, "n"), max_n=_cap(args, "majorization")), {}
    if t == "dominance":
        return exact.dominance_count(_need(args, "m")), {}
    if t == "alternation":
        return exact.alternation_rank_oracle(_need(args, "n"), max_n=_cap(args, "rank_oracle")), {}
    if t == "spitzer":
        return exact.spitzer_rotation(_rationals(_need(args, "set"))), {}
    raise UsageError(f"unknown enumerate target {t}")


def do_bijection(args):
    t = args.target
    if t == "updown":
        return exact.updown_bijection_to_nonneg(exact.Path.parse(_need(args, "path"))), {}
    if t == "updown-inverse":
        return exact.updown_bijection_to_endzero(exact.Path.parse(_need(args, "path"))), {}
    if t == "motzkin":
        return exact.contract_to_motzkin(exact.Path.parse(_need(args, "path"))), {}
    if t == "encode":
        parts = [int(p) for p in _need(args, "set").split(",")]
        return exact.encode_composition(exact.Composition(tuple(parts))), {}
    if t == "decode":
        return list(exact.decode_composition(_need(args, "path")).parts), {}
    if t == "bitpair":
        pair = _need(args, "path").split(",")
        if len(pair) != 2:
            raise UsageError("--path must hold two comma-separated bit strings")
        return exact.motzkin_from_bitpair(*pair), {}
    raise UsageError(f"unknown bijection target {t}")


SIM_EVENTS = {
    "lead": "lead_all_the_way",
    "never-behind": "never_behind",
    "alternation": "alternation",
    "comparable": "comparable_vectors",
    "tied-dominance": "tied_dominance",
    "multiplicative": "multiplicative_lead",
}


def _dist(args) -> DistributionSpec:
    try:
        params = tuple(float(p) for p in args.dist_params.split(",")) if args.dist_params else ()
    except ValueError:
        raise UsageError(f"--dist-params must be comma-separated numbers, got {args.dist_params!r}")
    return DistributionSpec(DIST_NAMES[args.dist], params)


def do_simulate(args):
    dist = _dist(args)
    if args.target == "ownership":
        n = _need(args, "n")
        counts = ownership_pattern_counts(dist, n, args.trials, args.seed)
        width = 2 * n
        result = {format(i, f"0{width}b").replace("0", "X").replace("1", "Y"): int(c) for i, c in enumerate(counts)}
        return result, {"seed": args.seed, "trials": args.trials, "ci_low": None, "ci_high": None, "ties": 0}
    event = EventSpec(SIM_EVENTS[args.target])
    size = _need(args, "m") if event.kind == "tied_dominance" else _need(args, "n")
    est = estimate_probability(event, dist, size, args.trials, args.seed, confidence=args.confidence, workers=args.workers)
    extra = {"seed": est.seed, "trials": est.trials, "ci_low": est.ci_low, "ci_high": est.ci_high, "ties": est.ties}
    if est.status != "ok":
        extra["status"] = "warning"
    return est.point, extra


def do_verify(args):
    if args.budget <= 0:
        raise DomainError("--budget must be positive")
    records = run_checks(args.scope, args.budget, args.trials)
    failed = [r for r in records if r["passed"] is False]
    return records, ({"status": "error"} if failed else {})


def do_experiment(args):
    if args.target != "alternation":
        raise UsageError(f"unknown experiment {args.target}")
    n_max = _need(args, "n")
    rows = []
    for n in range(1, n_max + 1):
        row = {"n": n, "formula": fraction_str(reference.alternation_exponential_prob(n))}
        row["exact_exponential"] = fraction_str(exact.ownership_event_probability(n))
        e = estimate_probability("alternation", DistributionSpec.exponential(1), n, args.trials, args.seed)
        row["mc_exponential"] = [e.point, e.ci_low, e.ci_high]
        if n <= _cap(args, "rank_oracle"):
            row["rank_oracle"] = fraction_str(exact.alternation_rank_oracle(n, max_n=_cap(args, "rank_oracle")))
        p = estimate_probability("alternation", DistributionSpec.powers_of_three(40, 0.0), n, args.trials, args.seed)
        row["mc_pow3"] = [p.point, p.ci_low, p.ci_high]
        row["pow3_ties"] = p.ties
        rows.append(row)
    return rows, {"seed": args.seed, "trials": args.trials}


HANDLERS = {
    "formula": do_formula,
    "enumerate": do_enumerate,
    "bijection": do_bijection,
    "simulate": do_simulate,
    "verify": do_verify,
    "experiment": do_experiment,
}


# ---------------------------------------------------------------------------
# parsing and output


def _seed(text: str) -> int:
    if text == "random":
        return secrets.randbits(64)
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--L", type=int)
    common.add_argument("--set", help="comma-separated rationals, e.g. 7/2,3,1")
    common.add_argument("--target", dest="target_value", help="reduced value for collision queries")
    common.add_argument("--path", help="step string over U, D, H (or bit strings)")
    common.add_argument("--dist", choices=sorted(DIST_NAMES), default="uniform")
    common.add_argument("--dist-params", default="")
    common.add_argument("--trials", type=_positive_int, default=100_000)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--confidence", type=float, default=0.95)
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--max-n", type=int, dest="max_n")
    common.add_argument("--timing", action="store_true", help="report wall-clock elapsed_ms")

    parser = _Parser(prog="racelead", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    targets = {
        "formula": sorted(FORMULAS),
        "enumerate": ["ballot", "generic", "collisions", "majorization", "dominance", "alternation", "spitzer"],
        "bijection": ["updown", "updown-inverse", "motzkin", "encode", "decode", "bitpair"],
        "simulate": sorted(SIM_EVENTS) + ["ownership"],
        "experiment": ["alternation"],
    }
    for name, choices in targets.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("target", choices=choices)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    v.add_argument("--budget", type=float, default=60.0)
    v.set_defaults(target=None)
    # verify runs at full Monte Carlo size unless --trials is given explicitly
    v.set_defaults(trials=10**6)
    return parser


PARAM_NAMES = ("n", "m", "a", "b", "t", "L", "set", "target_value", "path", "dist", "dist_params", "max_n", "scope", "budget", "confidence")


def _params(args) -> dict:
    out = {"target": args.target}
    for name in PARAM_NAMES:
        value = getattr(args, name, None)
        if value not in (None, ""):
            out["value" if name == "target_value" else name] = value
    if args.command not in ("simulate", "experiment"):
        out.pop("dist", None)
        out.pop("confidence", None)
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report)
    if fmt == "csv":
        buf = io.StringIO()
        keys = [k for k in FIELDS if k in report] + [k for k in report if k not in FIELDS]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        writer.writerow([json.dumps(report[k]) if isinstance(report[k], (dict, list)) else report[k] for k in keys])
        return buf.getvalue().rstrip("\n")
    color = sys.stdout.isatty() and "NO_COLOR" not in os.environ
    lines = []
    for key, value in report.items():
        if key == "status" and color:
            code = {"ok": "32", "warning": "33"}.get(value, "31")
            value = f"\033[{code}m{value}\033[0m"
        elif isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def dispatch(args) -> tuple[dict, int]:
    """Run a parsed request; returns the report and the exit code."""
    start = time.perf_counter()
    report = {"command": args.command, "params": _params(args)}
    code = EXIT_OK
    try:
        result, extra = HANDLERS[args.command](args)
        report["result"] = _jsonable(result)
        report["status"] = extra.pop("status", "ok")
        report.update(extra)
        if report["status"] == "error":
            code = EXIT_VERIFY
    except UsageError as exc:
        report.update(result=None, status="error", error=str(exc))
        code = EXIT_USAGE
    except (DomainError, ResourceLimitError) as exc:
        report.update(result=None, status="error", error=str(exc))
        code = EXIT_PRECONDITION
    except VerificationError as exc:
        report.update(result=None, status="error", error=str(exc))
        code = EXIT_VERIFY
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    report["elapsed_ms"] = elapsed if args.timing else None
    return report, code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report, code = dispatch(args)
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
