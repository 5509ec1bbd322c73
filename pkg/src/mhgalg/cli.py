"""Command-line front end.

Exit status: 0 success/pass, 1 property violated, 2 invalid input,
3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Callable

from . import antipodal as anti
from .algebra import verify_hilbert, verify_polynomial_rank
from .enumeration import (
    Budget,
    enumerate_age,
    indecomposable_census,
    oracle_enumerate,
    profile,
)
from .errors import EmptyRange, InvalidInput, NotInClass, ResourceLimit, TriangleViolation
from .metric import space_from_json
from .params import ParameterSequence, classify_admissible, ext_nat, forbidden_triangles, params_from_json
from .report import FAIL, PASS, Report
from .sumop import decompose, magic_range, sum_m, verify_closure, verify_freeness

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    params: ParameterSequence | None
    m: int | None
    max_size: int
    format: str
    budget: Budget
    jobs: int
    args: argparse.Namespace


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--params", help="parameter file (JSON)")
    for name in ("delta", "k1", "k2", "c0", "c1"):
        c.add_argument(f"--{name}", help="inline parameter; 'inf' allowed except for delta")
    c.add_argument("--henson", help="JSON file with a list of space objects")
    c.add_argument("--m", type=int)
    c.add_argument("--max-size", type=int, default=4)
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--budget-types", type=int, default=10**6)
    c.add_argument("--budget-seconds", type=float, default=None)
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="mhgalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "triangles", "magic", "enumerate", "profile", "census"):
        sub.add_parser(name, parents=[common])
    s = sub.add_parser("sum", parents=[common])
    s.add_argument("a", help="space file")
    s.add_argument("b", help="space file")
    s = sub.add_parser("decompose", parents=[common])
    s.add_argument("a", help="space file")
    v = sub.add_parser("verify")
    vs = v.add_subparsers(dest="check", required=True)
    for name in ("closure", "freeness", "hilbert", "polynomial", "oracle"):
        vs.add_parser(name, parents=[common])
    a = sub.add_parser("antipodal")
    as_ = a.add_subparsers(dest="check", required=True)
    for name in ("profile", "verify"):
        as_.add_parser(name, parents=[common])
    return parser


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None


def load_params(args) -> ParameterSequence | None:
    inline = [getattr(args, k) for k in ("delta", "k1", "k2", "c0", "c1")]
    if args.params:
        obj = _load_json(args.params)
    elif all(x is not None for x in inline):
        obj = dict(zip(("delta", "k1", "k2", "c0", "c1"), inline))
        if str(obj["delta"]).lower() in ("inf", "infinity"):
            raise InvalidInput("delta must be finite")
        obj["delta"] = int(ext_nat(obj["delta"]))
    elif any(x is not None for x in inline):
        raise InvalidInput("inline parameters need all of --delta --k1 --k2 --c0 --c1")
    else:
        return None
    if args.henson:
        obj["henson"] = _load_json(args.henson)
    return params_from_json(obj)


def _need_params(cfg: RunConfig) -> ParameterSequence:
    if cfg.params is None:
        raise InvalidInput("parameters required: --params FILE or inline --delta/--k1/--k2/--c0/--c1")
    return cfg.params


def _resolve_m(cfg: RunConfig, *, strict: bool = True) -> int:
    p = _need_params(cfg)
    try:
        rng = magic_range(p)
    except EmptyRange as exc:
        if cfg.m is not None and not strict:
            return cfg.m
        raise InvalidInput(str(exc)) from None
    if cfg.m is None:
        return rng.default
    if strict and cfg.m not in rng:
        raise InvalidInput(f"M={cfg.m} is outside the magic range {rng.valid_set}")
    return cfg.m


def _status(report: Report) -> int:
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_validate(cfg):
    verdict = classify_admissible(_need_params(cfg))
    return (EXIT_OK if verdict.admissible else EXIT_FAIL), verdict.to_json()


def cmd_triangles(cfg):
    tris = forbidden_triangles(_need_params(cfg))
    return EXIT_OK, {"forbidden": [list(t.sides) for t in tris]}


def cmd_magic(cfg):
    try:
        return EXIT_OK, magic_range(_need_params(cfg)).to_json()
    except EmptyRange as exc:
        return EXIT_FAIL, {"empty": True, "reason": exc.reason}


def cmd_enumerate(cfg):
    p = _need_params(cfg)
    rows = []
    for n in range(cfg.max_size + 1):
        for A in enumerate_age(p, n, budget=cfg.budget, jobs=cfg.jobs):
            rows.append({"code": list(A.code), "n": A.n, "upper": list(A.upper)})
    return EXIT_OK, {"_jsonl": rows}


def cmd_profile(cfg):
    prof = profile(_need_params(cfg), cfg.max_size, budget=cfg.budget, jobs=cfg.jobs)
    return EXIT_OK, {"profile": list(prof)}


def cmd_census(cfg):
    M = _resolve_m(cfg)
    c = indecomposable_census(_need_params(cfg), M, cfg.max_size, budget=cfg.budget)
    return EXIT_OK, {"m": M, "census": list(c)}


def cmd_sum(cfg):
    if cfg.m is None:
        raise InvalidInput("sum needs --m")
    A = space_from_json(_load_json(cfg.args.a))
    B = space_from_json(_load_json(cfg.args.b))
    try:
        S = sum_m(A, B, cfg.m)
    except TriangleViolation as exc:
        return EXIT_FAIL, {"error": "triangle violation", "witness": list(exc.witness), "sides": list(exc.sides)}
    return EXIT_OK, S.to_json()


def cmd_decompose(cfg):
    if cfg.m is None:
        raise InvalidInput("decompose needs --m")
    A = space_from_json(_load_json(cfg.args.a))
    return EXIT_OK, decompose(A, cfg.m).to_json()


def cmd_verify(cfg):
    check = cfg.args.check
    p = _need_params(cfg)
    if check == "oracle":
        rows = []
        ok = True
        for n in range(cfg.max_size + 1):
            fast = len(enumerate_age(p, n, budget=cfg.budget, jobs=cfg.jobs))
            slow = oracle_enumerate(p, n, bound=max(cfg.max_size, 4))
            rows.append({"n": n, "enumerate": fast, "oracle": slow})
            ok &= fast == slow
        first_bad = next((r["n"] for r in rows if r["enumerate"] != r["oracle"]), None)
        report = Report("oracle", PASS if ok else FAIL, degree=cfg.max_size, witness=first_bad,
                        details={"counts": rows})
    elif check == "closure":
        M = _resolve_m(cfg, strict=False)
        report = verify_closure(p, M, cfg.max_size, budget=cfg.budget)
        try:
            report.details["m_in_magic_range"] = M in magic_range(p)
        except EmptyRange:
            report.details["m_in_magic_range"] = False
    elif check == "freeness":
        report = verify_freeness(p, _resolve_m(cfg), cfg.max_size, budget=cfg.budget)
    elif check == "hilbert":
        report = verify_hilbert(p, _resolve_m(cfg), cfg.max_size, budget=cfg.budget)
    else:
        report = verify_polynomial_rank(p, _resolve_m(cfg), cfg.max_size, budget=cfg.budget)
    return _status(report), report.to_json()


def cmd_antipodal(cfg):
    n_max = cfg.max_size
    if cfg.args.check == "profile":
        return EXIT_OK, {"profile": list(anti.antipodal_profile(n_max))}
    report = anti.verify_antipodal(n_max, budget=cfg.budget)
    return _status(report), report.to_json()


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "triangles": cmd_triangles,
    "magic": cmd_magic,
    "enumerate": cmd_enumerate,
    "profile": cmd_profile,
    "census": cmd_census,
    "sum": cmd_sum,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "antipodal": cmd_antipodal,
}


def _flatten(value):
    if isinstance(value, (list, tuple)):
        return " ".join(str(_flatten(v)) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return value


def render(payload: dict, fmt: str) -> str:
    rows = payload.get("_jsonl")
    if fmt == "json":
        if rows is not None:
            return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
        return json.dumps(payload, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows is not None:
        w.writerow(["n", "code", "upper"])
        for r in rows:
            w.writerow([r["n"], _flatten(r["code"]), _flatten(r["upper"])])
    elif "profile" in payload and len(payload) == 1:
        w.writerow(["n", "count"])
        for n, c in enumerate(payload["profile"]):
            w.writerow([n, c])
    else:
        keys = sorted(payload)
        w.writerow(keys)
        w.writerow([_flatten(payload[k]) for k in keys])
    return buf.getvalue()


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.max_size < 0:
        raise InvalidInput("--max-size must be nonnegative")
    if args.jobs < 1:
        raise InvalidInput("--jobs must be at least 1")
    return RunConfig(
        command=args.command,
        params=load_params(args),
        m=args.m,
        max_size=args.max_size,
        format=args.format,
        budget=Budget(args.budget_types, args.budget_seconds),
        jobs=args.jobs,
        args=args,
    )


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    try:
        code, payload = COMMANDS[cfg.command](cfg)
    except ResourceLimit as exc:
        code, payload = EXIT_RESOURCE, {"error": "resource limit", "detail": str(exc)}
    except (InvalidInput, NotInClass) as exc:
        code, payload = EXIT_INPUT, {"error": "invalid input", "detail": str(exc)}
    return code, render(payload, cfg.format)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except InvalidInput as exc:
        sys.stdout.write(json.dumps({"error": "invalid input", "detail": str(exc)}, sort_keys=True) + "\n")
        return EXIT_INPUT
    code, out = dispatch(cfg)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
