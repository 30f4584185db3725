"""Command-line interface: `distext <command> [options]`.

Exit codes: 0 success, 1 invalid input or unmet precondition, 2 anomaly
(a construction or bound that should always succeed did not).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Callable

from . import conditions
from .circle import PointSet
from .cycle import (
    CycleColoring,
    distinguishing_number,
    distinguishing_witness,
    extension_number,
    extension_property,
    forbidden_extension_count,
    forbidden_extension_sweep,
    parse_precoloring,
    precoloring_str,
    predicted_extension_number,
    replacement_number,
)
from .errors import ConstructionAnomaly, PreconditionError
from .extensions import FAMILIES, build, circle_replacement, family_set, replacement_plan
from .report import FORMATS, Report, RunConfig

EXIT_OK, EXIT_INVALID, EXIT_ANOMALY = 0, 1, 2
WORKERS_ENV = "DISTEXT_WORKERS"
DEFAULT_MAX_N = 24


class Outcome:
    def __init__(self, results, rows=None, anomalies=None):
        self.results = results
        self.rows = rows
        self.anomalies = anomalies or []


def parse_residues(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise ValueError(f"malformed residue {tok!r} in {text!r}") from None
    return out


# -- commands ---------------------------------------------------------------------------

def cmd_distnum(args, cfg) -> Outcome:
    rows = []
    for n in args.n:
        w = distinguishing_witness(n)
        rows.append({"n": n, "D": w.k, "witness": str(w.witness)})
    return Outcome(rows[0] if len(rows) == 1 else {"table": rows}, rows)


def cmd_ext(args, cfg) -> Outcome:
    for n in args.n:
        if n < 6:
            raise PreconditionError(f"n = {n} refused: extension numbers are computed for n >= 6")
        if n > args.max_n:
            raise PreconditionError(f"n = {n} exceeds the budget --max-n {args.max_n}")
    entries, rows, anomalies = [], [], []
    for n in args.n:
        res = extension_number(n, workers=cfg.workers)
        predicted = predicted_extension_number(n)
        entry = res.to_dict()
        entry["predicted"] = predicted
        entry["match"] = res.ext == predicted
        entries.append(entry)
        rows.append({"n": n, "ext": res.ext, "predicted": predicted, "match": res.ext == predicted})
        if res.ext != predicted:
            anomalies.append({"kind": "extension-number-mismatch", "n": n, "computed": res.ext, "predicted": predicted})
    results = entries[0] if len(entries) == 1 else {"table": rows, "entries": entries}
    return Outcome(results, rows, anomalies)


def cmd_pw(args, cfg) -> Outcome:
    W = parse_residues(args.set)
    rep = extension_property(W, args.n, args.k, engine=args.engine)
    k = args.k if args.k is not None else distinguishing_number(args.n)
    return Outcome({"n": args.n, "W": sorted(W), "k": k, **rep.to_dict()})


def cmd_status(args, cfg) -> Outcome:
    W = PointSet.parse(args.points)
    return Outcome({"points": str(W), **conditions.circle_extension_status(W).to_dict()})


def cmd_conditions(args, cfg) -> Outcome:
    return Outcome(conditions.condition_report(PointSet.parse(args.points)))


def cmd_replace(args, cfg) -> Outcome:
    chosen = [x is not None for x in (args.coloring, args.blue, args.n)]
    if sum(chosen) != 1:
        raise ValueError("give exactly one of --coloring, --blue or --n")
    if args.coloring is not None:
        c = CycleColoring.parse(args.coloring)
        plan = replacement_plan(c)
        res = {"coloring": str(c), **plan.to_dict(), "result": str(c.flipped(plan.flips))}
        return Outcome(res, anomalies=plan.anomalies)
    if args.blue is not None:
        blue = PointSet.parse(args.blue)
        toggles = circle_replacement(blue)
        return Outcome({"blue": str(blue), "toggles": [str(t) for t in toggles]})
    return Outcome({"n": args.n, "k": args.k, "replacement_number": replacement_number(args.n, args.k)})


def cmd_forbidden(args, cfg) -> Outcome:
    if args.sweep:
        rows, anomalies = [], []
        for n in args.n:
            s = forbidden_extension_sweep(n, bound=args.bound)
            rows.append({"n": n, "instances": s.instances, "max_count": s.max_count, "violations": len(s.violations)})
            anomalies += [dict(v, kind="forbidden-bound-exceeded", bound=args.bound) for v in s.violations]
        return Outcome({"bound": args.bound, "table": rows}, rows, anomalies)
    if len(args.n) != 1 or args.set is None or args.w0 is None or args.precoloring is None:
        raise ValueError("a single count needs one --n, --set, --w0 and --precoloring (or use --sweep)")
    n = args.n[0]
    pre = parse_precoloring(args.precoloring)
    if len(pre) != n:
        raise ValueError(f"precoloring {args.precoloring!r} has length {len(pre)}, expected {n}")
    W = parse_residues(args.set)
    count = forbidden_extension_count(W, args.w0, pre, n)
    anomalies = []
    if count > args.bound:
        anomalies.append({"kind": "forbidden-bound-exceeded", "n": n, "W": sorted(W), "w0": args.w0,
                          "precoloring": args.precoloring, "count": count, "bound": args.bound})
    return Outcome({"n": n, "W": sorted(W), "w0": args.w0, "count": count}, anomalies=anomalies)


def cmd_build(args, cfg) -> Outcome:
    n = args.n
    if args.family in ("antipodal", "quarter") and args.a is None:
        raise PreconditionError(f"the {args.family} family needs --a")
    W = family_set(args.family, n, args.a)
    if args.precoloring is not None:
        pre = parse_precoloring(args.precoloring)
    else:
        rng = random.Random(cfg.seed)
        pre = tuple(None if v in W else rng.randrange(2) for v in range(n))
    try:
        triple = build(args.family, n, pre, args.a)
    except ConstructionAnomaly as exc:
        return Outcome({"family": args.family, "n": n, "precoloring": precoloring_str(pre), "chosen": None},
                       anomalies=[exc.record])
    return Outcome({"n": n, "precoloring": precoloring_str(pre), **triple.to_dict()})


def cmd_free(args, cfg) -> Outcome:
    from fractions import Fraction

    from .free_rotations import build_bad_forest, generator_matrices, parse_point, verify_freeness

    try:
        cos = Fraction(args.cos)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed cosine {args.cos!r}") from None
    if args.free_command == "verify":
        cert = verify_freeness(generator_matrices(cos), args.max_len, workers=cfg.workers)
        anomalies = [] if cert.free else [{"kind": "freeness-violated", **cert.to_dict()}]
        return Outcome({"cos": str(cos), **cert.to_dict()}, anomalies=anomalies)
    points = [parse_point(p) for p in args.w]
    forest = build_bad_forest(points, args.depth, cos)
    d = forest.to_dict()
    anomalies = [dict(e, kind="forest-invariance-violated") for e in forest.extensions if e["violations"]]
    rows = forest.extensions
    return Outcome(d, rows, anomalies)


COMMANDS: dict[str, Callable] = {
    "distnum": cmd_distnum,
    "ext": cmd_ext,
    "pw": cmd_pw,
    "status": cmd_status,
    "conditions": cmd_conditions,
    "replace": cmd_replace,
    "forbidden": cmd_forbidden,
    "build": cmd_build,
    "free": cmd_free,
}


# -- parsing ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run options")
    g.add_argument("--workers", type=int, default=None, help=f"worker processes (env {WORKERS_ENV})")
    g.add_argument("--format", choices=FORMATS, default=None)
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--config", default=None, help="JSON file with default run options")
    g.add_argument("--timing", action="store_true", default=None, help="record wall time in the report")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="distext", description="Distinguishing colorings and precoloring extension.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distnum", parents=[common], help="distinguishing number of C_n")
    p.add_argument("--n", type=int, nargs="+", required=True)

    p = sub.add_parser("ext", parents=[common], help="extension number of C_n, with census")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("pw", parents=[common], help="decide the extension property for W in C_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", required=True, help="comma-separated residues")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--engine", choices=("auto", "packed", "general"), default="auto")

    for name, help_ in (("status", "verdict for a circle point set"), ("conditions", "all predicates on a circle point set")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--points", required=True, help="comma-separated fractions of a turn")

    p = sub.add_parser("replace", parents=[common], help="recolor to a distinguishing coloring")
    p.add_argument("--coloring", help="0/1 string, vertex 0 first")
    p.add_argument("--blue", help="finite blue set on the circle, rest red")
    p.add_argument("--n", type=int, help="compute the replacement number of C_n")
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("forbidden", parents=[common], help="count forbidden extensions")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--set")
    p.add_argument("--w0", type=int)
    p.add_argument("--precoloring", help="0/1 string with '_' on W")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--bound", type=int, default=6)

    p = sub.add_parser("build", parents=[common], help="build candidate extensions for one family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--precoloring", help="0/1 string with '_' on W; random (seeded) if omitted")

    p = sub.add_parser("free", help="free rotation groups")
    fsub = p.add_subparsers(dest="free_command", required=True)
    v = fsub.add_parser("verify", parents=[common])
    v.add_argument("--cos", default="1/3")
    v.add_argument("--max-len", type=int, default=12)
    f = fsub.add_parser("forest", parents=[common])
    f.add_argument("--w", action="append", required=True, help="root point '(x,y,z)'; repeat for more")
    f.add_argument("--depth", type=int, default=4)
    f.add_argument("--cos", default="1/3")
    return parser


RUN_KEYS = ("workers", "format", "out", "seed", "timing")
DEFAULTS = {"workers": 1, "format": "json", "out": None, "seed": 0, "timing": False}


def resolve_config(args) -> RunConfig:
    """Flags win over the environment, which wins over the config file."""
    merged = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read config {args.config!r}: {exc}") from None
        unknown = set(data) - set(RUN_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(data)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            merged["workers"] = int(env)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV}={env!r} is not an integer") from None
    for key in RUN_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    skip = set(RUN_KEYS) | {"config", "command"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    command = args.command if args.command != "free" else f"free {args.free_command}"
    return RunConfig(command, params, **merged)


def run(argv: list[str] | None = None) -> tuple[int, Report | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        start = time.perf_counter()
        outcome = COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - start
    except (PreconditionError, ValueError) as exc:
        print(f"distext: error: {exc}", file=sys.stderr)
        return EXIT_INVALID, None
    report = Report(
        cfg.echo(),
        outcome.results,
        outcome.anomalies,
        {"seconds": round(elapsed, 3)} if cfg.timing else None,
        rows=outcome.rows,
    )
    text = report.render(cfg.format)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.anomalies:
        print(f"distext: {len(report.anomalies)} anomaly record(s)", file=sys.stderr)
        return EXIT_ANOMALY, report
    return EXIT_OK, report


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
