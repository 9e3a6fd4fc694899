"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .algebroid import check_axioms
from .complexes import complexes_report
from .config import BUNDLED, ConfigError, load_config
from .groupoid import groupoid_report, tangent_picture_report
from .hh import hh_report
from .report import Report

OUT_ENV = "LAJET_OUT"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEMO_FORMULAS = (
    "1_1(a)        = a (x) 1",
    "1_2(a)        = 1 (x) a",
    "Delta(a (x) b) = (a (x) 1) (x) (1 (x) b)",
    "eps(a (x) b)   = ab",
    "S(a (x) b)     = b (x) a",
)


class UsageError(Exception):
    pass


def _run(job) -> Report:
    command, cfg, opts = job
    spec = cfg.spec
    axioms = check_axioms(spec, seed=opts["seed"])
    if command == "check":
        body = axioms
    elif not axioms.passed and not opts["force"]:
        body = axioms
    elif command == "groupoid":
        body = groupoid_report(spec, opts["q"], seed=opts["seed"])
    elif command == "complexes":
        body = complexes_report(spec, opts["q"], opts["N"], opts["P"], seed=opts["seed"])
    elif command == "homology":
        body = hh_report(spec, opts["q"], opts["N"], opts["P"], point=opts["point"],
                         seed=opts["seed"], suites=opts["suites"])
    else:
        raise ValueError(command)
    meta = {"command": command, "config": spec.name, "seed": opts["seed"]}
    for key in ("q", "N", "P"):
        if key in opts:
            meta[key] = opts[key]
    if opts.get("point") is not None:
        meta["point"] = [str(x) for x in opts["point"]]
    report = Report(f"{command}[{spec.name}]", meta=meta)
    report.extend(body)
    return report


def _point(text: str | None, m: int, default) -> tuple:
    if text is None:
        return tuple(default)
    try:
        pt = tuple(Fraction(t) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--point: cannot parse {text!r}") from exc
    if len(pt) != m:
        raise UsageError(f"--point has {len(pt)} coordinates, the config has {m} variables")
    return pt


def _options(args, cfg) -> dict:
    opts = {"seed": args.seed, "force": args.force}
    if args.command in ("groupoid", "complexes", "homology"):
        opts["q"] = args.order if args.order is not None else cfg.q
        if opts["q"] < 2:
            raise UsageError("--order must be at least 2 (order 1 leaves no room for the augmentation ideal)")
    if args.command in ("complexes", "homology"):
        opts["N"] = args.degree if args.degree is not None else cfg.N
        opts["P"] = args.arity if args.arity is not None else cfg.P
        if opts["N"] < 1:
            raise UsageError("--degree must be at least 1")
        if opts["P"] < 2:
            raise UsageError("--arity must be at least 2")
    if args.command == "homology":
        opts["point"] = _point(args.point, cfg.spec.nvars, cfg.point)
        opts["suites"] = not args.no_suites
    return opts


def _emit(args, reports: list) -> None:
    if args.golden is not None or (args.out is None and os.environ.get(OUT_ENV)):
        outdir = Path(args.golden or os.environ[OUT_ENV])
        outdir.mkdir(parents=True, exist_ok=True)
        for r in reports:
            path = outdir / f"{r.meta['command']}-{r.meta['config']}.json"
            path.write_text(r.to_json())
            print(f"wrote {path}", file=sys.stderr)
        return
    if len(reports) == 1:
        report = reports[0]
    else:
        report = Report(args.command, meta={"command": args.command, "seed": args.seed})
        for r in reports:
            report.extend(r)
    if args.out is not None:
        Path(args.out).write_text(report.to_json())
        print(f"wrote {args.out}", file=sys.stderr)
    elif args.format == "text":
        print("\n".join(report.summary_lines()))
    else:
        sys.stdout.write(report.to_json())


def _demo(args) -> int:
    cfg = load_config("tangent")
    q = args.order if args.order is not None else cfg.q
    if q < 2:
        raise UsageError("--order must be at least 2")
    body = tangent_picture_report(cfg.spec, q, seed=args.seed)
    report = Report(f"demo-tangent[{cfg.spec.name}]",
                    meta={"command": "demo-tangent", "config": cfg.spec.name, "seed": args.seed, "q": q},
                    data={"formulas": list(DEMO_FORMULAS)})
    report.extend(body)
    if args.format == "text" and args.out is None and args.golden is None:
        print(f"tangent algebroid of the line, a (x) b = 1_1(a) 1_2(b), jets of order < {q}")
        for line in DEMO_FORMULAS:
            print("  " + line)
        print("\n".join(report.summary_lines()))
    else:
        _emit(args, [report])
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lajet", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for multiple configs")
    common.add_argument("--format", choices=("json", "text"),
                        help="stdout format (default json; text for demo-tangent)")
    dest = common.add_mutually_exclusive_group()
    dest.add_argument("--out", help="write the JSON report to this file")
    dest.add_argument("--golden", metavar="DIR", nargs="?", const="", default=None,
                      help=f"write one canonical JSON file per config into DIR (default ${OUT_ENV} or ./golden)")
    common.add_argument("--force", action="store_true", help="run suites even if the axioms fail")

    sub = parser.add_subparsers(dest="command", required=True)
    configs_help = "config files, or bundled names: " + ", ".join(BUNDLED)

    p = sub.add_parser("check", parents=[common], help="check the algebroid axioms")
    p.add_argument("configs", nargs="+", help=configs_help)

    p = sub.add_parser("groupoid", parents=[common], help="formal groupoid identities")
    p.add_argument("configs", nargs="+", help=configs_help)
    p.add_argument("--order", type=int, help="jet order q")

    for name, text in (("complexes", "cochain, chain and bar complex identities"),
                       ("homology", "Hochschild (co)homology and bundled suites")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("configs", nargs="+", help=configs_help)
        p.add_argument("--order", type=int, help="jet order q")
        p.add_argument("--degree", type=int, help="PBW slot degree bound N for cochains")
        p.add_argument("--arity", type=int, help="tensor arity bound P")
        if name == "homology":
            p.add_argument("--point", help="evaluation point, comma separated rationals")
            p.add_argument("--no-suites", action="store_true", help="skip the bundled verification suites")

    p = sub.add_parser("demo-tangent", parents=[common], help="structure maps of the tangent groupoid")
    p.add_argument("--order", type=int, help="jet order q")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command == "demo-tangent" else "json"
    if args.golden == "":
        args.golden = os.environ.get(OUT_ENV) or "golden"
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        if args.command == "demo-tangent":
            return _demo(args)
        cfgs = [load_config(c) for c in args.configs]
        jobs = [(args.command, cfg, _options(args, cfg)) for cfg in cfgs]
    except (ConfigError, UsageError) as exc:
        print(f"lajet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(min(args.jobs, len(jobs))) as pool:
            reports = list(pool.map(_run, jobs))
    else:
        reports = [_run(j) for j in jobs]
    _emit(args, reports)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
