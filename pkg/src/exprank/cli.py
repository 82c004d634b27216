"""Command-line driver: ``exprank {build,eval,check,rank,tower}``.

Settings come from defaults, then a ``--config`` file, then flags.  Reports
are nested dicts rendered as indented text or JSON (sorted keys).  Timings
are included only with ``--timing`` so that reports are reproducible.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .config import RunConfig, load_config_file
from .errors import ExpRankError
from .expr import Evaluator, format_value
from .suites import SUITES, construction_report, rank_report, run_suite, tower_report

__all__ = ["main", "build_parser", "run"]

_FLAG_KEYS = ("tau", "depth", "taylor_order", "samples", "seed", "mode", "window", "interval_width",
              "max_depth")


def _common(parser):
    g = parser.add_argument_group("settings")
    g.add_argument("--config", help="file of 'key = value' lines; flags override it")
    g.add_argument("--tau", help="label order: a size like 3 (t0<t1<t2) or labels a,b,c")
    g.add_argument("--depth", type=int, help="tower depth N")
    g.add_argument("--order", dest="taylor_order", type=int, help="Taylor order for exp/log/inverse")
    g.add_argument("--samples", type=int, help="samples per property")
    g.add_argument("--seed", type=lambda s: int(s, 0), help="random seed")
    g.add_argument("--mode", choices=("monic", "interval"), help="residue logarithm mode")
    g.add_argument("--window", help="offset window lo,hi for exhaustive checks")
    g.add_argument("--width", dest="interval_width", help="interval width in interval mode")
    g.add_argument("--max-depth", dest="max_depth", type=int, help="override the depth bound")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--out", help="write the report to this file instead of stdout")
    g.add_argument("--timing", action="store_true", help="include wall-clock seconds")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exprank", description="Exponential rank computations over Q((G)).")
    sub = p.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("build", help="construct G, the cross-section and the tower"))
    e = sub.add_parser("eval", help="evaluate a series expression")
    e.add_argument("expression")
    _common(e)
    c = sub.add_parser("check", help="run invariant suites")
    c.add_argument("suites", nargs="+", choices=sorted(SUITES) + ["all"], metavar="SUITE",
                   help=f"one or more of: {', '.join(SUITES)}, all")
    _common(c)
    _common(sub.add_parser("rank", help="list exponential and principal ranks"))
    _common(sub.add_parser("tower", help="describe the tower stages"))
    return p


def make_config(args) -> RunConfig:
    values = {}
    if args.config:
        values.update(load_config_file(args.config))
    for key in _FLAG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    if isinstance(values.get("window"), str):
        lo, _, hi = values["window"].partition(",")
        values["window"] = (int(lo), int(hi))
    return RunConfig(**values)


def run(args, cfg=None) -> dict:
    if cfg is None:
        cfg = make_config(args)
    start = time.perf_counter()
    report = {"command": args.command, "config": cfg.as_dict()}
    if args.command == "build":
        report["build"] = construction_report(cfg)
        passed = report["build"]["passed"]
    elif args.command == "eval":
        report["expression"] = args.expression
        ev = Evaluator(cfg.universe, cfg.depth, cfg.taylor_order, cfg.mode, cfg.interval_width,
                       cfg.max_depth)
        try:
            report["result"] = format_value(ev.evaluate(args.expression), cfg.universe)
            passed = True
        except ExpRankError as exc:
            report["error"] = f"{type(exc).__name__}: {exc}"
            passed = False
    elif args.command == "check":
        names = list(SUITES) if "all" in args.suites else list(dict.fromkeys(args.suites))
        suites = {}
        for name in names:
            t0 = time.perf_counter()
            suites[name] = run_suite(name, cfg)
            if args.timing:
                suites[name]["seconds"] = round(time.perf_counter() - t0, 3)
        report["suites"] = suites
        passed = all(r["passed"] for r in suites.values())
    elif args.command == "rank":
        report["rank"] = rank_report(cfg)
        passed = report["rank"]["passed"]
    else:
        report["tower"] = tower_report(cfg)
        passed = report["tower"]["passed"]
    report["passed"] = passed
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report


def render_text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except (ExpRankError, ValueError, OSError) as exc:
        print(f"exprank: error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(args, cfg)
    except ExpRankError as exc:
        print(f"exprank: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
