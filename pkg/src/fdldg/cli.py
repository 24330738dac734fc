"""Command line entry point: ``fdldg {run,converge-space,converge-time,verify-paper}``.

Parameters come from flags or from a JSON config file (``--config``) using the
flag names as keys (dashes or underscores); flags win over the file.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .caputo import TimeGrid
from .dgfield import error_norms
from .mesh import build_uniform_mesh
from .solver import run

DEFAULTS = {
    "alpha": 1.5,
    "degree": [2],
    "cells": [40],
    "dt": [1e-3],
    "tfinal": 1.0,
    "problem": "example41",
    "time_power": 2,
    "mode": 1,
    "out": None,
    "format": "csv",
    "table": [1, 2, 3, 4, 5],
    "replay_steps": False,
    "workers": None,
}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with parameters")
    common.add_argument("--alpha", type=float, help="fractional order in (1, 2)")
    common.add_argument("--degree", type=int, nargs="+", help="polynomial degree(s) k")
    common.add_argument("--cells", type=int, nargs="+", help="number(s) of cells N")
    common.add_argument("--dt", type=float, nargs="+", help="time step(s)")
    common.add_argument("--tfinal", type=float, help="final time T")
    common.add_argument("--problem", choices=sorted(harness.PROBLEMS), help="manufactured problem")
    common.add_argument("--time-power", dest="time_power", type=int, help="m in u = t^m sin(2 pi q x)")
    common.add_argument("--mode", type=int, help="q in u = t^m sin(2 pi q x)")
    common.add_argument("--out", type=Path, help="output file")
    common.add_argument("--format", choices=["csv", "json"], help="output format")
    common.add_argument("--workers", type=int, help=f"parallel cases (default ${harness.WORKERS_ENV} or 1)")

    p = argparse.ArgumentParser(prog="fdldg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="single solve; errors at T, samples to --out")
    sub.add_parser("converge-space", parents=[common], help="refinement in N for each degree")
    sub.add_parser("converge-time", parents=[common], help="refinement in dt")
    vp = sub.add_parser("verify-paper", parents=[common], help="rerun reference tables and diff every cell")
    vp.add_argument("--table", type=int, nargs="+", choices=range(1, 6))
    vp.add_argument("--replay-steps", dest="replay_steps", action="store_true",
                    help="Table 5 with fixed dt and the recorded step counts")
    return p


def _settings(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config is not None:
        try:
            loaded = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        for key, val in loaded.items():
            key = key.replace("-", "_")
            if key not in cfg:
                raise UsageError(f"unknown config key {key!r}")
            if key in ("degree", "cells", "dt", "table") and not isinstance(val, list):
                val = [val]
            cfg[key] = val
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            cfg[key] = val
    return cfg


def _problem(cfg: dict) -> harness.ManufacturedProblem:
    if cfg["problem"] == "power":
        prob = harness.power_time_problem(cfg["alpha"], cfg["time_power"], cfg["mode"])
    else:
        prob = harness.example41(cfg["alpha"])
    prob.spec.T = float(cfg["tfinal"])
    return prob


def _emit_report(report: harness.ConvergenceReport, cfg: dict) -> None:
    print(report.as_text())
    if cfg["out"] is not None:
        harness.emit_outputs(report, cfg["out"], cfg["format"])
        print(f"wrote {cfg['out']}")


def cmd_run(cfg: dict) -> int:
    prob = _problem(cfg)
    spec = prob.spec
    grid = TimeGrid.from_step(spec.T, cfg["dt"][0])
    mesh = build_uniform_mesh(spec.a, spec.b, cfg["cells"][0])
    result = run(spec, mesh, cfg["degree"][0], grid)
    l2, l1, linf = error_norms(result.solution, lambda x: spec.exact(x, grid.T))
    print(f"problem={prob.name} alpha={spec.alpha} k={cfg['degree'][0]} N={mesh.n_cells} "
          f"dt_eff={grid.dt!r} M={grid.M} T={grid.T}")
    print(f"L2={l2:.6e} Linf={linf:.6e} L1={l1:.6e} wall={result.wall_time:.3f}s")
    if cfg["out"] is not None:
        harness.emit_outputs(result, cfg["out"], cfg["format"], exact=spec.exact)
        print(f"wrote {cfg['out']}")
    return 0


def cmd_converge_space(cfg: dict) -> int:
    report = harness.converge_space(_problem(cfg), cfg["degree"], cfg["cells"], cfg["dt"][0], cfg["workers"])
    _emit_report(report, cfg)
    return 0


def cmd_converge_time(cfg: dict) -> int:
    report = harness.converge_time(_problem(cfg), cfg["degree"][0], cfg["cells"][0], cfg["dt"], workers=cfg["workers"])
    _emit_report(report, cfg)
    return 0


def cmd_verify_paper(cfg: dict) -> int:
    ok = True
    reports = []
    for table in cfg["table"]:
        ver = harness.verify_paper(int(table), replay_steps=cfg["replay_steps"], workers=cfg["workers"])
        print(ver.as_text())
        print()
        ok &= ver.passed
        reports.append(ver.report)
    if cfg["out"] is not None and reports:
        merged = harness.ConvergenceReport(reports[0].kind, [r for rep in reports for r in rep.rows])
        harness.emit_outputs(merged, cfg["out"], cfg["format"])
    print("verify-paper:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


COMMANDS = {
    "run": cmd_run,
    "converge-space": cmd_converge_space,
    "converge-time": cmd_converge_time,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _settings(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"fdldg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
