"""Manufactured problems, refinement studies and comparison with the reference tables."""
from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable

import numpy as np
from scipy import integrate

from .caputo import TimeGrid
from .dgfield import error_norms
from .mesh import build_uniform_mesh
from .reference_tables import SPACE_ALPHA, TABLE5_REPLAY_STEPS, TABLES
from .solver import ProblemSpec, SolveResult, run

WORKERS_ENV = "FDLDG_WORKERS"

CSV_HEADER = (
    "alpha", "k", "N", "dt_eff",
    "l2_error", "l2_order", "linf_error", "linf_order", "l1_error", "l1_order",
)
SAMPLE_HEADER = ("x", "u_h", "u_exact")

SPACE_ERROR_RTOL = 0.10
SPACE_ORDER_ATOL = 0.15
TIME_ERROR_RTOL = 0.20
TIME_ORDER_ATOL = 0.30


# module-level pieces so problems pickle into worker processes

def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def _power_exact(x, t, m, q):
    return t**m * np.sin(2.0 * np.pi * q * x)


def _power_tt(x, t, m, q):
    return m * (m - 1) * t ** (m - 2) * np.sin(2.0 * np.pi * q * x)


def _power_xx(x, t, m, q):
    return -((2.0 * np.pi * q) ** 2) * t**m * np.sin(2.0 * np.pi * q * x)


def caputo_factor(alpha: float, m: int) -> float:
    """D_t^alpha t^m = caputo_factor * t^(m - alpha)."""
    return math.gamma(m + 1) / math.gamma(m + 1 - alpha)


def _power_source(x, t, alpha, m, q):
    fractional = caputo_factor(alpha, m) * t ** (m - alpha)
    return (fractional + (2.0 * np.pi * q) ** 2 * t**m) * np.sin(2.0 * np.pi * q * x)


@dataclass
class ManufacturedProblem:
    name: str
    spec: ProblemSpec
    note: str
    u_tt: Callable = field(repr=False)
    u_xx: Callable = field(repr=False)


def power_time_problem(alpha: float, m: int = 2, q: int = 1) -> ManufacturedProblem:
    """u = t^m sin(2 pi q x) on [0, 1], T = 1, with zero initial data."""
    if int(m) != m or m < 2:
        raise ValueError(f"time power must be an integer >= 2, got {m}")
    spec = ProblemSpec(
        alpha=alpha, a=0.0, b=1.0, T=1.0, u0=_zero, u1=_zero,
        f=partial(_power_source, alpha=alpha, m=m, q=q),
        exact=partial(_power_exact, m=m, q=q),
    )
    note = (
        f"f = [Gamma({m + 1})/Gamma({m + 1}-alpha) t^({m}-alpha) + (2 pi {q})^2 t^{m}] sin(2 pi {q} x)"
    )
    return ManufacturedProblem(
        name=f"power(m={m},q={q})", spec=spec, note=note,
        u_tt=partial(_power_tt, m=m, q=q), u_xx=partial(_power_xx, m=m, q=q),
    )


def example41(alpha: float) -> ManufacturedProblem:
    """u = t^2 sin(2 pi x), f = [2 t^(2-alpha)/Gamma(3-alpha) + 4 pi^2 t^2] sin(2 pi x)."""
    prob = power_time_problem(alpha, 2, 1)
    prob.name = "example41"
    return prob


PROBLEMS = {"example41": example41, "power": power_time_problem}


def caputo_quadrature(g_tt: Callable[[float], float], t: float, alpha: float) -> float:
    """Caputo derivative from its defining integral by adaptive quadrature.

    (1/Gamma(2-alpha)) int_0^t g''(s) (t-s)^(1-alpha) ds, with the endpoint
    singularity handled by QUADPACK's algebraic weight.
    """
    if t <= 0.0:
        return 0.0
    val, _ = integrate.quad(
        g_tt, 0.0, t, weight="alg", wvar=(0.0, 1.0 - alpha), epsabs=1e-13, epsrel=1e-12, limit=200
    )
    return val / math.gamma(2.0 - alpha)


def manufactured_residual(problem: ManufacturedProblem, x: float, t: float) -> float:
    """D^alpha u - u_xx - f at (x, t), with D^alpha u from caputo_quadrature."""
    spec = problem.spec
    frac = caputo_quadrature(lambda s: float(problem.u_tt(x, s)), t, spec.alpha)
    return frac - float(problem.u_xx(x, t)) - float(spec.f(x, t))


# ---------------------------------------------------------------- reports


@dataclass
class ConvergenceRow:
    alpha: float
    k: int
    N: int
    dt_eff: float
    l2_error: float
    linf_error: float
    l1_error: float
    t_final: float = 1.0
    l2_order: float | None = None
    linf_order: float | None = None
    l1_order: float | None = None


@dataclass
class ConvergenceReport:
    kind: str  # "space" or "time"
    rows: list[ConvergenceRow] = field(default_factory=list)

    def fill_orders(self) -> None:
        """Orders between consecutive rows of each refinement sequence."""
        prev = None
        for row in self.rows:
            if prev is not None and self._same_sequence(prev, row):
                r_prev, r_row = self._resolution(prev), self._resolution(row)
                for name in ("l2", "linf", "l1"):
                    setattr(row, f"{name}_order", observed_order(
                        getattr(prev, f"{name}_error"), getattr(row, f"{name}_error"), r_prev, r_row))
            prev = row

    def _same_sequence(self, a: ConvergenceRow, b: ConvergenceRow) -> bool:
        if self.kind == "space":
            return a.alpha == b.alpha and a.k == b.k and a.dt_eff == b.dt_eff
        return a.alpha == b.alpha and a.k == b.k and a.N == b.N

    def _resolution(self, row: ConvergenceRow) -> float:
        return 1.0 / row.N if self.kind == "space" else row.dt_eff

    def as_text(self) -> str:
        lines = [f"{'alpha':>6} {'k':>2} {'N':>5} {'dt_eff':>10} {'L2':>12} {'ord':>5} "
                 f"{'Linf':>12} {'ord':>5} {'L1':>12} {'ord':>5}"]
        fmt = lambda o: "    -" if o is None else f"{o:5.2f}"  # noqa: E731
        for r in self.rows:
            lines.append(
                f"{r.alpha:6.2f} {r.k:2d} {r.N:5d} {r.dt_eff:10.6f} {r.l2_error:12.5e} {fmt(r.l2_order)} "
                f"{r.linf_error:12.5e} {fmt(r.linf_order)} {r.l1_error:12.5e} {fmt(r.l1_order)}"
            )
        return "\n".join(lines)


def observed_order(e1: float, e2: float, r1: float, r2: float) -> float | None:
    """log(e1/e2)/log(r1/r2); None when the resolutions coincide."""
    if r1 == r2 or e1 <= 0.0 or e2 <= 0.0:
        return None
    return math.log(e1 / e2) / math.log(r1 / r2)


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _run_case(problem: ManufacturedProblem, k: int, N: int, grid: TimeGrid) -> ConvergenceRow:
    spec = problem.spec
    mesh = build_uniform_mesh(spec.a, spec.b, N)
    result = run(spec, mesh, k, grid)
    t_end = grid.T
    l2, l1, linf = error_norms(result.solution, lambda x: spec.exact(x, t_end))
    return ConvergenceRow(spec.alpha, k, N, grid.dt, l2, linf, l1, t_final=t_end)


def _run_all(cases, workers: int | None) -> list[ConvergenceRow]:
    n = _workers(workers)
    if n == 1 or len(cases) < 2:
        return [_run_case(*c) for c in cases]
    with ProcessPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(_run_case, *c) for c in cases]
        return [f.result() for f in futures]


def converge_space(
    problem: ManufacturedProblem, k_list, N_list, dt: float, workers: int | None = None
) -> ConvergenceReport:
    if list(N_list) != sorted(set(N_list)):
        raise ValueError("N-list must be strictly increasing")
    grid = TimeGrid.from_step(problem.spec.T, dt)
    cases = [(problem, k, N, grid) for k in k_list for N in N_list]
    report = ConvergenceReport("space", _run_all(cases, workers))
    report.fill_orders()
    return report


def time_grids(T: float, dt_list, steps=None) -> list[TimeGrid]:
    """Grids for a temporal study.

    Without ``steps`` each dt becomes M = round(T/dt) steps of dt_eff = T/M. With
    an explicit step count per dt, dt is kept and the run ends at M*dt.
    """
    if steps is None:
        return [TimeGrid.from_step(T, dt) for dt in dt_list]
    return [TimeGrid(dt * M, M) for dt, M in zip(dt_list, steps)]


def converge_time(
    problem: ManufacturedProblem, k: int, N: int, dt_list, steps=None, workers: int | None = None
) -> ConvergenceReport:
    dt_list = list(dt_list)
    if any(b > a for a, b in zip(dt_list, dt_list[1:])):
        raise ValueError("dt-list must be decreasing")
    cases = [(problem, k, N, g) for g in time_grids(problem.spec.T, dt_list, steps)]
    report = ConvergenceReport("time", _run_all(cases, workers))
    report.fill_orders()
    return report


# ---------------------------------------------------------------- verification


@dataclass
class CellCheck:
    label: str
    expected: float
    observed: float | None
    tolerance: float
    kind: str  # "error" (relative) or "order" (absolute)
    ok: bool

    def line(self) -> str:
        obs = "n/a" if self.observed is None else f"{self.observed:.6e}"
        if self.kind == "error":
            dev = "n/a" if self.observed is None else f"{abs(self.observed / self.expected - 1):6.2%}"
            return f"{'PASS' if self.ok else 'FAIL'}  {self.label:<32} ref={self.expected:.6e} got={obs} rel.dev={dev} (tol {self.tolerance:.0%})"
        dev = "n/a" if self.observed is None else f"{abs(self.observed - self.expected):.3f}"
        got = "n/a" if self.observed is None else f"{self.observed:.3f}"
        return f"{'PASS' if self.ok else 'FAIL'}  {self.label:<32} ref={self.expected:.2f} got={got} |diff|={dev} (tol {self.tolerance})"


@dataclass
class Verification:
    table: int
    cells: list[CellCheck]
    report: ConvergenceReport

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.cells if not c.ok]

    def as_text(self) -> str:
        head = f"table {self.table}: {'PASS' if self.passed else 'FAIL'} ({len(self.failures)}/{len(self.cells)} cells flagged)"
        return "\n".join([head] + [c.line() for c in self.cells])


def _error_check(label, expected, observed, rtol) -> CellCheck:
    ok = observed is not None and abs(observed - expected) <= rtol * abs(expected)
    return CellCheck(label, expected, observed, rtol, "error", ok)


def _order_check(label, expected, observed, atol) -> CellCheck:
    ok = observed is not None and abs(observed - expected) <= atol
    return CellCheck(label, expected, observed, atol, "order", ok)


def reference_table(table: int):
    if table not in TABLES:
        raise ValueError(f"unknown table {table}; choose 1-5")
    return [tuple(r) for r in TABLES[table]]


def compare_space(table: int, report: ConvergenceReport, reference) -> list[CellCheck]:
    cells = []
    rows = {(r.k, r.N): r for r in report.rows}
    for k, N, l2, l2o, linf, linfo in reference:
        got = rows.get((k, N))
        tag = f"P{k} N={N}"
        cells.append(_error_check(f"{tag} L2", l2, got and got.l2_error, SPACE_ERROR_RTOL))
        cells.append(_error_check(f"{tag} Linf", linf, got and got.linf_error, SPACE_ERROR_RTOL))
        if l2o is not None:
            cells.append(_order_check(f"{tag} L2 order", l2o, got and got.l2_order, SPACE_ORDER_ATOL))
        if linfo is not None:
            cells.append(_order_check(f"{tag} Linf order", linfo, got and got.linf_order, SPACE_ORDER_ATOL))
    return cells


def compare_time(report: ConvergenceReport, reference) -> list[CellCheck]:
    cells = []
    for (alpha, dt, l2, l2o, l1, l1o), got in zip(reference, report.rows):
        tag = f"alpha={alpha} dt={dt}"
        cells.append(_error_check(f"{tag} L2", l2, got.l2_error, TIME_ERROR_RTOL))
        cells.append(_error_check(f"{tag} L1", l1, got.l1_error, TIME_ERROR_RTOL))
        if l2o is not None:
            cells.append(_order_check(f"{tag} L2 order", l2o, got.l2_order, TIME_ORDER_ATOL))
        if l1o is not None:
            cells.append(_order_check(f"{tag} L1 order", l1o, got.l1_order, TIME_ORDER_ATOL))
    return cells


def verify_paper(table: int, reference=None, replay_steps: bool = False, workers: int | None = None) -> Verification:
    """Rerun one reference table and compare every cell.

    Error cells are compared relatively (10% for Tables 1-4, 20% for Table 5) and
    order cells absolutely (0.15 and 0.3). ``replay_steps`` runs Table 5 with the
    fixed-dt step counts in TABLE5_REPLAY_STEPS instead of M = round(T/dt).
    """
    reference = reference_table(table) if reference is None else [tuple(r) for r in reference]
    if table in SPACE_ALPHA:
        alpha = SPACE_ALPHA[table]
        ks = sorted({r[0] for r in reference})
        Ns = sorted({r[1] for r in reference})
        report = converge_space(example41(alpha), ks, Ns, 1.0 / 1000, workers=workers)
        return Verification(table, compare_space(table, report, reference), report)
    if table == 5:
        report = ConvergenceReport("time")
        for alpha in sorted({r[0] for r in reference}):
            dts = [r[1] for r in reference if r[0] == alpha]
            steps = [TABLE5_REPLAY_STEPS[dt] for dt in dts] if replay_steps else None
            report.rows += converge_time(example41(alpha), 2, 200, dts, steps=steps, workers=workers).rows
        return Verification(table, compare_time(report, reference), report)
    raise ValueError(f"unknown table {table}; choose 1-5")


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def report_records(report: ConvergenceReport) -> list[dict]:
    return [
        {"alpha": r.alpha, "k": r.k, "N": r.N, "dt_eff": r.dt_eff,
         "l2_error": r.l2_error, "l2_order": r.l2_order,
         "linf_error": r.linf_error, "linf_order": r.linf_order,
         "l1_error": r.l1_error, "l1_order": r.l1_order}
        for r in report.rows
    ]


def solution_samples(result: SolveResult, exact=None, per_cell: int = 10) -> np.ndarray:
    """Columns x, u_h, u_exact at ``per_cell`` evenly spaced interior points of every cell."""
    u = result.solution
    xi = -1.0 + (2.0 * np.arange(per_cell) + 1.0) / per_cell
    x = u.mesh.map_to_physical(xi).ravel()
    uh = u.values_at_reference(xi).ravel()
    ue = np.full_like(x, np.nan) if exact is None else np.asarray(exact(x, result.grid.T), dtype=float)
    return np.column_stack([x, uh, ue])


def emit_outputs(obj, path, fmt: str = "csv", exact=None) -> Path:
    """Write a ConvergenceReport or SolveResult to ``path`` as csv or json."""
    path = Path(path)
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    try:
        if isinstance(obj, ConvergenceReport):
            records = report_records(obj)
            if fmt == "json":
                path.write_text(json.dumps({"kind": obj.kind, "rows": records}, indent=2))
            else:
                with path.open("w", newline="") as fh:
                    w = csv.writer(fh)
                    w.writerow(CSV_HEADER)
                    for rec in records:
                        w.writerow([rec["alpha"], rec["k"], rec["N"]] + [_fmt(rec[c]) for c in CSV_HEADER[3:]])
        elif isinstance(obj, SolveResult):
            data = solution_samples(obj, exact)
            if fmt == "json":
                path.write_text(json.dumps({c: data[:, i].tolist() for i, c in enumerate(SAMPLE_HEADER)}))
            else:
                with path.open("w", newline="") as fh:
                    w = csv.writer(fh)
                    w.writerow(SAMPLE_HEADER)
                    w.writerows([[repr(float(v)) for v in row] for row in data])
        else:
            raise TypeError(f"cannot emit {type(obj).__name__}")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_report_csv(path) -> ConvergenceReport:
    """Inverse of emit_outputs for reports (kind is inferred from the rows)."""
    rows = []
    with Path(path).open(newline="") as fh:
        for rec in csv.DictReader(fh):
            opt = lambda s: None if s == "" else float(s)  # noqa: E731
            rows.append(ConvergenceRow(
                alpha=float(rec["alpha"]), k=int(rec["k"]), N=int(rec["N"]), dt_eff=float(rec["dt_eff"]),
                l2_error=float(rec["l2_error"]), linf_error=float(rec["linf_error"]), l1_error=float(rec["l1_error"]),
                l2_order=opt(rec["l2_order"]), linf_order=opt(rec["linf_order"]), l1_order=opt(rec["l1_order"]),
            ))
    kind = "time" if len({r.N for r in rows}) == 1 and len({r.dt_eff for r in rows}) > 1 else "space"
    return ConvergenceReport(kind, rows)
