import csv
import json
import math

import numpy as np
import pytest

from fdldg.caputo import TimeGrid
from fdldg.harness import (
    CSV_HEADER,
    ConvergenceReport,
    ConvergenceRow,
    PROBLEMS,
    caputo_factor,
    caputo_quadrature,
    converge_space,
    converge_time,
    emit_outputs,
    example41,
    manufactured_residual,
    observed_order,
    power_time_problem,
    read_report_csv,
    reference_table,
    verify_paper,
)
from fdldg.mesh import build_uniform_mesh
from fdldg.reference_tables import TABLES
from fdldg.solver import run


def test_caputo_of_t_squared_matches_quadrature():
    for alpha in (1.1, 1.5, 1.9):
        for t in (0.1, 0.5, 1.0):
            num = caputo_quadrature(lambda s: 2.0, t, alpha)
            assert num == pytest.approx(2 * t ** (2 - alpha) / math.gamma(3 - alpha), abs=1e-8)


def test_example41_source_vanishes_at_start():
    p = example41(1.5)
    x = np.linspace(0, 1, 11)
    assert np.all(p.spec.f(x, 0.0) == 0.0)


def test_example41_source_value():
    # 2/Gamma(1.5) + 4 pi^2 at 40 digits
    assert example41(1.5).spec.f(0.25, 1.0) == pytest.approx(41.735175938548459623, rel=1e-13)


def test_example41_setup():
    p = example41(1.3)
    s = p.spec
    assert (s.a, s.b, s.T) == (0.0, 1.0, 1.0)
    x = np.linspace(0, 1, 7)
    assert np.all(s.u0(x) == 0) and np.all(s.u1(x) == 0)
    np.testing.assert_allclose(s.exact(x, 0.7), 0.49 * np.sin(2 * np.pi * x))


def test_power_problem_specializes_to_example41():
    a, b = example41(1.4).spec, power_time_problem(1.4, 2, 1).spec
    x = np.linspace(0, 1, 9)
    np.testing.assert_array_equal(a.f(x, 0.6), b.f(x, 0.6))


def test_caputo_factor_cubic():
    assert caputo_factor(1.5, 3) == pytest.approx(4.5135166683820502956, rel=1e-13)


def test_power_problem_rejects_low_power():
    with pytest.raises(ValueError):
        power_time_problem(1.5, m=1)


@pytest.mark.parametrize("name,kwargs", [("example41", {}), ("power", {"m": 3, "q": 2}), ("power", {"m": 4, "q": 1})])
def test_manufactured_residual_random_points(name, kwargs):
    rng = np.random.default_rng(11)
    for alpha in (1.2, 1.7):
        prob = PROBLEMS[name](alpha, **kwargs)
        for x, t in rng.uniform([0, 0.01], [1, 1], size=(25, 2)):
            assert abs(manufactured_residual(prob, x, t)) <= 1e-6


def test_power_problem_spatial_order():
    rep = converge_space(power_time_problem(1.5, 3, 2), [2], [20, 40], 1 / 400)
    assert abs(rep.rows[-1].l2_order - 3.0) <= 0.15


def test_observed_order_definition():
    assert observed_order(4e-3, 1e-3, 1 / 10, 1 / 20) == pytest.approx(2.0, abs=1e-14)
    assert observed_order(1e-3, 1e-3, 0.1, 0.1) is None


def test_converge_space_reference_rows():
    rep = converge_space(example41(1.2), [1], [40, 80], 1 / 1000)
    e1, e2 = rep.rows[0].l2_error, rep.rows[1].l2_error
    assert e1 == pytest.approx(1.061671545606701e-3, rel=0.1)
    assert e2 == pytest.approx(2.654420510184321e-4, rel=0.1)
    assert rep.rows[0].l2_order is None
    assert abs(rep.rows[1].l2_order - 2.0) <= 0.15


def test_converge_space_first_order():
    rep = converge_space(example41(1.8), [0], [40, 80], 1 / 1000)
    assert abs(rep.rows[1].l2_order - 1.0) <= 0.15


def test_converge_space_requires_increasing():
    with pytest.raises(ValueError):
        converge_space(example41(1.5), [1], [20, 10], 0.01)


def test_converge_time_alpha11():
    rep = converge_time(example41(1.1), 2, 200, [0.05, 0.04, 0.03, 0.02])
    assert rep.rows[2].dt_eff == pytest.approx(1 / 33)
    assert rep.rows[-1].l2_error == pytest.approx(3.394311162501219e-7, rel=0.2)
    assert abs(rep.rows[-1].l2_order - 2.13) <= 0.3


def test_converge_time_repeated_step():
    rep = converge_time(example41(1.5), 1, 10, [0.1, 0.1])
    assert rep.rows[0].l2_error == rep.rows[1].l2_error
    assert rep.rows[1].l2_order is None


def test_converge_time_requires_decreasing():
    with pytest.raises(ValueError):
        converge_time(example41(1.5), 1, 10, [0.05, 0.1])


def test_parallel_matches_serial():
    a = converge_space(example41(1.5), [0, 1], [8, 16], 0.05, workers=1)
    b = converge_space(example41(1.5), [0, 1], [8, 16], 0.05, workers=3)
    assert [r.l2_error for r in a.rows] == [r.l2_error for r in b.rows]


def test_reference_tables_complete():
    for t in (1, 2, 3, 4):
        rows = reference_table(t)
        assert len(rows) == 15
        assert {(r[0], r[1]) for r in rows} == {(k, N) for k in (0, 1, 2) for N in (5, 10, 20, 40, 80)}
    assert len(reference_table(5)) == 8
    with pytest.raises(ValueError):
        reference_table(6)


def test_tampered_reference_flags_one_cell():
    ref = [list(r) for r in TABLES[1] if r[0] == 1]
    clean = verify_paper(1, reference=ref)
    assert clean.passed
    ref[-1][2] *= 1.5
    tampered = verify_paper(1, reference=ref)
    assert not tampered.passed
    assert len(tampered.failures) == 1
    assert tampered.failures[0].label == "P1 N=80 L2"


def test_verify_unknown_table():
    with pytest.raises(ValueError):
        verify_paper(7)


def table_report():
    rows = [ConvergenceRow(1.2, k, N, 0.001, 1.0 / N ** (k + 1), 2.0 / N ** (k + 1), 0.5 / N ** (k + 1))
            for k in (0, 1, 2) for N in (5, 10, 20, 40, 80)]
    rep = ConvergenceReport("space", rows)
    rep.fill_orders()
    return rep


def test_csv_header_and_rows(tmp_path):
    out = emit_outputs(table_report(), tmp_path / "t.csv")
    lines = out.read_text().splitlines()
    assert lines[0] == "alpha,k,N,dt_eff,l2_error,l2_order,linf_error,linf_order,l1_error,l1_order"
    assert len(lines) == 16
    assert tuple(lines[0].split(",")) == CSV_HEADER


def test_csv_empty_report(tmp_path):
    out = emit_outputs(ConvergenceReport("space"), tmp_path / "e.csv")
    assert out.read_text().splitlines() == [",".join(CSV_HEADER)]


def test_orders_only_after_first_row():
    rep = table_report()
    for i, r in enumerate(rep.rows):
        assert (r.l2_order is None) == (i % 5 == 0)
    assert rep.rows[4].l2_order == pytest.approx(1.0)
    assert rep.rows[9].l2_order == pytest.approx(2.0)


def test_csv_round_trip(tmp_path):
    rep = converge_space(example41(1.5), [0, 1], [4, 8], 0.1)
    back = read_report_csv(emit_outputs(rep, tmp_path / "r.csv"))
    assert back.rows == rep.rows


def test_json_report(tmp_path):
    out = emit_outputs(table_report(), tmp_path / "r.json", fmt="json")
    data = json.loads(out.read_text())
    assert data["kind"] == "space" and len(data["rows"]) == 15
    assert data["rows"][0]["l2_order"] is None


def test_figure_samples(tmp_path):
    prob = example41(1.5)
    res = run(prob.spec, build_uniform_mesh(0, 1, 100), 2, TimeGrid(1.0, 1000))
    out = emit_outputs(res, tmp_path / "fig.csv", exact=prob.spec.exact)
    with out.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "u_h", "u_exact"]
    data = np.array(rows[1:], dtype=float)
    assert data.shape == (1000, 3)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert np.max(np.abs(data[:, 1] - data[:, 2])) <= 1e-5


def test_unwritable_path(tmp_path):
    bad = tmp_path / "missing" / "dir" / "out.csv"
    with pytest.raises(OSError, match="missing"):
        emit_outputs(table_report(), bad)


def test_emit_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_outputs(table_report(), tmp_path / "x.txt", fmt="xml")
