import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdldg.mesh import (
    basis_eval,
    build_mesh,
    build_uniform_mesh,
    gauss_rule,
    reference_basis,
)


def test_uniform_mesh_widths():
    m = build_uniform_mesh(0.0, 1.0, 5)
    assert m.n_cells == 5
    np.testing.assert_allclose(m.widths, 0.2, rtol=0, atol=1e-15)
    assert m.h == pytest.approx(0.2, abs=1e-15)


def test_uniform_mesh_h():
    assert build_uniform_mesh(0.0, 1.0, 80).h == pytest.approx(0.0125, abs=1e-15)


def test_uniform_mesh_boundaries():
    m = build_uniform_mesh(-1.0, 1.0, 4)
    np.testing.assert_allclose(m.boundaries, [-1.0, -0.5, 0.0, 0.5, 1.0], atol=1e-15)
    assert m.a == -1.0 and m.b == 1.0


@pytest.mark.parametrize("args", [(0.0, 1.0, 0), (0.0, 1.0, -3), (1.0, 1.0, 4), (2.0, 1.0, 4), (0.0, 1.0, 1)])
def test_uniform_mesh_rejects_bad_input(args):
    with pytest.raises(ValueError):
        build_uniform_mesh(*args)


def test_mesh_rejects_non_increasing():
    with pytest.raises(ValueError):
        build_mesh([0.0, 0.5, 0.5, 1.0])


@given(st.lists(st.floats(0.05, 1.0), min_size=2, max_size=30))
def test_mesh_invariants(widths):
    x = np.concatenate([[0.0], np.cumsum(widths)])
    m = build_mesh(x)
    assert np.all(np.diff(m.boundaries) > 0)
    assert abs(m.widths.sum() - (m.b - m.a)) <= 1e-12 * (m.b - m.a)
    assert m.h == m.widths.max()


def test_locate_gives_left_cell_at_interfaces():
    m = build_uniform_mesh(0.0, 1.0, 4)
    assert list(m.locate([0.0, 0.25, 0.3, 1.0])) == [0, 0, 1, 3]
    with pytest.raises(ValueError):
        m.locate(1.5)


def test_gauss_rule_small_orders():
    r1 = gauss_rule(1)
    np.testing.assert_allclose(r1.nodes, [0.0], atol=1e-15)
    np.testing.assert_allclose(r1.weights, [2.0], atol=1e-15)
    r2 = gauss_rule(2)
    np.testing.assert_allclose(np.sort(r2.nodes), [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    np.testing.assert_allclose(r2.weights, [1.0, 1.0], atol=1e-15)


def test_gauss_rule_degree8_monomial():
    r = gauss_rule(5)
    assert np.sum(r.weights * r.nodes**8) == pytest.approx(2.0 / 9.0, abs=1e-12)


def test_gauss_rule_rejects_zero():
    with pytest.raises(ValueError):
        gauss_rule(0)


@pytest.mark.parametrize("q", [1, 2, 3, 5, 8, 10, 12])
def test_gauss_rule_invariants(q):
    r = gauss_rule(q)
    assert r.order == q
    assert abs(r.weights.sum() - 2.0) <= 1e-13
    assert np.all(r.weights > 0) and np.all(np.abs(r.nodes) < 1)
    for m in range(2 * q):
        exact = 0.0 if m % 2 else 2.0 / (m + 1)
        assert abs(np.sum(r.weights * r.nodes**m) - exact) <= 1e-12


@settings(max_examples=60)
@given(
    q=st.integers(1, 10),
    a=st.floats(-5, 5),
    width=st.floats(0.01, 3.0),
    seed=st.integers(0, 2**31 - 1),
)
def test_quadrature_exact_for_random_polynomials(q, a, width, seed):
    rng = np.random.default_rng(seed)
    coef = rng.normal(size=2 * q)  # degree 2q-1
    poly = np.polynomial.Polynomial(coef)
    b = a + width
    anti = poly.integ()
    exact = anti(b) - anti(a)
    r = gauss_rule(q)
    x = 0.5 * (a + b) + 0.5 * width * r.nodes
    approx = 0.5 * width * np.sum(r.weights * poly(x))
    scale = max(abs(exact), 0.5 * width * np.sum(r.weights * np.abs(poly(x))), 1e-300)
    assert abs(approx - exact) <= 1e-11 * scale


def test_basis_constant_mode():
    m = build_mesh([0.0, 0.2, 0.5])
    for x in (0.0, 0.05, 0.13, 0.2):
        assert basis_eval(m, 2, 0, 0, x) == pytest.approx(math.sqrt(5.0), rel=1e-14)


def test_basis_odd_mode_vanishes_at_center():
    m = build_uniform_mesh(0.0, 1.0, 5)
    assert basis_eval(m, 3, 1, 2, 0.5) == pytest.approx(0.0, abs=1e-14)


def test_basis_right_edge_value():
    m = build_mesh([0.0, 0.3, 1.0])
    assert basis_eval(m, 2, 2, 1, 1.0) == pytest.approx(math.sqrt(5 / 0.7), rel=1e-14)


def test_basis_eval_outside_cell():
    m = build_uniform_mesh(0.0, 1.0, 5)
    with pytest.raises(ValueError):
        basis_eval(m, 1, 0, 0, 0.5)
    with pytest.raises(ValueError):
        basis_eval(m, 1, 2, 0, 0.1)


@settings(max_examples=40)
@given(k=st.integers(0, 4), widths=st.lists(st.floats(0.01, 2.0), min_size=2, max_size=6))
def test_basis_orthonormal_on_random_cells(k, widths):
    m = build_mesh(np.concatenate([[0.0], np.cumsum(widths)]))
    r = gauss_rule(k + 3)
    phi = reference_basis(k, r.nodes)
    for j in range(m.n_cells):
        dx = m.widths[j]
        cell_phi = phi / math.sqrt(dx)
        gram = 0.5 * dx * (cell_phi * r.weights) @ cell_phi.T
        np.testing.assert_allclose(gram, np.eye(k + 1), atol=1e-12)
