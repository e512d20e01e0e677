import numpy as np
import pytest

from cauchy_observer import (TrigTerm, bottom_trace, build_grid, combo_example,
                             dirichlet_example, evaluate, make_cauchy_data,
                             neumann_example)
from cauchy_observer.reference import d_dy

A, B = 2 * np.pi, 0.5


def test_bottom_trace_is_pure_cosine():
    sol = neumann_example(A, B)
    x = np.linspace(0, A, 33)
    # cosh(-1)/cosh(1) is exactly 1, so the trace equals cos(2x) exactly
    assert np.array_equal(np.asarray(evaluate(sol, x, 0.0)), np.cos(2 * x))


def test_top_trace_scaling():
    sol = neumann_example(A, B)
    x = np.linspace(0, A, 17)
    expect = np.cos(2 * x) / np.cosh(1.0)
    assert np.allclose(evaluate(sol, x, B), expect, rtol=1e-15, atol=1e-15)


def test_top_normal_derivative_vanishes():
    for sol in (neumann_example(A, B), dirichlet_example(A, B),
                combo_example([TrigTerm(1, 1.0, "cos"), TrigTerm(2, 0.25, "sin")], A, B)):
        x = np.linspace(0, A, 29)
        assert np.array_equal(np.asarray(d_dy(sol, x, B)), np.zeros(29))


def test_cauchy_data_samples():
    grid = build_grid(A, B, 5, 5)
    data = make_cauchy_data(neumann_example(A, B), grid)
    # cos(2x) at x = 0, pi/2, pi, 3pi/2, 2pi alternates in sign
    assert np.allclose(data.f, np.array([1, -1, 1, -1, 1]) / np.cosh(1.0),
                       rtol=1e-15)
    assert np.array_equal(data.g, np.zeros(5))


def test_dirichlet_trace_zero_at_origin():
    grid = build_grid(A, B, 9, 5)
    data = make_cauchy_data(dirichlet_example(A, B), grid)
    assert data.f[0] == 0.0


def test_combo_linearity():
    t1 = TrigTerm(1, 0.5, "cos")
    t2 = TrigTerm(2, 0.25, "sin")
    combo = combo_example([t1, t2], A, B)
    s1 = combo_example([t1], A, B)
    s2 = combo_example([t2], A, B)
    x = np.linspace(0, A, 41)
    y = 0.3
    assert np.allclose(evaluate(combo, x, y),
                       np.asarray(evaluate(s1, x, y)) + np.asarray(evaluate(s2, x, y)),
                       rtol=0, atol=1e-15)


def test_bottom_trace_sine():
    grid = build_grid(A, B, 33, 5)
    assert np.allclose(bottom_trace(dirichlet_example(A, B), grid),
                       np.sin(2 * grid.x), rtol=1e-14, atol=1e-14)


def test_bottom_trace_combo():
    combo = combo_example([TrigTerm(1, 0.5, "cos"), TrigTerm(2, 0.25, "sin")], A, B)
    grid = build_grid(A, B, 21, 5)
    x = grid.x
    expect = 0.5 * np.cos(2 * x) + 0.25 * np.sin(4 * x)
    assert np.allclose(bottom_trace(combo, grid), expect, rtol=1e-14, atol=1e-14)


def _five_point_laplacian_max(sol, nx, ny):
    grid = build_grid(A, B, nx, ny)
    x, y = grid.x, grid.y
    U = np.asarray(evaluate(sol, x[:, None], y[None, :]))
    lap = ((U[2:, 1:-1] - 2 * U[1:-1, 1:-1] + U[:-2, 1:-1]) / grid.dx ** 2
           + (U[1:-1, 2:] - 2 * U[1:-1, 1:-1] + U[1:-1, :-2]) / grid.dy ** 2)
    return np.abs(lap).max()


def test_discrete_harmonicity_second_order():
    sol = combo_example([TrigTerm(1, 1.0, "cos"), TrigTerm(1, 0.5, "sin")], A, B)
    coarse = _five_point_laplacian_max(sol, 33, 9)
    fine = _five_point_laplacian_max(sol, 65, 17)
    order = np.log2(coarse / fine)
    assert order >= 1.9


def test_mismatched_grid_rejected():
    grid = build_grid(A, 0.7, 9, 5)
    with pytest.raises(ValueError):
        make_cauchy_data(neumann_example(A, B), grid)


def test_term_validation():
    with pytest.raises(ValueError):
        TrigTerm(0, 1.0, "cos")
    with pytest.raises(ValueError):
        TrigTerm(1, 1.0, "tan")
    with pytest.raises(ValueError):
        combo_example([], A, B)
