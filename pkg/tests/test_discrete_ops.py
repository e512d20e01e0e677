import numpy as np
import pytest

from cauchy_observer import (StateVector, assemble, build_grid, fictitious_point,
                             neumann_example, sample_state_field, step_line)
from cauchy_observer.discrete_ops import forcing_vector, step_stacked
from cauchy_observer.reference import make_cauchy_data

A, B = 2 * np.pi, 0.5


def second_difference_of(mats):
    return -mats.A_d[mats.ny:, :mats.ny]


class TestAssemble:
    def test_interior_row(self):
        g = build_grid(1.0, 0.5, 5, 3)   # dy = 0.25
        D = second_difference_of(assemble(g))
        assert np.allclose(D[1], [16.0, -32.0, 16.0])

    def test_f_is_identity_plus_dx_a(self):
        g = build_grid(1.0, 0.5, 11, 4)
        mats = assemble(g)
        assert np.array_equal(mats.F - np.eye(2 * g.ny), g.dx * mats.A_d)

    def test_top_row_mirror(self):
        g = build_grid(1.0, 0.5, 5, 5)
        D = second_difference_of(assemble(g))
        inv = 1.0 / g.dy ** 2
        assert D[-1, -2] == pytest.approx(2 * inv)
        assert D[-1, -1] == pytest.approx(-2 * inv)

    def test_bottom_row_one_sided(self):
        g = build_grid(1.0, 0.5, 5, 5)
        D = second_difference_of(assemble(g))
        inv = 1.0 / g.dy ** 2
        assert np.allclose(D[0, :4], np.array([2.0, -5.0, 4.0, -1.0]) * inv)

    def test_bottom_row_ghost_closure(self):
        g = build_grid(1.0, 0.5, 5, 5)
        D = second_difference_of(assemble(g, bottom_closure="ghost"))
        inv = 1.0 / g.dy ** 2
        assert D[0, 0] == pytest.approx(-2 * inv)
        assert D[0, 1] == pytest.approx(inv)
        assert np.array_equal(D[0, 2:], np.zeros(3))

    def test_selector_row(self):
        g = build_grid(1.0, 0.5, 5, 4)
        mats = assemble(g)
        rng = np.random.default_rng(0)
        state = StateVector(rng.standard_normal(4), rng.standard_normal(4))
        assert mats.C_row @ state.stacked() == state.xi1[-1]

    def test_unknown_closure_rejected(self):
        g = build_grid(1.0, 0.5, 5, 4)
        with pytest.raises(ValueError):
            assemble(g, bottom_closure="mystery")


class TestFictitiousPoint:
    def test_constant_field(self):
        c = 3.7
        assert fictitious_point(c, c, 0.4, 0.4, dy=0.1, dx=0.2) == pytest.approx(c)

    def test_linear_extrapolation_part(self):
        assert fictitious_point(1.0, 0.0, 0.9, 0.9, dy=0.1, dx=0.2) == pytest.approx(2.0)

    def test_derivative_part(self):
        val = fictitious_point(0.0, 0.0, 1.0, 0.0, dy=0.1, dx=0.2)
        assert val == pytest.approx(-0.05)

    def test_reproduces_interior_stencil(self):
        # inserting the ghost into the centered second difference recovers
        # the marching relation it was solved from
        rng = np.random.default_rng(7)
        for _ in range(20):
            xi1_1, xi1_2, nxt, cur = rng.standard_normal(4)
            dy, dx = rng.uniform(0.05, 0.5, 2)
            ghost = fictitious_point(xi1_1, xi1_2, nxt, cur, dy, dx)
            lhs = (xi1_2 - 2 * xi1_1 + ghost) / dy ** 2
            rhs = -(nxt - cur) / dx
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_rejects_bad_steps(self):
        with pytest.raises(ValueError):
            fictitious_point(0, 0, 0, 0, dy=0.0, dx=0.1)


class TestStepLine:
    def test_gain_injection_from_rest(self):
        g = build_grid(1.0, 0.5, 5, 3)
        mats = assemble(g)
        k = np.zeros(6); k[2] = 1.0     # unit injection at the top u node
        state = StateVector(np.zeros(3), np.zeros(3))
        out = step_line(state, mats, k, f_meas=1.0, g_meas=0.0)
        assert np.allclose(out.stacked(), k)

    def test_zero_innovation_is_pure_march(self):
        g = build_grid(1.0, 0.5, 7, 5)
        mats = assemble(g)
        rng = np.random.default_rng(1)
        state = StateVector(rng.standard_normal(5), rng.standard_normal(5))
        k = rng.standard_normal(10)
        f = state.xi1[-1]               # measurement equals the top value
        gained = step_line(state, mats, k, f, 0.3)
        plain = step_line(state, mats, np.zeros(10), f, 0.3)
        assert np.allclose(gained.stacked(), plain.stacked(), atol=1e-14)

    def test_linear_profile_first_block(self):
        # u = y: du/dx = 0, so the u samples must not move
        g = build_grid(1.0, 0.5, 7, 5)
        mats = assemble(g)
        state = StateVector(g.y.copy(), np.zeros(5))
        out = step_line(state, mats, np.zeros(10), f_meas=0.0, g_meas=0.0)
        assert np.allclose(out.xi1, state.xi1 + g.dx * state.xi2, atol=1e-15)

    def test_linearity(self):
        g = build_grid(1.0, 0.5, 7, 4)
        mats = assemble(g)
        rng = np.random.default_rng(2)
        k = rng.standard_normal(8)
        s1 = rng.standard_normal(8); s2 = rng.standard_normal(8)
        f1, f2 = rng.standard_normal(2)
        g1, g2 = rng.standard_normal(2)
        al, be = 0.7, -1.3
        combo = step_stacked(al * s1 + be * s2, mats, k,
                             al * f1 + be * f2, al * g1 + be * g2)
        parts = al * step_stacked(s1, mats, k, f1, g1) \
            + be * step_stacked(s2, mats, k, f2, g2)
        assert np.allclose(combo, parts, rtol=1e-12, atol=1e-12)

    def test_accepts_gain_vector_wrapper(self):
        from cauchy_observer import ackermann_gain, uniform_poles
        g = build_grid(A, B, 65, 3)
        mats = assemble(g)
        gv = ackermann_gain(mats.F, mats.C_row, uniform_poles(6, 0.3, 0.8))
        rng = np.random.default_rng(5)
        state = StateVector(rng.standard_normal(3), rng.standard_normal(3))
        via_wrapper = step_line(state, mats, gv, 0.2, 0.1)
        via_array = step_line(state, mats, gv.k, 0.2, 0.1)
        assert np.array_equal(via_wrapper.stacked(), via_array.stacked())

    def test_dimension_mismatch_rejected(self):
        g = build_grid(1.0, 0.5, 7, 4)
        mats = assemble(g)
        with pytest.raises(ValueError):
            step_line(StateVector(np.zeros(3), np.zeros(3)), mats,
                      np.zeros(8), 0.0, 0.0)

    def test_ghost_forcing_row(self):
        g = build_grid(1.0, 0.5, 5, 5)
        mats = assemble(g, bottom_closure="ghost")
        b = forcing_vector(mats, g_meas=0.25, ghost=0.5)
        inv = 1.0 / g.dy ** 2
        assert b[g.ny] == pytest.approx(-0.5 * inv)
        assert b[-1] == pytest.approx(-2 * 0.25 / g.dy)
        assert np.count_nonzero(b) == 2


def _defect_rate(nx, ny):
    """Max one-step mismatch of the analytic field, scaled by 1/dx."""
    grid = build_grid(A, B, nx, ny)
    mats = assemble(grid)
    sol = neumann_example(A, B)
    data = make_cauchy_data(sol, grid)
    field = sample_state_field(sol, grid)
    worst = 0.0
    for n in range(grid.nx - 1):
        stepped = step_stacked(field[n], mats, np.zeros(2 * grid.ny),
                               data.f[n], data.g[n])
        worst = max(worst, np.abs(stepped - field[n + 1]).max())
    return worst / grid.dx


class TestMarchOrder:
    def test_first_order_in_dx(self):
        # at fine dy the defect rate is dominated by the A*dx term
        ny = 33
        r1 = _defect_rate(33, ny)
        r2 = _defect_rate(65, ny)
        r3 = _defect_rate(129, ny)
        d1, d2 = r1 - r3, r2 - r3
        assert d1 > d2 > 0
        assert np.log2(d1 / d2) >= 0.9

    def test_second_order_in_dy(self):
        nx = 1025
        r1 = _defect_rate(nx, 5)
        r2 = _defect_rate(nx, 9)
        r3 = _defect_rate(nx, 17)
        d1, d2 = r1 - r3, r2 - r3
        assert d1 > d2 > 0
        assert np.log2(d1 / d2) >= 1.9
