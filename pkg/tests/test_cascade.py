import math
import time

import numpy as np
import pytest

from twodir.cascade import CascadeState, cascade_init, cascade_run, cascade_step
from twodir.pointvals import phi_values

SQ2 = math.sqrt(2)


def test_init_scalar(sys51):
    st = cascade_init(sys51, 3)
    x = st.grid
    assert st.values[x == 0, 0][0] == pytest.approx(SQ2 / 2)
    assert st.values[x == 1, 0][0] == 0


def test_init_hat_zero_at_pm1(hat):
    st = cascade_init(hat, 2)
    x = st.grid
    assert st.values[x == -1, 0][0] == 0 and st.values[x == 1, 0][0] == 0
    assert st.values[x == 0, 0][0] == pytest.approx(SQ2 / 2)


def test_init_both_components(sys52):
    st = cascade_init(sys52, 2)
    np.testing.assert_array_equal(st.values[:, 0], st.values[:, 1])
    m0 = np.array([SQ2 / 2, 0])
    assert m0 @ st.table.integer_values().sum(axis=0) == pytest.approx(0.5)


def test_step_zero(sys52):
    st = cascade_init(sys52, 3)
    zero = CascadeState(st.table.__class__(**{**st.table.__dict__, "values": np.zeros_like(st.values)}))
    out = cascade_step(sys52, zero)
    assert not out.values.any()
    assert out.delta == 0


def test_step_linear(sys51):
    st = cascade_init(sys51, 4)
    a = cascade_step(sys51, st)
    scaled = CascadeState(st.table.__class__(**{**st.table.__dict__, "values": 3.0 * st.values}))
    b = cascade_step(sys51, scaled)
    np.testing.assert_allclose(b.values, 3.0 * a.values, rtol=1e-14, atol=1e-15)


def test_grid_is_stable(sys52):
    st = cascade_init(sys52, 3)
    nxt = cascade_step(sys52, cascade_step(sys52, st))
    np.testing.assert_array_equal(st.grid, nxt.grid)
    assert nxt.iteration == 2


def test_run_infinite_tol(sys51):
    st = cascade_run(sys51, 3, max_iter=50, tol=math.inf)
    assert st.iteration == 1 and st.converged


def test_run_rejects_zero_iterations(sys51):
    with pytest.raises(ValueError):
        cascade_run(sys51, 3, max_iter=0)


def test_delta_eventually_decreasing(fixture_sys):
    st = cascade_init(fixture_sys, 5)
    deltas = []
    for _ in range(25):
        st = cascade_step(fixture_sys, st)
        deltas.append(st.delta)
    tail = deltas[8:]
    assert all(b <= a for a, b in zip(tail, tail[1:]))


def test_agrees_with_eigen_values(fixture_sys):
    t0 = time.perf_counter()
    st = cascade_run(fixture_sys, 5, max_iter=60, tol=1e-10)
    elapsed = time.perf_counter() - t0
    eig, _ = phi_values(fixture_sys, 5)
    assert st.converged
    assert np.max(np.abs(st.values - eig.values)) <= 1e-4
    assert elapsed < 5


def test_52_thirty_steps(sys52):
    st = cascade_init(sys52, 5)
    for _ in range(30):
        st = cascade_step(sys52, st)
    eig, _ = phi_values(sys52, 5)
    assert np.max(np.abs(st.values - eig.values)) <= 1e-4


def test_off_grid_arguments_interpolate(sys51):
    # with dilation 2 every argument lands on the grid; a non-integer shift does not
    from twodir.cascade import _interp
    grid = np.array([0.0, 1.0, 2.0])
    vals = np.array([[0.0], [2.0], [0.0]])
    np.testing.assert_allclose(_interp(np.array([0.5, 1.25, -1.0, 3.0]), grid, vals)[:, 0], [1.0, 1.5, 0, 0])
