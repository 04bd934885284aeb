"""Cascade iteration for approximate values of phi on a fixed grid.

Starts from the hat function and repeatedly applies the two-direction
refinement operator.  Arguments ``d x - k`` and ``k - d x`` that miss the
grid are linearly interpolated; anything outside ``[a, b]`` is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .mask import TwoDirectionSystem, support_hull
from .moments import zeroth_moment
from .pointvals import MAX_LEVEL, PointValueTable

__all__ = ["CascadeState", "cascade_init", "cascade_step", "cascade_run"]


@dataclass(frozen=True)
class CascadeState:
    table: PointValueTable
    iteration: int = 0
    delta: float = math.inf
    converged: bool = False

    @property
    def values(self) -> np.ndarray:
        return self.table.values

    @property
    def grid(self) -> np.ndarray:
        return self.table.grid


def cascade_init(sys: TwoDirectionSystem, level: int, m0=None) -> CascadeState:
    """Hat function in every component, scaled so ``m_0 . sum_k f(k) = 1/2``."""
    if int(level) != level or not 1 <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in 1..{MAX_LEVEL}, got {level!r}")
    a, b = support_hull(sys)
    npts = (b - a) * sys.d ** level + 1
    x = a + np.arange(npts) / sys.d ** level
    hat = np.maximum(1.0 - np.abs(x), 0.0)
    values = np.repeat(hat[:, None], sys.r, axis=1)
    table = PointValueTable(a, b, sys.d, level, values, "phi", normalized=False)
    m0 = zeroth_moment(sys) if m0 is None else np.asarray(m0, dtype=float)
    s = float(m0 @ table.integer_values().sum(axis=0))
    if s == 0:
        raise ArithmeticError("hat start has zero m_0 weight; cannot scale the cascade")
    return CascadeState(replace(table, values=values * (0.5 / s), normalized=True))


def _interp(x, grid, values):
    return np.stack([np.interp(x, grid, values[:, j], left=0.0, right=0.0) for j in range(values.shape[1])], axis=1)


def cascade_step(sys: TwoDirectionSystem, state: CascadeState) -> CascadeState:
    table = state.table
    x = table.grid
    f = table.values
    dx = sys.d * x
    out = np.zeros_like(f)
    for k, P in sys.phi_plus:
        out += _interp(dx - k, x, f) @ P.T
    for k, P in sys.phi_minus:
        out += _interp(k - dx, x, f) @ P.T
    out *= math.sqrt(sys.d)
    delta = float(np.max(np.abs(out - f))) if f.size else 0.0
    return CascadeState(replace(table, values=out), state.iteration + 1, delta)


def cascade_run(sys: TwoDirectionSystem, level: int, max_iter: int = 60, tol: float = 1e-10,
                m0=None) -> CascadeState:
    """Iterate until the sup-norm change is at most ``tol`` or ``max_iter`` steps."""
    if int(max_iter) != max_iter or max_iter < 1:
        raise ValueError(f"max_iter must be a positive integer, got {max_iter!r}")
    state = cascade_init(sys, level, m0)
    while state.iteration < max_iter:
        state = cascade_step(sys, state)
        if state.delta <= tol:
            return replace(state, converged=True)
    return state
