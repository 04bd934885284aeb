"""Point values of n-th derivatives of phi and psi.

``D^n phi`` at the integers is the eigenvector of ``T_{D^n phi}`` for
eigenvalue ``d**-n``.  Its scale is fixed by differentiating the
polynomial reproduction identity for ``x**n`` n times at ``x = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .linalg import DEFAULT_TOL
from .mask import TwoDirectionSystem, support_hull
from .moments import MomentTable, continuous_moments
from .pointvals import (
    DEGENERATE,
    MAX_LEVEL,
    NormalizationDegenerate,
    PointValueTable,
    SpectralReport,
    TransferMatrix,
    _eigen_integer_values,
    assemble_transfer,
    subdivide,
)

__all__ = [
    "MAX_DERIVATIVE",
    "DerivativeRequest",
    "assemble_T_deriv",
    "assemble_T_deriv_psi",
    "derivative_integer_values",
    "normalization_sum",
    "refine_derivative",
    "derivative_values",
    "derivative_wavelet_values",
]

MAX_DERIVATIVE = 8


@dataclass(frozen=True)
class DerivativeRequest:
    n: int
    s: int = None
    level: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or not 1 <= self.n <= MAX_DERIVATIVE:
            raise ValueError(f"derivative order must be in 1..{MAX_DERIVATIVE}, got {self.n!r}")
        if self.s is not None and self.s < 1:
            raise ValueError(f"wavelet index must be >= 1, got {self.s!r}")
        if int(self.level) != self.level or not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"level must be in 0..{MAX_LEVEL}, got {self.level!r}")


def _check_n(n):
    if int(n) != n or not 0 <= n <= MAX_DERIVATIVE:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIVATIVE}, got {n!r}")


def assemble_T_deriv(sys: TwoDirectionSystem, n: int) -> TransferMatrix:
    _check_n(n)
    a, b = support_hull(sys)
    return assemble_transfer(sys.phi_plus, sys.phi_minus, sys.d, a, b, sign=(-1) ** n)


def assemble_T_deriv_psi(sys: TwoDirectionSystem, n: int, s: int = 1, grid=None) -> TransferMatrix:
    _check_n(n)
    a, b = grid if grid is not None else support_hull(sys)
    plus, minus = sys.wavelet(s)
    return assemble_transfer(plus, minus, sys.d, a, b, sign=(-1) ** n)


def normalization_sum(table: PointValueTable, moments: MomentTable, n: int) -> float:
    """``sum_l C(n,l) (-1)^(n-l) m_l . sum_k k^(n-l) D^n phi(k)``; equals n!/2 when normalized."""
    ints = table.integer_values()
    k = np.arange(table.a, table.b + 1, dtype=float)
    total = 0.0
    for ell in range(n + 1):
        weighted = (k[:, None] ** (n - ell) * ints).sum(axis=0)
        total += math.comb(n, ell) * (-1) ** (n - ell) * float(moments.m[ell] @ weighted)
    return total


def derivative_integer_values(sys: TwoDirectionSystem, n: int, moments: MomentTable = None,
                              tol: float = DEFAULT_TOL):
    """Normalized ``D^n phi`` at the integers; returns ``(table, report)``.

    Raises :class:`~twodir.linalg.NotAnEigenvalue` when ``d**-n`` is not in
    the spectrum of ``T_{D^n phi}`` (phi is then not n times
    differentiable in this sense).
    """
    _check_n(n)
    if n == 0:
        raise ValueError("use pointvals.integer_values for n = 0")
    if moments is None:
        moments = continuous_moments(sys, n)
    if moments.J < n:
        raise ValueError(f"moment table has order {moments.J}, need at least {n}")
    T = assemble_T_deriv(sys, n)
    target = float(sys.d) ** -n
    raw, spectrum, res, sv = _eigen_integer_values(T, target, tol)
    kind = f"D{n}phi"
    unscaled = PointValueTable(T.a, T.b, sys.d, 0, raw.reshape(-1, sys.r), kind, normalized=False)
    denom = normalization_sum(unscaled, moments, n)
    report = SpectralReport(spectrum, target, raw, float("nan"), res, sv, T.matrix)
    if abs(denom) < DEGENERATE:
        raise NormalizationDegenerate(
            f"derivative normalization sum is {denom:.3e}; cannot normalize D^{n} phi", unscaled, report)
    c = math.factorial(n) / 2.0 / denom
    report = replace(report, normalizing_constant=c)
    return replace(unscaled, values=c * unscaled.values, normalized=True), report


def refine_derivative(sys: TwoDirectionSystem, table: PointValueTable, n: int) -> PointValueTable:
    """One subdivision step for ``D^n phi``."""
    _check_n(n)
    d = sys.d
    return subdivide(table, sys.phi_plus, sys.phi_minus, d ** n * math.sqrt(d), sign=(-1) ** n)


def derivative_values(sys: TwoDirectionSystem, n: int, level: int, moments: MomentTable = None,
                      tol: float = DEFAULT_TOL):
    """Normalized ``D^n phi`` on the level-``level`` grid; returns ``(table, report)``."""
    DerivativeRequest(n, None, level)
    table, report = derivative_integer_values(sys, n, moments, tol)
    for _ in range(level):
        table = refine_derivative(sys, table, n)
    return table, report


def derivative_wavelet_values(sys: TwoDirectionSystem, n: int, s: int, dphi_table: PointValueTable) -> PointValueTable:
    """``D^n psi^(s)`` on the grid of ``dphi_table`` (a ``D^n phi`` table)."""
    _check_n(n)
    plus, minus = sys.wavelet(s)
    d = sys.d
    kind = f"D{n}psi:{s}" if n else f"psi:{s}"
    if dphi_table.level == 0:
        T = assemble_T_deriv_psi(sys, n, s, (dphi_table.a, dphi_table.b))
        vals = d ** n * (T.matrix @ dphi_table.values.reshape(-1))
        return replace(dphi_table, values=vals.reshape(-1, sys.r), kind=kind)
    coarse = dphi_table.restrict(dphi_table.level - 1)
    return subdivide(coarse, plus, minus, d ** n * math.sqrt(d), sign=(-1) ** n, kind=kind)
