"""Discrete and continuous moments of a two-direction scaling function."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .linalg import NotSimple, eigenvalues, eigenvector_for
from .mask import TwoDirectionSystem, condition_e

__all__ = [
    "MomentError",
    "MomentTable",
    "MAX_ORDER",
    "discrete_moments",
    "zeroth_moment",
    "continuous_moments",
    "approx_coefficients",
    "recursion_residual",
]

log = logging.getLogger(__name__)

MAX_ORDER = 30
EIG_ONE_TOL = 1e-6


class MomentError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MomentTable:
    """Moments up to order ``J``.

    ``Mplus[j]``/``Mminus[j]`` are the r x r discrete moments,
    ``m[j]`` the length-r continuous moments (which double as the
    approximation vectors).
    """

    d: int
    Mplus: np.ndarray  # (J+1, r, r)
    Mminus: np.ndarray
    m: np.ndarray  # (J+1, r)

    @property
    def J(self) -> int:
        return self.m.shape[0] - 1

    @property
    def r(self) -> int:
        return self.m.shape[1]

    @property
    def M(self) -> np.ndarray:
        return self.Mplus + self.Mminus

    def to_dict(self) -> dict:
        return {
            "J": self.J,
            "m": [list(map(float, v)) for v in self.m],
            "Mplus": [[list(map(float, row)) for row in M] for M in self.Mplus],
            "Mminus": [[list(map(float, row)) for row in M] for M in self.Mminus],
        }


def _check_order(J):
    if int(J) != J or J < 0:
        raise ValueError(f"moment order must be a non-negative integer, got {J!r}")
    if J > MAX_ORDER:
        raise ValueError(f"moment order {J} exceeds the supported maximum {MAX_ORDER}")


def discrete_moments(sys: TwoDirectionSystem, J: int) -> tuple:
    """``(Mplus, Mminus)``, each of shape ``(J+1, r, r)``.

    ``Mplus[j] = (1/sqrt d) * sum_k k**j P+_k`` and likewise for the
    negative direction.
    """
    _check_order(J)
    r = sys.r
    out = []
    for seq in (sys.phi_plus, sys.phi_minus):
        M = np.zeros((J + 1, r, r))
        for k, P in seq:
            for j in range(J + 1):
                M[j] += float(k) ** j * P
        out.append(M / math.sqrt(sys.d))
    return tuple(out)


def zeroth_moment(sys: TwoDirectionSystem) -> np.ndarray:
    """Normalized ``m_0``: eigenvector of ``M_0`` for eigenvalue 1 with ``m_0.m_0 = 1/2``.

    The sign makes the largest-magnitude component positive.
    """
    if not condition_e(sys).satisfied:
        log.warning("mask %r does not satisfy Condition E; m_0 may be meaningless", sys.name)
    Mp, Mm = discrete_moments(sys, 0)
    M0 = Mp[0] + Mm[0]
    w = eigenvalues(M0)
    nearest = min(w, key=lambda z: abs(z - 1))
    if abs(nearest - 1) > EIG_ONE_TOL:
        raise MomentError(f"M_0 has no eigenvalue within {EIG_ONE_TOL:g} of 1 (nearest {nearest:.6g})")
    close = [z for z in w if abs(z - 1) <= EIG_ONE_TOL]
    if len(close) > 1:
        raise MomentError(f"eigenvalue 1 of M_0 is not simple (eigenvalues {close})")
    try:
        v = eigenvector_for(M0, nearest.real)
    except NotSimple as exc:
        raise MomentError(f"eigenvalue 1 of M_0 is not simple: {exc}") from exc
    v = v / math.sqrt(2.0 * (v @ v))
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v


def continuous_moments(sys: TwoDirectionSystem, J: int) -> MomentTable:
    """Continuous moments ``m_0 .. m_J`` via the moment recursion.

    ``m_j`` solves ``(d^j I - (M+_0 + (-1)^j M-_0)) m_j = sum_{l<j} C(j,l) (M+_{j-l} + (-1)^l M-_{j-l}) m_l``.
    """
    _check_order(J)
    Mp, Mm = discrete_moments(sys, J)
    d, r = sys.d, sys.r
    m = np.zeros((J + 1, r))
    m[0] = zeroth_moment(sys)
    for j in range(1, J + 1):
        rhs = np.zeros(r)
        for ell in range(j):
            rhs += math.comb(j, ell) * (Mp[j - ell] + (-1) ** ell * Mm[j - ell]) @ m[ell]
        A = d ** j * np.eye(r) - (Mp[0] + (-1) ** j * Mm[0])
        if np.linalg.cond(A) > 1e12:
            raise MomentError(f"moment recursion is singular at order j={j}")
        m[j] = np.linalg.solve(A, rhs)
    return MomentTable(d, Mp, Mm, m)


def recursion_residual(table: MomentTable, j: int) -> float:
    """Norm of ``m_j - d^-j sum_l C(j,l) (M+_{j-l} + (-1)^l M-_{j-l}) m_l``."""
    acc = np.zeros(table.r)
    for ell in range(j + 1):
        acc += math.comb(j, ell) * (table.Mplus[j - ell] + (-1) ** ell * table.Mminus[j - ell]) @ table.m[ell]
    return float(np.linalg.norm(table.m[j] - acc / table.d ** j))


def approx_coefficients(table: MomentTable, j: int, k: int) -> tuple:
    """Coefficients ``(c+_{j,k}, c-_{j,k})`` reproducing ``x**j`` from shifts of phi(x) and phi(-x)."""
    if j > table.J:
        raise ValueError(f"order {j} exceeds the moment table order {table.J}")
    cplus = np.zeros(table.r)
    cminus = np.zeros(table.r)
    for ell in range(j + 1):
        w = math.comb(j, ell) * float(k) ** (j - ell)
        cplus += w * table.m[ell]
        cminus += w * (-1) ** ell * table.m[ell]
    return cplus, cminus
