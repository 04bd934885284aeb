"""Point values of phi and psi on dyadic grids by the eigenvalue approach.

Values at the integers come from the eigenvector of the transfer matrix
``T_phi`` for eigenvalue 1, fixed in scale by ``m_0 . sum_k phi(k) = m_0 . m_0``.
Values at ``k/d``, ``k/d^2``, ... follow by applying the refinement
equation, which only ever needs values on the next coarser grid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .linalg import DEFAULT_TOL, EigenvectorError, eigenvalues, eigenvector_for, residual
from .mask import CoeffSeq, TwoDirectionSystem, condition_e, support_hull, support_interval
from .moments import zeroth_moment

__all__ = [
    "NormalizationDegenerate",
    "TransferMatrix",
    "PointValueTable",
    "SpectralReport",
    "MAX_LEVEL",
    "assemble_transfer",
    "assemble_T_phi",
    "assemble_T_psi",
    "integer_values",
    "refine",
    "phi_values",
    "wavelet_values",
    "subdivide",
    "raw_scaled",
]

log = logging.getLogger(__name__)

MAX_LEVEL = 14
ENDPOINT_ZERO = 1e-10
DEGENERATE = 1e-12


class NormalizationDegenerate(ArithmeticError):
    """The normalizing inner product vanishes; ``table`` holds the unnormalized values."""

    def __init__(self, message, table=None, report=None):
        super().__init__(message)
        self.table = table
        self.report = report


@dataclass(frozen=True)
class TransferMatrix:
    a: int
    b: int
    r: int
    blocks: np.ndarray  # (nb, nb, r, r), block (l, k) for grid points a+l, a+k

    @property
    def matrix(self) -> np.ndarray:
        nb = self.b - self.a + 1
        return self.blocks.transpose(0, 2, 1, 3).reshape(nb * self.r, nb * self.r)

    def block(self, ell: int, k: int) -> np.ndarray:
        return self.blocks[ell - self.a, k - self.a]


@dataclass(frozen=True)
class PointValueTable:
    """Values of a length-r vector function at ``a + i * d**-level``, ``i = 0..(b-a) d**level``."""

    a: int
    b: int
    d: int
    level: int
    values: np.ndarray  # (npoints, r)
    kind: str = "phi"
    normalized: bool = True

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        expected = (self.b - self.a) * self.d ** self.level + 1
        if v.shape[0] != expected:
            raise ValueError(f"expected {expected} grid values, got {v.shape[0]}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def r(self) -> int:
        return self.values.shape[1]

    @property
    def scale(self) -> int:
        return self.d ** self.level

    @property
    def numerators(self) -> np.ndarray:
        """Grid points as integers over ``d**level``."""
        return self.a * self.scale + np.arange(self.values.shape[0])

    @property
    def grid(self) -> np.ndarray:
        return self.numerators / self.scale

    def at(self, numerators) -> np.ndarray:
        """Values at ``numerators / d**level``; zero off the grid interval."""
        j = np.asarray(numerators, dtype=np.int64) - self.a * self.scale
        inside = (j >= 0) & (j < self.values.shape[0])
        out = np.zeros(j.shape + (self.r,))
        out[inside] = self.values[j[inside]]
        return out

    def restrict(self, level: int) -> "PointValueTable":
        """Coarser table holding the values at the level-``level`` points."""
        if not 0 <= level <= self.level:
            raise ValueError(f"cannot restrict level {self.level} table to level {level}")
        step = self.d ** (self.level - level)
        return replace(self, level=level, values=self.values[::step])

    def integer_values(self) -> np.ndarray:
        return self.restrict(0).values


@dataclass(frozen=True)
class SpectralReport:
    """How the integer values were obtained.

    ``raw_vector`` is the eigenvector scaled so its last nonzero entry is 1;
    the returned values equal ``normalizing_constant * raw_vector``.
    """

    eigenvalues: list
    target: float
    raw_vector: np.ndarray
    normalizing_constant: float
    residual: float
    singular_values: np.ndarray = field(repr=False, default=None)
    matrix: np.ndarray = field(repr=False, default=None)

    def spectrum_dicts(self) -> list:
        return [{"re": float(z.real), "im": float(z.imag)} for z in self.eigenvalues]


# -- transfer matrices ---------------------------------------------------------------


def assemble_transfer(plus: CoeffSeq, minus: CoeffSeq, d: int, a: int, b: int, sign: int = 1) -> TransferMatrix:
    """Block ``(l, k)`` is ``sqrt(d) * (plus[d l - k] + sign * minus[d l + k])``."""
    r = plus.r
    nb = b - a + 1
    blocks = np.zeros((nb, nb, r, r))
    s = math.sqrt(d)
    for ell in range(a, b + 1):
        for k in range(a, b + 1):
            blocks[ell - a, k - a] = s * (plus[d * ell - k] + sign * minus[d * ell + k])
    return TransferMatrix(a, b, r, blocks)


def assemble_T_phi(sys: TwoDirectionSystem) -> TransferMatrix:
    a, b = support_hull(sys)
    return assemble_transfer(sys.phi_plus, sys.phi_minus, sys.d, a, b)


def assemble_T_psi(sys: TwoDirectionSystem, s: int = 1, grid=None) -> TransferMatrix:
    a, b = grid if grid is not None else support_hull(sys)
    plus, minus = sys.wavelet(s)
    return assemble_transfer(plus, minus, sys.d, a, b)


# -- eigenvector + normalization ---------------------------------------------------------


def raw_scaled(v: np.ndarray) -> np.ndarray:
    """Scale ``v`` so that its last entry above the zero threshold equals 1."""
    nz = np.flatnonzero(np.abs(v) > ENDPOINT_ZERO * np.max(np.abs(v)))
    return v / v[nz[-1]]


def _zero_endpoints(v: np.ndarray, r: int) -> np.ndarray:
    v = v.copy()
    for blk in (slice(0, r), slice(len(v) - r, len(v))):
        part = v[blk]
        part[np.abs(part) < ENDPOINT_ZERO] = 0.0
    return v


def _eigen_integer_values(T: TransferMatrix, target: float, tol: float):
    A = T.matrix
    spectrum = eigenvalues(A)
    try:
        v = eigenvector_for(A, target, tol)
    except EigenvectorError as exc:
        exc.spectrum = spectrum
        raise
    sv = np.linalg.svd(A - target * np.eye(A.shape[0]), compute_uv=False)
    v = _zero_endpoints(v, T.r)
    return raw_scaled(v), spectrum, residual(A, target, v), sv


def integer_values(sys: TwoDirectionSystem, tol: float = DEFAULT_TOL, m0=None):
    """Normalized phi at the integers of the support hull.

    Returns ``(table, report)``; the table satisfies
    ``m_0 . sum_k phi(k) = m_0 . m_0``.
    """
    if not condition_e(sys).satisfied:
        log.warning("mask %r does not satisfy Condition E", sys.name)
    T = assemble_T_phi(sys)
    raw, spectrum, res, sv = _eigen_integer_values(T, 1.0, tol)
    if m0 is None:
        m0 = zeroth_moment(sys)
    m0 = np.asarray(m0, dtype=float)
    blocks = raw.reshape(-1, sys.r)
    denom = float(m0 @ blocks.sum(axis=0))
    report = SpectralReport(spectrum, 1.0, raw, float("nan"), res, sv, T.matrix)
    if abs(denom) < DEGENERATE:
        table = PointValueTable(T.a, T.b, sys.d, 0, blocks, "phi", normalized=False)
        raise NormalizationDegenerate(
            f"m_0 . sum_k v(k) = {denom:.3e}; the eigenvector cannot be normalized", table, report)
    c = float(m0 @ m0) / denom
    report = replace(report, normalizing_constant=c)
    return PointValueTable(T.a, T.b, sys.d, 0, c * blocks, "phi"), report


# -- subdivision -------------------------------------------------------------------


def subdivide(table: PointValueTable, plus: CoeffSeq, minus: CoeffSeq, scale: float, sign: int = 1,
              kind: str = None) -> PointValueTable:
    """One refinement step from ``table`` (level L) to level L+1.

    ``f(x) = scale * sum_k [plus_k g(d x - k) + sign * minus_k g(k - d x)]``
    where ``g`` is the function tabulated by ``table``.  Both arguments fall
    exactly on the level-L grid.
    """
    d, L = table.d, table.level
    fine = PointValueTable(table.a, table.b, d, L + 1, np.zeros(((table.b - table.a) * d ** (L + 1) + 1, table.r)),
                           kind or table.kind, table.normalized)
    # x = i / d^(L+1) so d x = i / d^L: coarse numerators are i - k d^L and k d^L - i
    i = fine.numerators
    out = np.zeros((len(i), table.r))
    step = d ** L
    for k, P in plus:
        out += table.at(i - k * step) @ P.T
    for k, P in minus:
        out += sign * (table.at(k * step - i) @ P.T)
    return replace(fine, values=scale * out)


def refine(sys: TwoDirectionSystem, table: PointValueTable) -> PointValueTable:
    """Values of phi one level finer, from the refinement equation."""
    if table.kind != "phi":
        raise ValueError(f"refine expects a phi table, got kind {table.kind!r}")
    return subdivide(table, sys.phi_plus, sys.phi_minus, math.sqrt(sys.d))


def _check_level(level):
    if int(level) != level or level < 0 or level > MAX_LEVEL:
        raise ValueError(f"level must be an integer in 0..{MAX_LEVEL}, got {level!r}")


def phi_values(sys: TwoDirectionSystem, level: int, tol: float = DEFAULT_TOL):
    """Normalized phi on the level-``level`` grid; returns ``(table, report)``."""
    _check_level(level)
    table, report = integer_values(sys, tol)
    for _ in range(level):
        table = refine(sys, table)
    return table, report


def _check_wavelet_support(sys, s, a, b):
    lo, hi, _ = support_interval(sys)
    plus, minus = sys.wavelet(s)
    d = sys.d
    los, his = [], []
    if len(plus):
        los.append((lo + plus.kmin) / d)
        his.append((hi + plus.kmax) / d)
    if len(minus):
        los.append((minus.kmin - hi) / d)
        his.append((minus.kmax - lo) / d)
    if los and (min(los) < a - 1e-9 or max(his) > b + 1e-9):
        log.warning("psi^(%d) of %r may extend beyond the grid [%d, %d]; values outside are dropped",
                    s, sys.name, a, b)


def wavelet_values(sys: TwoDirectionSystem, s: int, phi_table: PointValueTable) -> PointValueTable:
    """psi^(s) on the grid of ``phi_table``.

    At level 0 this is the product ``T_psi @ phi(integers)``; at level L >= 1
    psi is one subdivision step (wavelet mask) applied to phi at level L-1.
    """
    plus, minus = sys.wavelet(s)
    _check_wavelet_support(sys, s, phi_table.a, phi_table.b)
    kind = f"psi:{s}"
    if phi_table.level == 0:
        T = assemble_T_psi(sys, s, (phi_table.a, phi_table.b))
        vals = T.matrix @ phi_table.values.reshape(-1)
        return replace(phi_table, values=vals.reshape(-1, sys.r), kind=kind)
    coarse = phi_table.restrict(phi_table.level - 1)
    return subdivide(coarse, plus, minus, math.sqrt(sys.d), kind=kind)
