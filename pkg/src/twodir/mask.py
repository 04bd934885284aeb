"""Two-direction refinement masks: data model, JSON I/O and validation.

A mask file looks like::

    {
      "name": "example",
      "dilation": 2,
      "multiplicity": 1,
      "phi": {"plus": {"1": [["0.5"]]}, "minus": {"2": [[0.5]]}},
      "psi": [{"plus": {...}, "minus": {...}}]
    }

Matrices are row-major; every coefficient is either a JSON number or an
expression string understood by :mod:`twodir.expr`.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .expr import ExprError, evaluate
from .linalg import eigenvalues

__all__ = [
    "MaskError",
    "CoeffSeq",
    "TwoDirectionSystem",
    "ConditionEReport",
    "load_system",
    "loads_system",
    "system_from_dict",
    "system_to_dict",
    "dump_system",
    "deduced_block_coeff",
    "condition_e",
    "support_interval",
    "support_hull",
    "TOL_EIG",
    "TOL_GAP",
]

log = logging.getLogger(__name__)

TOL_EIG = 1e-8
TOL_GAP = 1e-8


class MaskError(ValueError):
    """Schema, dimension or coefficient problem in a mask description."""


@dataclass(frozen=True)
class CoeffSeq:
    """Finitely supported sequence ``k -> r x r`` matrix.

    All-zero matrices are dropped on construction so ``kmin``/``kmax``
    describe the true support.
    """

    r: int
    entries: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, m in sorted(self.entries.items()):
            m = np.array(m, dtype=float)
            if m.shape != (self.r, self.r):
                raise MaskError(f"coefficient at k={k} has shape {m.shape}, expected ({self.r}, {self.r})")
            if np.any(m != 0):
                m.setflags(write=False)
                clean[int(k)] = m
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, k: int) -> np.ndarray:
        m = self.entries.get(k)
        return m if m is not None else np.zeros((self.r, self.r))

    def __contains__(self, k) -> bool:
        return k in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    @property
    def kmin(self):
        return min(self.entries) if self.entries else None

    @property
    def kmax(self):
        return max(self.entries) if self.entries else None

    def scaled(self, c: float) -> "CoeffSeq":
        return CoeffSeq(self.r, {k: c * m for k, m in self.entries.items()})

    def shifted(self, t: int) -> "CoeffSeq":
        return CoeffSeq(self.r, {k + t: m for k, m in self.entries.items()})


@dataclass(frozen=True)
class TwoDirectionSystem:
    name: str
    d: int
    r: int
    phi_plus: CoeffSeq
    phi_minus: CoeffSeq
    wavelets: tuple = ()

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise MaskError(f"dilation must be an integer >= 2, got {self.d!r}")
        if int(self.r) != self.r or self.r < 1:
            raise MaskError(f"multiplicity must be an integer >= 1, got {self.r!r}")
        object.__setattr__(self, "wavelets", tuple(tuple(w) for w in self.wavelets))
        seqs = [self.phi_plus, self.phi_minus] + [s for w in self.wavelets for s in w]
        if any(s.r != self.r for s in seqs):
            raise MaskError("all coefficient sequences must share the multiplicity r")
        if self.wavelets and len(self.wavelets) != self.d - 1:
            raise MaskError(f"expected {self.d - 1} wavelet mask pairs, got {len(self.wavelets)}")
        if not len(self.phi_plus) and not len(self.phi_minus):
            raise MaskError("phi mask is identically zero")

    @property
    def N(self) -> int:
        """Largest |k| over the phi coefficients."""
        return max(abs(k) for seq in (self.phi_plus, self.phi_minus) for k, _ in seq)

    def wavelet(self, s: int) -> tuple:
        if not self.wavelets:
            raise MaskError(f"system {self.name!r} has no wavelet masks")
        if not 1 <= s <= self.d - 1:
            raise MaskError(f"wavelet index must be in 1..{self.d - 1}, got {s}")
        return self.wavelets[s - 1]

    def scaled(self, c: float) -> "TwoDirectionSystem":
        """Copy with all phi coefficients multiplied by ``c``."""
        return TwoDirectionSystem(self.name, self.d, self.r, self.phi_plus.scaled(c),
                                  self.phi_minus.scaled(c), self.wavelets)


# -- JSON I/O ---------------------------------------------------------------


def _read_matrix(raw, r: int, where: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != r or any(not isinstance(row, list) or len(row) != r for row in raw):
        shape = (len(raw), len(raw[0]) if raw and isinstance(raw[0], list) else 0) if isinstance(raw, list) else "?"
        raise MaskError(f"{where}: dimension mismatch, expected {r}x{r} matrix, got shape {shape}")
    out = np.empty((r, r))
    for i, row in enumerate(raw):
        for j, coef in enumerate(row):
            try:
                out[i, j] = evaluate(coef)
            except (ExprError, TypeError) as exc:
                raise MaskError(f"{where}[{i}][{j}]: {exc}") from exc
    return out


def _read_seq(raw, r: int, where: str) -> CoeffSeq:
    if raw is None:
        return CoeffSeq(r, {})
    if not isinstance(raw, dict):
        raise MaskError(f"{where}: expected an object mapping integer k to a matrix")
    entries = {}
    for key, mat in raw.items():
        try:
            k = int(key)
        except ValueError:
            raise MaskError(f"{where}: key {key!r} is not an integer") from None
        if k in entries:
            raise MaskError(f"{where}: duplicate index {k}")
        entries[k] = _read_matrix(mat, r, f"{where}.{key}")
    return CoeffSeq(r, entries)


def _read_pair(raw, r: int, where: str) -> tuple:
    if not isinstance(raw, dict):
        raise MaskError(f"{where}: expected an object with 'plus' and 'minus'")
    unknown = set(raw) - {"plus", "minus"}
    if unknown:
        raise MaskError(f"{where}: unknown keys {sorted(unknown)}")
    return _read_seq(raw.get("plus"), r, f"{where}.plus"), _read_seq(raw.get("minus"), r, f"{where}.minus")


def system_from_dict(doc: dict) -> TwoDirectionSystem:
    if not isinstance(doc, dict):
        raise MaskError("mask document must be a JSON object")
    for key in ("dilation", "multiplicity", "phi"):
        if key not in doc:
            raise MaskError(f"missing required key {key!r}")
    d, r = doc["dilation"], doc["multiplicity"]
    for key, v in (("dilation", d), ("multiplicity", r)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise MaskError(f"{key!r} must be an integer, got {v!r}")
    if r < 1:
        raise MaskError(f"'multiplicity' must be >= 1, got {r}")
    plus, minus = _read_pair(doc["phi"], r, "phi")
    psi = doc.get("psi", [])
    if not isinstance(psi, list):
        raise MaskError("'psi' must be a list")
    wavelets = [_read_pair(w, r, f"psi[{i}]") for i, w in enumerate(psi)]
    return TwoDirectionSystem(str(doc.get("name", "")), d, r, plus, minus, wavelets)


def loads_system(text: str) -> TwoDirectionSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaskError(f"invalid JSON: {exc}") from exc
    return system_from_dict(doc)


def load_system(path) -> TwoDirectionSystem:
    """Read a mask file (UTF-8 JSON)."""
    return loads_system(Path(path).read_text(encoding="utf-8"))


def _seq_to_dict(seq: CoeffSeq) -> dict:
    return {str(k): [[float(x) for x in row] for row in m] for k, m in seq}


def system_to_dict(sys: TwoDirectionSystem) -> dict:
    doc = {
        "name": sys.name,
        "dilation": sys.d,
        "multiplicity": sys.r,
        "phi": {"plus": _seq_to_dict(sys.phi_plus), "minus": _seq_to_dict(sys.phi_minus)},
    }
    if sys.wavelets:
        doc["psi"] = [{"plus": _seq_to_dict(p), "minus": _seq_to_dict(m)} for p, m in sys.wavelets]
    return doc


def dump_system(sys: TwoDirectionSystem, path) -> None:
    Path(path).write_text(json.dumps(system_to_dict(sys), indent=2) + "\n", encoding="utf-8")


# -- structure ----------------------------------------------------------------


def deduced_block_coeff(sys: TwoDirectionSystem, k: int) -> np.ndarray:
    """Coefficient ``k`` of the one-direction refinement equation for ``[phi(x); phi(-x)]``."""
    return np.block([
        [sys.phi_plus[k], sys.phi_minus[k]],
        [sys.phi_minus[-k], sys.phi_plus[-k]],
    ])


@dataclass(frozen=True)
class ConditionEReport:
    eigenvalues: list
    satisfied: bool
    gap: float
    matrix: np.ndarray = field(repr=False, compare=False, default=None)

    def __str__(self):
        eig = ", ".join(_fmt_complex(z) for z in self.eigenvalues)
        return f"satisfied={str(self.satisfied).lower()} gap={self.gap:.6g} eigenvalues=[{eig}]"


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}j"


def condition_e(sys: TwoDirectionSystem, tol_eig: float = TOL_EIG, tol_gap: float = TOL_GAP) -> ConditionEReport:
    """Check Condition E on ``(1/sqrt d) * sum_k [[P+_k, P-_k], [P-_k, P+_k]]``.

    The index is deliberately not reflected in the lower blocks.
    """
    r = sys.r
    Pp = sum((m for _, m in sys.phi_plus), np.zeros((r, r)))
    Pm = sum((m for _, m in sys.phi_minus), np.zeros((r, r)))
    A = np.block([[Pp, Pm], [Pm, Pp]]) / math.sqrt(sys.d)
    w = eigenvalues(A)
    near_one = [z for z in w if abs(z - 1) <= tol_eig]
    others = [abs(z) for z in w if abs(z - 1) > tol_eig]
    second = max(others, default=0.0)
    satisfied = len(near_one) == 1 and second <= 1 - tol_gap
    return ConditionEReport(w, satisfied, 1.0 - second, A)


def support_interval(sys: TwoDirectionSystem, tol: float = 1e-12, max_iter: int = 200) -> tuple:
    """Fixed point ``(L, U)`` of the interval map bounding the support of phi.

    Returns ``(L, U, converged)``.  Without convergence the starting
    interval ``[-N/(d-1), N/(d-1)]`` is returned.
    """
    d = sys.d
    start = sys.N / (d - 1)
    lo, hi = -start, start
    plus, minus = sys.phi_plus, sys.phi_minus
    for _ in range(max_iter):
        los, his = [], []
        if len(plus):
            los.append((lo + plus.kmin) / d)
            his.append((hi + plus.kmax) / d)
        if len(minus):
            los.append((minus.kmin - hi) / d)
            his.append((minus.kmax - lo) / d)
        new_lo, new_hi = min(los), max(his)
        done = abs(new_lo - lo) <= tol and abs(new_hi - hi) <= tol
        lo, hi = new_lo, new_hi
        if done:
            return lo, hi, True
    log.warning("support interval of %r did not converge; using [-N/(d-1), N/(d-1)]", sys.name)
    return -start, start, False


def support_hull(sys: TwoDirectionSystem) -> tuple:
    """Integer grid bounds ``(a, b)`` containing the support of phi."""
    lo, hi, _ = support_interval(sys)
    # snap values that converged onto an integer from either side
    lo_r, hi_r = round(lo), round(hi)
    a = lo_r if abs(lo - lo_r) <= 1e-9 else math.floor(lo)
    b = hi_r if abs(hi - hi_r) <= 1e-9 else math.ceil(hi)
    return int(a), int(b)
