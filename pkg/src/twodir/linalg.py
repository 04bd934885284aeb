"""Small dense eigenproblems with explicit failure modes."""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "EigenvectorError",
    "NotAnEigenvalue",
    "NotSimple",
    "eigenvalues",
    "eigenvector_for",
    "residual",
]

DEFAULT_TOL = 1e-7


class EigenvectorError(ArithmeticError):
    """Base for targeted eigenvector failures.

    ``singular_values`` are those of ``A - lam*I`` in descending order and
    ``threshold`` is the absolute cutoff that was applied to them.
    """

    def __init__(self, message, lam, singular_values, threshold, spectrum=None):
        self.lam = lam
        self.singular_values = np.asarray(singular_values)
        self.threshold = threshold
        self.spectrum = spectrum
        smallest = ", ".join(f"{s:.3e}" for s in self.singular_values[-3:][::-1])
        super().__init__(f"{message} (lambda={lam:.6g}; smallest singular values {smallest}; threshold {threshold:.3e})")


class NotAnEigenvalue(EigenvectorError):
    pass


class NotSimple(EigenvectorError):
    pass


def _check(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def _sort_key(z):
    return (-abs(z), -z.real, -z.imag)


def eigenvalues(A) -> list[complex]:
    """All eigenvalues with multiplicity, by descending modulus then real part."""
    A = _check(A)
    w = np.linalg.eigvals(A)
    # exact-zero imaginary parts keep the ordering deterministic for real spectra
    w = [complex(z.real, 0.0) if z.imag == 0 else complex(z) for z in w]
    return sorted(w, key=_sort_key)


def _scale(A: np.ndarray) -> float:
    norm = np.linalg.norm(A, 2)
    return norm if norm > 0 else 1.0


def eigenvector_for(A, lam: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unit null vector of ``A - lam*I`` when ``lam`` is a simple eigenvalue.

    Singular values of ``A - lam*I`` below ``tol * ||A||_2`` count as zero.
    Exactly one must be zero; otherwise :class:`NotAnEigenvalue` (none) or
    :class:`NotSimple` (two or more) is raised.  The sign is fixed so that the
    entry of largest magnitude is positive.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = _check(A)
    n = A.shape[0]
    lam = float(lam)
    _, s, vh = np.linalg.svd(A - lam * np.eye(n))
    threshold = tol * _scale(A)
    nzero = int(np.sum(s <= threshold))
    if nzero == 0:
        raise NotAnEigenvalue(f"{lam:.6g} is not an eigenvalue", lam, s, threshold)
    if nzero > 1:
        raise NotSimple(f"eigenvalue {lam:.6g} has a {nzero}-dimensional eigenspace", lam, s, threshold)
    v = vh[-1].copy()
    i = int(np.argmax(np.abs(v)))
    if v[i] < 0:
        v = -v
    return v


def residual(A, lam: float, v) -> float:
    A = np.asarray(A, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(np.linalg.norm(A @ v - lam * v))
