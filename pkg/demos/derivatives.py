"""
Derivatives from the spectrum
=============================

D^n phi at the integers is an eigenvector of T_{D^n phi} for eigenvalue
d**-n.  When that eigenvalue is missing, the derivative cannot be computed
this way and the library says so.
"""

import numpy as np

from twodir import load_fixture
from twodir.derivs import derivative_integer_values, derivative_values, derivative_wavelet_values
from twodir.linalg import NotAnEigenvalue
from twodir.pointvals import phi_values

np.set_printoptions(precision=4, suppress=True)

system = load_fixture("example-5.1")
dphi, report = derivative_integer_values(system, 1)
print("spectrum of T_Dphi:", np.round([z.real for z in report.eigenvalues], 4))
print("raw eigenvector:", report.raw_vector)
print("normalizing constant:", report.normalizing_constant)
print("Dphi at 0..4:", dphi.values[:, 0] + 0.0)
print("Dpsi at 0..4:", derivative_wavelet_values(system, 1, 1, dphi).values[:, 0] + 0.0)

###############################################################################
# Compare with central differences of phi on a much finer grid.  The
# derivative is only Hoelder continuous, so the agreement improves
# linearly with the spacing.
coarse, _ = derivative_values(system, 1, 4)
for level in (8, 10, 12):
    phi, _ = phi_values(system, level)
    h = 1 / phi.scale
    v = phi.values[:, 0]
    step = 2 ** (level - 4)
    idx = np.arange(1, len(coarse.values) - 1) * step
    fd = (v[idx + 1] - v[idx - 1]) / (2 * h)
    print(f"level {level:2d}: max |finite difference - Dphi| = {np.max(np.abs(fd - coarse.values[1:-1, 0])):.3e}")

###############################################################################
# The second derivative does not exist in this sense.
try:
    derivative_integer_values(system, 2)
except NotAnEigenvalue as exc:
    print("second derivative:", exc)
