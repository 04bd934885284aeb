"""
Point values of a scalar two-direction scaling function
=======================================================

The builtin mask ``example-5.1`` is a scalar (r = 1) scaling function with
dilation 2.  Its values at the integers are an eigenvector of the transfer
matrix, and everything finer follows from the refinement equation.
"""

import numpy as np

from twodir import load_fixture
from twodir.mask import condition_e, support_hull
from twodir.moments import continuous_moments
from twodir.pointvals import assemble_T_phi, phi_values, wavelet_values

np.set_printoptions(precision=4, suppress=True)

system = load_fixture("example-5.1")
print(system.name, "d =", system.d, "r =", system.r)
print("support hull:", support_hull(system))

# Condition E: 1 is a simple eigenvalue, everything else strictly inside
# the unit disk.
print(condition_e(system))

###############################################################################
# Moments.  m_0 is fixed by m_0 . m_0 = 1/2; the higher ones come from the
# moment recursion.
mt = continuous_moments(system, 2)
print("m_0, m_1, m_2 =", mt.m[:, 0])

###############################################################################
# The transfer matrix and its spectrum.
T = assemble_T_phi(system)
print("T_phi =")
print(T.matrix)

table, report = phi_values(system, 0)
print("eigenvalues:", np.round([z.real for z in report.eigenvalues], 4))
print("phi at 0..4:", table.values[:, 0])

###############################################################################
# Refine to spacing 1/8 and pick out a few points.
fine, _ = phi_values(system, 3)
for x, v in list(zip(fine.grid, fine.values[:, 0]))[::4]:
    print(f"phi({x:5.3f}) = {v: .6f}")

###############################################################################
# The wavelet on the same grid.
psi = wavelet_values(system, 1, fine)
print("psi at the integers:", psi.integer_values()[:, 0])
