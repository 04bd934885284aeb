"""
A multiscaling function of multiplicity two
===========================================

``example-5.2`` has 2 x 2 coefficient matrices with surd entries.  The
integer values are available in closed form, which makes it a good check
of the eigenvector normalization.
"""

import math

import numpy as np

from twodir import load_fixture
from twodir.moments import continuous_moments
from twodir.pointvals import integer_values, phi_values, wavelet_values

np.set_printoptions(precision=6, suppress=True)

system = load_fixture("example-5.2")
mt = continuous_moments(system, 2)
print("moments (rows m_0, m_1, m_2):")
print(mt.m)

table, report = integer_values(system)
print("raw eigenvector:", report.raw_vector)
print("normalizing constant:", report.normalizing_constant, " -sqrt(6)/2 =", -math.sqrt(6) / 2)
print("phi(1) =", table.values[1], " expected", [math.sqrt(2) / 2, -math.sqrt(6) / 2])

psi = wavelet_values(system, 1, table)
print("psi(1) =", psi.values[1], " expected", [math.sqrt(6) / 2, math.sqrt(2) / 2])

###############################################################################
# Both components on a grid of spacing 1/4.
fine, _ = phi_values(system, 2)
for x, (a, b) in zip(fine.grid, fine.values):
    print(f"x = {x:4.2f}   phi_1 = {a: .6f}   phi_2 = {b: .6f}")
