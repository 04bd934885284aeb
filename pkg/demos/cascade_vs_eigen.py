"""
Two routes to the same function
===============================

The cascade iteration starts from a hat function and applies the
refinement operator until it stops changing.  The eigenvector approach
gets exact values on the same grid directly.  The two should agree.
"""

import numpy as np

from twodir import load_fixture
from twodir.cascade import cascade_init, cascade_step
from twodir.pointvals import phi_values

level = 5
for name in ("example-5.1", "example-5.2"):
    system = load_fixture(name)
    exact, _ = phi_values(system, level)
    state = cascade_init(system, level)
    print(name)
    while state.iteration < 60:
        state = cascade_step(system, state)
        err = np.max(np.abs(state.values - exact.values))
        if state.iteration % 5 == 0 or state.delta <= 1e-10:
            print(f"  iteration {state.iteration:2d}  change {state.delta:.2e}  distance to eigen table {err:.2e}")
        if state.delta <= 1e-10:
            break
