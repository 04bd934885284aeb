"""Point values, moments and derivatives of two-direction multiscaling
functions and multiwavelets, computed from their recursion coefficients."""

__version__ = "0.1.0"

from .expr import parse_expr, eval_expr
from .mask import (
    CoeffSeq,
    MaskError,
    TwoDirectionSystem,
    condition_e,
    deduced_block_coeff,
    load_system,
    loads_system,
    support_hull,
)
from .linalg import NotAnEigenvalue, NotSimple, eigenvalues, eigenvector_for
from .moments import MomentTable, approx_coefficients, continuous_moments, discrete_moments, zeroth_moment
from .pointvals import (
    NormalizationDegenerate,
    PointValueTable,
    assemble_T_phi,
    assemble_T_psi,
    integer_values,
    phi_values,
    refine,
    wavelet_values,
)
from .derivs import (
    assemble_T_deriv,
    derivative_integer_values,
    derivative_values,
    derivative_wavelet_values,
    refine_derivative,
)
from .cascade import cascade_init, cascade_run, cascade_step
from .fixtures import load_fixture
