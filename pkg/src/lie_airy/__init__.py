"""Airy-type oscillatory integrals on vector spaces and hermitian matrices.

Main entry points:

* ``MultiPoly`` / ``parse_poly``: sparse real polynomials.
* ``classify``: growth-condition checker for phase polynomials.
* ``airy_1d`` / ``airy_nd``: evaluation over deformed integration cycles.
* ``matrix_airy_diag`` / ``matrix_airy_hermitian``: matrix Airy integrals.
* ``cartan``: discriminant, Weyl group and orbital-integral checks for U(n).
"""

__version__ = "0.1.0"

from .checker import CheckConfig, CheckReport, Verdict, classify
from .contour import EvenCycle, MajorantConstants, OddCycle, estimate_majorant, map_point, select_cycle, truncation_radius
from .errors import (
    CoincidenceError,
    DegreeError,
    DimensionError,
    LieAiryError,
    NotAiryError,
    NotHermitianError,
    PolynomialParseError,
    QuadratureError,
    TruncationError,
    UnusableCycleError,
)
from .oscillatory import EvalResult, Measure, QuadConfig, airy_1d, airy_nd, growth_scan
from .poly import MultiPoly, format_poly, parse_poly
from .reference import reference_ai, reference_ai_prime
from .spectral import (
    MatrixAiryConfig,
    kontsevich_pde_residual,
    matrix_airy_diag,
    matrix_airy_hermitian,
    one_dim_derivatives,
    vandermonde,
)

__all__ = [name for name in dir() if not name.startswith("_")]
