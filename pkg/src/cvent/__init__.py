"""Continuous-variable entanglement toolkit for double-Gaussian biphoton states.

Closed-form entanglement figures for a two-parameter family of bipartite
wavefunctions (a Gaussian pair state and a non-Gaussian extension), backed by
independent numerical oracles (reduced-kernel purity by Gauss-Hermite
quadrature, Schmidt spectra by Jacobi SVD, moment-based separability tests)
and a mapping from SPDC experiment parameters to entanglement percentages.
"""

from cvent.states import (
    Family,
    StateSpec,
    UnsupportedFamilyError,
    amplitude,
    amplitude_gradient,
    gem_closed,
    percent_entanglement,
    ph_value_closed,
    schmidt_number_squared_closed,
    widths_closed,
)
from cvent.quadrature import (
    ConvergenceError,
    ConvergenceResult,
    QuadratureError,
    QuadratureRule,
    converge,
    gauss_hermite,
    integrate_1d,
    integrate_2d,
)
from cvent.oracle import (
    ReducedKernel,
    SchmidtSpectrum,
    antidiagonal_width,
    cross_spectral_density,
    gem_numeric,
    marginal_width,
    moments,
    ph_blind_window,
    ph_criterion,
    reduced_density_kernel,
    schmidt_number_1d,
    schmidt_spectrum,
)
from cvent.spdc import (
    MeasuredWidths,
    SpdcSetup,
    WidthConvention,
    biphoton_gem,
    infer_gem_from_measurement,
    map_to_state,
    parse_length,
    required_pump_width,
    uncertainty_report,
)

__all__ = [
    "Family",
    "StateSpec",
    "UnsupportedFamilyError",
    "amplitude",
    "amplitude_gradient",
    "gem_closed",
    "percent_entanglement",
    "ph_value_closed",
    "schmidt_number_squared_closed",
    "widths_closed",
    "ConvergenceError",
    "ConvergenceResult",
    "QuadratureError",
    "QuadratureRule",
    "converge",
    "gauss_hermite",
    "integrate_1d",
    "integrate_2d",
    "ReducedKernel",
    "SchmidtSpectrum",
    "antidiagonal_width",
    "cross_spectral_density",
    "gem_numeric",
    "marginal_width",
    "moments",
    "ph_blind_window",
    "ph_criterion",
    "reduced_density_kernel",
    "schmidt_number_1d",
    "schmidt_spectrum",
    "MeasuredWidths",
    "SpdcSetup",
    "WidthConvention",
    "biphoton_gem",
    "infer_gem_from_measurement",
    "map_to_state",
    "parse_length",
    "required_pump_width",
    "uncertainty_report",
]

__version__ = "0.1.0"
