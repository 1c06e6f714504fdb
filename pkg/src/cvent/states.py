"""State families and every closed-form entanglement figure as pure functions.

Two bipartite families are supported, both parameterized by a correlation
width ``sigma`` (relative coordinate) and an anti-correlation width ``omega``
(center-of-mass coordinate), both real-valued and exchange symmetric:

* ``GAUSSIAN_EPR``: the normalized double Gaussian.
* ``NON_GAUSSIAN``: the same Gaussian envelope multiplied by (x1 + x2),
  which keeps the state entangled at every parameter point.

Lengths are in meters with hbar = 1 (momenta are wavenumbers); all formulas
here are either dimensionless or pure functions of sigma and omega, so
dimensionless inputs work equally well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Family(enum.Enum):
    GAUSSIAN_EPR = "gaussian"
    NON_GAUSSIAN = "nongaussian"


class UnsupportedFamilyError(ValueError):
    """Raised when a closed form exists only for one family."""


# Fault-injection hook: multiplies the normalization prefactor per family.
# Exists so the self-check suite can be shown to catch a broken normalization;
# must stay at 1.0 in ordinary use.
_NORM_TWEAK = {Family.GAUSSIAN_EPR: 1.0, Family.NON_GAUSSIAN: 1.0}


@dataclass(frozen=True)
class StateSpec:
    """Immutable (family, sigma, omega) triple; validated at construction."""

    family: Family
    sigma: float
    omega: float

    def __post_init__(self):
        if not isinstance(self.family, Family):
            raise ValueError(f"unknown family {self.family!r}")
        for name in ("sigma", "omega"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{name} must be a real number, got {value!r}")
            value = float(value)
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be finite and positive, got {value}")
            object.__setattr__(self, name, value)

    @property
    def ratio(self) -> float:
        """sigma / omega; every closed form can be written in this alone."""
        return self.sigma / self.omega


def _envelope(spec: StateSpec, x1, x2):
    d = x1 - x2
    s = x1 + x2
    return np.exp(-(d * d) / (4.0 * spec.sigma**2) - (s * s) / (4.0 * spec.omega**2))


def amplitude(spec: StateSpec, x1, x2):
    """Normalized real wavefunction value (units 1/length).

    Accepts scalars or broadcastable numpy arrays.
    """
    if spec.family is Family.GAUSSIAN_EPR:
        norm = _NORM_TWEAK[spec.family] / math.sqrt(math.pi * spec.sigma * spec.omega)
        return norm * _envelope(spec, x1, x2)
    norm = _NORM_TWEAK[spec.family] / math.sqrt(math.pi * spec.sigma * spec.omega**3)
    return norm * (x1 + x2) * _envelope(spec, x1, x2)


def amplitude_gradient(spec: StateSpec, x1, x2):
    """Analytic (d/dx1, d/dx2) of ``amplitude``; matches central differences."""
    d = np.asarray(x1) - np.asarray(x2)
    s = np.asarray(x1) + np.asarray(x2)
    dterm = d / (2.0 * spec.sigma**2)
    sterm = s / (2.0 * spec.omega**2)
    if spec.family is Family.GAUSSIAN_EPR:
        psi = amplitude(spec, x1, x2)
        return (psi * (-dterm - sterm), psi * (dterm - sterm))
    norm = _NORM_TWEAK[spec.family] / math.sqrt(math.pi * spec.sigma * spec.omega**3)
    base = norm * _envelope(spec, x1, x2)
    g1 = base * (1.0 + s * (-dterm - sterm))
    g2 = base * (1.0 + s * (dterm - sterm))
    return (g1, g2)


def gem_closed(spec: StateSpec) -> float:
    """Closed-form squared entanglement measure, in [0, 2]."""
    s2 = spec.sigma**2
    o2 = spec.omega**2
    if spec.family is Family.GAUSSIAN_EPR:
        return 2.0 * (spec.sigma - spec.omega) ** 2 / (s2 + o2)
    num = spec.sigma * spec.omega * (3.0 * o2 * o2 + 2.0 * o2 * s2 + 3.0 * s2 * s2)
    return 2.0 - num / (s2 + o2) ** 3


def percent_entanglement(e_squared: float) -> float:
    """Entanglement percentage E^2 * 50; rejects values outside [0, 2]."""
    if not (0.0 <= e_squared <= 2.0):
        raise ValueError(f"E^2 must lie in [0, 2], got {e_squared}")
    return e_squared * 50.0


def schmidt_number_squared_closed(spec: StateSpec) -> float:
    """Closed-form Schmidt mode count K = (r + 1/r)^2 / 4, Gaussian family only.

    Equals the square of the single-axis effective mode count 1/sum(c_n^4);
    see ``cvent.oracle.schmidt_number_1d`` for the spectral route.
    """
    if spec.family is not Family.GAUSSIAN_EPR:
        raise UnsupportedFamilyError(
            "no closed-form Schmidt number for the non-Gaussian family"
        )
    r = spec.ratio
    return 0.25 * (r + 1.0 / r) ** 2


def ph_value_closed(spec: StateSpec) -> float:
    """Closed-form second-moment separability value, Gaussian family only.

    Always <= 0 (the criterion is violated unless sigma == omega); units are
    hbar^2 with hbar = 1.
    """
    if spec.family is not Family.GAUSSIAN_EPR:
        raise UnsupportedFamilyError(
            "no closed-form criterion value for the non-Gaussian family; "
            "use the moment oracle"
        )
    r = spec.ratio
    return -((r - 1.0 / r) ** 2) / 16.0


@dataclass(frozen=True)
class Widths:
    marginal: float       # width of the single-particle position distribution
    conditional: float    # width of x1 given x2 = 0

    @property
    def ratio(self) -> float:
        """conditional / marginal; equals the reduced-state purity."""
        return self.conditional / self.marginal


def widths_closed(spec: StateSpec) -> Widths:
    """Marginal and conditional widths of the joint position distribution.

    Gaussian family only.  The ratio conditional/marginal is convention
    independent and equals 2*sigma*omega/(sigma^2 + omega^2).
    """
    if spec.family is not Family.GAUSSIAN_EPR:
        raise UnsupportedFamilyError("closed-form widths exist only for the Gaussian family")
    s2 = spec.sigma**2
    o2 = spec.omega**2
    marginal = math.sqrt((s2 + o2) / 2.0)
    conditional = math.sqrt(2.0 * s2 * o2 / (s2 + o2))
    return Widths(marginal=marginal, conditional=conditional)


def purity_closed(spec: StateSpec) -> float:
    """Reduced-state purity from the closed-form measure: 1 - E^2/2."""
    return 1.0 - 0.5 * gem_closed(spec)
