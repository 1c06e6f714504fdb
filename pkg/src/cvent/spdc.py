"""Maps SPDC experiment parameters to pair-state parameters and entanglement.

The down-converted biphoton along one transverse axis is the Gaussian pair
state with correlation width sigma = sqrt(L * lambda_p / 6 pi) and
anti-correlation width Omega equal to the full pump-beam width (twice the
waist sigma_p).  Because published experiment descriptions are inconsistent
about which width a quoted number means, the convention is an explicit tag
on the setup, never inferred.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from cvent.report import CLOSED_FORM, EntanglementReport, Quantity, build_report
from cvent.rootfind import bisect
from cvent.states import Family, StateSpec, UnsupportedFamilyError

_LENGTH_UNITS = {
    "nm": 1e-9,
    "um": 1e-6,
    "µm": 1e-6,
    "mm": 1e-3,
    "cm": 1e-2,
    "m": 1.0,
}

_LENGTH_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([a-zµ]+)\s*$")


def parse_length(text: str) -> float:
    """Parse a length with a mandatory unit suffix (nm/um/mm/cm/m) to meters."""
    if isinstance(text, (int, float)):
        raise ValueError(f"length {text!r} needs a unit suffix (e.g. '350um')")
    match = _LENGTH_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse length {text!r}; expected e.g. '10mm' or '405nm'")
    value, unit = match.groups()
    if unit not in _LENGTH_UNITS:
        raise ValueError(f"unknown length unit {unit!r} in {text!r}")
    meters = float(value) * _LENGTH_UNITS[unit]
    if not (math.isfinite(meters) and meters > 0.0):
        raise ValueError(f"length must be finite and positive, got {text!r}")
    return meters


class WidthConvention(enum.Enum):
    FULL_WIDTH_OMEGA = "omega"     # quoted pump width is the full width Omega
    WAIST_SIGMA_P = "sigma-p"      # quoted pump width is the waist; Omega = 2 sigma_p


@dataclass(frozen=True)
class SpdcSetup:
    """Physical experiment parameters, canonical meters."""

    crystal_length: float
    pump_wavelength: float
    pump_width: float
    width_convention: WidthConvention = WidthConvention.FULL_WIDTH_OMEGA

    def __post_init__(self):
        for name in ("crystal_length", "pump_wavelength", "pump_width"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {value}")
            object.__setattr__(self, name, value)
        if not isinstance(self.width_convention, WidthConvention):
            raise ValueError(f"unknown width convention {self.width_convention!r}")

    @property
    def sigma(self) -> float:
        """Correlation width set by the crystal: sqrt(L lambda_p / 6 pi)."""
        return math.sqrt(self.crystal_length * self.pump_wavelength / (6.0 * math.pi))

    @property
    def omega(self) -> float:
        """Anti-correlation width: the full pump-beam width."""
        if self.width_convention is WidthConvention.FULL_WIDTH_OMEGA:
            return self.pump_width
        return 2.0 * self.pump_width

    @property
    def pump_waist(self) -> float:
        return 0.5 * self.omega


def map_to_state(setup: SpdcSetup) -> StateSpec:
    """Gaussian pair state matching the setup."""
    return StateSpec(Family.GAUSSIAN_EPR, setup.sigma, setup.omega)


def biphoton_gem(setup: SpdcSetup, include_oracle: bool = False) -> EntanglementReport:
    """Entanglement report with the measure written in experiment parameters."""
    x = setup.crystal_length * setup.pump_wavelength / (
        24.0 * math.pi * setup.pump_waist**2
    )
    e2 = 2.0 * (math.sqrt(x) - 1.0) ** 2 / (x + 1.0)
    report = build_report(map_to_state(setup), include_oracle=include_oracle, e2_override=e2)
    report.quantities["pump_parameter"] = Quantity(x, CLOSED_FORM)
    return report


def required_pump_width(
    crystal_length: float,
    pump_wavelength: float,
    target_e2: float,
    branch: str = "above",
    convention: WidthConvention = WidthConvention.FULL_WIDTH_OMEGA,
    rtol: float = 1e-9,
) -> float:
    """Pump width giving the requested measure; inverse of ``biphoton_gem``.

    ``branch`` selects Omega > sigma ("above") or Omega < sigma ("below").
    """
    if not 0.0 <= target_e2 < 2.0:
        raise ValueError(f"target E^2 must lie in [0, 2), got {target_e2}")
    if branch not in ("above", "below"):
        raise ValueError(f"branch must be 'above' or 'below', got {branch!r}")
    sigma = math.sqrt(crystal_length * pump_wavelength / (6.0 * math.pi))
    if target_e2 == 0.0:
        omega = sigma
    else:
        def excess(log_ratio: float) -> float:
            r = math.exp(log_ratio)
            return 2.0 * (r - 1.0) ** 2 / (r * r + 1.0) - target_e2

        hi = 1.0
        while excess(hi) < 0.0:
            hi *= 2.0
            if hi > 700.0:
                raise ValueError(f"no finite pump width reaches E^2 = {target_e2}")
        log_ratio = bisect(excess, 0.0, hi, xtol=rtol * 0.1)
        ratio = math.exp(log_ratio)
        omega = sigma * ratio if branch == "above" else sigma / ratio
    if convention is WidthConvention.FULL_WIDTH_OMEGA:
        return omega
    return 0.5 * omega


@dataclass(frozen=True)
class MeasuredWidths:
    """Experimentally determined widths: anti-diagonal interference width f
    and the down-converted beam width sigma1."""

    f: float
    sigma1: float

    def __post_init__(self):
        for name in ("f", "sigma1"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {value}")
            object.__setattr__(self, name, value)

    @property
    def consistent(self) -> bool:
        return self.f <= self.sigma1


@dataclass(frozen=True)
class InferredGem:
    e2: float
    clamped: bool


def infer_gem_from_measurement(measured: MeasuredWidths) -> InferredGem:
    """E^2 = 2 (1 - f / sigma1); clamped to [0, 2] with a flag when f > sigma1."""
    raw = 2.0 * (1.0 - measured.f / measured.sigma1)
    if raw < 0.0:
        return InferredGem(e2=0.0, clamped=True)
    return InferredGem(e2=min(raw, 2.0), clamped=False)


@dataclass(frozen=True)
class UncertaintyReport:
    """Position and wavenumber spreads in two conventions (hbar = 1).

    The second-moment values are the standard deviations of |psi|^2.  The
    alternate convention doubles the position spread and halves the
    wavenumber spread; the uncertainty product is identical in both.
    """

    dx_second_moment: float
    dk_second_moment: float
    dx_alternate: float
    dk_alternate: float

    @property
    def product_second_moment(self) -> float:
        return self.dx_second_moment * self.dk_second_moment

    @property
    def product_alternate(self) -> float:
        return self.dx_alternate * self.dk_alternate


def uncertainty_report(spec: StateSpec) -> UncertaintyReport:
    """Per-particle spreads of the Gaussian pair state, both conventions."""
    if spec.family is not Family.GAUSSIAN_EPR:
        raise UnsupportedFamilyError("uncertainty closed forms cover the Gaussian family only")
    s2 = spec.sigma**2
    o2 = spec.omega**2
    dx_sm = 0.5 * math.sqrt(s2 + o2)
    dk_sm = 0.5 * math.sqrt(1.0 / s2 + 1.0 / o2)
    return UncertaintyReport(
        dx_second_moment=dx_sm,
        dk_second_moment=dk_sm,
        dx_alternate=2.0 * dx_sm,
        dk_alternate=0.5 * dk_sm,
    )


def biphoton_momentum_amplitude(setup: SpdcSetup, q1, q2):
    """Pointwise transverse momentum-space amplitude, unnormalized.

    sinc-shaped phase matching times the Gaussian pump envelope; intended
    for plotting, not for entanglement figures (the Gaussian-approximation
    constant relating it to the pair state is not fixed here).
    """
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    theta = (
        setup.crystal_length
        * setup.pump_wavelength
        / (8.0 * math.pi)
        * (q1 - q2) ** 2
    )
    # np.sinc is sin(pi x)/(pi x)
    return np.sinc(theta / math.pi) * np.exp(-(setup.pump_waist**2) * (q1 + q2) ** 2)
