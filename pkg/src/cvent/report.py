"""Provenance-labeled result bundles shared by the CLI and the SPDC mapper."""

from __future__ import annotations

from dataclasses import dataclass, field

from cvent import oracle
from cvent.states import (
    Family,
    StateSpec,
    gem_closed,
    percent_entanglement,
    ph_value_closed,
    schmidt_number_squared_closed,
    widths_closed,
)

CLOSED_FORM = "closed-form"


def quadrature_label(order: int) -> str:
    return f"quadrature(order={order})"


def svd_label(modes: int) -> str:
    return f"svd(modes={modes})"


@dataclass(frozen=True)
class Quantity:
    value: float
    provenance: str


@dataclass(frozen=True)
class EntanglementReport:
    """Closed-form and (optionally) oracle entanglement figures for one state."""

    family: Family
    sigma: float
    omega: float
    quantities: dict[str, Quantity] = field(default_factory=dict)

    def value(self, name: str) -> float:
        return self.quantities[name].value

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "sigma": self.sigma,
            "omega": self.omega,
            "results": {
                name: {"value": q.value, "provenance": q.provenance}
                for name, q in self.quantities.items()
            },
        }


def build_report(
    spec: StateSpec,
    include_oracle: bool = False,
    tol: float = 1e-9,
    max_order: int = 1024,
    e2_override: float | None = None,
) -> EntanglementReport:
    """Assemble the standard report for one state.

    ``e2_override`` substitutes an algebraically equivalent closed form
    (used by the SPDC mapper, which states the measure in terms of the
    experiment parameters); derived quantities follow the override.
    """
    e2 = gem_closed(spec) if e2_override is None else e2_override
    purity = 1.0 - 0.5 * e2
    quantities: dict[str, Quantity] = {
        "e2_closed": Quantity(e2, CLOSED_FORM),
        "percent": Quantity(percent_entanglement(min(max(e2, 0.0), 2.0)), CLOSED_FORM),
    }
    if purity > 0.0:
        k1 = 1.0 / purity
        quantities["schmidt_number"] = Quantity(k1, CLOSED_FORM)
        quantities["schmidt_number_squared"] = Quantity(k1 * k1, CLOSED_FORM)
    if spec.family is Family.GAUSSIAN_EPR:
        # consistency guard: the squared mode count must match its direct form
        assert e2_override is not None or abs(
            quantities["schmidt_number_squared"].value - schmidt_number_squared_closed(spec)
        ) < 1e-9 * schmidt_number_squared_closed(spec)
        quantities["ph_value"] = Quantity(ph_value_closed(spec), CLOSED_FORM)
        widths = widths_closed(spec)
        quantities["marginal_width"] = Quantity(widths.marginal, CLOSED_FORM)
        quantities["conditional_width"] = Quantity(widths.conditional, CLOSED_FORM)
    else:
        ph = oracle.ph_criterion(spec, tol=tol, max_order=max_order)
        quantities["ph_value"] = Quantity(ph.value, quadrature_label(ph.moments.order_used))
    if include_oracle:
        numeric = oracle.gem_numeric(spec, tol=tol, max_order=max_order)
        quantities["e2_oracle"] = Quantity(
            numeric.value, quadrature_label(numeric.order_used)
        )
        quantities["e2_oracle_delta"] = Quantity(
            numeric.delta, quadrature_label(numeric.order_used)
        )
        spectrum = oracle.schmidt_spectrum(spec)
        quantities["schmidt_number_oracle"] = Quantity(
            spectrum.schmidt_number, svd_label(spectrum.coefficients.size)
        )
    return EntanglementReport(
        family=spec.family,
        sigma=spec.sigma,
        omega=spec.omega,
        quantities=quantities,
    )
