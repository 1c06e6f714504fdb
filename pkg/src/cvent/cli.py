"""Command-line interface: single-point reports, figure sweeps, self checks.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 output I/O error.  Single-point reports are JSON with a provenance label
per numeric value; sweeps are CSV with 9 significant digits and a
deterministic row order.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from cvent import oracle, spdc, states, verify
from cvent.report import build_report, quadrature_label, svd_label
from cvent.states import Family, StateSpec

# Externally sourced annotation constants for the window where only
# higher-order criteria detect the non-Gaussian state's entanglement; marked
# annotation-only because nothing here computes them.
NONGAUSSIAN_WINDOW_ANNOTATION = (0.63, 1.58)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


class CliParameterError(ValueError):
    pass


def _family(text: str) -> Family:
    try:
        return Family(text)
    except ValueError:
        raise CliParameterError(f"unknown family {text!r}; use gaussian or nongaussian")


def _positive(text: str, name: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise CliParameterError(f"{name} must be a number, got {text!r}")
    if not (math.isfinite(value) and value > 0.0):
        raise CliParameterError(f"{name} must be finite and positive, got {text!r}")
    return value


def _length_or_number(text: str, name: str) -> float:
    """Unit-suffixed length, or a bare positive number taken as meters."""
    try:
        return _positive(text, name)
    except CliParameterError:
        pass
    try:
        return spdc.parse_length(text)
    except ValueError as exc:
        raise CliParameterError(str(exc))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    with open(output, "w", encoding="utf-8") as handle:
        handle.write(text)
        if not text.endswith("\n"):
            handle.write("\n")


def _emit_json(payload: dict, output: str | None) -> None:
    _emit(json.dumps(payload, indent=2), output)


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepRequest:
    quantity: str
    minimum: float
    maximum: float
    count: int
    spacing: str = "linear"
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.count < 2:
            raise CliParameterError(f"count must be >= 2, got {self.count}")
        if not self.minimum < self.maximum:
            raise CliParameterError(
                f"need min < max, got [{self.minimum}, {self.maximum}]"
            )
        if self.spacing not in ("linear", "log"):
            raise CliParameterError(f"spacing must be linear or log, got {self.spacing!r}")
        if self.spacing == "log" and self.minimum <= 0.0:
            raise CliParameterError("log spacing requires min > 0")

    def axis(self) -> np.ndarray:
        if self.spacing == "log":
            return np.logspace(
                math.log10(self.minimum), math.log10(self.maximum), self.count
            )
        return np.linspace(self.minimum, self.maximum, self.count)


def run_sweep(request: SweepRequest) -> tuple[list[str], list[list]]:
    """Compute one sweep; returns (header, rows) with deterministic order."""
    quantity = request.quantity
    axis = request.axis()
    rows: list[list] = []

    if quantity in ("gem_gaussian", "gem_nongaussian"):
        family = (
            Family.GAUSSIAN_EPR if quantity == "gem_gaussian" else Family.NON_GAUSSIAN
        )
        header = ["ratio_sigma_over_omega", "e2", "percent"]
        for ratio in axis:
            e2 = states.gem_closed(StateSpec(family, float(ratio), 1.0))
            rows.append([float(ratio), e2, e2 * 50.0])
        return header, rows

    if quantity == "gem_both":
        header = [
            "ratio_omega_over_sigma",
            "percent_gaussian",
            "percent_nongaussian",
            "in_nongaussian_window",
        ]
        lo, hi = NONGAUSSIAN_WINDOW_ANNOTATION
        for ratio in axis:
            gauss = states.gem_closed(StateSpec(Family.GAUSSIAN_EPR, 1.0, float(ratio)))
            non_gauss = states.gem_closed(StateSpec(Family.NON_GAUSSIAN, 1.0, float(ratio)))
            rows.append(
                [float(ratio), gauss * 50.0, non_gauss * 50.0, int(lo < ratio < hi)]
            )
        return header, rows

    if quantity == "ph_value":
        family = request.fixed.get("family", Family.NON_GAUSSIAN)
        header = ["ratio_omega_over_sigma", "ph_value", "separable_by_second_order"]
        for ratio in axis:
            spec = StateSpec(family, 1.0, float(ratio))
            if family is Family.GAUSSIAN_EPR:
                value = states.ph_value_closed(spec)
            else:
                value = oracle.ph_criterion(spec).value
            rows.append([float(ratio), value, int(value >= -1e-9)])
        return header, rows

    if quantity == "spdc_vs_pumpwidth":
        crystal_length = request.fixed["crystal_length"]
        pump_wavelength = request.fixed["pump_wavelength"]
        convention = request.fixed.get(
            "width_convention", spdc.WidthConvention.FULL_WIDTH_OMEGA
        )
        header = ["pump_width_m", "sigma_m", "omega_m", "e2", "percent"]
        for width in axis:
            setup = spdc.SpdcSetup(
                crystal_length=crystal_length,
                pump_wavelength=pump_wavelength,
                pump_width=float(width),
                width_convention=convention,
            )
            e2 = states.gem_closed(spdc.map_to_state(setup))
            rows.append([float(width), setup.sigma, setup.omega, e2, e2 * 50.0])
        return header, rows

    if quantity == "surface_gem":
        family = request.fixed.get("family", Family.GAUSSIAN_EPR)
        header = ["sigma", "omega", "percent"]
        for sigma in axis:
            for omega in axis:
                e2 = states.gem_closed(StateSpec(family, float(sigma), float(omega)))
                rows.append([float(sigma), float(omega), e2 * 50.0])
        return header, rows

    raise CliParameterError(f"unknown sweep quantity {quantity!r}")


def format_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, (bool, int, np.integer)):
                cells.append(str(int(cell)))
            else:
                cells.append(f"{cell:.9g}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_gem(args) -> int:
    spec = StateSpec(_family(args.family), _positive(args.sigma, "sigma"), _positive(args.omega, "omega"))
    report = build_report(
        spec,
        include_oracle=args.oracle,
        tol=args.tolerance,
        max_order=args.max_order,
    )
    _emit_json(report.to_dict(), args.output)
    return EXIT_OK


def _cmd_spdc(args) -> int:
    convention = spdc.WidthConvention(args.width_convention)
    crystal_length = spdc.parse_length(args.L)
    pump_wavelength = spdc.parse_length(args.lambda_p)

    if args.solve is not None:
        if args.solve != "pump-width":
            raise CliParameterError(f"unknown solve target {args.solve!r}")
        if args.target_e2 is None:
            raise CliParameterError("--solve pump-width requires --target-e2")
        width = spdc.required_pump_width(
            crystal_length,
            pump_wavelength,
            float(args.target_e2),
            branch=args.branch,
            convention=convention,
        )
        setup = spdc.SpdcSetup(crystal_length, pump_wavelength, width, convention)
        check = spdc.biphoton_gem(setup).value("e2_closed")
        _emit_json(
            {
                "required_pump_width_m": width,
                "width_convention": convention.value,
                "branch": args.branch,
                "target_e2": float(args.target_e2),
                "e2_roundtrip": check,
            },
            args.output,
        )
        return EXIT_OK

    if args.pump_width is None:
        raise CliParameterError("--pump-width is required unless solving for it")
    setup = spdc.SpdcSetup(
        crystal_length=crystal_length,
        pump_wavelength=pump_wavelength,
        pump_width=spdc.parse_length(args.pump_width),
        width_convention=convention,
    )
    report = spdc.biphoton_gem(setup, include_oracle=args.oracle)
    payload = report.to_dict()
    payload["setup"] = {
        "crystal_length_m": setup.crystal_length,
        "pump_wavelength_m": setup.pump_wavelength,
        "pump_width_m": setup.pump_width,
        "width_convention": convention.value,
        "pump_waist_m": setup.pump_waist,
    }
    uncertainty = spdc.uncertainty_report(spdc.map_to_state(setup))
    payload["uncertainty"] = {
        "dx_second_moment": uncertainty.dx_second_moment,
        "dk_second_moment": uncertainty.dk_second_moment,
        "dx_alternate": uncertainty.dx_alternate,
        "dk_alternate": uncertainty.dk_alternate,
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    fixed: dict = {}
    if args.family is not None:
        fixed["family"] = _family(args.family)
    if args.quantity == "spdc_vs_pumpwidth":
        if args.L is None or args.lambda_p is None:
            raise CliParameterError("spdc_vs_pumpwidth needs --L and --lambda-p")
        fixed["crystal_length"] = spdc.parse_length(args.L)
        fixed["pump_wavelength"] = spdc.parse_length(args.lambda_p)
        fixed["width_convention"] = spdc.WidthConvention(args.width_convention)
        minimum = _length_or_number(args.min, "min")
        maximum = _length_or_number(args.max, "max")
    else:
        minimum = _positive(args.min, "min")
        maximum = _positive(args.max, "max")
    request = SweepRequest(
        quantity=args.quantity,
        minimum=minimum,
        maximum=maximum,
        count=args.count,
        spacing=args.spacing,
        fixed=fixed,
    )
    header, rows = run_sweep(request)
    _emit(format_csv(header, rows), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify.run_checks()
    _emit(verify.format_table(results), args.output)
    if all(r.passed for r in results):
        return EXIT_OK
    failing = [r.name for r in results if not r.passed]
    sys.stderr.write(f"failed checks: {', '.join(failing)}\n")
    return EXIT_VERIFY_FAILED


def _cmd_schmidt(args) -> int:
    spec = StateSpec(_family(args.family), _positive(args.sigma, "sigma"), _positive(args.omega, "omega"))
    spectrum = oracle.schmidt_spectrum(spec, modes=args.modes)
    modes = spectrum.coefficients.size
    label = svd_label(modes)
    shown = min(modes, args.show)
    payload = {
        "family": spec.family.value,
        "sigma": spec.sigma,
        "omega": spec.omega,
        "results": {
            "purity": {"value": spectrum.purity, "provenance": label},
            "schmidt_number": {"value": spectrum.schmidt_number, "provenance": label},
            "truncation_error": {"value": spectrum.truncation_error, "provenance": label},
            "leading_coefficients": {
                "value": [float(c) for c in spectrum.coefficients[:shown]],
                "provenance": label,
            },
        },
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def _cmd_ph(args) -> int:
    family = _family(args.family)
    if args.window:
        if family is not Family.NON_GAUSSIAN:
            raise CliParameterError("--window applies to the nongaussian family only")
        window = oracle.ph_blind_window()
        _emit_json(
            {
                "family": family.value,
                "results": {
                    "window_lower": {"value": window.lower, "provenance": "bisection"},
                    "window_upper": {"value": window.upper, "provenance": "bisection"},
                },
            },
            args.output,
        )
        return EXIT_OK
    spec = StateSpec(family, _positive(args.sigma, "sigma"), _positive(args.omega, "omega"))
    criterion = oracle.ph_criterion(spec, tol=args.tolerance, max_order=args.max_order)
    results = {
        "ph_value": {
            "value": criterion.value,
            "provenance": quadrature_label(criterion.moments.order_used),
        },
        "separable_by_second_order": {
            "value": bool(criterion.separable_by_second_order),
            "provenance": quadrature_label(criterion.moments.order_used),
        },
    }
    if family is Family.GAUSSIAN_EPR:
        results["ph_value_closed"] = {
            "value": states.ph_value_closed(spec),
            "provenance": "closed-form",
        }
    _emit_json(
        {"family": family.value, "sigma": spec.sigma, "omega": spec.omega, "results": results},
        args.output,
    )
    return EXIT_OK


def _cmd_widths(args) -> int:
    spec = StateSpec(
        Family.GAUSSIAN_EPR, _positive(args.sigma, "sigma"), _positive(args.omega, "omega")
    )
    closed = states.widths_closed(spec)
    results = {
        "marginal_width": {"value": closed.marginal, "provenance": "closed-form"},
        "conditional_width": {"value": closed.conditional, "provenance": "closed-form"},
        "width_ratio": {"value": closed.ratio, "provenance": "closed-form"},
    }
    if args.oracle:
        f = oracle.antidiagonal_width(spec, tol=args.tolerance, max_order=args.max_order)
        sigma1 = oracle.marginal_width(spec, tol=args.tolerance, max_order=args.max_order)
        inferred = spdc.infer_gem_from_measurement(spdc.MeasuredWidths(f=f, sigma1=sigma1))
        results["antidiagonal_width_oracle"] = {
            "value": f,
            "provenance": "quadrature",
        }
        results["marginal_width_oracle"] = {"value": sigma1, "provenance": "quadrature"}
        results["e2_from_widths"] = {"value": inferred.e2, "provenance": "quadrature"}
    _emit_json(
        {"sigma": spec.sigma, "omega": spec.omega, "results": results}, args.output
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default=None, help="write output to this path")
    parser.add_argument(
        "--tolerance", type=float, default=1e-9, help="quadrature convergence tolerance"
    )
    parser.add_argument(
        "--max-order", type=int, default=1024, help="quadrature order cap"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvent",
        description="Entanglement of double-Gaussian biphoton states: closed forms, "
        "numerical oracles, and SPDC parameter mapping.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gem = sub.add_parser("gem", help="single-point entanglement report")
    gem.add_argument("--family", required=True, choices=[f.value for f in Family])
    gem.add_argument("--sigma", required=True)
    gem.add_argument("--omega", required=True)
    gem.add_argument("--oracle", action="store_true", help="add quadrature/SVD oracle values")
    _add_common(gem)
    gem.set_defaults(handler=_cmd_gem)

    spdc_cmd = sub.add_parser("spdc", help="entanglement from experiment parameters")
    spdc_cmd.add_argument("--L", required=True, help="crystal length, e.g. 10mm")
    spdc_cmd.add_argument("--lambda-p", required=True, help="pump wavelength, e.g. 405nm")
    spdc_cmd.add_argument("--pump-width", default=None, help="pump width, e.g. 350um")
    spdc_cmd.add_argument(
        "--width-convention",
        choices=[c.value for c in spdc.WidthConvention],
        default=spdc.WidthConvention.FULL_WIDTH_OMEGA.value,
    )
    spdc_cmd.add_argument("--target-e2", type=float, default=None)
    spdc_cmd.add_argument("--solve", choices=["pump-width"], default=None)
    spdc_cmd.add_argument("--branch", choices=["above", "below"], default="above")
    spdc_cmd.add_argument("--oracle", action="store_true")
    _add_common(spdc_cmd)
    spdc_cmd.set_defaults(handler=_cmd_spdc)

    sweep = sub.add_parser("sweep", help="CSV sweeps for the standard figures")
    sweep.add_argument(
        "--quantity",
        required=True,
        choices=[
            "gem_gaussian",
            "gem_nongaussian",
            "gem_both",
            "spdc_vs_pumpwidth",
            "ph_value",
            "surface_gem",
        ],
    )
    sweep.add_argument("--min", required=True)
    sweep.add_argument("--max", required=True)
    sweep.add_argument("--count", type=int, required=True)
    sweep.add_argument("--spacing", choices=["linear", "log"], default="linear")
    sweep.add_argument("--family", default=None, choices=[f.value for f in Family])
    sweep.add_argument("--L", default=None)
    sweep.add_argument("--lambda-p", default=None)
    sweep.add_argument(
        "--width-convention",
        choices=[c.value for c in spdc.WidthConvention],
        default=spdc.WidthConvention.FULL_WIDTH_OMEGA.value,
    )
    _add_common(sweep)
    sweep.set_defaults(handler=_cmd_sweep)

    verify_cmd = sub.add_parser("verify", help="run the full self-check suite")
    _add_common(verify_cmd)
    verify_cmd.set_defaults(handler=_cmd_verify)

    schmidt = sub.add_parser("schmidt", help="Schmidt spectrum from the SVD oracle")
    schmidt.add_argument("--family", required=True, choices=[f.value for f in Family])
    schmidt.add_argument("--sigma", required=True)
    schmidt.add_argument("--omega", required=True)
    schmidt.add_argument("--modes", type=int, default=None)
    schmidt.add_argument("--show", type=int, default=8, help="coefficients to print")
    _add_common(schmidt)
    schmidt.set_defaults(handler=_cmd_schmidt)

    ph = sub.add_parser("ph", help="second-moment separability criterion")
    ph.add_argument("--family", required=True, choices=[f.value for f in Family])
    ph.add_argument("--sigma", default="1")
    ph.add_argument("--omega", default="1")
    ph.add_argument("--window", action="store_true", help="report the blind window roots")
    _add_common(ph)
    ph.set_defaults(handler=_cmd_ph)

    widths = sub.add_parser("widths", help="marginal/conditional widths (Gaussian family)")
    widths.add_argument("--sigma", required=True)
    widths.add_argument("--omega", required=True)
    widths.add_argument("--oracle", action="store_true")
    _add_common(widths)
    widths.set_defaults(handler=_cmd_widths)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (CliParameterError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
