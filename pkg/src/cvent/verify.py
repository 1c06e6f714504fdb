"""Self-check suite: every closed form against its independent oracle.

Each check is small enough to run in a fresh install in a few seconds and
names exactly what failed.  The CLI ``verify`` subcommand prints the table
and exits nonzero on any failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cvent import oracle, quadrature, spdc, states
from cvent.states import Family, StateSpec


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name: str, fn) -> CheckResult:
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure with the exception named
        return CheckResult(name=name, passed=False, detail=f"{type(exc).__name__}: {exc}")
    return CheckResult(name=name, passed=bool(passed), detail=detail)


_RATIOS = (0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0)
_SVD_RATIOS = (0.5, 1.0, 2.0, 8.0)


def _quad_order2():
    rule = quadrature.gauss_hermite(2)
    node_err = float(np.max(np.abs(np.abs(rule.nodes) - 1.0 / math.sqrt(2.0))))
    weight_err = float(np.max(np.abs(rule.gauss_weights - math.sqrt(math.pi) / 2.0)))
    err = max(node_err, weight_err)
    return err < 1e-12, f"max error {err:.2e}"


def _quad_moments():
    rule = quadrature.gauss_hermite(16)
    errs = []
    for k, expected in ((0, math.gamma(0.5)), (2, math.gamma(1.5)), (4, math.gamma(2.5))):
        value = quadrature.integrate_1d(lambda t, k=k: np.exp(-t * t) * t**k, rule)
        errs.append(abs(value - expected))
    err = max(errs)
    return err < 1e-12, f"max moment error {err:.2e}"


def _normalization(family: Family):
    def fn():
        spec = StateSpec(family, 1.0, 2.0)
        result = quadrature.converge(
            lambda order: quadrature.integrate_rotated(
                lambda x1, x2: states.amplitude(spec, x1, x2) ** 2,
                spec.sigma,
                spec.omega,
                order,
            )
        )
        err = abs(result.value - 1.0)
        return err < 1e-8, f"|norm - 1| = {err:.2e} at order {result.order_used}"

    return fn


def _gem_grid(family: Family):
    def fn():
        worst = 0.0
        for ratio in _RATIOS:
            spec = StateSpec(family, ratio, 1.0)
            numeric = oracle.gem_numeric(spec)
            worst = max(worst, abs(numeric.value - states.gem_closed(spec)))
        return worst < 1e-6, f"max |numeric - closed| = {worst:.2e}"

    return fn


def _svd_vs_quadrature():
    worst = 0.0
    for ratio in _SVD_RATIOS:
        for family in Family:
            spec = StateSpec(family, ratio, 1.0)
            e2_svd = 2.0 * (1.0 - oracle.schmidt_spectrum(spec).purity)
            e2_quad = oracle.gem_numeric(spec).value
            worst = max(worst, abs(e2_svd - e2_quad))
    return worst < 1e-5, f"max |svd - quadrature| = {worst:.2e}"


def _ph_closed_vs_moments():
    worst = 0.0
    for ratio in (0.3, 0.5, 1.0, 2.0, 3.0):
        spec = StateSpec(Family.GAUSSIAN_EPR, ratio, 1.0)
        value = oracle.ph_criterion(spec).value
        worst = max(worst, abs(value - states.ph_value_closed(spec)))
    return worst < 1e-6, f"max |moments - closed| = {worst:.2e}"


def _ph_window():
    window = oracle.ph_blind_window()
    lower_err = abs(window.lower - 1.0 / math.sqrt(3.0))
    upper_err = abs(window.upper - math.sqrt(3.0))
    recip = abs(window.lower * window.upper - 1.0)
    ok = lower_err < 0.01 and upper_err < 0.01 and recip < 1e-4
    return ok, (
        f"window [{window.lower:.4f}, {window.upper:.4f}], "
        f"lower*upper - 1 = {recip:.2e}"
    )


def _schmidt_relation():
    worst = 0.0
    for ratio in (0.5, 1.0, 2.0, 5.0):
        spec = StateSpec(Family.GAUSSIAN_EPR, ratio, 1.0)
        k1 = oracle.schmidt_number_1d(spec)
        expected = 0.5 * (ratio + 1.0 / ratio)
        worst = max(worst, abs(k1 - expected))
    return worst < 1e-4, f"max |K1 - (r + 1/r)/2| = {worst:.2e}"


def _gradient_check():
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for family in Family:
        spec = StateSpec(family, 1.0, 2.0)
        pts = rng.uniform(-3.0, 3.0, size=(50, 2))
        step = 1e-6
        for x1, x2 in pts:
            g1, g2 = states.amplitude_gradient(spec, x1, x2)
            f1 = (states.amplitude(spec, x1 + step, x2) - states.amplitude(spec, x1 - step, x2)) / (2 * step)
            f2 = (states.amplitude(spec, x1, x2 + step) - states.amplitude(spec, x1, x2 - step)) / (2 * step)
            denom = max(abs(f1), abs(f2), 1e-12)
            worst = max(worst, abs(g1 - f1) / denom, abs(g2 - f2) / denom)
    return worst < 1e-6, f"max relative gradient error {worst:.2e}"


def _measurement_closure():
    worst = 0.0
    for ratio in (0.3, 0.8, 1.0, 1.5, 4.0):
        spec = StateSpec(Family.GAUSSIAN_EPR, ratio, 1.0)
        f = oracle.antidiagonal_width(spec)
        sigma1 = oracle.marginal_width(spec)
        inferred = spdc.infer_gem_from_measurement(spdc.MeasuredWidths(f=f, sigma1=sigma1))
        worst = max(worst, abs(inferred.e2 - states.gem_closed(spec)))
    return worst < 1e-9, f"max closure error {worst:.2e}"


def _ppktp_example():
    setup = spdc.SpdcSetup(
        crystal_length=spdc.parse_length("10mm"),
        pump_wavelength=spdc.parse_length("405nm"),
        pump_width=spdc.parse_length("350um"),
        width_convention=spdc.WidthConvention.FULL_WIDTH_OMEGA,
    )
    e2 = spdc.biphoton_gem(setup).value("e2_closed")
    return abs(e2 - 1.832) < 0.002, f"E^2 = {e2:.4f}"


def _bbo_example():
    setup = spdc.SpdcSetup(
        crystal_length=spdc.parse_length("15.76mm"),
        pump_wavelength=spdc.parse_length("405nm"),
        pump_width=spdc.parse_length("180um"),
        width_convention=spdc.WidthConvention.WAIST_SIGMA_P,
    )
    e2 = spdc.biphoton_gem(setup).value("e2_closed")
    return abs(e2 - 1.796) < 0.001, f"E^2 = {e2:.4f}"


def _limits():
    lo = states.gem_closed(StateSpec(Family.GAUSSIAN_EPR, 1e-6, 1.0))
    hi = states.gem_closed(StateSpec(Family.GAUSSIAN_EPR, 1e6, 1.0))
    worst = max(abs(2.0 - lo), abs(2.0 - hi))
    return worst < 1e-5, f"max |2 - E^2| at extreme ratios = {worst:.2e}"


def _nongaussian_dominance():
    ok = True
    for ratio in _RATIOS:
        gauss = states.gem_closed(StateSpec(Family.GAUSSIAN_EPR, ratio, 1.0))
        non_gauss = states.gem_closed(StateSpec(Family.NON_GAUSSIAN, ratio, 1.0))
        ok = ok and (non_gauss > gauss) and (non_gauss >= 1.0 - 1e-6)
    return ok, "non-Gaussian measure above Gaussian and >= 1 on the ratio grid"


def run_checks() -> list[CheckResult]:
    """Run every check and return one result per row."""
    checks = [
        ("quadrature-order2-rule", _quad_order2),
        ("quadrature-gaussian-moments", _quad_moments),
        ("normalization-gaussian", _normalization(Family.GAUSSIAN_EPR)),
        ("normalization-nongaussian", _normalization(Family.NON_GAUSSIAN)),
        ("gem-closed-vs-quadrature-gaussian", _gem_grid(Family.GAUSSIAN_EPR)),
        ("gem-closed-vs-quadrature-nongaussian", _gem_grid(Family.NON_GAUSSIAN)),
        ("svd-purity-vs-quadrature", _svd_vs_quadrature),
        ("ph-closed-vs-moments", _ph_closed_vs_moments),
        ("ph-blind-window-roots", _ph_window),
        ("schmidt-number-relation", _schmidt_relation),
        ("gradient-finite-difference", _gradient_check),
        ("measurement-closure", _measurement_closure),
        ("ppktp-worked-example", _ppktp_example),
        ("bbo-worked-example", _bbo_example),
        ("maximal-entanglement-limits", _limits),
        ("nongaussian-dominance", _nongaussian_dominance),
    ]
    return [_check(name, fn) for name, fn in checks]


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name.ljust(width)}  {r.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
