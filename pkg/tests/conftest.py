"""Shared fixtures and the acceptance-criteria result table.

The ``acceptance_grid`` fixture holds the expensive oracle evaluations
(converged quadrature and SVD spectra over the full ratio grid) so the
acceptance tests share one computation.  The terminal-summary hook prints
one PASS/FAIL line per acceptance criterion at the end of the run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from cvent import oracle
from cvent.states import Family, StateSpec, gem_closed


@dataclass(frozen=True)
class GridPoint:
    family: Family
    ratio: float
    e2_closed: float
    e2_quadrature: float
    e2_svd: float


@pytest.fixture(scope="session")
def acceptance_grid() -> list[GridPoint]:
    """Oracle evaluations at 21 log-spaced ratios in [1e-2, 1e2], both families."""
    points = []
    for family in Family:
        for ratio in np.logspace(-2.0, 2.0, 21):
            spec = StateSpec(family, float(ratio), 1.0)
            numeric = oracle.gem_numeric(spec)
            spectrum = oracle.schmidt_spectrum(spec)
            points.append(
                GridPoint(
                    family=family,
                    ratio=float(ratio),
                    e2_closed=gem_closed(spec),
                    e2_quadrature=numeric.value,
                    e2_svd=2.0 * (1.0 - spectrum.purity),
                )
            )
    return points


_CRITERION_PREFIX = "test_acceptance.py::test_criterion_"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if _CRITERION_PREFIX not in report.nodeid:
                continue
            name = report.nodeid.split("::", 1)[1]
            rows.append((name, outcome == "passed"))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, passed in sorted(rows):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
