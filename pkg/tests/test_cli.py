"""Command-line behavior: JSON reports, CSV sweeps, exit codes, determinism."""

import json
import math

import numpy as np
import pytest

from cvent import cli, spdc, states, verify
from cvent.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, SweepRequest
from cvent.states import Family


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


class TestGemCommand:
    def test_gaussian_report(self, capsys):
        payload = run_json(
            capsys, "gem", "--family", "gaussian", "--sigma", "1", "--omega", "2"
        )
        assert payload["family"] == "gaussian"
        results = payload["results"]
        assert results["e2_closed"]["value"] == pytest.approx(0.4)
        assert results["percent"]["value"] == pytest.approx(20.0)
        assert results["e2_closed"]["provenance"] == "closed-form"

    def test_oracle_flag_adds_labeled_values(self, capsys):
        payload = run_json(
            capsys,
            "gem", "--family", "gaussian", "--sigma", "1", "--omega", "2", "--oracle",
        )
        results = payload["results"]
        assert results["e2_oracle"]["value"] == pytest.approx(0.4, abs=1e-8)
        assert results["e2_oracle"]["provenance"].startswith("quadrature(order=")
        assert results["schmidt_number_oracle"]["provenance"].startswith("svd(modes=")

    def test_nongaussian_ph_is_quadrature_labeled(self, capsys):
        payload = run_json(
            capsys, "gem", "--family", "nongaussian", "--sigma", "1", "--omega", "1"
        )
        results = payload["results"]
        assert results["e2_closed"]["value"] == pytest.approx(1.0)
        assert results["ph_value"]["provenance"].startswith("quadrature(order=")
        assert "marginal_width" not in results

    def test_equal_widths_trivial(self, capsys):
        payload = run_json(
            capsys, "gem", "--family", "gaussian", "--sigma", "1", "--omega", "1"
        )
        assert payload["results"]["e2_closed"]["value"] == 0.0
        assert payload["results"]["percent"]["value"] == 0.0

    @pytest.mark.parametrize("sigma", ["0", "-1", "abc", "nan"])
    def test_bad_sigma_exits_usage(self, capsys, sigma):
        code, _, err = run_cli(
            capsys, "gem", "--family", "gaussian", "--sigma", sigma, "--omega", "1"
        )
        assert code == EXIT_USAGE
        assert "sigma" in err

    def test_unknown_family_exits_usage(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["gem", "--family", "bogus", "--sigma", "1", "--omega", "1"])
        assert excinfo.value.code == EXIT_USAGE

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys,
            "gem", "--family", "gaussian", "--sigma", "1", "--omega", "2",
            "--output", str(target),
        )
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text())["results"]["e2_closed"]["value"] == pytest.approx(0.4)

    def test_unwritable_output_exits_io(self, capsys):
        code, _, err = run_cli(
            capsys,
            "gem", "--family", "gaussian", "--sigma", "1", "--omega", "2",
            "--output", "/nonexistent-dir/report.json",
        )
        assert code == EXIT_IO
        assert "I/O" in err


class TestSpdcCommand:
    def test_worked_example(self, capsys):
        payload = run_json(
            capsys,
            "spdc", "--L", "10mm", "--lambda-p", "405nm", "--pump-width", "350um",
        )
        assert payload["results"]["percent"]["value"] == pytest.approx(91.6, abs=0.1)
        assert payload["setup"]["width_convention"] == "omega"
        assert payload["setup"]["pump_waist_m"] == pytest.approx(175e-6)
        assert "uncertainty" in payload

    def test_waist_convention(self, capsys):
        payload = run_json(
            capsys,
            "spdc", "--L", "15.76mm", "--lambda-p", "405nm", "--pump-width", "180um",
            "--width-convention", "sigma-p",
        )
        assert payload["results"]["percent"]["value"] == pytest.approx(89.8, abs=0.1)
        assert payload["omega"] == pytest.approx(360e-6)

    def test_solve_pump_width(self, capsys):
        payload = run_json(
            capsys,
            "spdc", "--L", "10mm", "--lambda-p", "405nm",
            "--solve", "pump-width", "--target-e2", "1.832",
        )
        assert payload["required_pump_width_m"] == pytest.approx(350e-6, rel=0.01)
        assert payload["e2_roundtrip"] == pytest.approx(1.832, abs=1e-8)

    def test_solve_requires_target(self, capsys):
        code, _, err = run_cli(
            capsys, "spdc", "--L", "10mm", "--lambda-p", "405nm", "--solve", "pump-width"
        )
        assert code == EXIT_USAGE
        assert "target-e2" in err

    def test_missing_unit_exits_usage(self, capsys):
        code, _, err = run_cli(
            capsys, "spdc", "--L", "10", "--lambda-p", "405nm", "--pump-width", "350um"
        )
        assert code == EXIT_USAGE

    def test_missing_pump_width_exits_usage(self, capsys):
        code, _, _ = run_cli(capsys, "spdc", "--L", "10mm", "--lambda-p", "405nm")
        assert code == EXIT_USAGE


class TestSweepRequest:
    def test_log_axis(self):
        axis = SweepRequest("gem_gaussian", 0.01, 100.0, 5, spacing="log").axis()
        assert np.allclose(axis, [0.01, 0.1, 1.0, 10.0, 100.0])

    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            SweepRequest("gem_gaussian", 0.1, 1.0, 1)

    def test_rejects_inverted_range(self):
        with pytest.raises(ValueError):
            SweepRequest("gem_gaussian", 2.0, 1.0, 5)

    def test_rejects_log_with_nonpositive_min(self):
        with pytest.raises(ValueError):
            SweepRequest("gem_gaussian", -1.0, 1.0, 5, spacing="log")

    def test_rejects_unknown_quantity(self):
        with pytest.raises(ValueError):
            cli.run_sweep(SweepRequest("nonsense", 0.1, 1.0, 5))


class TestSweepCommand:
    def test_gem_both_columns_and_window_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sweep", "--quantity", "gem_both",
            "--min", "0.25", "--max", "4", "--count", "9", "--spacing", "log",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == (
            "ratio_omega_over_sigma,percent_gaussian,percent_nongaussian,"
            "in_nongaussian_window"
        )
        assert len(lines) == 10
        middle = lines[5].split(",")
        assert float(middle[0]) == pytest.approx(1.0)
        assert float(middle[1]) == 0.0
        assert float(middle[2]) == 50.0
        assert middle[3] == "1"
        assert lines[1].split(",")[3] == "0"

    def test_nine_significant_digits(self):
        text = cli.format_csv(["a"], [[1.0 / 3.0]])
        assert text == "a\n0.333333333\n"

    def test_deterministic_output(self, capsys):
        argv = [
            "sweep", "--quantity", "gem_gaussian",
            "--min", "0.01", "--max", "100", "--count", "201", "--spacing", "log",
        ]
        first = run_cli(capsys, *argv)
        second = run_cli(capsys, *argv)
        assert first == second

    def test_surface_row_major(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sweep", "--quantity", "surface_gem",
            "--min", "1", "--max", "3", "--count", "3",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "sigma,omega,percent"
        sigmas = [float(line.split(",")[0]) for line in lines[1:]]
        omegas = [float(line.split(",")[1]) for line in lines[1:]]
        assert sigmas == [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0]
        assert omegas == [1.0, 2.0, 3.0] * 3

    def test_spdc_sweep(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sweep", "--quantity", "spdc_vs_pumpwidth",
            "--L", "10mm", "--lambda-p", "405nm",
            "--min", "10um", "--max", "1mm", "--count", "11", "--spacing", "log",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "pump_width_m,sigma_m,omega_m,e2,percent"
        assert len(lines) == 12

    def test_spdc_sweep_requires_crystal(self, capsys):
        code, _, err = run_cli(
            capsys,
            "sweep", "--quantity", "spdc_vs_pumpwidth",
            "--min", "10um", "--max", "1mm", "--count", "5",
        )
        assert code == EXIT_USAGE
        assert "--L" in err

    def test_ph_sweep_gaussian(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sweep", "--quantity", "ph_value", "--family", "gaussian",
            "--min", "0.5", "--max", "2", "--count", "4",
        )
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "ratio_omega_over_sigma,ph_value,separable_by_second_order"
        assert float(lines[1].split(",")[1]) < 0.0

    def test_inverted_range_exits_usage(self, capsys):
        code, _, _ = run_cli(
            capsys,
            "sweep", "--quantity", "gem_gaussian",
            "--min", "2", "--max", "1", "--count", "5",
        )
        assert code == EXIT_USAGE

    def test_output_file_and_io_error(self, capsys, tmp_path):
        target = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            capsys,
            "sweep", "--quantity", "gem_gaussian",
            "--min", "0.5", "--max", "2", "--count", "3", "--output", str(target),
        )
        assert code == EXIT_OK
        assert target.read_text().startswith("ratio_sigma_over_omega,")
        code, _, _ = run_cli(
            capsys,
            "sweep", "--quantity", "gem_gaussian",
            "--min", "0.5", "--max", "2", "--count", "3",
            "--output", "/nonexistent-dir/sweep.csv",
        )
        assert code == EXIT_IO


class TestVerifyCommand:
    def test_fresh_build_passes(self, capsys):
        code, out, err = run_cli(capsys, "verify")
        assert code == EXIT_OK, err
        lines = [line for line in out.strip().split("\n") if line.startswith("PASS")]
        assert len(lines) >= 12

    def test_normalization_fault_is_caught(self):
        original = states._NORM_TWEAK[Family.NON_GAUSSIAN]
        states._NORM_TWEAK[Family.NON_GAUSSIAN] = 1.01
        try:
            result = verify._check(
                "normalization-nongaussian", verify._normalization(Family.NON_GAUSSIAN)
            )
        finally:
            states._NORM_TWEAK[Family.NON_GAUSSIAN] = original
        assert not result.passed

    def test_failure_exits_one_and_names_check(self, capsys, monkeypatch):
        failing = verify.CheckResult(
            name="normalization-nongaussian", passed=False, detail="|norm - 1| = 2.0e-02"
        )
        monkeypatch.setattr(verify, "run_checks", lambda: [failing])
        code, out, err = run_cli(capsys, "verify")
        assert code == EXIT_VERIFY_FAILED
        assert "FAIL" in out
        assert "normalization-nongaussian" in err


class TestSchmidtCommand:
    def test_reports_spectrum(self, capsys):
        payload = run_json(
            capsys,
            "schmidt", "--family", "gaussian", "--sigma", "1", "--omega", "2",
            "--modes", "32", "--show", "4",
        )
        results = payload["results"]
        assert results["schmidt_number"]["value"] == pytest.approx(1.25, abs=1e-6)
        assert results["schmidt_number"]["provenance"] == "svd(modes=32)"
        leading = results["leading_coefficients"]["value"]
        assert len(leading) == 4
        assert leading[0] == pytest.approx(math.sqrt(8.0 / 9.0), abs=1e-8)


class TestPhCommand:
    def test_gaussian_point(self, capsys):
        payload = run_json(
            capsys, "ph", "--family", "gaussian", "--sigma", "1", "--omega", "2"
        )
        results = payload["results"]
        assert results["ph_value"]["value"] == pytest.approx(-0.140625, abs=1e-8)
        assert results["ph_value_closed"]["value"] == pytest.approx(-0.140625)
        assert results["separable_by_second_order"]["value"] is False

    def test_window(self, capsys):
        payload = run_json(capsys, "ph", "--family", "nongaussian", "--window")
        results = payload["results"]
        assert results["window_lower"]["value"] == pytest.approx(0.5774, abs=1e-3)
        assert results["window_upper"]["value"] == pytest.approx(1.7321, abs=1e-3)

    def test_window_rejects_gaussian(self, capsys):
        code, _, _ = run_cli(capsys, "ph", "--family", "gaussian", "--window")
        assert code == EXIT_USAGE


class TestWidthsCommand:
    def test_closed_and_oracle_agree(self, capsys):
        payload = run_json(capsys, "widths", "--sigma", "1", "--omega", "2", "--oracle")
        results = payload["results"]
        assert results["marginal_width"]["value"] == pytest.approx(math.sqrt(2.5))
        assert results["conditional_width"]["value"] == pytest.approx(math.sqrt(1.6))
        assert results["width_ratio"]["value"] == pytest.approx(0.8)
        assert results["e2_from_widths"]["value"] == pytest.approx(0.4, abs=1e-8)
