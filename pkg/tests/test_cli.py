"""Tests for the command-line front end.

Covers the range grammar, flag validation, exit codes, the pinned
column schemas, round-trip precision of emitted numbers, and
determinism of the covariance trials.
"""

import csv
import io
import json

import pytest
from mpmath import mp, mpf, pi

from casimir_cutoff.cli import ScanConfig, UsageError, main, parse_args, run
from casimir_cutoff.expansion import casimir_pressure
from casimir_cutoff.modesum import (
    CutoffParams,
    FieldKind,
    PlateGeometry,
    energy_closed_form,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestParseArgs:
    """Config construction and flag validation."""

    def test_defaults(self):
        cfg = parse_args(["pressure", "--a", "1.0", "--lambda", "0.0", "--field", "em"])
        assert cfg.command == "pressure"
        assert cfg.out_format == "csv"
        assert cfg.precision == 50
        assert cfg.field is FieldKind.ELECTROMAGNETIC
        assert cfg.a_values == (mpf(1),)
        assert cfg.seed == 0

    def test_lambda_domain(self):
        with pytest.raises(UsageError, match="--lambda"):
            parse_args(["energy-sum", "--a", "1", "--lambda", "1.2", "--epsilon", "0.1"])
        with pytest.raises(UsageError, match="--lambda"):
            parse_args(["pressure", "--lambda", "-0.1"])

    def test_range_grammar_grid(self):
        cfg = parse_args(
            ["scan", "--a", "0.5:2.0:4", "--lambda", "0:0.9:10", "--output", "out.csv"]
        )
        assert cfg.a_values == (mpf("0.5"), mpf(1), mpf("1.5"), mpf(2))
        assert len(cfg.lam_values) == 10
        assert cfg.lam_values[0] == 0
        assert abs(cfg.lam_values[-1] - mpf("0.9")) < mpf("1e-45")
        assert abs(cfg.lam_values[1] - mpf("0.1")) < mpf("1e-45")
        assert cfg.output == "out.csv"

    def test_range_grammar_errors(self):
        with pytest.raises(UsageError, match="--a"):
            parse_args(["pressure", "--a", "1:2"])
        with pytest.raises(UsageError, match="count"):
            parse_args(["pressure", "--a", "1:2:0"])
        with pytest.raises(UsageError, match="--a"):
            parse_args(["pressure", "--a", "abc"])

    def test_single_point_range(self):
        cfg = parse_args(["pressure", "--a", "1:5:1"])
        assert cfg.a_values == (mpf(1),)

    def test_swept_range_may_touch_bad_values(self):
        # Range endpoints are validated per point at run time, not parse time.
        cfg = parse_args(["stress", "--field", "scalar", "--z", "0:0.5:2"])
        assert cfg.z_values == (mpf(0), mpf("0.5"))

    def test_eps_vec_validation(self):
        with pytest.raises(UsageError, match="four"):
            parse_args(["stress", "--eps-vec", "0,0.1,0"])
        with pytest.raises(UsageError, match="z component"):
            parse_args(["stress", "--eps-vec", "0,0.1,0,0.1"])
        with pytest.raises(UsageError, match="--eps-vec"):
            parse_args(["stress", "--eps-vec", "0.2,0.1,0,0"])

    def test_scalar_stress_requires_z(self):
        with pytest.raises(UsageError, match="--z"):
            parse_args(["stress", "--field", "scalar"])

    def test_covariance_rejects_ranges(self):
        with pytest.raises(UsageError, match="single value"):
            parse_args(["covariance", "--a", "1:2:3"])

    def test_precision_floor(self):
        with pytest.raises(UsageError, match="--precision"):
            parse_args(["pressure", "--precision", "10"])

    def test_precision_env_override(self, monkeypatch):
        monkeypatch.setenv("CASIMIR_PRECISION", "60")
        cfg = parse_args(["pressure"])
        assert cfg.precision == 60

    def test_bad_counts(self):
        with pytest.raises(UsageError, match="--n-max"):
            parse_args(["energy-sum", "--n-max", "0"])
        with pytest.raises(UsageError, match="--trials"):
            parse_args(["covariance", "--trials", "0"])
        with pytest.raises(UsageError, match="--order"):
            parse_args(["pressure", "--order", "-1"])


class TestExitCodes:
    """Process-level behaviour of main()."""

    def test_usage_error_exits_one(self, capsys):
        code, out, err = run_cli(capsys, "energy-sum", "--lambda", "1.2")
        assert code == 1
        assert "--lambda" in err
        assert out == ""

    def test_unknown_command_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 1
        assert err != ""

    def test_success_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "pressure", "--a", "1", "--lambda", "0")
        assert code == 0
        assert out.startswith("a,lambda,field,finite_part,divergent_coeff\n")

    def test_domain_error_row_exits_two(self, capsys):
        code, out, _ = run_cli(
            capsys, "stress", "--field", "scalar", "--z", "0:0.5:2", "--lambda", "0.5"
        )
        assert code == 2
        header, rows = parse_csv(out)
        assert len(rows) == 2
        # The z = 0 point hits the wall: prefix kept, computed fields empty.
        assert rows[0][3] == "0.0"
        assert all(v == "" for v in rows[0][4:])
        assert all(v != "" for v in rows[1])

    def test_convergence_failure_exits_three(self, capsys):
        # A cutoff this small needs more modes than the extension cap.
        code, out, _ = run_cli(
            capsys, "energy-sum", "--epsilon", "0.0001:0.2:2", "--lambda", "0"
        )
        assert code == 3
        _, rows = parse_csv(out)
        assert all(v == "" for v in rows[0][3:])
        assert all(v != "" for v in rows[1])


class TestOutputs:
    """Schemas, values, and round-trip precision."""

    def test_pressure_json_object(self, capsys):
        code, out, _ = run_cli(
            capsys, "pressure", "--a", "1", "--lambda", "0", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert isinstance(payload, dict)
        assert abs(mpf(payload["finite_part"]) + pi**2 / 240) < mpf("1e-30")
        assert abs(mpf(payload["divergent_coeff"])) < mpf("1e-30")
        assert abs(mpf(payload["finite_part"]) + mpf("0.04112335")) < mpf("1e-8")

    def test_pressure_json_array_for_grids(self, capsys):
        code, out, _ = run_cli(
            capsys, "pressure", "--a", "1:2:2", "--lambda", "0", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert isinstance(payload, list) and len(payload) == 2

    def test_stress_csv_values(self, capsys):
        code, out, _ = run_cli(
            capsys, "stress", "--a", "1", "--lambda", "0", "--eps-vec", "0,0.1,0,0"
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == [
            "a", "lambda", "field", "z",
            "A", "B_finite", "B_div_eps2", "Ttt", "Tzz", "trace_residual",
        ]
        row = dict(zip(header, rows[0]))
        assert abs(mpf(row["A"]) - pi**2 / 180) < mpf("1e-30")
        assert abs(mpf(row["A"]) - mpf("0.05483114")) < mpf("1e-8")
        assert abs(mpf(row["B_finite"])) < mpf("1e-30")
        assert abs(mpf(row["B_div_eps2"])) < mpf("1e-30")
        assert abs(mpf(row["Tzz"]) + pi**2 / 240) < mpf("1e-30")
        assert mpf(row["trace_residual"]) < mpf("1e-28")

    def test_energy_sum_row_consistent_with_module(self, capsys):
        code, out, _ = run_cli(
            capsys, "energy-sum", "--a", "1", "--lambda", "0.5", "--epsilon", "0.1"
        )
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["a", "lambda", "epsilon", "n_max", "energy", "remainder_bound"]
        row = dict(zip(header, rows[0]))
        exact = energy_closed_form(PlateGeometry(1), CutoffParams(mpf("0.1"), mpf("0.5")))
        assert abs(mpf(row["energy"]) - exact) <= mpf(row["remainder_bound"]) + mpf("1e-35")
        assert int(row["n_max"]) >= 1

    def test_energy_expansion_matches_references(self, capsys):
        code, out, _ = run_cli(capsys, "energy-expansion", "--a", "1", "--lambda", "0.3")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["a", "lambda", "c_m4", "c_m2", "c_0", "c_m2_ref", "c_0_ref"]
        row = dict(zip(header, rows[0]))
        assert abs(mpf(row["c_m4"])) < mpf("1e-30")
        assert abs(mpf(row["c_m2"]) - mpf(row["c_m2_ref"])) < mpf("1e-30")
        assert abs(mpf(row["c_0"]) - mpf(row["c_0_ref"])) < mpf("1e-30")

    def test_scalar_expansion_references_halved(self, capsys):
        _, em_out, _ = run_cli(capsys, "energy-expansion", "--a", "1", "--lambda", "0.4")
        _, sc_out, _ = run_cli(
            capsys, "energy-expansion", "--a", "1", "--lambda", "0.4", "--field", "scalar"
        )
        header, rows = parse_csv(sc_out)
        sc_row = dict(zip(header, rows[0]))
        em_header, em_rows = parse_csv(em_out)
        em_row = dict(zip(em_header, em_rows[0]))
        assert abs(mpf(sc_row["c_0_ref"]) - mpf(em_row["c_0_ref"]) / 2) < mpf("1e-40")
        assert abs(mpf(sc_row["c_0"]) - mpf(sc_row["c_0_ref"])) < mpf("1e-30")

    def test_round_trip_digits(self, capsys):
        # Emitted numbers re-parse to the module value to well past 30
        # significant digits.
        code, out, _ = run_cli(capsys, "pressure", "--a", "1.5", "--lambda", "0.7")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        exact = casimir_pressure(mpf("1.5"), mpf("0.7"))
        assert abs(mpf(row["finite_part"]) - exact.finite_part) < mpf("1e-35") * abs(
            exact.finite_part
        )
        assert abs(mpf(row["divergent_coeff"]) - exact.divergent_coeff) < mpf(
            "1e-35"
        ) * abs(exact.divergent_coeff)

    def test_scan_grid_shape(self, capsys, tmp_path):
        out_file = tmp_path / "grid.csv"
        code, out, _ = run_cli(
            capsys,
            "scan", "--a", "0.5:2.0:4", "--lambda", "0:0.9:10",
            "--output", str(out_file),
        )
        assert code == 0
        assert out == ""
        text = out_file.read_text()
        header, rows = parse_csv(text)
        assert header == [
            "a", "lambda", "c_m2", "c_0", "finite_part", "divergent_coeff",
            "A", "B_finite", "B_div_eps2",
        ]
        assert len(rows) == 40

    def test_covariance_residuals_and_determinism(self, capsys):
        args = (
            "covariance", "--a", "1", "--lambda", "0.5", "--rapidity", "1.0",
            "--trials", "5", "--seed", "42",
        )
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        header, rows = parse_csv(out1)
        assert header == ["trial", "rapidity", "angle", "residual"]
        assert len(rows) == 5
        assert all(mpf(r[3]) <= mpf("1e-25") for r in rows)
        _, out3, _ = run_cli(capsys, *args[:-1], "7")
        assert out3 != out1

    def test_covariance_scalar_field(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "covariance", "--field", "scalar", "--z", "0.3", "--lambda", "0.4",
            "--trials", "3",
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert all(mpf(r[3]) <= mpf("1e-25") for r in rows)

    def test_precision_flag_changes_digit_count(self, capsys):
        code, out, _ = run_cli(
            capsys, "pressure", "--a", "1", "--lambda", "0.3", "--precision", "80"
        )
        assert code == 0
        _, rows = parse_csv(out)
        finite = rows[0][3]
        mantissa = finite.lstrip("-0.").replace(".", "")
        assert len(mantissa) >= 60


class TestRunConfigDirectly:
    """run() with a hand-built config."""

    def test_json_null_for_failed_points(self, capsys):
        cfg = parse_args(
            ["stress", "--field", "scalar", "--z", "0:0.5:2", "--lambda", "0.5",
             "--format", "json"]
        )
        code = run(cfg)
        out = capsys.readouterr().out
        assert code == 2
        payload = json.loads(out)
        assert payload[0]["A"] is None
        assert payload[1]["A"] is not None
