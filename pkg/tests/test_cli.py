import json
import math

import pytest

from topext import cli, coulomb, interval
from topext.verify import Report

PI2 = math.pi ** 2


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def record_of(out):
    lines = [l for l in out.strip().splitlines() if l]
    assert len(lines) == 1
    return json.loads(lines[0])


class TestIntervalCommands:
    def test_classify_table(self, capsys):
        code, out, _ = run_cli(capsys, "interval", "classify", "--b", "0.5")
        assert code == 0
        assert "Top" in out and "NotTop" not in out

    def test_classify_records(self, capsys):
        code, out, _ = run_cli(capsys, "interval", "classify", "--b", "-1",
                               "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert rec["classification"] == "NotTop"
        assert rec["t"] == 9.0
        assert rec["bottom"] < PI2

    def test_spectrum_records_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "interval", "spectrum", "--t", "12",
                               "--cutoff", "100", "--format", "records")
        assert code == 0
        rec = record_of(out)
        # full-precision round trip of the bottom through JSON
        assert rec["bottom"] == interval.spectrum(12.0, cutoff=100.0).bottom

    def test_tq(self, capsys):
        code, out, _ = run_cli(capsys, "interval", "tq", "--terms", "2000",
                               "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert abs(rec["t_q"] - 12.0) < 1e-4
        assert abs(rec["q_value"] - 4.0) < 1e-4

    def test_secular_csv(self, capsys, tmp_path):
        path = tmp_path / "secular.csv"
        code, out, _ = run_cli(capsys, "interval", "secular", "--min", "-10",
                               "--max", "60", "--samples", "50",
                               "--out", str(path))
        assert code == 0
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "lambda,F,interval"
        for line in lines[1:]:
            lam, F, idx = line.split(",")
            value = interval.secular_F(float(lam))
            # 15 significant digits in the CSV
            assert abs(float(F) - value) < 1e-12 * max(1.0, abs(value))
            assert int(idx) >= 0

    def test_secular_skips_singularities(self, capsys):
        lo, hi = 4.0 * PI2 - 1e-9, 4.0 * PI2 + 1e-9
        code, out, _ = run_cli(capsys, "interval", "secular",
                               "--min", str(lo), "--max", str(hi),
                               "--samples", "5")
        assert code == 0
        assert out.strip().splitlines() == ["lambda,F,interval"]

    def test_secular_bad_range(self, capsys):
        code, _, err = run_cli(capsys, "interval", "secular", "--min", "10",
                               "--max", "5")
        assert code == 2


class TestPointCommands:
    def test_classify(self, capsys):
        code, out, _ = run_cli(capsys, "point", "classify", "--alpha", "-0.5",
                               "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert rec["classification"] == "NotTop"
        assert rec["bottom"] == -(4.0 * math.pi * 0.5) ** 2

    def test_classify_friedrichs(self, capsys):
        code, out, _ = run_cli(capsys, "point", "classify", "--alpha", "inf",
                               "--format", "records")
        assert code == 0
        assert record_of(out)["classification"] == "Friedrichs"

    def test_spectrum_none(self, capsys):
        code, out, _ = run_cli(capsys, "point", "spectrum", "--alpha", "1",
                               "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert rec["eigenvalue"] == "none"
        assert rec["bottom"] == 0.0

    def test_tq_exit_codes(self, capsys):
        code, out, _ = run_cli(capsys, "point", "tq", "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert abs(rec["t_q"] - 2.0) < 1e-6
        code, _, _ = run_cli(capsys, "point", "tq", "--quad-tol", "1e-15")
        assert code == 1


class TestCoulombCommands:
    def test_threshold(self, capsys):
        code, out, _ = run_cli(capsys, "coulomb", "threshold", "--nu", "1",
                               "--format", "records")
        assert code == 0
        assert record_of(out)["alpha_threshold"] == coulomb.alpha_threshold(1.0)

    def test_eigenvalue(self, capsys):
        code, out, _ = run_cli(capsys, "coulomb", "eigenvalue", "--nu", "1",
                               "--alpha", "-1", "--format", "records")
        assert code == 0
        rec = record_of(out)
        assert rec["eigenvalue"] < 0.0
        assert rec["residual"] <= 1e-10

    def test_eigenvalue_above_threshold(self, capsys):
        code, out, _ = run_cli(capsys, "coulomb", "eigenvalue", "--nu", "1",
                               "--alpha", "5", "--format", "records")
        assert code == 0
        assert record_of(out)["eigenvalue"] == "none"

    def test_classify_error_path(self, capsys):
        code, _, err = run_cli(capsys, "coulomb", "classify", "--nu", "-1",
                               "--alpha", "0")
        assert code == 1
        assert "error:" in err


class TestVerifyCommand:
    def test_records_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--grid", "200",
                               "--only", "point", "--format", "records")
        assert code == 0
        for line in out.strip().splitlines():
            rep = Report.from_record(line)
            assert rep == Report.from_record(rep.to_record())
            assert rep.passed

    def test_table_pass_lines(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--grid", "200",
                               "--only", "coulomb")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines and all(l.startswith("PASS") for l in lines)


class TestUsageErrors:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["interval"])
        assert exc.value.code == 2

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["bogus"])
        assert exc.value.code == 2
