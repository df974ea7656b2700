"""Command-line behavior: flags, formats, exit codes."""

import pytest

from ringcensus.census import run_census, spectrum_from_csv
from ringcensus.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCensusCommand:
    def test_csv_to_stdout(self, capsys):
        code, out, _ = run_cli(
            capsys, "census", "--ring", "2", "--vars", "1", "--degree", "2",
            "--format", "csv",
        )
        assert code == 0
        assert "solutions,polynomials" in out
        assert "0,2" in out and "1,4" in out and "2,2" in out

    def test_markdown_block(self, capsys):
        code, out, _ = run_cli(
            capsys, "census", "--ring", "3", "--vars", "2", "--format", "md"
        )
        assert code == 0
        assert "| 2 | 216 |" in out
        assert "| 9 | 1 |" in out

    def test_budget_refusal_exit_3(self, capsys):
        code, _, err = run_cli(capsys, "census", "--ring", "17", "--vars", "3",
                               "--degree", "3")
        assert code == 3
        assert "budget" in err

    def test_write_and_reload(self, capsys, tmp_path):
        out_file = tmp_path / "spec.csv"
        code, _, _ = run_cli(
            capsys, "census", "--ring", "3", "--vars", "2", "--out", str(out_file)
        )
        assert code == 0
        spectrum = spectrum_from_csv(out_file.read_text(), 3, 2, 2)
        assert spectrum.entries == run_census(3, 2, 2).entries

    def test_rerun_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli(capsys, "census", "--ring", "4", "--vars", "2", "--out", str(a))
        run_cli(capsys, "census", "--ring", "4", "--vars", "2", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_campaign_config(self, capsys, tmp_path):
        cfg = tmp_path / "campaign.cfg"
        cfg.write_text(
            "# two tiny cells\n"
            "cells = 2:1:2, 3:2:2\n"
            f"out = {tmp_path / 'spectra'}\n"
            "formats = csv,json\n"
        )
        code, out, _ = run_cli(capsys, "census", "--config", str(cfg))
        assert code == 0
        assert (tmp_path / "spectra" / "spectrum_m2_n1_d2.csv").exists()
        assert (tmp_path / "spectra" / "spectrum_m3_n2_d2.json").exists()

    def test_missing_flags_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "census", "--ring", "3")
        assert code == 2

    def test_env_budget_override(self, capsys, monkeypatch):
        # (2,1,2) costs 2^2 * 2 = 8 evaluations; squeeze the budget below that
        monkeypatch.setenv("RINGCENSUS_BUDGET", "5")
        code, _, err = run_cli(capsys, "census", "--ring", "2", "--vars", "1")
        assert code == 3


class TestMetricsCommand:
    def test_grid_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "metrics", "--rings", "2..4", "--vars", "1..2",
            "--degree", "2", "--metric", "min-div",
        )
        assert code == 0
        assert "minimum divisibility" in out
        assert "| 4 | 1 | 2 |" in out

    def test_degree3_spot_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "metrics", "--rings", "4", "--vars", "2", "--degree", "3",
            "--metric", "min-div",
        )
        assert code == 0
        assert "| 4 | 2 |" in out

    def test_loads_stored_spectra(self, capsys, tmp_path):
        from ringcensus.census import spectrum_to_csv

        path = tmp_path / "spectrum_m3_n2_d2.csv"
        path.write_text(spectrum_to_csv(run_census(3, 2, 2)))
        code, out, _ = run_cli(
            capsys, "metrics", "--rings", "3", "--vars", "2",
            "--spectra-dir", str(tmp_path), "--no-compute", "--metric", "slots",
        )
        assert code == 0
        assert "| 3 | 8 |" in out

    def test_no_compute_without_spectra_errors(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "metrics", "--rings", "3", "--vars", "2",
            "--spectra-dir", str(tmp_path), "--no-compute",
        )
        assert code == 2
        assert "no stored spectrum" in err


class TestVerifyCommand:
    def test_theorem1_clean_exit_0(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--theorem", "1", "--ring", "4", "--vars", "2",
            "--exhaustive",
        )
        assert code == 0
        assert "0 violations" in out

    def test_theorem1_doubled_exit_1(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--theorem", "1", "--ring", "4", "--vars", "2",
            "--samples", "100", "--seed", "0", "--divisor-scale", "2",
        )
        assert code == 1
        assert "VIOLATION" in out

    def test_theorem2_sampled(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--theorem", "2", "--ring-exp", "2", "--vars", "3",
            "--samples", "30", "--seed", "1",
        )
        assert code == 0

    def test_corollary_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--theorem", "c1a", "--ring-exp", "2", "--vars", "3",
            "--samples", "30", "--seed", "1",
        )
        assert code == 0
        assert "corollary1a" in out

    def test_missing_mode_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--theorem", "1", "--ring", "4", "--vars", "2"
        )
        assert code == 2


class TestProbeCommand:
    def test_clean_probe_exit_0(self, capsys):
        code, out, _ = run_cli(
            capsys, "probe", "--ring", "4", "--vars", "3", "--degree", "2",
            "--divisor", "4", "--tries", "30", "--seed", "1",
        )
        assert code == 0
        assert "remainder:" not in out

    def test_false_divisor_prints_remainders(self, capsys):
        code, out, _ = run_cli(
            capsys, "probe", "--ring", "4", "--vars", "3", "--degree", "2",
            "--divisor", "8", "--tries", "30", "--seed", "1",
        )
        assert code == 1
        assert "remainder: 4" in out


class TestImageAndIntersect:
    def test_image_slices(self, capsys):
        code, out, _ = run_cli(
            capsys, "image", "--ring-exp", "4", "-a", "1", "-b", "1", "-c", "0",
            "--expand",
        )
        assert code == 0
        assert "2 x { 0 + 2*i }" in out
        assert "0:2" in out

    def test_intersect_pair(self, capsys):
        code, out, _ = run_cli(
            capsys, "intersect", "--ring-exp", "2", "--p", "1,0,0",
            "--domain-exp-x", "2", "--q", "1,0,0", "--domain-exp-y", "2",
        )
        assert code == 0
        assert "intersection size 8, divisor 4: divisible" in out

    def test_intersect_with_s(self, capsys):
        code, out, _ = run_cli(
            capsys, "intersect", "--ring-exp", "4", "--p", "1,0,0",
            "--domain-exp-x", "4", "--with-s", "-e", "1", "-v", "2",
        )
        assert code == 0
        assert "divisible" in out


class TestExpsumAndBound:
    def test_expsum_counts(self, capsys):
        code, out, _ = run_cli(
            capsys, "expsum", "--poly", "poly mod 4: x1*x1", "--vars", "1"
        )
        assert code == 0
        assert "counts: 1 1 0 0" in out
        assert "+1+1j" in out.replace(" ", "")

    def test_bound_marshall_ramage(self, capsys):
        code, out, _ = run_cli(
            capsys, "bound", "--marshall-ramage", "--ring", "16", "--vars", "3",
            "--degree", "2",
        )
        assert code == 0
        assert out.strip().endswith("32")

    def test_bound_theorem2(self, capsys):
        code, out, _ = run_cli(
            capsys, "bound", "--theorem2", "--ring-exp", "3", "--vars", "3",
            "--q", "1", "--v", "3",
        )
        assert code == 0
        assert out.strip().endswith("32")


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["census", "--degree", "9"])
    assert exc.value.code == 2
