"""CLI surface: subcommands, file outputs, exit codes."""

import pytest

from flipschelling.cli import main
from flipschelling.harness import RECORDS_HEADER, SUMMARY_HEADER


def test_simulate_writes_all_outputs(tmp_path, capsys):
    records = tmp_path / "records.csv"
    summary = tmp_path / "summary.csv"
    plot_data = tmp_path / "plot.dat"
    figure = tmp_path / "figure.png"
    code = main([
        "simulate", "--model", "rgg,er", "--n", "120", "--avg-degree", "4,8",
        "--trials", "3", "--seed", "7", "--threads", "2",
        "--out", str(records), "--summary-out", str(summary),
        "--plot-data-out", str(plot_data), "--plot-out", str(figure),
    ])
    assert code == 0
    rec_lines = records.read_text().split("\n")
    assert rec_lines[0] == RECORDS_HEADER
    assert len(rec_lines) == 2 * 2 * 3 + 2
    assert summary.read_text().split("\n")[0] == SUMMARY_HEADER
    assert plot_data.read_text().startswith("# model=rgg n=120")
    assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_simulate_is_reproducible(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    args = ["simulate", "--model", "er", "--n", "100", "--avg-degree", "5",
            "--trials", "4", "--seed", "11"]
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b), "--threads", "4"]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_simulate_rejects_invalid_parameters(tmp_path):
    code = main(["simulate", "--model", "rgg", "--n", "10", "--avg-degree", "40",
                 "--trials", "1", "--out", str(tmp_path / "r.csv")])
    assert code == 2


def test_bounds_output(capsys):
    assert main(["bounds", "--n", "10000", "--avg-degree", "10", "--tau", "0.8"]) == 0
    out = capsys.readouterr().out
    assert "theorem1_bound" in out and "0.501116" in out
    assert "mu_common" in out and "mu_outside" in out
    assert "er_common_empty_exact" in out
    # aligned key=value formatting
    eq_cols = {line.index("=") for line in out.strip().splitlines()}
    assert len(eq_cols) == 1


def test_bounds_without_tau_skips_region(capsys):
    assert main(["bounds", "--n", "1000", "--avg-degree", "8"]) == 0
    out = capsys.readouterr().out
    assert "mu_common" not in out
    assert "theorem1_bound" in out


def test_rw_prob_output(capsys):
    assert main(["rw-prob", "--a", "3", "--b", "3"]) == 0
    out = capsys.readouterr().out
    assert "3/16" in out
    assert "P(|A|<|B|)" in out


def test_verify_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 10


def test_plot_from_summary(tmp_path):
    summary = tmp_path / "summary.csv"
    records = tmp_path / "records.csv"
    assert main(["simulate", "--model", "er", "--n", "80", "--avg-degree", "4",
                 "--trials", "3", "--out", str(records),
                 "--summary-out", str(summary)]) == 0
    figure = tmp_path / "fig.png"
    assert main(["plot", "--summary", str(summary), "--out", str(figure)]) == 0
    assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_simulate_dump_graphs(tmp_path):
    dump = tmp_path / "dumps"
    assert main(["simulate", "--model", "er", "--n", "60", "--avg-degree", "4",
                 "--trials", "2", "--out", str(tmp_path / "r.csv"),
                 "--dump-graphs", str(dump)]) == 0
    assert len(list(dump.iterdir())) == 2
