import json
import sys
import time

import pytest
from click.testing import CliRunner

from app.modules.congruences.cli.commands import cli, main
from app.modules.congruences.config import ModuleConfig


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_json_report(runner):
    result = runner.invoke(cli, ["verify", "--check", "COR51", "--pmin", "5", "--pmax", "5", "--jobs", "1", "--no-timing"])
    assert result.exit_code == 0
    lines = [json.loads(line) for line in result.stdout.splitlines()]
    record, summary = lines
    assert list(record) == ModuleConfig.REPORT_FIELDS
    assert record["check_id"] == "COR51" and record["p"] == 5 and record["t"] == 4
    assert record["lhs"] == "5" and record["pass"] is True and record["micros"] is None
    assert summary["summary"]["passed"] == 1


def test_verify_csv_report(runner, tmp_path):
    out = tmp_path / "report.csv"
    result = runner.invoke(
        cli, ["verify", "--check", "VH-11", "--pmin", "5", "--pmax", "13", "--jobs", "1", "--format", "csv", "--output", str(out)]
    )
    assert result.exit_code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == ",".join(ModuleConfig.REPORT_FIELDS)
    assert len(rows) == 1 + 4
    assert all(",true,pass," in row for row in rows[1:])


def test_verify_text_report(runner):
    result = runner.invoke(cli, ["verify", "--check", "THM32A", "--pmin", "5", "--pmax", "17", "--jobs", "1", "--format", "text"])
    assert result.exit_code == 0
    assert "THM32A" in result.stdout
    assert "3 results: 3 passed" in result.stdout


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--pmin", "7", "--pmax", "5"],
        ["verify", "--check", "THM99", "--pmin", "5", "--pmax", "7"],
        ["verify", "--e", "1", "--pmin", "5", "--pmax", "7"],
    ],
)
def test_verify_usage_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


@pytest.mark.parametrize(
    "args, expected",
    [
        (["compute", "qf", "--p", "13", "--form", "F1"], "x=-3 y=2"),
        (["compute", "residue", "--a", "-1/4", "--p", "13"], "3"),
        (["compute", "jacobi", "--a", "2", "--p", "7"], "1"),
        (["compute", "binom", "--a", "-1/2", "--k", "2", "--exact"], "3/8"),
        (["compute", "harmonic", "--n", "4", "--exact"], "25/12"),
    ],
)
def test_compute(runner, args, expected):
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    assert result.stdout.strip() == expected


def test_compute_euler_numbers(runner):
    result = runner.invoke(cli, ["compute", "euler", "--n", "6"])
    assert result.stdout.split() == ["1", "0", "-1", "0", "5", "0", "-61"]


def test_compute_reports_domain_errors(runner):
    assert runner.invoke(cli, ["compute", "qf", "--p", "7", "--form", "F1"]).exit_code == 2
    assert runner.invoke(cli, ["compute", "residue", "--a", "1/7", "--p", "7"]).exit_code == 2
    assert runner.invoke(cli, ["compute", "residue", "--a", "x", "--p", "7"]).exit_code == 2


def test_wz_single_certificate(runner):
    result = runner.invoke(cli, ["wz", "--cert", "WZ-Q", "--mutants", "--at", "1/3", "2"])
    assert result.exit_code == 0
    assert "WZ-Q: verified" in result.stdout
    assert "residual at a=1/3, k=2: 0" in result.stdout


def test_wz_reports_both_readings(runner):
    result = runner.invoke(cli, ["wz", "--cert", "WZ-F"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert "WZ-F [squared]: verified" in result.stdout
    assert "WZ-F [printed]: rejected" in result.stdout
    assert "  notice: first power on binom(a+2,k), as displayed" in lines
    assert "  notice: squared binom(a+2,k), matching f_n(a+2)" in lines
    assert "WZ-F: verified (squared reading)" in lines


def test_wz_unknown_certificate(runner):
    assert runner.invoke(cli, ["wz", "--cert", "NOPE"]).exit_code == 2


def test_checks_listing(runner):
    result = runner.invoke(cli, ["checks", "--kind", "conjecture"])
    assert result.exit_code == 0
    ids = [line.split()[0] for line in result.stdout.splitlines()]
    assert "CONJ51" in ids and "THM53" not in ids


def test_environment_and_dotenv_are_ignored(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text("SUPERCONGRUENCE_VERIFY_P_MIN=197\n")
    monkeypatch.setenv("SUPERCONGRUENCE_VERIFY_P_MIN", "197")
    monkeypatch.setenv("SUPERCONGRUENCE_VERIFY_FMT", "csv")
    monkeypatch.setattr(sys, "argv", ["supercongruence", "verify", "--check", "VH-11", "--pmax", "7", "--jobs", "1"])
    with pytest.raises(SystemExit) as exit_info:
        main()
    assert exit_info.value.code == 0
    lines = capsys.readouterr().out.splitlines()
    assert json.loads(lines[-1])["summary"]["total"] == 2  # p = 5, 7 from the default --pmin


def test_compute_gamma_uses_its_own_precision(runner):
    started = time.perf_counter()
    result = runner.invoke(cli, ["compute", "gamma", "--a", "1/2", "--p", "31"])
    elapsed = time.perf_counter() - started
    assert result.exit_code == 0
    assert elapsed < 10
    r = int(result.stdout.splitlines()[-1])
    assert r * r % 31**ModuleConfig.GAMMA_PRECISION == 1  # Gamma_p(1/2)^2 = (-1)^((p+1)/2)


def test_compute_rejects_non_positive_precision(runner):
    assert runner.invoke(cli, ["compute", "harmonic", "--n", "4", "--p", "7", "--e", "0"]).exit_code == 2
