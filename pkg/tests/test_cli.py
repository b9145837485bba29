import json

import pytest

from whittaker_scattering.cli import (
    EXIT_IDENTITY_VIOLATION,
    EXIT_OK,
    EXIT_USAGE,
    build_parser,
    main,
)
from whittaker_scattering.report import ReportDocument


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Run every CLI test away from any .env or WHITTAKER_* settings."""
    for key in ("WHITTAKER_P", "WHITTAKER_F", "WHITTAKER_N", "WHITTAKER_FORMAT", "WHITTAKER_LOG_CONFIG"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)


def test_parser_requires_command():
    """Test a subcommand is mandatory."""
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_analyze_default(capsys):
    """Test analyze on the default q = 7, n = 3 configuration."""
    assert main(["analyze"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "p=7 f=1 n=3 q=7" in out
    assert "gamma(1)  4/7" in out
    assert "dims      (2, 1)" in out


def test_analyze_machine_output(tmp_path):
    """Test the machine format written to a file parses back."""
    target = tmp_path / "report.json"
    code = main(
        ["analyze", "--theta", "ramified_plus", "--c", "1:3", "--c", "0:1", "--format", "machine", "--output", str(target)]
    )
    assert code == EXIT_OK
    document = ReportDocument.from_machine(target.read_text())
    dims = [(conf.dim_plus, conf.dim_minus) for conf in document.configurations]
    assert dims == [(1, 2), (2, 1)]
    assert document.config.theta == "ramified_plus"


def test_analyze_all_pairs(capsys):
    """Test the 'all' policy analyses every isotropic pair."""
    assert main(["analyze", "--pairs", "all", "--format", "machine"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document["configurations"]) == 12
    assert len({conf["trace"]["coeffs"][0] for conf in document["configurations"]}) == 1


def test_analyze_q11(capsys):
    """Test the q = 11, n = 5 datum from the command line."""
    assert main(["analyze", "--p", "11", "--n", "5", "--theta", "ramified_minus"]) == EXIT_OK
    assert "dims      (3, 2)" in capsys.readouterr().out


def test_analyze_config_file(tmp_path, capsys):
    """Test a JSON configuration file, with a flag overriding it."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"p": 13, "n": 3, "theta": "ramified_plus"}))
    assert main(["analyze", "--config", str(path), "--c", "0:2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "q=13" in out
    assert "theta(c) = -1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--n", "4"],
        ["analyze", "--p", "9"],
        ["analyze", "--pairs", "99"],
        ["analyze", "--c", "0:0"],
        ["analyze", "--p", "5", "--f", "2", "--modulus-poly", "1,0,2", "--n", "3", "--c", "0:1,2,3"],
        ["analyze", "--p", "5", "--f", "2", "--modulus-poly", "1,0,2", "--n", "3", "--psi-twist", "1,2,3"],
        ["analyze", "--config", "missing.json"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    """Test invalid input exits with the usage code."""
    assert main(argv) == EXIT_USAGE


def test_verify_passes(capsys):
    """Test the invariant suite passes on q = 7, n = 3."""
    assert main(["verify"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS] epsilon_eq_1" in out
    assert "29/29 checks passed; all passed" in out


def test_verify_with_injected_fault(capsys):
    """Test a corrupted Gauss sum is caught with the identity violation code."""
    assert main(["verify", "--inject-fault", "gauss_sum"]) == EXIT_IDENTITY_VIOLATION
    captured = capsys.readouterr()
    assert "[FAIL] epsilon_eq_1" in captured.out
    assert "identity violated: epsilon_eq_1" in captured.err


def test_pairing_command(capsys):
    """Test the pairing report in machine format."""
    assert main(["pairing", "--format", "machine"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["pairing"]["generator_exponents"] == [[0, 2], [1, 0]]
    assert len(document["pairing"]["pairs"]) == 12
    assert document["summary"]["failed"] == []


def test_format_from_environment(monkeypatch, capsys):
    """Test WHITTAKER_FORMAT selects the output format."""
    monkeypatch.setenv("WHITTAKER_FORMAT", "machine")
    assert main(["pairing"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["command"] == "pairing"
