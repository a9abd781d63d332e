import json

import pytest

from tropmarkov.core.cli import main, parse_args
from tropmarkov.core.models.command_config import CommandConfig, ConfigError

LN_PHI = 0.48121182505960347


def run(capsys, *argv):
    """Run the CLI and return (exit status, stdout, stderr)."""
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestVerify:
    def test_tropical_suite(self, capsys):
        status, out, _ = run(capsys, "verify", "--suite", "tropical", "--seed", "7", "--samples", "300")
        report = json.loads(out)
        assert status == 0
        assert report["passed"] is True
        assert report["seed"] == 7
        assert report["suites"]["tropical"]["checks"] > 0
        assert report["suites"]["tropical"]["failed"] == 0

    def test_zero_samples_is_vacuous(self, capsys):
        status, out, _ = run(capsys, "verify", "--suite", "tropical", "--samples", "0")
        report = json.loads(out)
        assert status == 0
        assert report["suites"]["tropical"]["checks"] == 0

    @pytest.mark.parametrize("suite", ["classical", "torus", "farey"])
    def test_other_suites(self, capsys, suite):
        status, out, _ = run(capsys, "verify", "--suite", suite, "--samples", "100", "--matrices", "3")
        assert status == 0
        assert json.loads(out)["suites"][suite]["passed"] is True

    def test_hex_seed(self, capsys):
        status, out, _ = run(capsys, "verify", "--suite", "tropical", "--samples", "10", "--seed", "0x5EED")
        assert status == 0
        assert json.loads(out)["seed"] == 0x5EED

    def test_negative_samples(self, capsys):
        status, _, err = run(capsys, "verify", "--samples", "-1")
        assert status == 2
        assert "❌" in err


class TestSemiconj:
    def test_residual_zero(self, capsys):
        status, out, _ = run(capsys, "semiconj", "--words", "30", "--points", "10", "--word-len", "20")
        suite = json.loads(out)["suites"]["semiconj"]
        assert status == 0
        assert suite["max_residual"] == "0/1"
        assert suite["checks"] == 30

    def test_verify_suite_alias(self, capsys):
        status, out, _ = run(capsys, "verify", "--suite", "semiconj", "--words", "10", "--points", "5")
        assert status == 0
        assert json.loads(out)["suites"]["semiconj"]["words"] == 10


class TestOrbit:
    def test_identity_rows_to_stdout(self, capsys):
        status, out, err = run(capsys, "orbit", "--matrix", "1,0,0,1", "--start", "0/1,0/1", "--n", "5")
        lines = out.splitlines()
        assert status == 0
        assert lines[0] == "n,phi,psi"
        assert [line.split(",", 1)[1] for line in lines[1:]] == ["0/1,0/1"] * 5
        assert '"length": 5' in err

    def test_exact_period_in_summary(self, capsys, tmp_path):
        target = tmp_path / "orbit.csv"
        status, out, _ = run(
            capsys, "orbit", "--matrix", "2,1,1,1", "--start", "1/2,1/2", "--n", "10",
            "--mode", "exact", "--out", str(target),
        )
        summary = json.loads(out)
        assert status == 0
        assert summary["period"] == 3
        assert len(target.read_text().splitlines()) == 11

    def test_folded_cloud(self, capsys, tmp_path):
        target = tmp_path / "cloud.csv"
        status, out, _ = run(
            capsys, "orbit", "--matrix", "2,1,1,1", "--start", "sqrt2", "--n", "20000",
            "--fold", "--out", str(target),
        )
        summary = json.loads(out)
        assert status == 0
        assert summary["surface_residual"] <= 1e-9
        assert target.read_text().splitlines()[0] == "n,u,v,w"

    def test_grid_discrepancy(self, capsys, tmp_path):
        status, out, _ = run(
            capsys, "orbit", "--matrix", "2,1,1,1", "--start", "golden", "--n", "50000",
            "--grid", "8", "--out", str(tmp_path / "cloud.csv"),
        )
        assert status == 0
        assert json.loads(out)["discrepancy"] < 0.02

    def test_json_format(self, capsys, tmp_path):
        target = tmp_path / "orbit.jsonl"
        status, _, _ = run(
            capsys, "orbit", "--matrix", "2,1,1,1", "--start", "1/3,0", "--n", "3",
            "--format", "json", "--out", str(target),
        )
        records = [json.loads(line) for line in target.read_text().splitlines()]
        assert status == 0
        assert records[0] == {"n": 0, "phi": "1/3", "psi": "0/1"}

    def test_identical_runs_are_byte_identical(self, capsys, tmp_path):
        outputs = []
        for name in ("a.csv", "b.csv"):
            target = tmp_path / name
            run(capsys, "orbit", "--matrix", "2,1,1,1", "--start", "sqrt3", "--n", "500", "--fold", "--out", str(target))
            outputs.append(target.read_bytes())
        assert outputs[0] == outputs[1]

    @pytest.mark.parametrize(
        "argv",
        [
            ["--matrix", "2,0,0,1", "--start", "0,0"],
            ["--matrix", "2,1,1", "--start", "0,0"],
            ["--matrix", "2,1,1,1", "--start", "0,0", "--n", "0"],
            ["--matrix", "2,1,1,1", "--start", "sqrt2", "--mode", "exact"],
            ["--matrix", "2,1,1,1", "--start", "nowhere"],
            ["--matrix", "2,1,1,1", "--start", "0,0", "--fold", "--grid", "4"],
        ],
    )
    def test_bad_config(self, capsys, argv):
        status, out, _ = run(capsys, "orbit", *argv)
        assert status == 2
        assert out == ""

    def test_unwritable_destination(self, capsys, tmp_path):
        target = tmp_path / "missing" / "cloud.csv"
        status, out, err = run(capsys, "orbit", "--matrix", "2,1,1,1", "--start", "0,0", "--out", str(target))
        assert status == 3
        assert out == ""
        assert "Parent directory does not exist" in err
        assert not target.exists()


class TestLyapunov:
    def test_cat_map(self, capsys):
        status, out, _ = run(capsys, "lyapunov", "--matrix", "2,1,1,1", "--n", "20000")
        report = json.loads(out)
        assert status == 0
        assert report["estimate"] == pytest.approx(0.9624, abs=0.01)
        assert report["rel_error"] < 0.01

    def test_identity_has_no_reference(self, capsys):
        status, out, _ = run(capsys, "lyapunov", "--matrix", "1,0,0,1", "--n", "1000")
        report = json.loads(out)
        assert status == 0
        assert report["estimate"] == pytest.approx(0.0, abs=1e-12)
        assert report["reference"] is None

    def test_parabolic(self, capsys):
        status, out, _ = run(capsys, "lyapunov", "--matrix", "1,1,0,1", "--n", "100000")
        assert status == 0
        assert json.loads(out)["estimate"] <= 1e-3

    def test_folded_reports_surface_residual(self, capsys):
        status, out, _ = run(capsys, "lyapunov", "--matrix", "2,1,1,1", "--n", "500", "--fold")
        report = json.loads(out)
        assert status == 0
        assert report["surface_residual"] <= 1e-9


class TestLambda:
    def test_golden_matrices(self, capsys, tmp_path):
        target = tmp_path / "lambda.csv"
        status, out, _ = run(
            capsys, "lambda", "--cf", "[1;(1)]", "--n", "200", "--estimator", "matrices", "--out", str(target)
        )
        summary = json.loads(out)
        assert status == 0
        assert summary["tail_estimates"]["matrices"] == pytest.approx(LN_PHI, rel=0.01)
        lines = target.read_text().splitlines()
        assert lines[0] == "k,lambda_k"
        assert len(lines) == 201

    def test_golden_markov(self, capsys, tmp_path):
        status, out, _ = run(
            capsys, "lambda", "--cf", "[1;(1)]", "--n", "30", "--estimator", "markov",
            "--out", str(tmp_path / "markov.csv"),
        )
        assert status == 0
        tail = json.loads(out)["tail_estimates"]["markov"]
        assert abs(tail - LN_PHI) / LN_PHI < 0.15

    def test_trivial_path(self, capsys):
        status, out, _ = run(capsys, "lambda", "--cf", "[0;]", "--n", "1")
        assert status == 0
        assert out.splitlines() == ["k,lambda_k", "1,0.0"]

    def test_all_estimators(self, capsys):
        status, out, _ = run(capsys, "lambda", "--word", "LRLRLR", "--n", "6", "--estimator", "all")
        lines = out.splitlines()
        assert status == 0
        assert lines[0] == "k,estimator,lambda_k"
        assert len(lines) == 1 + 3 * 6

    def test_markov_depth_exceeded(self, capsys):
        status, _, err = run(capsys, "lambda", "--cf", "[1;(1)]", "--n", "31", "--estimator", "markov")
        assert status == 1
        assert "depth" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ["--cf", "[1;2"],
            ["--n", "5"],
            ["--cf", "[1;(1)]", "--word", "LR"],
            ["--word", "LRX", "--n", "2"],
            ["--word", "LR", "--n", "5"],
            ["--cf", "[(0)]", "--n", "1"],
            ["--cf", "[(0,1)]", "--n", "3"],
        ],
    )
    def test_bad_config(self, capsys, argv):
        status, _, _ = run(capsys, "lambda", *argv)
        assert status == 2


class TestMarkov:
    def test_json_dump(self, capsys):
        status, out, err = run(capsys, "markov", "--word", "LLLL", "--format", "json")
        records = [json.loads(line) for line in out.splitlines()]
        assert status == 0
        assert len(records) == 5
        assert records[-1] == {"n": 4, "x": "1", "y": "34", "z": "89"}
        assert '"largest": "89"' in err

    def test_euclid_csv(self, capsys, tmp_path):
        target = tmp_path / "euclid.csv"
        status, out, _ = run(capsys, "markov", "--word", "LRLR", "--tree", "euclid", "--out", str(target))
        assert status == 0
        assert target.read_text().splitlines()[-1] == "4,5,8,13"
        assert json.loads(out)["length"] == 5

    def test_depth_cap(self, capsys):
        status, _, _ = run(capsys, "markov", "--word", "L" * 31)
        assert status == 1


class TestCommandConfig:
    def test_named_start_defaults_to_float(self):
        config = CommandConfig.from_args(parse_args(["orbit", "--matrix", "2,1,1,1", "--start", "golden"]))
        assert config.mode.value == "float"
        assert config.start_label == "golden"

    def test_rational_start_defaults_to_exact(self):
        config = CommandConfig.from_args(parse_args(["orbit", "--matrix", "2,1,1,1", "--start", "1/2,1/3"]))
        assert config.mode.value == "exact"

    def test_float_mode_converts_rational_start(self):
        config = CommandConfig.from_args(
            parse_args(["orbit", "--matrix", "2,1,1,1", "--start", "1/2,1/4", "--mode", "float"])
        )
        assert config.start.phi == 0.5

    def test_missing_source(self):
        with pytest.raises(ConfigError):
            CommandConfig.from_args(parse_args(["lambda", "--n", "3"]))

    def test_summary_mentions_command(self):
        config = CommandConfig.from_args(parse_args(["lyapunov", "--matrix", "2,1,1,1"]))
        assert "lyapunov" in config.project_summary()
