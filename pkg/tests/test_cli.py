"""Tests for the command-line interface."""

import json

import pytest

from fivenum.cli import main

S3_ARGS = ["estimate", "--n", "5", "--min", "0", "--q1", "1",
           "--median", "2", "--q3", "3", "--max", "4"]


class TestEstimate:
    def test_json_output(self, capsys):
        assert main(S3_ARGS) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["scenario"] == "S3"
        assert abs(payload["sd"] - 1.744335) < 1e-6

    def test_text_output(self, capsys):
        assert main(S3_ARGS + ["--format", "text"]) == 0
        out = capsys.readouterr().out
        assert "sd,1.74433\n" in out  # 1.7443346... at 6 significant digits

    def test_matches_service_numbers(self, capsys):
        from fastapi.testclient import TestClient
        from fivenum.service import create_app

        main(S3_ARGS)
        cli_payload = json.loads(capsys.readouterr().out)
        api_payload = TestClient(create_app()).post("/api/estimate", json={
            "n": 5, "min": 0, "q1": 1, "median": 2, "q3": 3, "max": 4,
        }).json()
        assert cli_payload["mean"] == api_payload["mean"]
        assert cli_payload["sd"] == api_payload["sd"]

    def test_validation_failure_exit_code(self, capsys):
        rc = main(["estimate", "--n", "5", "--min", "3", "--median", "2",
                   "--max", "4"])
        assert rc == 1
        err = capsys.readouterr().err
        assert "ORDER_VIOLATION" in err

    def test_scenario_s1(self, capsys):
        assert main(["estimate", "--n", "9", "--min", "0", "--median", "2",
                     "--max", "4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["sd_method"] == "wan/sd/S1"


class TestTable:
    def test_csv_matches_published_rows(self, capsys):
        assert main(["table", "--qmax", "100"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "Q,n,theta1,theta2,w_exact,w_approx"
        assert len(lines) == 101
        assert lines[1].startswith("1,5,2.793,6.403")
        assert lines[21].startswith("21,85,9.793,2.644")
        assert lines[100].startswith("100,401,21.004,1.871")

    def test_json_format(self, capsys):
        assert main(["table", "--qmax", "2", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload) == 2 and payload[0]["Q"] == 1

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "table.csv"
        assert main(["table", "--qmax", "1", "--out", str(out)]) == 0
        assert out.read_text().startswith("Q,n,theta1,theta2")


class TestWeights:
    def test_approx_only(self, capsys):
        assert main(["weights", "--n", "85"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["approx"] - 0.498417) < 1e-6
        assert "exact" not in payload

    def test_with_exact(self, capsys):
        assert main(["weights", "--n", "5", "--exact"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["exact"] - payload["approx"]) < 0.03

    def test_exact_invalid_n(self, capsys):
        assert main(["weights", "--n", "6", "--exact"]) == 1
        assert "error" in capsys.readouterr().err


class TestConvert:
    def test_csv_conversion(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text("study_id,n,min,q1,median,q3,max\n"
                       "a,5,0,1,2,3,4\n"
                       "b,5,9,8,7,8,9\n")
        out = tmp_path / "out.csv"
        assert main(["convert", str(src), "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 3
        assert "shi_optimal/sd/S3" in lines[1]
        assert "ORDER_VIOLATION" in lines[2]
        assert "1 of 2 rows failed" in capsys.readouterr().err

    def test_json_format(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        src.write_text("study_id,n,min,q1,median,q3,max\na,5,0,1,2,3,4\n")
        assert main(["convert", str(src), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["sd_method"] == "shi_optimal/sd/S3"

    def test_missing_file(self, capsys):
        assert main(["convert", "/nonexistent/xyz.csv"]) == 1


class TestSimulate:
    def config(self, tmp_path, **extra):
        payload = {"study": "rmse", "family": "normal", "params": [50, 17],
                   "n_grid": [5], "replications": 2000, "seed": 5}
        payload.update(extra)
        p = tmp_path / "config.json"
        p.write_text(json.dumps(payload))
        return p

    def test_rmse_outputs(self, tmp_path, capsys):
        cfg = self.config(tmp_path)
        out = tmp_path / "results"
        assert main(["simulate", str(cfg), "--out", str(out)]) == 0
        assert (out / "rmse.csv").is_file()
        assert (out / "rmse.json").is_file()
        payload = json.loads((out / "rmse.json").read_text())
        assert payload["rows"][0]["n"] == 5

    def test_deterministic_outputs(self, tmp_path, capsys):
        cfg = self.config(tmp_path)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert main(["simulate", str(cfg), "--out", str(out1)]) == 0
        assert main(["simulate", str(cfg), "--out", str(out2)]) == 0
        assert (out1 / "rmse.csv").read_text() == \
            (out2 / "rmse.csv").read_text()
        assert (out1 / "rmse.json").read_text() == \
            (out2 / "rmse.json").read_text()

    def test_histogram_study(self, tmp_path, capsys):
        cfg = self.config(tmp_path, study="histogram", n_grid=[5],
                          replications=1000)
        out = tmp_path / "h"
        assert main(["simulate", str(cfg), "--out", str(out),
                     "--format", "json"]) == 0
        payload = json.loads((out / "histogram.json").read_text())
        assert payload["study"] == "histogram"

    def test_flag_overrides(self, tmp_path, capsys):
        cfg = self.config(tmp_path)
        out = tmp_path / "o"
        assert main(["simulate", str(cfg), "--out", str(out),
                     "--reps", "1000", "--seed", "9",
                     "--format", "json"]) == 0
        payload = json.loads((out / "rmse.json").read_text())
        assert payload["replications"] == 1000
        assert payload["seed"] == 9

    def test_unknown_study(self, tmp_path, capsys):
        cfg = self.config(tmp_path, study="nope")
        assert main(["simulate", str(cfg)]) == 1

    def test_bad_config(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{broken")
        assert main(["simulate", str(p)]) == 1


class TestUsage:
    def test_unknown_flag_exits_nonzero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["table", "--bogus"])
        assert exc.value.code != 0
        assert "usage" in capsys.readouterr().err

    def test_no_command_exits_nonzero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code != 0
