import json

import pytest

from enumcompress.cli import main
from enumcompress.traces import run_from_jsonl

from test_density import SCENARIOS


@pytest.fixture
def trace_file(tmp_path):
    path = tmp_path / "trace.txt"
    path.write_text(",".join(str(i) for i in range(16)) + "\n")
    return path


class TestCompress:
    def test_gainless_roundtrip(self, tmp_path, trace_file):
        out = tmp_path / "run.jsonl"
        targets = tmp_path / "targets.csv"
        code = main(
            ["compress", "--algo", "gainless", "--in", str(trace_file),
             "--out", str(out), "--targets", str(targets)]
        )
        assert code == 0
        run = run_from_jsonl(out.read_text())
        assert run.d_trace.events == ((9, 3), (18, 11))
        assert targets.read_text().splitlines()[1] == "9,3,7,3"

    def test_strong(self, tmp_path):
        src = tmp_path / "trace.txt"
        src.write_text(",".join(str(i) for i in range(32)))
        out = tmp_path / "run.jsonl"
        assert main(["compress", "--algo", "strong", "--in", str(src), "--out", str(out)]) == 0
        assert run_from_jsonl(out.read_text()).d_trace.events == ((16, 2), (32, 4))

    def test_iterated_writes_depth_files(self, tmp_path):
        src = tmp_path / "trace.txt"
        src.write_text(",".join(str(i) for i in range(32)))
        out = tmp_path / "run.jsonl"
        code = main(
            ["compress", "--algo", "strong", "--in", str(src), "--out", str(out),
             "--iterate", "2"]
        )
        assert code == 0
        assert (tmp_path / "run.1.jsonl").exists()
        assert (tmp_path / "run.2.jsonl").exists()

    def test_bad_trace_usage_error(self, tmp_path):
        src = tmp_path / "trace.txt"
        src.write_text("3,x")
        assert main(["compress", "--algo", "strong", "--in", str(src),
                     "--out", str(tmp_path / "o.jsonl")]) == 2


class TestVerify:
    def test_passes_exit_0(self, tmp_path, trace_file, capsys):
        out = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(out)])
        report = tmp_path / "report.json"
        code = main(["verify", "--run", str(out), "--report", str(report)])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert any(line == "blocks: PASS" for line in lines)
        payload = json.loads(report.read_text())
        assert all(r["passed"] for r in payload)

    def test_density_counterexample_exit_1(self, tmp_path, capsys):
        run = tmp_path / "run.jsonl"
        run.write_text(
            '{"length": 2}\n'
            '{"set": "D", "stage": 1, "value": 0}\n'
            '{"set": "D", "stage": 2, "value": 1}\n'
        )
        code = main(["verify", "--run", str(run), "--checks", "density"])
        assert code == 1
        out = capsys.readouterr().out
        assert "density: FAIL" in out and "1)" in out

    def test_unknown_check_usage_error(self, tmp_path, trace_file):
        out = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(out)])
        assert main(["verify", "--run", str(out), "--checks", "nope"]) == 2


class TestTable:
    def test_render(self, tmp_path, trace_file, capsys):
        out = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(out)])
        assert main(["table", "--run", str(out)]) == 0
        text = capsys.readouterr().out
        assert "a" in text and "d" in text

    def test_csv(self, tmp_path, trace_file, capsys):
        out = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(out)])
        assert main(["table", "--run", str(out), "--csv"]) == 0
        assert "15,9,18,8,type1" in capsys.readouterr().out


class TestGameCli:
    def test_solve(self, capsys):
        code = main(["game", "solve", "--k", "2", "--variant", "even",
                     "--universe", "12", "--rounds", "4"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "p1_wins_within"

    def test_replay(self, tmp_path, capsys):
        session = tmp_path / "session.jsonl"
        session.write_text(
            json.dumps({"k": 3, "variant": "reduced", "max_rounds": 8}) + "\n"
            + json.dumps({"player": "p1", "numbers": [10, 14, 20]}) + "\n"
            + json.dumps({"player": "p2", "number": 10}) + "\n"
        )
        assert main(["game", "replay", str(session)]) == 0
        assert "p2: [10]" in capsys.readouterr().out

    def test_replay_illegal_exit_1(self, tmp_path, capsys):
        session = tmp_path / "session.jsonl"
        session.write_text(
            json.dumps({"k": 3, "variant": "reduced"}) + "\n"
            + json.dumps({"player": "p1", "numbers": [10, 14, 21]}) + "\n"
        )
        assert main(["game", "replay", str(session)]) == 1
        assert "parity" in capsys.readouterr().err


class TestDensityCli:
    def test_run_scenario(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["density", "run", "--config", str(SCENARIOS / "p0-dominant.json"),
                     "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert sorted(e[1] for e in payload["d"]["events"]) == [3, 4, 5]

    def test_invalid_scenario_exit_1(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"mode": "rK", "caps": {"length": 0, "horizon": 2}}))
        assert main(["density", "run", "--config", str(cfg)]) == 1
        assert "caps.length" in capsys.readouterr().err


class TestReportCli:
    def test_emit_files(self, tmp_path, trace_file):
        run = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(run)])
        outdir = tmp_path / "reports"
        code = main(["report", "--run", str(run), "--out", str(outdir)])
        assert code == 0
        assert (outdir / "blocks.csv").exists()
        assert (outdir / "density_curve.csv").exists()

    def test_env_default_dir(self, tmp_path, trace_file, monkeypatch):
        run = tmp_path / "run.jsonl"
        main(["compress", "--algo", "gainless", "--in", str(trace_file), "--out", str(run)])
        outdir = tmp_path / "envdir"
        monkeypatch.setenv("ENUMCOMPRESS_REPORT_DIR", str(outdir))
        assert main(["report", "--run", str(run)]) == 0
        assert (outdir / "blocks.csv").exists()

    def test_nothing_to_report(self):
        assert main(["report"]) == 2


class TestUsage:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
