import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from onlineramsey.cli import main
from onlineramsey.engine import Transcript, replay


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "onlineramsey.cli", *args],
        capture_output=True,
        text=True,
        timeout=300,
        **kw,
    )


class TestPlay:
    def test_writes_transcript_and_report(self, tmp_path):
        r = run_cli(
            ["play", "--m", "3", "--n", "3", "--N", "6", "--builder", "naive",
             "--painter", "random:7", "--out-dir", str(tmp_path)]
        )
        assert r.returncode == 0
        record = json.loads(r.stdout)
        assert record["status"] in ("RED_WIN", "BLUE_WIN")
        assert record["moves"] <= 15
        transcript_file = next(tmp_path.glob("*.transcript"))
        replay(Transcript.from_text(transcript_file.read_text()))

    def test_paper_builder_phase_log(self, tmp_path):
        r = run_cli(
            ["play", "--m", "3", "--n", "3", "--N", "20", "--builder", "paper",
             "--painter", "balanced", "--out-dir", str(tmp_path)]
        )
        assert r.returncode == 0
        record = json.loads(r.stdout)
        assert record["savings"] >= 0
        assert any(p["name"] == "multipartite" for p in record["phases"])

    def test_identical_config_gives_identical_bytes(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        args = ["play", "--m", "3", "--n", "3", "--N", "8", "--builder", "paper",
                "--painter", "random:3", "--seed", "5"]
        assert run_cli([*args, "--out-dir", str(a)]).returncode == 0
        assert run_cli([*args, "--out-dir", str(b)]).returncode == 0
        for name in ("transcript", "json"):
            fa = next(a.glob(f"*.{name}")).read_bytes()
            fb = next(b.glob(f"*.{name}")).read_bytes()
            assert fa == fb

    def test_invalid_vertex_count_exits_nonzero(self, tmp_path):
        r = run_cli(["play", "--m", "3", "--n", "3", "--N", "1", "--out-dir", str(tmp_path)])
        assert r.returncode != 0
        assert not list(tmp_path.iterdir())


class TestSolve:
    def test_known_value_with_oracle(self):
        r = run_cli(["solve", "2", "3", "3", "--oracle"])
        assert r.returncode == 0
        record = json.loads(r.stdout)
        assert record["value"] == 3
        assert record["oracle_value"] == 3
        assert len(record["pv"]) == 3

    def test_seeded_position(self, tmp_path):
        graph_file = tmp_path / "seed.graph"
        graph_file.write_text("3\n0 1 R\n")
        r = run_cli(["solve", "2", "2", "3", "--from", str(graph_file)])
        assert json.loads(r.stdout)["value"] == 0


class TestSweep:
    def test_csv_schema_and_accounting(self, tmp_path):
        out = tmp_path / "sweep.csv"
        r = run_cli(
            ["sweep", "--m", "3", "--n", "3", "--N-range", "6:8", "--repeats", "4",
             "--seed", "1", "--out", str(out)]
        )
        assert r.returncode == 0
        with out.open() as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0].keys()) == {"N", "painter", "seed", "moves", "savings"}
        game_rows = [row for row in rows if row["painter"] != "median"]
        medians = [row for row in rows if row["painter"] == "median"]
        assert len(medians) == 3
        for row in game_rows:
            N = int(row["N"])
            assert int(row["moves"]) + int(row["savings"]) == N * (N - 1) // 2
        random_rows = [row for row in game_rows if row["painter"] == "random"]
        assert len(random_rows) == 3 * 4

    def test_deterministic_output(self, tmp_path):
        outs = []
        for name in ("x.csv", "y.csv"):
            out = tmp_path / name
            run_cli(["sweep", "--N-range", "6:7", "--repeats", "2", "--seed", "9", "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestLab:
    def test_kst_spot_value(self):
        r = run_cli(["lab", "kst", "4", "4", "2", "2"])
        assert json.loads(r.stdout)["bound"] == "10"

    def test_es_on_graph_file(self, tmp_path):
        f = tmp_path / "g.graph"
        f.write_text("5\n")
        record = json.loads(run_cli(["lab", "es", str(f)]).stdout)
        assert record["kind"] == "independent"
        assert record["size"] == 5

    def test_density_witness(self, tmp_path):
        lines = ["8"]
        for u in range(4):
            for w in range(4, 8):
                color = "R" if (u + w) % 2 == 0 else "B"
                lines.append(f"{u} {w} {color}")
        f = tmp_path / "bip.graph"
        f.write_text("\n".join(lines) + "\n")
        record = json.loads(run_cli(["lab", "density", str(f), "--eps", "1/10"]).stdout)
        assert record["n0"] == 4
        assert record["e_hl"] == sum(2 * 2 for _ in range(4))

    def test_in_process_main_matches(self, capsys):
        assert main(["lab", "kst", "4", "4", "2", "2"]) == 0
        assert json.loads(capsys.readouterr().out)["bound_float"] == 10.0


class TestVerify:
    def test_quick_suite_passes_within_budget(self):
        import time

        t0 = time.perf_counter()
        r = run_cli(["verify", "--quick"])
        dt = time.perf_counter() - t0
        assert r.returncode == 0, r.stdout + r.stderr
        lines = [ln for ln in r.stdout.splitlines() if ln]
        assert all(ln.startswith("PASS") for ln in lines)
        assert len(lines) >= 6
        assert dt < 60
