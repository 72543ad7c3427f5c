import json
import subprocess
import sys

import pytest

from turanlab.cli import JobSpec, dispatch, main
from turanlab.hypergraph import from_json_dict, dumps_canonical, from_graph6


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "turanlab.cli", *args],
        capture_output=True,
        text=True,
    )
    status = json.loads(proc.stderr.strip().splitlines()[-1])
    return proc.returncode, proc.stdout, status


class TestSolve:
    def test_ex_four_cycle(self):
        code, out, status = run_cli("solve", "ex", "--n", "7", "--pattern", "C4")
        assert code == 0
        assert status["value"] == 9
        payload = json.loads(out)
        assert payload["value"] == 9
        assert len(payload["witness"]["edges"]) == 9

    def test_ex_with_degree_floor(self):
        code, out, _ = run_cli(
            "solve", "ex", "--n", "5", "--pattern", "C4", "--degree-floor", "4"
        )
        assert code == 0
        assert json.loads(out)["value"] == 6

    def test_z_quantity(self):
        code, out, _ = run_cli(
            "solve", "z", "--m", "3", "--n", "3", "--pattern", "K{2,2}"
        )
        assert code == 0
        assert json.loads(out)["value"] == 6

    def test_zexp_quantity(self):
        code, out, _ = run_cli(
            "solve", "zexp", "--m", "3", "--n", "3",
            "--ordered-pattern", "K{2,2}+", "--core-pattern", "K{2,2}+",
        )
        assert code == 0
        assert json.loads(out)["value"] == 9

    def test_multiple_patterns(self):
        code, out, _ = run_cli(
            "solve", "ex", "--n", "5", "--pattern", "C4", "--pattern", "K{1,3}"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == 5

    def test_missing_pattern_is_malformed(self):
        code, _, status = run_cli("solve", "ex", "--n", "5")
        assert code == 2
        assert status["status"] == "error"

    def test_cap_exit_code(self):
        code, _, status = run_cli("solve", "ex", "--n", "50", "--pattern", "C4")
        assert code == 3
        assert status["exit"] == 3

    def test_bad_pattern_exit_code(self):
        code, _, _ = run_cli("solve", "ex", "--n", "5", "--pattern", "Q7")
        assert code == 2


class TestConstruct:
    def test_normgraph_round_trip(self, tmp_path):
        out = tmp_path / "pg.json"
        code, _, status = run_cli(
            "construct", "normgraph", "--q", "3", "--s", "3", "-o", str(out)
        )
        assert code == 0
        raw = out.read_text()
        g = from_json_dict(json.loads(raw))
        assert g.n == 18
        assert dumps_canonical(g) + "\n" == raw
        assert status["edges"] == g.edge_count

    def test_graph6_round_trip(self, tmp_path):
        out = tmp_path / "pg.g6"
        code, _, _ = run_cli(
            "construct", "normgraph", "--q", "3", "--s", "2",
            "--format", "graph6", "-o", str(out),
        )
        assert code == 0
        g = from_graph6(out.read_text().strip())
        assert g.n == 6

    def test_graph6_rejected_for_bipartite(self):
        code, _, status = run_cli(
            "construct", "bipartite", "--q", "3", "--s", "2", "--format", "graph6"
        )
        assert code == 2
        assert "graph6" in status["error"]

    def test_composed_layer_choice(self):
        # the full composed run is covered by the acceptance suite; this
        # only exercises the flag validation
        code, _, status = run_cli(
            "construct", "composed", "--p", "2", "--s1", "3", "--s2", "3",
            "--layer", "bogus",
        )
        assert code == 2

    def test_deletion_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            code, _, _ = run_cli(
                "construct", "deletion", "--n", "14", "--pattern", "C4",
                "--seed", "5", "-o", str(path),
            )
            assert code == 0
        assert a.read_text() == b.read_text()

    def test_deletion_seed_changes_output(self, tmp_path):
        outs = []
        for seed in ("1", "2"):
            path = tmp_path / f"s{seed}.json"
            run_cli(
                "construct", "deletion", "--n", "14", "--pattern", "C4",
                "--seed", seed, "-o", str(path),
            )
            outs.append(path.read_text())
        assert outs[0] != outs[1]


class TestCheck:
    def test_pg_properties_pass(self):
        code, _, status = run_cli("check", "pg-properties", "--q", "3", "--s", "2")
        assert code == 0
        assert status["violations"] == 0

    def test_norm_map_pass(self):
        code, _, status = run_cli("check", "norm-map", "--q", "3", "--s", "3")
        assert code == 0
        assert status["expected_fiber"] == 4

    def test_ratio_count_pass(self):
        code, _, status = run_cli("check", "ratio-count", "--q", "3", "--s", "3")
        assert code == 0
        assert status["triples"] == 144
        assert status["ratio_floor"] == 3

    def test_random_suites_pass(self):
        for suite in ("fullness", "greedy-extend", "decomposition"):
            code, _, status = run_cli(
                "check", suite, "--n", "8", "--count", "10", "--seed", "1"
            )
            assert code == 0, suite
            assert status["violations"] == 0

    def test_missing_flags_malformed(self):
        code, _, status = run_cli("check", "pg-properties")
        assert code == 2
        assert "--q" in status["error"]


class TestScanAndReport:
    def test_scan_csv(self, tmp_path):
        out = tmp_path / "scan.csv"
        code, _, status = run_cli(
            "scan", "--pattern", "C4", "--n", "5", "--n", "6",
            "--alpha", "1", "--alpha", "1/2", "--jobs", "2", "-o", str(out),
        )
        assert code == 0
        assert status["cells"] == 4
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("pattern,host_kind,n,alpha")

    def test_report_merges(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        first.write_text("x,y\n1,2\n")
        second.write_text("y,z\n3,4\n")
        merged = tmp_path / "m.csv"
        code, _, status = run_cli(
            "report", str(first), str(second), "-o", str(merged)
        )
        assert code == 0
        rows = merged.read_text().strip().splitlines()
        assert rows[0] == "x,y,z"
        assert rows[1] == "1,2,"
        assert rows[2] == ",3,4"

    def test_report_missing_file(self, tmp_path):
        code, _, status = run_cli("report", str(tmp_path / "nope.csv"))
        assert code == 2


class TestBound:
    def test_bound_certificate(self):
        code, out, status = run_cli(
            "bound", "kst_z", "--set", "m=3", "--set", "n=3",
            "--set", "s=2", "--set", "t=2",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == pytest.approx(3 * 3**0.5 + 3)
        assert payload["branch"] == "direct"

    def test_bound_bad_params(self):
        code, _, _ = run_cli("bound", "kst_z", "--set", "m=3")
        assert code == 2
        code, _, _ = run_cli("bound", "kst_z", "--set", "m=x")
        assert code == 2


class TestJobSpec:
    def test_unknown_command_rejected(self):
        with pytest.raises(ValueError):
            JobSpec("paint", {})

    def test_unknown_params_rejected(self):
        with pytest.raises(ValueError):
            JobSpec("bound", {"bound_id": "kst_ex", "sets": [], "extra": 1})

    def test_dispatch_programmatic(self, capsys):
        spec = JobSpec("bound", {"bound_id": "kst_ex", "sets": ["n=4", "s=2", "t=2"]})
        code, extras = dispatch(spec)
        assert code == 0
        assert extras["value"] == pytest.approx(6.0)
        payload = json.loads(capsys.readouterr().out)
        assert payload["params"] == {"n": 4, "s": 2, "t": 2}

    def test_main_in_process(self, capsys):
        code = main(["solve", "ex", "--n", "4", "--pattern", "C4"])
        assert code == 0
        captured = capsys.readouterr()
        assert json.loads(captured.out)["value"] == 4
        assert json.loads(captured.err.strip().splitlines()[-1])["status"] == "ok"

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0


class TestPatternFiles:
    def test_pattern_from_file(self, tmp_path):
        core = {"kind": "bipartite", "m": 2, "n": 2,
                "edges": [[0, 0], [0, 1], [1, 0], [1, 1]]}
        path = tmp_path / "core.json"
        path.write_text(json.dumps(core))
        code, out, _ = run_cli("solve", "ex", "--n", "5", "--pattern", f"@{path}")
        assert code == 0
        assert json.loads(out)["value"] == 6

    def test_pattern_file_missing(self):
        code, _, _ = run_cli("solve", "ex", "--n", "5", "--pattern", "@/nope.json")
        assert code == 2
