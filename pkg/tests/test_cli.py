"""End-to-end CLI behavior, run in-process through main()."""

import json

import pytest

from bentsmith.cli import main
from bentsmith.report import five_number, read_csv


def run_cli(args):
    return main([str(a) for a in args])


class TestEvolve:
    def test_gp_campaign_writes_all_outputs(self, tmp_path, capsys):
        out = tmp_path / "camp"
        code = run_cli(["evolve", "--n", 4, "--encoding", "gp", "--objective", "sd1",
                        "--pop", 40, "--evals", 3000, "--reps", 3, "--seed", 5,
                        "--out", out])
        assert code == 0
        rows = read_csv(out / "runs.csv")
        assert len(rows) == 3  # one row per run
        payload = json.loads((out / "summary.json").read_text())
        assert payload["config"]["rng_seed"] == 5
        assert payload["config"]["max_depth"] == 5
        assert (out / "fitness_box.png").exists()
        assert (out / "nonlinearity_box.png").exists()
        assert "campaign complete" in capsys.readouterr().out
        # serialized tree genomes re-parse and re-evaluate to the reported score
        from bentsmith.fitness import Objective, ObjectiveKind
        from bentsmith.tree import eval_tree, parse_tree
        objective = Objective(ObjectiveKind.SELF_DUAL_FIT1, 4)
        for row in rows:
            table = eval_tree(parse_tree(row["genome"]), 4)
            assert objective.evaluate(table).value == float(row["best_fitness"])

    def test_summary_statistics_match_csv(self, tmp_path):
        out = tmp_path / "camp"
        run_cli(["evolve", "--n", 4, "--encoding", "tt", "--objective", "sd2",
                 "--pop", 30, "--evals", 1500, "--reps", 4, "--seed", 6,
                 "--out", out, "--no-figures"])
        rows = read_csv(out / "runs.csv")
        payload = json.loads((out / "summary.json").read_text())
        assert payload["summary"]["best_fitness"] == five_number(
            [float(r["best_fitness"]) for r in rows])
        assert not (out / "fitness_box.png").exists()

    def test_genome_round_trips_from_csv(self, tmp_path):
        from bentsmith.core import TruthTable, classify
        out = tmp_path / "camp"
        run_cli(["evolve", "--n", 4, "--encoding", "tt", "--objective", "sd1",
                 "--pop", 20, "--evals", 800, "--reps", 2, "--seed", 7,
                 "--out", out, "--no-figures"])
        for row in read_csv(out / "runs.csv"):
            tt = TruthTable.from_record(row["genome"])
            assert classify(tt).nonlinearity == int(row["nonlinearity"])

    def test_odd_n_fails_cleanly(self, tmp_path, capsys):
        code = run_cli(["evolve", "--n", 5, "--objective", "sd1", "--out", tmp_path,
                        "--evals", 10, "--reps", 1, "--seed", 0])
        assert code == 1
        assert "odd" in capsys.readouterr().err

    def test_env_var_seed_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("BENTSMITH_SEED", "77")
        out = tmp_path / "camp"
        run_cli(["evolve", "--n", 2, "--encoding", "tt", "--objective", "sd1",
                 "--pop", 10, "--evals", 100, "--reps", 1, "--out", out, "--no-figures"])
        payload = json.loads((out / "summary.json").read_text())
        assert payload["config"]["rng_seed"] == 77

    def test_env_var_seed_must_be_integer(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("BENTSMITH_SEED", "abc")
        code = run_cli(["evolve", "--n", 2, "--encoding", "tt", "--pop", 10,
                        "--evals", 50, "--reps", 1, "--out", tmp_path / "x"])
        assert code == 1
        assert "BENTSMITH_SEED" in capsys.readouterr().err

    def test_depth_rule_min_is_selectable(self, tmp_path):
        out = tmp_path / "camp"
        run_cli(["evolve", "--n", 6, "--encoding", "gp", "--objective", "sd1",
                 "--pop", 10, "--evals", 60, "--reps", 1, "--seed", 1,
                 "--depth-rule", "min", "--out", out, "--no-figures"])
        payload = json.loads((out / "summary.json").read_text())
        assert payload["config"]["max_depth"] == 1


class TestEnumerate:
    def test_census_n2(self, capsys):
        assert run_cli(["enumerate", "--n", 2]) == 0
        out = capsys.readouterr().out
        assert "bent=8" in out and "self-dual=2" in out

    def test_census_n4_with_witnesses(self, tmp_path, capsys):
        pool = tmp_path / "pool.txt"
        assert run_cli(["enumerate", "--n", 4, "--emit-witnesses", pool]) == 0
        out = capsys.readouterr().out
        assert "bent=896" in out and "self-dual=20" in out and "anti-self-dual=20" in out
        lines = pool.read_text().strip().splitlines()
        assert len(lines) == 20
        assert all(line.startswith("n:4;tt:") for line in lines)

    def test_sampled_census_n6(self, capsys):
        assert run_cli(["enumerate", "--n", 6, "--samples", 20]) == 0
        assert "sampled" in capsys.readouterr().out

    def test_n6_without_samples_fails(self, capsys):
        assert run_cli(["enumerate", "--n", 6]) == 1
        assert "sample" in capsys.readouterr().err


class TestAnalyze:
    def test_reports_properties(self, tmp_path, capsys):
        f = tmp_path / "funcs.txt"
        f.write_text("n:2;tt:1\nn:2;tt:0\n")
        assert run_cli(["analyze", f]) == 0
        out = capsys.readouterr().out
        assert "self-dual: yes" in out
        assert "dual: n:2;tt:1" in out
        assert "fit1: 4" in out
        assert "bent: no" in out  # the constant function

    def test_parse_error_names_line(self, tmp_path, capsys):
        f = tmp_path / "funcs.txt"
        f.write_text("n:2;tt:1\nbroken\n")
        assert run_cli(["analyze", f]) == 1
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert run_cli(["analyze", tmp_path / "nope.txt"]) == 1


class TestEvolveConstruction:
    @pytest.fixture()
    def pool_file(self, tmp_path, self_dual_pool_n4):
        path = tmp_path / "pool.txt"
        path.write_text("".join(t.to_record() + "\n" for t in self_dual_pool_n4))
        return path

    def test_campaign_completes_and_reports(self, tmp_path, pool_file):
        out = tmp_path / "cons"
        code = run_cli(["evolve-construction", "--seeds", pool_file,
                        "--scheme", "incremental", "--objective", "sd1",
                        "--pop", 40, "--evals", 1200, "--reps", 2, "--seed", 3,
                        "--out", out, "--no-figures"])
        assert code == 0
        payload = json.loads((out / "summary.json").read_text())
        assert payload["config"]["n"] == 6
        assert payload["config"]["scheme"] == "incremental"
        assert payload["summary"]["optimum"] == 256
        assert len(payload["config"]["seed_sets"]) == 4
        assert all(len(group) == 4 for group in payload["config"]["seed_sets"])
        assert "trivial_runs" in payload["summary"]
        rows = read_csv(out / "runs.csv")
        assert len(rows) == 2

    def test_reject_trivial_mode_runs(self, tmp_path, pool_file):
        out = tmp_path / "cons"
        code = run_cli(["evolve-construction", "--seeds", pool_file,
                        "--scheme", "concurrent", "--objective", "sd1",
                        "--reject-trivial", "--pop", 30, "--evals", 600,
                        "--reps", 1, "--seed", 4, "--out", out, "--no-figures"])
        assert code == 0

    def test_bad_seed_file_fails_with_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("n:4;tt:0000000000000000\n")
        code = run_cli(["evolve-construction", "--seeds", bad, "--out", tmp_path / "o",
                        "--evals", 100, "--reps", 1, "--seed", 1])
        assert code == 1
        assert "line 1" in capsys.readouterr().err
