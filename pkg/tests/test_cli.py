"""CLI surface: subcommands, exit codes, JSON schema conformance, set-file
round trips, and config plumbing."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ilab.cli import main
from ilab.setio import load_set, runs_of, save_dfset

REPO = Path(__file__).resolve().parent.parent
SCHEMA_PATH = REPO / "schemas" / "cli_output.schema.json"


def subprocess_env(**extra: str) -> dict:
    env = dict(os.environ)
    env["PYTHONPATH"] = str(REPO / "src") + os.pathsep + env.get("PYTHONPATH", "")
    env.update(extra)
    return env


@pytest.fixture(scope="module")
def validator():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA_PATH.read_text())
    return jsonschema.Draft202012Validator(schema)


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestExitCodes:
    def test_intersective_exits_zero(self, capsys):
        code, out = run_cli(capsys, "intersect", "check", "--poly", "0,0,1")
        assert code == 0
        assert json.loads(out)["status"] == "intersective"

    def test_not_intersective_exits_one(self, capsys):
        code, out = run_cli(capsys, "intersect", "check", "--poly", "1,0,1")
        assert code == 1
        payload = json.loads(out)
        assert payload["status"] == "not_intersective"
        assert payload["witness"] == {"p": 3, "j": 1}

    def test_usage_error_exits_two(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ilab", "nonsense"],
            capture_output=True,
            text=True,
            env=subprocess_env(),
        )
        assert proc.returncode == 2

    def test_resource_guard_exits_three(self, capsys):
        code, _ = run_cli(capsys, "expsum", "complete", "--poly", "x^2", "-a", "1", "-q", "9999991")
        assert code == 3

    def test_violation_exits_one(self, capsys, tmp_path):
        f = tmp_path / "s.txt"
        f.write_text("1\n2\n")
        code, out = run_cli(capsys, "sets", "verify", "--gens", "x^2", "--set", str(f), "--N", "10")
        assert code == 1
        assert json.loads(out)["violation"]["decomposition"] == [1]


class TestSchema:
    def test_sampled_outputs_validate(self, validator, capsys, tmp_path):
        f = tmp_path / "mult7.dfset"
        save_dfset(f, range(7, 1001, 7), 1000)
        cases = [
            ("intersect", "check", "--poly", "(x^3-19)(x^2+x+1)", "--prime-bound", "50", "--depth", "6"),
            ("aux", "build", "--poly", "x^2", "--d", "12"),
            ("expsum", "complete", "--poly", "x^2", "-a", "1", "-q", "7"),
            ("circle", "increment", "--set", str(f), "--q", "7", "--K", "1", "--theta", "0.5"),
            ("sets", "search", "--q", "5", "--k", "2", "--mode", "exhaustive"),
        ]
        for argv in cases:
            code, out = run_cli(capsys, *argv)
            assert code == 0, argv
            payload = json.loads(out)
            validator.validate(payload)

    def test_selftest_quick_validates(self, validator, capsys):
        # criterion 12 inside selftest exercises the warm-started search
        code, out = run_cli(capsys, "selftest", "--quick")
        assert code == 0
        payload = json.loads(out)
        validator.validate(payload)
        assert payload["all_passed"]


class TestSetIO:
    def test_runs(self):
        assert runs_of([1, 2, 3, 7, 9, 10]) == [(1, 3), (7, 1), (9, 2)]

    def test_round_trip(self, tmp_path):
        members = [2, 3, 4, 10, 50, 51]
        f = tmp_path / "a.dfset"
        save_dfset(f, members, 60)
        got, N = load_set(f)
        assert got == members and N == 60

    def test_plain_format(self, tmp_path):
        f = tmp_path / "plain.txt"
        f.write_text("# comment\n3\n1\n2\n")
        got, N = load_set(f)
        assert got == [1, 2, 3] and N is None


class TestPlumbing:
    def test_output_file_and_seed(self, tmp_path, capsys):
        out_path = tmp_path / "res.json"
        code, _ = run_cli(
            capsys,
            "--seed", "7",
            "--output", str(out_path),
            "sets", "search", "--q", "41", "--k", "2", "--budget", "20000",
        )
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["size"] >= 1

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "ilab.cfg"
        out_path = tmp_path / "o.json"
        cfg.write_text(f"seed=3\noutput={out_path}\n# comment\n")
        code, _ = run_cli(capsys, "--config", str(cfg), "aux", "build", "--poly", "x^2", "--d", "4")
        assert code == 0
        assert json.loads(out_path.read_text())["lambda_d"] == 16

    def test_block_size_must_be_power_of_two(self, capsys):
        code, _ = run_cli(capsys, "--block-size", "3000", "aux", "build", "--poly", "x^2", "--d", "2")
        assert code == 2

    def test_csv_commands(self, capsys):
        code, out = run_cli(capsys, "sieve", "count", "--poly", "x^2", "--Y", "5", "--X", "1000")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "X,exact,main,rel_err"
        assert lines[1].startswith("1000,")

    def test_density_table_csv(self, capsys):
        code, out = run_cli(capsys, "sets", "table", "--gens", "x^2", "--Ns", "100,1000")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "N,method,size,density,fs_bound_shape,exp_bound_shape"
        assert len(lines) == 5  # header + (greedy, trivial) x 2

    def test_remaining_subcommands_run(self, capsys, tmp_path):
        f = tmp_path / "b.dfset"
        save_dfset(f, [5 * i for i in range(1, 21)], 100)
        cases = [
            ("aux", "audit", "--poly", "(x-1)(x-2)", "--dmax", "50"),
            ("sieve", "table", "--poly", "x^3", "--Y", "10"),
            ("expsum", "major", "--poly", "x^2", "-a", "1", "-q", "3",
             "--beta", "0", "--X", "10000", "--Y", "10"),
            ("expsum", "moment", "--poly", "x^2", "--L", "3000", "--m", "6", "--Y", "10"),
            ("circle", "dft", "--set", str(f)),
            ("circle", "arcs", "--N", "1000", "--K", "5", "--Q", "9", "--t", "333"),
            ("sets", "greedy", "--gens", "x^2", "--N", "500"),
            ("sets", "trivial", "--N", "10000", "--k", "2"),
            ("sets", "ruzsa", "--B", "0,2", "--q", "5", "--k", "2", "--N", "1000"),
        ]
        for argv in cases:
            code, out = run_cli(capsys, *argv)
            assert code == 0, argv
            assert "command" in json.loads(out), argv

    def test_circle_dft_reads_dfset_N(self, capsys, tmp_path):
        f = tmp_path / "c.dfset"
        save_dfset(f, range(1, 65), 64)
        code, out = run_cli(capsys, "circle", "dft", "--set", str(f))
        payload = json.loads(out)
        assert code == 0 and payload["N"] == 64
        assert payload["f0"] == pytest.approx(1.0)

    def test_audit_sqrt_csv_columns(self, capsys, tmp_path):
        path = tmp_path / "audit.csv"
        code, _ = run_cli(
            capsys,
            "expsum", "audit-sqrt", "--poly", "x^2", "--qmax", "12", "--Y", "12",
            "--csv", str(path),
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "q,a,abs_sum,ratio_sqrt,omega_q,class_tags"
        assert len(lines) > 12


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, tmp_path):
        outs = []
        for threads in ("1", "8"):
            proc = subprocess.run(
                [sys.executable, "-m", "ilab", "sets", "search", "--q", "61",
                 "--k", "2", "--budget", "50000"],
                capture_output=True,
                text=True,
                env=subprocess_env(ILAB_THREADS=threads),
            )
            assert proc.returncode == 0
            outs.append(proc.stdout)
        assert outs[0] == outs[1]
