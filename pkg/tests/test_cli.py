"""Command-line interface behavior: formats, exit codes, determinism."""

import io
import json
import subprocess
import sys

import pytest

from lapctrl import graph_to_json, gen_path
from lapctrl.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def path3_file(tmp_path):
    f = tmp_path / "p3.json"
    f.write_text(graph_to_json(gen_path(3)))
    return str(f)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

class TestGen:
    def test_gen_path(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "path", "--k", "3")
        assert code == 0
        assert out == '{"n": 3, "edges": [[1, 2], [2, 3]]}\n'

    def test_gen_threshold(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "threshold", "--creation", "UJ")
        assert code == 0
        assert json.loads(out) == {"n": 3, "edges": [[1, 3], [2, 3]]}

    def test_gen_writes_file(self, capsys, tmp_path):
        target = tmp_path / "g.json"
        code, out, _ = run_cli(capsys, "gen", "antiregular", "--k", "4",
                               "--output", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["n"] == 4

    def test_gen_missing_k_is_an_error(self, capsys):
        code, _, err = run_cli(capsys, "gen", "path")
        assert code == 2
        assert err.startswith("error:")

    def test_gen_unknown_family_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit):
            main(["gen", "cycle", "--k", "3"])

    def test_gen_deterministic_bytes(self, capsys):
        _, first, _ = run_cli(capsys, "gen", "antiregular", "--k", "7")
        _, second, _ = run_cli(capsys, "gen", "antiregular", "--k", "7")
        assert first == second


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

class TestSpectrum:
    def test_path3_values(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "spectrum", path3_file)
        assert code == 0
        payload = json.loads(out)
        assert payload["values"] == pytest.approx([0.0, 1.0, 3.0], abs=1e-9)
        assert len(payload["modal"]) == 3
        assert all(len(col) == 3 for col in payload["modal"])

    def test_reads_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(graph_to_json(gen_path(2))))
        code, out, _ = run_cli(capsys, "spectrum", "-")
        assert code == 0
        assert json.loads(out)["values"] == pytest.approx([0.0, 2.0], abs=1e-9)

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "spectrum", str(tmp_path / "absent.json"))
        assert code == 2 and err.startswith("error:")


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

class TestCheck:
    def test_default_method_is_pbh(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file, "--input", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["controllable"] is True and payload["method"] == "pbh"

    def test_uncontrollable_reports_witness(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file, "--input", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["controllable"] is False
        assert payload["witness"] is not None and len(payload["witness"]) == 3

    def test_exact_method_reports_rank(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file, "--input", "2",
                               "--method", "exact")
        assert code == 0
        assert json.loads(out)["rank"] == 2

    def test_gramian_method(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file, "--input", "3",
                               "--method", "gramian", "--horizon", "2.0")
        assert code == 0
        payload = json.loads(out)
        assert payload["controllable"] is True and payload["method"] == "gramian"

    def test_all_methods_agree(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file, "--input", "2",
                               "--method", "all")
        assert code == 0
        payload = json.loads(out)
        assert payload["agree"] is True
        assert payload["exact"]["controllable"] is False
        assert payload["pbh"]["controllable"] is False
        assert payload["gramian"]["controllable"] is False

    def test_multi_vertex_input(self, capsys, path3_file):
        code, out, _ = run_cli(capsys, "check", path3_file,
                               "--input", "1", "3", "--method", "exact")
        assert code == 0
        assert json.loads(out)["rank"] == 2

    def test_expect_match_exits_zero(self, capsys, path3_file):
        code, _, err = run_cli(capsys, "check", path3_file, "--input", "2",
                               "--expect", "uncontrollable")
        assert code == 0 and err == ""

    def test_expect_mismatch_exits_one(self, capsys, path3_file):
        code, _, err = run_cli(capsys, "check", path3_file, "--input", "2",
                               "--expect", "controllable")
        assert code == 1
        assert "expectation failed" in err

    def test_input_out_of_range(self, capsys, path3_file):
        code, _, err = run_cli(capsys, "check", path3_file, "--input", "9")
        assert code == 2 and err.startswith("error:")


# ---------------------------------------------------------------------------
# compose and chain
# ---------------------------------------------------------------------------

class TestCompose:
    def test_emits_composite_graph(self, capsys, tmp_path):
        f = tmp_path / "p2.json"
        f.write_text(graph_to_json(gen_path(2)))
        code, out, _ = run_cli(capsys, "compose", "--structure", str(f),
                               "--cell", str(f), "--s", "1")
        assert code == 0
        assert json.loads(out) == {"n": 4, "edges": [[1, 2], [1, 3], [3, 4]]}

    def test_predict(self, capsys, tmp_path):
        f = tmp_path / "p2.json"
        f.write_text(graph_to_json(gen_path(2)))
        code, out, _ = run_cli(capsys, "compose", "--structure", str(f),
                               "--cell", str(f), "--s", "2", "--predict", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["input"] == 4 and payload["controllable"] is True

    def test_hypothesis_failure_is_an_error(self, capsys, tmp_path, path3_file):
        f = tmp_path / "p2.json"
        f.write_text(graph_to_json(gen_path(2)))
        code, _, err = run_cli(capsys, "compose", "--structure", str(f),
                               "--cell", path3_file, "--s", "2", "--predict", "1")
        assert code == 2 and err.startswith("error:")


class TestChain:
    def test_terminal_chain_is_a_path(self, capsys):
        code, out, _ = run_cli(capsys, "chain", "--c", "3", "--k2", "2",
                               "--links", "TT")
        assert code == 0
        assert json.loads(out) == {
            "n": 6, "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6]]}

    def test_tail(self, capsys):
        code, out, _ = run_cli(capsys, "chain", "--c", "1", "--k2", "5",
                               "--tail", "2", "--tail-attach", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 7 and [1, 6] in payload["edges"]

    def test_wrong_link_count(self, capsys):
        code, _, err = run_cli(capsys, "chain", "--c", "3", "--k2", "2",
                               "--links", "T")
        assert code == 2 and err.startswith("error:")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

class TestVerify:
    def test_cj_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "cj")
        assert code == 0
        lines = out.strip().splitlines()
        summary = json.loads(lines[-1])
        assert summary == {"suite": "cj", "cases": 210, "failures": 0}
        assert all(json.loads(line)["pass"] for line in lines[:-1])

    def test_majorization_options(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "majorization",
                               "--random", "10", "--maxk", "6", "--seed", "1")
        assert code == 0
        assert json.loads(out.strip().splitlines()[-1])["cases"] == 10

    def test_unknown_suite_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify", "everything"])


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

class TestExport:
    def test_dot(self, capsys, tmp_path):
        f = tmp_path / "p2.json"
        f.write_text(graph_to_json(gen_path(2)))
        code, out, _ = run_cli(capsys, "export", str(f), "--dot")
        assert code == 0 and out == "graph { 1 -- 2; }\n"

    def test_json_normalizes_edge_order(self, capsys, tmp_path):
        f = tmp_path / "messy.json"
        f.write_text('{"n": 3, "edges": [[3, 2], [2, 1]]}')
        code, out, _ = run_cli(capsys, "export", str(f))
        assert code == 0
        assert out == '{"n": 3, "edges": [[1, 2], [2, 3]]}\n'

    def test_dot_and_json_mutually_exclusive(self, tmp_path):
        f = tmp_path / "p2.json"
        f.write_text(graph_to_json(gen_path(2)))
        with pytest.raises(SystemExit):
            main(["export", str(f), "--dot", "--json"])


# ---------------------------------------------------------------------------
# process-level behavior
# ---------------------------------------------------------------------------

class TestProcess:
    def test_no_arguments_is_a_usage_error(self):
        with pytest.raises(SystemExit):
            main([])

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lapctrl.cli", "gen", "path", "--k", "2"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"n": 2, "edges": [[1, 2]]}

    def test_console_script(self):
        proc = subprocess.run(["lapctrl", "gen", "complete", "--k", "3"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["n"] == 3
