import json
import math

import pytest

from seidelab.cli import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEnergy:
    def test_plain(self, capsys):
        code, out, _ = run_cli(capsys, "energy", "--g6", "Bw")
        assert code == EXIT_OK
        assert "n        3" in out
        assert "eig=4" in out

    def test_json_both_backends(self, capsys):
        code, out, _ = run_cli(
            capsys, "energy", "--g6", "DUW", "--backend", "both",
            "--format", "json", "-p", "1.0", "-p", "0.5",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["n"] == 5
        assert len(doc["energies"]) == 2
        for entry in doc["energies"]:
            assert entry["integral_backend"] == pytest.approx(
                entry["eigenvalue_backend"], rel=1e-8, abs=1e-8
            )

    def test_p2_has_no_integral(self, capsys):
        code, out, _ = run_cli(
            capsys, "energy", "--g6", "Bw", "--backend", "both",
            "--format", "json", "-p", "2.0",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["energies"][0]["integral_backend"] is None
        assert doc["energies"][0]["eigenvalue_backend"] == pytest.approx(6.0)

    def test_bad_graph6(self, capsys):
        code, _, err = run_cli(capsys, "energy", "--g6", "Bww")
        assert code == EXIT_INPUT_ERROR
        assert "error" in err

    def test_bad_p(self, capsys):
        code, _, err = run_cli(capsys, "energy", "--g6", "Bw", "-p", "3.0")
        assert code == EXIT_INPUT_ERROR


class TestVerify:
    def test_single_graph_plain(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--g6", "DUW")
        assert code == EXIT_OK
        assert "FAIL" not in out
        assert "theorem2" in out

    def test_single_graph_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--g6", "Bw", "--checks", "theorem2",
            "--format", "json",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert len(doc) == 1 and doc[0]["check"] == "theorem2"
        assert doc[0]["pass"] is True

    def test_all_n_range(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--all-n", "1..4", "--checks", "theorem2"
        )
        assert code == EXIT_OK
        assert "all(n=4): 64 graphs, 0 failures" in out

    def test_all_n_too_large(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--all-n", "9")
        assert code == EXIT_INPUT_ERROR
        assert "range" in err

    def test_boundary_family(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--boundary-family", "11", "--checks", "theorem2"
        )
        assert code == EXIT_OK
        assert "0 failures" in out

    def test_unknown_check(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--g6", "Bw", "--checks", "nope")
        assert code == EXIT_INPUT_ERROR

    def test_theorem1_p_domain(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--g6", "DUW", "--checks", "theorem1", "-p", "2.0"
        )
        assert code == EXIT_INPUT_ERROR
        assert "(0, 2)" in err

    def test_g6_file_strict_and_lenient(self, capsys, tmp_path):
        p = tmp_path / "graphs.g6"
        p.write_text("Bw\nBww\nB?\n")
        code, _, err = run_cli(
            capsys, "verify", "--g6-file", str(p), "--checks", "theorem2"
        )
        assert code == EXIT_INPUT_ERROR
        assert "line 2" in err
        code, out, _ = run_cli(
            capsys, "verify", "--g6-file", str(p), "--checks", "theorem2",
            "--skip-bad-lines",
        )
        assert code == EXIT_OK
        assert "2 graphs" in out

    def test_missing_file(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--g6-file", "/nonexistent.g6", "--checks", "theorem2"
        )
        assert code == EXIT_INPUT_ERROR

    def test_json_deterministic_without_timing(self, capsys):
        argv = (
            "verify", "--all-n", "4", "--checks", "theorem2",
            "--format", "json", "--no-timing",
        )
        code1, out1, _ = run_cli(capsys, *argv)
        code2, out2, _ = run_cli(capsys, *argv)
        assert code1 == code2 == EXIT_OK
        assert out1 == out2
        doc = json.loads(out1)
        assert "timing" not in doc[0]
        assert doc[0]["counts"]["graphs_scanned"] == 64

    def test_csv_to_file(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _, _ = run_cli(
            capsys, "verify", "--all-n", "3", "--checks", "theorem2",
            "--format", "csv", "--out", str(out_path),
        )
        assert code == EXIT_OK
        lines = out_path.read_text().strip().splitlines()
        assert lines[0].startswith("graph6,n,E_S,N_op")
        assert len(lines) == 9

    def test_workers_match_serial(self, capsys):
        argv = (
            "verify", "--all-n", "5", "--checks", "theorem2",
            "--format", "json", "--no-timing",
        )
        _, serial, _ = run_cli(capsys, *argv)
        _, parallel, _ = run_cli(capsys, *argv, "--workers", "3")
        assert serial == parallel


class TestConstants:
    def test_half(self, capsys):
        code, out, _ = run_cli(capsys, "constants", "-p", "0.5")
        assert code == EXIT_OK
        assert f"closed-form={1 / (2 * math.pi):.12g}" in out

    def test_out_of_domain(self, capsys):
        code, _, err = run_cli(capsys, "constants", "-p", "1.5")
        assert code == EXIT_INPUT_ERROR

    def test_near_degenerate_warns(self, capsys):
        code, out, err = run_cli(capsys, "constants", "-p", "0.99")
        assert code == EXIT_OK
        assert "near-degenerate" in err
        assert "quadrature" not in out
