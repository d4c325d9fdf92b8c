import json

import pytest

from tmi.cli import main
from tmi.complexes import complex_from_dict
from tmi.gamma import gamma
from tmi.monomials import BlockConfig


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "gen", "-n", "3", "-t", "2", "-b", "1,1,1")
        assert code == 0
        assert out == "x[1,1]*x[2,1]\nx[1,1]*x[3,1]\nx[2,1]*x[3,1]\n"

    def test_json(self, capsys, tmp_path):
        path = tmp_path / "gens.json"
        code, _, _ = run(capsys, "gen", "-n", "2", "-t", "2", "-b", "1,1", "--json", str(path))
        assert code == 0
        assert json.loads(path.read_text())["generators"] == ["x[1,1]*x[2,1]"]


class TestResolve:
    def test_example_table(self, capsys):
        code, out, err = run(capsys, "resolve", "-n", "4", "-t", "3", "-b", "2,2,1,1")
        assert code == 0
        assert "12" in out and "22" in out and "14" in out
        assert "not weakly increasing" in err  # warning only

    def test_deterministic(self, capsys):
        _, out1, _ = run(capsys, "resolve", "-n", "4", "-t", "2", "-b", "1,1,1,1")
        _, out2, _ = run(capsys, "resolve", "-n", "4", "-t", "2", "-b", "1,1,1,1")
        assert out1 == out2

    def test_matches_oracle_output(self, capsys):
        # diff-based acceptance: the two commands print identical tables
        _, res, _ = run(capsys, "resolve", "-n", "3", "-t", "2", "-b", "1,1,2")
        _, orc, _ = run(capsys, "oracle", "-n", "3", "-t", "2", "-b", "1,1,2")
        assert res == orc


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "-n", "4", "-t", "3", "-b", "2,2,1,1")
        assert code == 0
        for line in ("d2: PASS", "minimal: PASS", "acyclic: PASS", "hilbert: PASS"):
            assert line in out

    def test_prime_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "-n", "3", "-t", "2", "-b", "1,1,1", "--prime", "101")
        assert code == 0
        assert "p=101" in out

    def test_rational_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "-n", "3", "-t", "2", "-b", "1,1,1", "--rational")
        assert code == 0


class TestOracleCmd:
    def test_json_payload(self, capsys, tmp_path):
        path = tmp_path / "betti.json"
        code, _, _ = run(capsys, "oracle", "-n", "2", "-t", "2", "-b", "1,1", "--json", str(path))
        assert code == 0
        payload = json.loads(path.read_text())
        assert payload["betti"]["graded"] == {"0,2": 1}


class TestBuild:
    def test_seed_check(self, capsys):
        code, out, _ = run(capsys, "build", "-n", "4", "-t", "2", "-b", "1,2,1,1", "--seed-check")
        assert code == 0
        assert "seed-check: PASS" in out

    def test_closed_flag_same_fvector(self, capsys):
        _, out1, _ = run(capsys, "build", "-n", "4", "-t", "3", "-b", "1,1,1,1")
        _, out2, _ = run(capsys, "build", "-n", "4", "-t", "3", "-b", "1,1,1,1", "--closed")
        assert out1.splitlines()[0] == out2.splitlines()[0]


class TestDepolarize:
    def test_worked_value(self, capsys):
        code, out, _ = run(capsys, "depolarize", "x[1]*x[3]*x[4]", "-m", "4", "-t", "3")
        assert code == 0
        assert out.strip() == "y[1]*y[2]^2"


class TestVeroneseCheckCmd:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "veronese-check", "-m", "5", "-t", "2")
        assert code == 0
        assert "f-vector (10, 20, 15, 4)" in out


class TestExport:
    def test_off_with_labels(self, capsys, tmp_path):
        path = tmp_path / "fig1.off"
        code, _, _ = run(capsys, "export", "-n", "4", "-t", "3", "-b", "2,2,1,1", "--off", str(path))
        assert code == 0
        text = path.read_text()
        assert text.startswith("OFF\n12 22 0\n")
        assert text.count("#") == 12  # one label comment per vertex
        assert "x[1,1]*x[2,1]*x[3,1]" in text

    def test_off_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.off", tmp_path / "b.off"
        run(capsys, "export", "-n", "3", "-t", "2", "-b", "1,1,1", "--off", str(a))
        run(capsys, "export", "-n", "3", "-t", "2", "-b", "1,1,1", "--off", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_json_round_trip(self, capsys, tmp_path):
        path = tmp_path / "complex.json"
        code, _, _ = run(capsys, "export", "-n", "3", "-t", "2", "-b", "2,1,1", "--json", str(path))
        assert code == 0
        loaded = complex_from_dict(json.loads(path.read_text()))
        assert loaded == gamma(BlockConfig(3, 2, (2, 1, 1)))

    def test_nothing_to_export(self, capsys):
        code, _, err = run(capsys, "export", "-n", "2", "-t", "1", "-b", "1,1")
        assert code == 2
        assert "nothing to export" in err


class TestErrors:
    def test_bad_t(self, capsys):
        code, _, err = run(capsys, "gen", "-n", "2", "-t", "3", "-b", "1,1")
        assert code == 2
        assert "error:" in err

    def test_size_cap_message(self, capsys):
        code, _, err = run(capsys, "gen", "-n", "17", "-t", "1", "-b", ",".join(["1"] * 17))
        assert code == 2
        assert "cap" in err and "16" in err
