"""The command line interface: output schemas, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from lielocal import cli
from lielocal.errors import InvariantError
from lielocal.generic_order import CycloFactorization, generic_order
from lielocal.laurent import Laurent
from lielocal.root_datum import cached_datum


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestOrder:
    def test_sl2_value(self, capsys):
        data = run_json(capsys, "order", "A1", "--q", "5")
        assert data["value"] == "120"
        assert data["qpower"] == "1"

    def test_round_trip(self, capsys):
        data = run_json(capsys, "order", "2A2")
        rebuilt = CycloFactorization.from_json(data)
        assert rebuilt == generic_order(cached_datum("2A2"))

    def test_gl_mode(self, capsys):
        data = run_json(capsys, "order", "GL3", "--q", "4")
        assert data["value"] == str(63 * 60 * 48)

    def test_ell_part(self, capsys):
        data = run_json(capsys, "order", "A2", "--q", "4", "--ell", "5")
        assert data["d"] == 2
        assert data["nu"] == "1"

    def test_ell_requires_q(self, capsys):
        code, _, err = run_cli(capsys, "order", "A1", "--ell", "5")
        assert code == 1
        assert "requires --q" in err


class TestWeyl:
    def test_classes(self, capsys):
        data = run_json(capsys, "weyl", "classes", "A2")
        assert data["order"] == "6"
        assert data["class_count"] == 3

    def test_regular_witness(self, capsys):
        data = run_json(capsys, "weyl", "regular", "C2", "--d", "4")
        assert data["regular"] is True
        assert data["eigenspace_dim"] == 1

    def test_not_regular(self, capsys):
        data = run_json(capsys, "weyl", "regular", "A2", "--d", "4")
        assert data == {"type": "A2", "d": 4, "regular": False}


class TestSylow:
    def test_split_case(self, capsys):
        data = run_json(capsys, "sylow", "A2", "--q", "4", "--ell", "5")
        assert data["abelian"] is True
        assert data["nu"] == "1"
        assert data["d"] == 2

    def test_gl_mode(self, capsys):
        data = run_json(capsys, "sylow", "GL3", "--q", "2", "--ell", "7")
        assert data["abelian"] is True
        assert data["nu"] == "1"
        assert data["d"] == 3

    def test_defining_characteristic_rejected(self, capsys):
        code, _, err = run_cli(capsys, "sylow", "A1", "--q", "4", "--ell", "2")
        assert code == 1
        assert err


class TestDefiningChar:
    def test_blocks_counts(self, capsys):
        data = run_json(capsys, "blocks", "A1", "--q", "5")
        assert data["counts"] == {"trivial": "2", "nontrivial": "2",
                                  "defect_zero": "1"}
        assert data["total_weights"] == "5"

    def test_alperin_total(self, capsys):
        data = run_json(capsys, "alperin", "A2", "--q", "3")
        assert data["total"] == "9"

    def test_kr_sum(self, capsys):
        data = run_json(capsys, "kr-sum", "A2", "--q", "2")
        assert data["sum"] == "0"
        assert data["total"] == "0"


class TestBraidHecke:
    def test_verify_regular(self, capsys):
        data = run_json(capsys, "braid", "verify-regular", "A2", "--d", "3")
        assert data["holds"] is True

    def test_poincare(self, capsys):
        data = run_json(capsys, "hecke", "poincare", "C2")
        poly = Laurent.from_json(data["poincare"])
        assert poly(1) == 8
        assert data["at_one"] == "8"


class TestLLT:
    def test_at_one_matrix(self, capsys):
        data = run_json(capsys, "llt", "--n", "2", "--d", "2", "--at-1")
        assert data["entries"] == [[1, 0], [1, 1]]
        assert data["labels"] == [[1, 1], [2]]

    def test_polynomial_entries_round_trip(self, capsys):
        data = run_json(capsys, "llt", "--n", "3", "--d", "2")
        entry = Laurent.from_json(data["entries"][2][0])
        assert entry == Laurent.variable()

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "llt", "--n", "2", "--d", "2", "--csv")
        assert code == 0
        assert out.splitlines()[0] == "label,[1.1],[2]"
        assert out.splitlines()[2] == "[2],v,1"

    def test_v_and_at_1_conflict(self, capsys):
        code, _, err = run_cli(capsys, "llt", "--n", "2", "--d", "2",
                               "--v", "--at-1")
        assert code == 1


class TestDegenerate:
    def test_plain(self, capsys):
        data = run_json(capsys, "degenerate", "--ell", "3", "--factors", "1:2")
        assert data["isomorphism"]["certificate"]["passed"] is True
        assert data["dg"]["passed"] is True
        assert data["isomorphism"]["order"] == "9"

    def test_with_action_file(self, capsys, tmp_path):
        path = tmp_path / "gens.json"
        path.write_text(json.dumps([[[0, 1], [1, 1]]]))
        data = run_json(capsys, "degenerate", "--ell", "2",
                        "--factors", "1:2", "--E", str(path))
        assert data["isomorphism"]["certificate"]["e_order"] == 3
        assert data["isomorphism"]["certificate"]["passed"] is True

    def test_bad_factors(self, capsys):
        code, _, err = run_cli(capsys, "degenerate", "--ell", "3",
                               "--factors", "nonsense")
        assert code == 1
        assert "factors" in err

    def test_missing_file(self, capsys):
        code, _, _ = run_cli(capsys, "degenerate", "--ell", "2",
                             "--factors", "1:2", "--E", "/nonexistent.json")
        assert code == 1


class TestExitCodes:
    def test_unknown_type(self, capsys):
        code, _, _ = run_cli(capsys, "order", "Z9")
        assert code == 1

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_missing_required_flag(self, capsys):
        code, _, _ = run_cli(capsys, "blocks", "A1")
        assert code == 1

    def test_invariant_breach_maps_to_two(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise InvariantError("chain sum is off")

        monkeypatch.setattr(cli, "knorr_robinson_sum", boom)
        code, _, err = run_cli(capsys, "kr-sum", "A1", "--q", "2")
        assert code == 2
        assert "invariant" in err

    def test_success_is_zero(self, capsys):
        code, _, _ = run_cli(capsys, "order", "A1")
        assert code == 0


class TestDeterminism:
    def test_identical_bytes(self, capsys):
        _, first, _ = run_cli(capsys, "sylow", "C2", "--q", "3", "--ell", "5")
        _, second, _ = run_cli(capsys, "sylow", "C2", "--q", "3", "--ell", "5")
        assert first == second

    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "lielocal", "order", "A1", "--q", "2"],
            capture_output=True, text=True, check=False)
        assert result.returncode == 0
        assert json.loads(result.stdout)["value"] == "6"
