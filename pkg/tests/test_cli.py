import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from connectors.cli import main


@pytest.fixture(scope="module")
def schema():
    text = resources.files("connectors").joinpath("schemas/output.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, schema, *argv):
    code, out, err = run(capsys, *argv)
    rec = json.loads(out)
    jsonschema.validate(rec, schema)
    return code, rec, err


def test_stats_worked_example(capsys, schema):
    code, rec, _ = run_json(capsys, schema, "stats", "--word", "143114", "--k", "4")
    assert code == 0
    assert rec["result"] == {"kcon": "1", "gkcon": "3"}


def test_stats_small_cases(capsys, schema):
    assert run_json(capsys, schema, "stats", "--word", "1", "--k", "1")[1]["result"] == {
        "kcon": "0",
        "gkcon": "0",
    }
    assert run_json(capsys, schema, "stats", "--word", "10,3", "--k", "12")[1]["result"] == {
        "kcon": "0",
        "gkcon": "1",
    }


@pytest.mark.parametrize("word,k,pos", [("1502", 4, 2), ("3,13", 12, 2), ("12a", 3, 3)])
def test_stats_parse_errors_exit_2(capsys, word, k, pos):
    code, out, err = run(capsys, "stats", "--word", word, "--k", str(k))
    assert code == 2
    assert out == ""
    assert f"position {pos}" in err


def test_dist_all_methods_agree(capsys, schema):
    code, rec, _ = run_json(capsys, schema, "dist", "--n", "3", "--k", "2", "--stat", "kcon", "--method", "all")
    assert code == 0
    assert rec["result"]["distribution"] == ["5", "2", "1"]
    assert rec["result"]["agreement"] is True
    assert set(rec["result"]["methods"]) == {"brute", "transfer", "gf"}


def test_dist_examples(capsys, schema):
    rec = run_json(capsys, schema, "dist", "--n", "0", "--k", "9", "--stat", "gkcon")[1]
    assert rec["result"]["distribution"] == ["1"]
    rec = run_json(capsys, schema, "dist", "--n", "2", "--k", "3", "--stat", "gkcon", "--method", "gf")[1]
    assert rec["result"]["distribution"] == ["3", "6"]


def test_dist_pretty(capsys, schema):
    rec = run_json(capsys, schema, "dist", "--n", "3", "--k", "2", "--stat", "kcon", "--pretty")[1]
    assert rec["result"]["pretty"] == "5 + 2q + q^2"


def test_dist_custom_threshold(capsys, schema):
    code, rec, _ = run_json(
        capsys, schema, "dist", "--n", "4", "--k", "3", "--stat", "kcon", "--threshold", "4", "--method", "all"
    )
    assert code == 0
    assert "gf" in rec["result"]["skipped"]
    assert rec["result"]["agreement"] is True
    code, _, _ = run(capsys, "dist", "--n", "4", "--k", "3", "--stat", "kcon", "--threshold", "4", "--method", "gf")
    assert code == 2


def test_dist_brute_over_cap_exits_4(capsys):
    code, out, err = run(capsys, "dist", "--n", "5", "--k", "5", "--stat", "kcon", "--method", "brute", "--enum-cap", "100")
    assert code == 4
    assert "enumeration too large" in err


def test_dist_all_skips_brute_over_cap(capsys, schema):
    code, rec, _ = run_json(
        capsys, schema, "dist", "--n", "5", "--k", "5", "--stat", "gkcon", "--method", "all", "--enum-cap", "100"
    )
    assert code == 0
    assert "brute" in rec["result"]["skipped"]
    assert rec["result"]["agreement"] is True


def test_dist_mismatch_exits_3(capsys, monkeypatch):
    from connectors import cli
    from connectors.algebra import qpoly

    monkeypatch.setattr(cli, "transfer_distribution", lambda n, k, s: qpoly(1, 2, 3))
    code, out, err = run(capsys, "dist", "--n", "3", "--k", "2", "--stat", "kcon", "--method", "all")
    assert code == 3
    assert json.loads(out)["status"] == "mismatch"
    assert "transfer" in err and "brute" in err


def test_total_command(capsys, schema):
    code, rec, _ = run_json(capsys, schema, "total", "--n", "3", "--k", "2", "--stat", "kcon", "--method", "all")
    assert code == 0
    assert rec["result"]["total"] == "4"
    assert set(rec["result"]["methods"].values()) == {"4"}


def test_det_command(capsys, schema):
    code, rec, _ = run_json(capsys, schema, "det", "--k", "2")
    assert code == 0
    r = rec["result"]
    assert r["det_computed"] == ["1", "-1", "-1"]
    assert r["match"] and r["sum_match"]
    assert r["cramer_numerators"] == [["1"], ["1", "1"]]
    assert r["term_sum"] == ["2", "1"]
    assert r["permutation"] == [0, 1]


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--stat", "kcon", "--kmax", "3", "--nmax", "4", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n\\k,1,2,3"
    assert lines[2] == "1,0,0,0"
    # (k-1)(n-1)k^(n-2) at n=3: 0, 4, 12
    assert lines[4] == "3,0,4,12"


def test_table_json(capsys, schema):
    code, rec, _ = run_json(capsys, schema, "table", "--stat", "gkcon", "--kmax", "2", "--nmax", "2")
    assert code == 0
    # k=1: the word 11 has one pair, and 1 + 1 > 1
    assert rec["result"]["rows"][2] == ["2", "1", "3"]
    assert rec["result"]["rows"][1] == ["1", "0", "0"]


def test_table_unknown_format_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["table", "--stat", "kcon", "--kmax", "2", "--nmax", "2", "--format", "xml"])
    assert info.value.code == 2


def test_verify_small(capsys, schema):
    code, rec, err = run_json(capsys, schema, "verify", "--kmax", "1", "--nmax", "3", "--kdet", "3")
    assert code == 0
    assert rec["result"]["passed"]
    assert "PASS" in err


def test_verify_k4(capsys, schema):
    code, rec, err = run_json(capsys, schema, "verify", "--kmax", "4", "--nmax", "6", "--kdet", "6")
    assert code == 0
    assert "a*(1 - b)" in err
    assert rec["result"]["permutations"]["4"] == [2, 0, 1, 3]


def test_verify_reports_first_failure(capsys, monkeypatch):
    from connectors import linsys
    from connectors.algebra import bpoly

    monkeypatch.setattr(linsys, "cofactor_det", lambda m: bpoly(1, 5))
    code, out, err = run(capsys, "verify", "--kmax", "1", "--nmax", "2", "--kdet", "2")
    assert code == 3
    rec = json.loads(out)
    assert rec["result"]["first_failure"]["check"] == "det closed form"
    assert rec["result"]["first_failure"]["k"] == 1
    assert "cofactor" in rec["result"]["first_failure"]["detail"]
    assert "first failure" in err


def _cli(*argv, env=None):
    return subprocess.run(
        [sys.executable, "-m", "connectors", *argv], capture_output=True, text=True, env=env
    )


def test_deterministic_output():
    argv = ["dist", "--n", "5", "--k", "3", "--stat", "gkcon", "--method", "all"]
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_env_cap_override(tmp_path):
    import os

    env = dict(os.environ, CONNECTOR_ENUM_CAP="5")
    r = _cli("dist", "--n", "2", "--k", "3", "--stat", "kcon", "--method", "brute", env=env)
    assert r.returncode == 4


def test_bad_arguments_exit_2():
    assert _cli("dist", "--n", "-1", "--k", "2", "--stat", "kcon").returncode == 2
    assert _cli("dist", "--n", "2", "--k", "2", "--stat", "bogus").returncode == 2
