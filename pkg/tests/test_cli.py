import json

import pytest

from mnjordan import cli
from tests.util import mutate_script, shipped_script


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def script_on_disk(tmp_path, name, text=None):
    path = tmp_path / name
    path.write_text(text if text is not None else shipped_script(name))
    return str(path)


def test_prove_shipped_scripts(capsys, tmp_path):
    for name in ("theorem_centralizer.steps", "theorem_derivation.steps"):
        code, out, _ = run(capsys, "prove", script_on_disk(tmp_path, name))
        assert code == cli.EXIT_ASSUMPTIONS
        assert "VERIFIED-WITH-ASSUMPTIONS" in out


def test_prove_missing_file(capsys):
    code, _, err = run(capsys, "prove", "no_such_file.steps")
    assert code == cli.EXIT_ERROR
    assert "cannot read" in err


def test_prove_corrupted_script(capsys, tmp_path):
    import random

    text, label = mutate_script(shipped_script("theorem_centralizer.steps"), random.Random(1))
    code, out, _ = run(capsys, "prove", script_on_disk(tmp_path, "bad.steps", text))
    assert code == cli.EXIT_FAILED
    assert label in out and "FAILED" in out


def test_prove_json_format(capsys, tmp_path):
    path = script_on_disk(tmp_path, "theorem_derivation.steps")
    code, out, _ = run(capsys, "prove", path, "--format", "json")
    assert code == cli.EXIT_ASSUMPTIONS
    payload = json.loads(out)
    assert payload["overall"] == "VERIFIED-WITH-ASSUMPTIONS"
    assert {"step", "kind", "verdict", "factors", "axioms"} <= set(payload["steps"][0])


def test_ring_verified(capsys):
    code, out, _ = run(
        capsys, "ring", "--kind", "Mat", "--k", "2", "--p", "7",
        "--law", "gen-centralizer", "--m", "1", "--n", "2",
    )
    assert code == cli.EXIT_OK
    assert "conclusion-verified" in out


def test_ring_zn_overloaded_n(capsys):
    code, out, _ = run(
        capsys, "ring", "--kind", "Zn", "--n", "4",
        "--law", "gen-centralizer", "--m", "1", "--n", "1",
    )
    assert code == cli.EXIT_OK
    assert "semiprime: False" in out


def test_ring_malformed_spec(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"moduli": [2, 2], "mult": [[[0,1],[1,0]],[[0,0],[0,0]]]}')
    code, _, err = run(
        capsys, "ring", "--spec", str(bad), "--law", "centralizer", "--m", "1", "--n", "1"
    )
    assert code == cli.EXIT_ERROR
    assert "error" in err


def test_search_family(capsys):
    code, out, _ = run(
        capsys, "search", "--family", "zn", "--max-n", "12",
        "--law", "gen-centralizer", "--m", "1", "--n", "1",
    )
    assert code == cli.EXIT_OK
    assert len(out.strip().splitlines()) == 11
    code, out, _ = run(
        capsys, "search", "--family", "mat2", "--primes", "3,5,7",
        "--law", "gen-centralizer", "--m", "1", "--n", "2", "--format", "json",
    )
    assert code == cli.EXIT_OK
    rows = json.loads(out)
    assert [r["ring"] for r in rows] == ["Mat2(Z3)", "Mat2(Z5)", "Mat2(Z7)"]
    assert rows[0]["hypotheses"]["torsion_free"] is False


def test_exit_codes_depend_only_on_the_verdict(capsys, tmp_path):
    path = script_on_disk(tmp_path, "theorem_centralizer.steps")
    first = run(capsys, "prove", path)
    second = run(capsys, "prove", path)
    assert first == second
