import json

import pytest

from sqtriplets.checks import pairs_ideal_complex
from sqtriplets.cli import main
from sqtriplets.freecomplex import dualize, minimalize
from sqtriplets.functors import ad, ad_power
from sqtriplets.io import complex_from_text, complex_to_text
from sqtriplets.triplets import DegreeTriplet, enumerate_balanced, solve_betti


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_triplet_solve(capsys):
    code, out, _ = run(capsys, "triplet", "solve", "--n", "3", "--A", "0,2", "--B", "0,2,3", "--C", "1,2,3")
    assert code == 0
    assert "alpha     1,3" in out and "beta      2,3,1" in out and "gamma     3,6,2" in out
    assert "nullity   1" in out


def test_triplet_solve_machine_matches_library(capsys):
    code, out, _ = run(capsys, "--format", "machine", "triplet", "solve", "--text", "n=9; A=1,3,4,7; B=3,4,5,6,7,8; C=2,3,4,5,6")
    assert code == 0
    doc = json.loads(out)
    sol = solve_betti(DegreeTriplet(9, [1, 3, 4, 7], range(3, 9), range(2, 7)))
    assert doc["alpha"] == sol.alpha and doc["nullity"] == 1 and doc["balanced"] and doc["positive"]


def test_unbalanced_is_domain_error(capsys):
    code, _, err = run(capsys, "triplet", "solve", "--n", "2", "--A", "0,2", "--B", "0,2", "--C", "0,2")
    assert code == 1 and "condition 2" in err
    code, _, _ = run(capsys, "triplet", "check", "--n", "2", "--A", "0,2", "--B", "0,2", "--C", "0,2")
    assert code == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["triplet", "solve", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "triplet", "solve", "--n", "3", "--A", "x,y", "--B", "0", "--C", "1")
    assert code == 2


def test_matrix_check_cube(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "12", "--check-cube")
    assert code == 0
    assert out.count("A^3 = (-1)^n I: OK") == 13


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "example23")
    assert code == 0
    assert "S^2 <- S(-2)^3 <- S(-3)" in out
    assert "S(-1)^3 <- S(-2)^6 <- S(-3)^2" in out
    triangle = out.split("degree triplet:")[1].splitlines()
    assert triangle[1].strip() == "0"
    assert any(line.startswith("0 ") and line.endswith(" 1") for line in triangle)


def test_enumerate_with_threads(capsys):
    code1, out1, _ = run(capsys, "triplet", "enumerate", "--n", "3", "--stats")
    code2, out2, _ = run(capsys, "--threads", "4", "triplet", "enumerate", "--n", "3", "--stats")
    assert code1 == code2 == 0 and out1 == out2
    assert len([l for l in out1.splitlines() if l.startswith("n=")]) == len(enumerate_balanced(3))
    assert "nullity 1:33" in out1


def test_reduce(capsys):
    code, out, _ = run(capsys, "triplet", "reduce", "--text", "n=3; A=0,2; B=0,2,3; C=1,2,3")
    assert code == 0 and out.startswith("n=3; A=1,2; B=0,2; C=1,2,3")
    code, _, err = run(capsys, "triplet", "reduce", "--text", "n=3; A=1,2; B=1,2; C=1,2")
    assert code == 1 and "rotate" in err


def test_complex_commands(tmp_path, capsys):
    src = tmp_path / "f.json"
    src.write_text(complex_to_text(pairs_ideal_complex()))
    F = pairs_ideal_complex()
    for action, expected in (("minimalize", minimalize(F)), ("dualize", dualize(F)),
                             ("ad", ad(F)), ("ad3", ad_power(F, 3))):
        out = tmp_path / f"{action}.json"
        code, _, _ = run(capsys, "complex", action, "--in", str(src), "--out", str(out))
        assert code == 0
        assert complex_from_text(out.read_text()) == expected
    code, out, _ = run(capsys, "complex", "validate", "--in", str(src))
    assert code == 0 and out.strip() == "valid"
    code, out, _ = run(capsys, "--format", "machine", "complex", "invariants", "--in", str(src))
    doc = json.loads(out)
    assert code == 0 and {"B", "H", "C"} <= set(doc)


def test_invalid_complex_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "terms": [{"position": 0, "generators": [[0, 1]]}, '
                   '{"position": -1, "generators": [[1, 0]]}], "diffs": [{"from": -1, "entries": [["1"]]}]}')
    code, out, _ = run(capsys, "complex", "validate", "--in", str(bad))
    assert code == 1 and "homogeneity" in out
    code, _, _ = run(capsys, "complex", "ad", "--in", str(bad))
    assert code == 1


def test_tensor_ranks(capsys):
    code, out, _ = run(capsys, "--format", "machine", "tensor", "ranks", "--n", "9", "--A", "1,3,4,7")
    doc = json.loads(out)
    assert code == 0 and doc["ranks"] == [2520, 11340, 10080, 1260] and doc["consistent"]


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rotation", "--max-n", "2")
    assert code == 0 and "checks passed" in out
    code, out, _ = run(capsys, "verify", "--suite", "solver", "--max-n", "3")
    assert code == 0
    code, out, _ = run(capsys, "--threads", "3", "verify", "--suite", "all", "--max-n", "2")
    assert code == 0
