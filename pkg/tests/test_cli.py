import json

import pytest

from merogerm.cli import main

G1 = "(y^3+x^5)/x"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_resolve_text(capsys):
    code, out, _ = run(capsys, "resolve", G1)
    assert code == 0
    assert "E4" in out and "15" in out


def test_resolve_json_schema(capsys):
    code, out, _ = run(capsys, "resolve", G1, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["schema_version"] == 1
    assert [d["Nf"] for d in data["divisors"]] == [3, 5, 9, 15, 1, 0, 3, 3]


def test_output_is_deterministic(capsys):
    first = run(capsys, "jumping", G1, "--lambda-max", "2", "--format", "json")[1]
    second = run(capsys, "jumping", G1, "--lambda-max", "2", "--format", "json")[1]
    assert first == second


def test_saved_resolution_round_trip(capsys, tmp_path):
    path = tmp_path / "res.json"
    code, out, _ = run(capsys, "resolve", G1, "--out", str(path))
    assert code == 0 and "E8" in out
    json.loads(path.read_text())
    direct = run(capsys, "jumping", G1, "--lambda-max", "4")[1]
    reloaded = run(capsys, "jumping", "--resolution", str(path), "--lambda-max", "4")[1]
    assert direct == reloaded
    assert "2/3, 11/12, 1, 23/12, 2, 3, 4" in direct


def test_multiplier_json(capsys):
    code, out, _ = run(capsys, "multiplier", G1, "--lambda", "11/12", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["command"] == "multiplier"
    assert data["generators"] == ["x^2", "y"]


def test_mixed_multiplier(capsys):
    code, out, _ = run(capsys, "multiplier", "y^3+x^5", "--lambda", "14/15", "--mixed", "0")
    assert code == 0
    assert "x^3" in out and "x*y" in out and "y^2" in out


def test_stability_warning_goes_to_stderr(capsys):
    code, out, err = run(capsys, "multiplier", G1, "--lambda", "11/12", "--degree", "1")
    assert code == 0 and "warning" in err


def test_invariants_and_candidates(capsys):
    code, out, _ = run(capsys, "invariants", "(y^2+x^4)/(x^2+y^4)")
    assert code == 0 and "(-3/4, 3/4)" in out
    code, out, _ = run(capsys, "bs-candidates", G1, "--ell-max", "1", "--format", "json")
    assert code == 0 and "-2/3" in out
    code, out, _ = run(capsys, "zeta-candidates", "(y^2+x^4)/(x^2+y^4)", "--lattice-depth", "1")
    assert code == 0 and "3/4" in out


def test_zeta_requires_denominator(capsys):
    code, _, err = run(capsys, "zeta-candidates", "y^3+x^5")
    assert code == 2 and "error" in err


def test_verify_feq_exit_codes(capsys):
    assert run(capsys, "verify-feq", "--f", "x", "--op", "dx", "--b", "s+1")[0] == 0
    code, out, _ = run(capsys, "verify-feq", "--f", "x", "--op", "dx", "--b", "s+2")
    assert code == 1 and "fails" in out
    code, out, _ = run(
        capsys, "verify-feq", "--f", "x^2", "--op", "(1/4)*dx^2", "--b", "(s+1)*(s+1/2)"
    )
    assert code == 0
    assert run(capsys, "verify-feq", "--f", "1", "--g", "x+y", "--op", "1", "--b", "1",
               "--alpha", "1/2")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["resolve", "x^+"],
        ["resolve", "x^(1/2)"],
        ["resolve"],
        ["multiplier", G1],
        ["multiplier", G1, "--lambda", "-1"],
        ["jumping", G1, "--degree", "0"],
        ["resolve", G1, "--resolution", "/nonexistent/file.json"],
        ["frobnicate"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_blowup_cap(capsys):
    code, _, err = run(capsys, "resolve", "y^3+x^5", "--blowup-cap", "1")
    assert code == 2 and "error" in err
