from __future__ import annotations

import json

import pytest

from spinorkit.cli import main

E12 = "0 1 0 0 0; -1 0 0 0 0; 0 0 0 0 0; 0 0 0 0 0; 0 0 0 0 0"
C0 = "0; 1 0 0 0 0 0 0 0 0 0; 0 0 0 0 1"
W0 = "odd: 1@{1,2,3,4,5}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--field", "Q", "--matrix", E12)
    assert code == 0
    assert "1; 1 0 0 0 0 0 0 0 0 0; 0 0 0 0 0" in out


def test_embed_json(capsys):
    code, out, _ = run(capsys, "embed", "--field", "Q", "--matrix", E12, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["point"] == "1; 1 0 0 0 0 0 0 0 0 0; 0 0 0 0 0"


def test_count(capsys):
    code, out, _ = run(capsys, "count", "sigma", "--p", "2")
    assert code == 0 and out.strip() == "count=2295 formula=2295 match=true"


def test_membership_and_projection(capsys):
    code, out, _ = run(capsys, "membership", "--field", "Q", "--point", C0, "--spinor", W0)
    assert code == 0 and "true" in out
    code, out, _ = run(capsys, "project", "--field", "Q", "--point", C0, "--spinor", W0)
    assert code == 0 and "1 0 0 0 0 0 0 0 0 0" in out


def test_tangency(capsys):
    code, out, _ = run(capsys, "tangency", "--field", "Q", "--spinor", W0, "--json")
    assert code == 0
    assert len(json.loads(out)["points"]) == 5


def test_precondition_errors_exit_2(capsys):
    code, _, err = run(capsys, "project", "--field", "Q", "--point", "1; 0 0 0 0 0 0 0 0 0 0; 0 0 0 0 0", "--spinor", W0)
    assert code == 2 and err.startswith("error: NotInSection")
    code, _, err = run(capsys, "embed", "--field", "Fp:8", "--matrix", E12)
    assert code == 2 and "NotPrime" in err
    code, _, err = run(capsys, "count", "sigma", "--p", "7")
    assert code == 2 and "TooExpensive" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["embed"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_section_round_trip(tmp_path, capsys):
    path = tmp_path / "x.txt"
    code, _, _ = run(capsys, "section", "sample", "--k", "-1", "--field", "Fp:7", "--seed", "3", "--output", str(path))
    assert code == 0 and path.read_text().startswith("spinorkit-section v1")
    code, out, _ = run(capsys, "section", "scan", "--input", str(path), "--json")
    assert code == 0
    assert isinstance(json.loads(out), dict)


def test_length(capsys):
    code, out, _ = run(capsys, "length", "--field", "Q", "--n", "2", "--forms", "z0^2, z0*z1, z1^2")
    assert code == 0 and "3" in out


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--p", "5", "--samples", "1000", "--seed", "2")
    assert code == 0 and "violations=0" in out and "ok=true" in out
