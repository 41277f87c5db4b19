import json

import pytest

from billiardcover.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = _run(capsys, "classify", "--a", "1/50", "--p", "8",
                        "--q", "5")
    assert code == 0
    assert out == "periodic, period 26\n"

    code, out, _ = _run(capsys, "classify", "--a", "1/2", "--p", "2",
                        "--q", "1")
    assert code == 0
    assert out == "singular (hits a corner)\n"

    code, out, _ = _run(capsys, "classify", "--a", "1/3", "--vertical",
                        "--json")
    assert code == 0
    assert json.loads(out) == {"kind": "periodic", "period": 2}


def test_rcov_golden_output(capsys):
    code, out, _ = _run(capsys, "rcov", "--a", "1/16", "--p", "8", "--q", "5")
    assert code == 0
    assert out == "rcov = (1/2)/√89 ≈ 0.053000\n"

    code, out, _ = _run(capsys, "rcov", "--a", "1/3", "--vertical")
    assert code == 0
    assert out == "rcov = 2/3 ≈ 0.666667\n"


def test_rcov_json_with_oracle(capsys):
    code, out, _ = _run(capsys, "rcov", "--a", "1/16", "--p", "8", "--q", "5",
                        "--oracle-n", "200", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["exact"] == {"m": "1/2", "s": 89}
    assert doc["grid_n"] == 200
    assert doc["oracle"] <= doc["float"]


def test_plan_json(capsys):
    code, out, _ = _run(capsys, "plan", "--radius", "1/10", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["M"] == 26
    assert doc["reps"] == [[1, 5]]
    assert abs(doc["length"]["float"] - 10.198039027185569) < 1e-12


def test_plan_human(capsys):
    code, out, _ = _run(capsys, "plan", "--radius", "0.1")
    assert code == 0
    assert "M = 26" in out
    assert "representations: (1, 5)" in out
    assert "length = 2√26 ≈ 10.198039" in out


def test_orbit_methods_identical_segments(capsys):
    docs = []
    for method in ("simulate", "symmetry"):
        code, out, _ = _run(capsys, "orbit", "--a", "1/50", "--p", "8",
                            "--q", "5", "--method", method, "--json")
        assert code == 0
        docs.append(json.loads(out))
    seg_sets = [set(map(tuple, (tuple(map(tuple, s)) for s in d["segments"])))
                for d in docs]
    assert seg_sets[0] == seg_sets[1]
    assert docs[0]["bounce_points"] == docs[1]["bounce_points"]


def test_verify(capsys, tmp_path):
    code, out, _ = _run(capsys, "verify", "--a", "1/16", "--p", "8",
                        "--q", "5", "--grid", "300")
    assert code == 0
    assert "VERIFIED" in out


def test_render_writes_file(capsys, tmp_path):
    out_path = tmp_path / "orbit.svg"
    code, out, _ = _run(capsys, "render", "--a", "0.02", "--p", "8",
                        "--q", "5", "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("<?xml")
    assert 'class="orbit"' in text


def test_validation_errors_exit_2(capsys):
    code, _, err = _run(capsys, "rcov", "--a", "1/16", "--p", "4", "--q", "2")
    assert code == 2
    assert "gcd(p,q) must be 1" in err

    code, _, err = _run(capsys, "orbit", "--a", "1/2", "--p", "2", "--q", "1")
    assert code == 2
    assert "singular" in err

    code, _, err = _run(capsys, "plan", "--radius", "0")
    assert code == 2
    assert "positive" in err

    code, _, err = _run(capsys, "rcov", "--a", "1/16")
    assert code == 2

    # argparse-level errors also exit 2
    assert run(["nosuchcommand"]) == 2
