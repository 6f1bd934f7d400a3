import json
import subprocess
import sys
from pathlib import Path

import pytest

from motzeta import cli, ring

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_zeta_projective_rational(capsys):
    status, out, err = run(capsys, "zeta", "projective", "2", "--order", "4", "--rational")
    assert status == 0 and err == ""
    rational, expansion = out.splitlines()
    assert rational == "(1) / ((1 - t)*(1 - L*t)*(1 - L^2*t))"
    assert expansion.endswith("O(t^5)")
    status, out, _ = run(capsys, "zeta", "projective", "2", "--order", "4", "--rational", "--output", "json")
    obj = json.loads(out)
    assert len(obj["coefficients"]) == 5
    assert obj["rational"] == {"num": ["1"], "den": ["1", "-1 - L - L^2", "L + L^2 + L^3", "-L^3"]}


def test_series_json_schema(capsys):
    _, out, _ = run(capsys, "zeta", "projective", "1", "--order", "2", "--output", "json")
    assert out == '{"order":2,"coefficients":["1","1 + L","1 + L + L^2"]}\n'


def test_qbinom(capsys):
    assert run(capsys, "qbinom", "4", "2", "--at", "2")[1] == "35\n"
    assert run(capsys, "qbinom", "4", "2")[1] == "1 + q + 2*q^2 + q^3 + q^4\n"
    assert run(capsys, "qbinom", "4", "2", "--output", "json")[1] == "[1,1,2,1,1]\n"
    assert run(capsys, "qbinom", "2", "2", "--g")[1] == "1 + q^2\n"
    assert run(capsys, "qbinom", "4", "2", "--g", "--at", "2")[1] == "93\n"


def test_verify(capsys):
    assert run(capsys, "verify", "sb-surface-split", "--order", "12") == (0, "OK\n", "")
    status, out, _ = run(capsys, "verify", "blowup", "--output", "json")
    assert status == 0 and json.loads(out)[0]["ok"] is True


def test_class(capsys):
    assert run(capsys, "class", "expr", "L^2 + 2*L + 1", "--output", "latex")[1] == "1 + 2\\mathbb{L} + \\mathbb{L}^2\n"
    assert run(capsys, "class", "blowup", "1+L+L^2", "1", "2")[1] == "1 + 2*L + L^2\n"
    assert run(capsys, "class", "projective", "3", "--at", "2")[1] == "15\n"
    assert run(capsys, "class", "sb-sym", "[B]", "2", "2", "--output", "json")[1] == '{"class":"[B] + [B]*L^2"}\n'
    assert run(capsys, "class", "expr", "[B]*([B] - 1 - L)", "--rewrite", "B=1+L")[1] == "0\n"
    assert run(capsys, "class", "expr", "[B] + L", "--mod-L")[1] == "[B]\n"
    assert run(capsys, "class", "sb-sym2", "[B]", "[G]", "--bind", "G=1+L+L^2", "--bind", "B=1+L+L^2", "--at", "2")[1] == "35\n"


def test_zeta_catalog(capsys):
    for argv in (["point"], ["affine", "2"], ["projective", "1"], ["conic"], ["conic", "1+L"],
                 ["sb-index2"], ["sb-index2", "[C]", "3"], ["sb-surface-partial"], ["sb-mod-L", "3"],
                 ["blowup"], ["blowup", "2"]):
        status, out, err = run(capsys, "zeta", *argv, "--order", "6")
        assert status == 0 and err == "" and out.strip().endswith("O(t^7)"), argv
        expansion = out.strip().splitlines()[-1]
        assert "*t" in expansion or argv == ["point"]


def test_zeta_rational_forms_expand_to_series(capsys):
    from motzeta import series
    for argv in (["conic"], ["sb-index2", "[C]", "3"], ["sb-mod-L", "4"], ["blowup", "2"], ["affine", "3"]):
        _, out, _ = run(capsys, "zeta", *argv, "--order", "8", "--rational", "--output", "json")
        obj = json.loads(out)
        r = series.RationalSeries(
            tuple(ring.parse(c) for c in obj["rational"]["num"]),
            tuple(ring.parse(c) for c in obj["rational"]["den"]),
        )
        assert [str(c) for c in r.expand(8).coeffs] == obj["coefficients"], argv


def test_zeta_specialized(capsys):
    assert run(capsys, "zeta", "projective", "1", "--order", "2", "--at", "2")[1] == "1 + 3*t + 7*t^2\n"
    out = run(capsys, "zeta", "conic", "--order", "3", "--bind", "C=1+L", "--at", "2", "--output", "json")[1]
    assert json.loads(out) == {"order": 3, "coefficients": [1, 3, 7, 15]}
    assert run(capsys, "zeta", "sb-index2", "--order", "1", "--mod-L")[1] == "1 + [C]*t + O(t^2)\n"


def test_count(capsys):
    assert run(capsys, "count", str(DATA / "quadric_f3.txt"))[1] == "16\n"
    assert run(capsys, "count", str(DATA / "quadric_f3.txt"), "--ext", "2")[1] == "100\n"
    assert run(capsys, "count", str(DATA / "blowup_plane_f3.txt"))[1] == "16\n"
    assert run(capsys, "count", str(DATA / "plane_f2.txt"), "--sym", "2")[1] == "35\n"
    assert run(capsys, "count", str(DATA / "plane_f2.txt"), "--zeta", "--order", "3")[1] == "1 + 7*t + 35*t^2 + 155*t^3\n"
    out = run(capsys, "count", str(DATA / "plane_f2.txt"), "--field-degree", "2", "--output", "json")[1]
    assert json.loads(out) == {"q": 4, "count": 21}
    out = run(capsys, "count", str(DATA / "quadric_f3.txt"), "--jobs", "2", "--backend", "python")[1]
    assert out == "16\n"


def test_multisym(capsys, tmp_path):
    assert run(capsys, "multisym", "elem", "2", "2", "1,1")[1] == "x[1][1] * x[2][2] + x[1][2] * x[2][1]\n"
    assert run(capsys, "multisym", "chow", "2", "2", "1,0;0,1")[1] == "1, 1, 0, 1, 0\n"
    out = run(capsys, "multisym", "chow", "2", "1", "2;3", "--output", "json")[1]
    assert json.loads(out) == {"indices": [[1], [2]], "coordinates": ["5", "6"]}
    poly = tmp_path / "p.poly"
    poly.write_text("x[1][1]^2 + x[2][1]^2\n", encoding="utf-8")
    assert run(capsys, "multisym", "decompose", str(poly))[1] == "e[1]^2 - 2*e[2]\n"
    out = run(capsys, "multisym", "decompose", str(DATA / "twisted.poly"))[1]
    assert out == "-e[1,0]*e[0,2] + e[0,1]*e[1,1]\n"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["qbinom", "2", "3", "--g"], "NON_COPRIME"),
        (["class", "expr", "1 +"], "PARSE_ERROR"),
        (["class", "expr", "[B]", "--at", "2"], "UNBOUND_SYMBOL"),
        (["class", "projective", "x"], "INVALID_ARGUMENT"),
        (["class", "sb-sym", "[B]", "2", "3"], "NON_COPRIME"),
        (["zeta", "sb-surface-partial", "--rational"], "INVALID_ARGUMENT"),
        (["zeta", "projective"], "INVALID_ARGUMENT"),
        (["zeta", "projective", "1", "2"], "INVALID_ARGUMENT"),
        (["count", "/nonexistent/spec.txt"], "INVALID_ARGUMENT"),
        (["count", str(DATA / "plane_f2.txt"), "--zeta"], "BUDGET_EXCEEDED"),
        (["count", str(DATA / "plane_f2.txt"), "--budget", "7"], "BUDGET_EXCEEDED"),
        (["multisym", "elem", "2", "2", "3,0"], "INVALID_INDEX"),
        (["multisym", "elem", "2", "2", "a"], "PARSE_ERROR"),
        (["multisym", "chow", "2", "2", "1,0"], "DIMENSION_MISMATCH"),
        (["multisym", "decompose", str(DATA / "plane_f2.txt")], "PARSE_ERROR"),
    ],
)
def test_domain_errors(capsys, argv, code):
    status, out, err = run(capsys, *argv)
    assert status == 1 and out == ""
    assert err.startswith(f"ERROR {code}: ") and err.count("\n") == 1


def test_not_invariant_error(capsys, tmp_path):
    poly = tmp_path / "p.poly"
    poly.write_text("x[1][1]", encoding="utf-8")
    status, _, err = run(capsys, "multisym", "decompose", str(poly), "--shape", "2,1")
    assert status == 1 and err.startswith("ERROR NOT_INVARIANT: ")


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["zeta", "nope"], ["qbinom", "4"], ["qbinom", "4", "2", "--unknown"],
     ["zeta", "point", "--order", "-1"], ["count", "x", "--ext", "1", "--sym", "2"], ["verify", "everything"],
     ["zeta", "point", "--output", "xml"]],
)
def test_usage_errors(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2 and out == ""
    assert err.startswith("ERROR USAGE: ")


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "motzeta", "zeta", "conic", "--order", "8", "--rational", "--output", "json"]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout
    bad = subprocess.run([sys.executable, "-m", "motzeta", "qbinom", "2", "3", "--g"], capture_output=True)
    assert bad.returncode == 1 and bad.stderr.startswith(b"ERROR NON_COPRIME")


def test_text_output_round_trips(capsys):
    _, out, _ = run(capsys, "zeta", "sb-index2", "--order", "4", "--output", "json")
    for c in json.loads(out)["coefficients"]:
        assert str(ring.parse(c)) == c
