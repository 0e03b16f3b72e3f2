import json
import shutil
import subprocess

import pytest

from nominal_au.cli import main, read_problem
from nominal_au.report import decode
from nominal_au.syntax import parse_perm


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_antiunify_text(capsys):
    code, out, _ = run(capsys, "antiunify", "--left", "f(a, b)", "--right", "f(b, c)", "--atoms", "a,b,c,d")
    assert code == 0
    assert "(a b)(b c)*" in out and "lgg:" in out


def test_antiunify_ground_identical(capsys):
    code, out, _ = run(capsys, "antiunify", "--left", "g(a)", "--right", "g(a)", "--json")
    data = json.loads(out)
    assert code == 0 and data["term"] == "g(a)" and data["gamma"] == "{}" and data["store"] == []


def test_antiunify_saturate(capsys):
    code, out, _ = run(capsys, "antiunify", "--left", "a.b", "--right", "b.a", "--atoms", "a,b", "--saturate", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["atoms"] == "#a0,a,b"
    (entry,) = data["store"]
    assert data["term"] == f"#a0.{entry['var']}"
    assert data["gamma"] == "{#a0#" + entry["var"] + "}"
    assert any("saturated" in d for d in data["diagnostics"])


def test_unsaturated_warning(capsys):
    _, out, _ = run(capsys, "antiunify", "--left", "a.b", "--right", "b.a", "--atoms", "a,b")
    assert "not saturated" in out


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "--eq", "a ~ a", "--eq", "a.(a b)(c d)*X ~ b.X", "--context", "{a#X}", "--atoms", "a,b,c,d")
    assert code == 0 and parse_perm(out) == parse_perm("(c d)")
    code, out, _ = run(capsys, "equiv", "--left", "f(a, b)", "--right", "f(a, b)")
    assert code == 0 and out == "Id"
    code, out, _ = run(capsys, "equiv", "--eq", "a.f(b, X) ~ b.f(a, X)", "--context", "{a#X}")
    assert code == 1 and out.splitlines()[0] == "bot"


def test_fc_fresh_alphaeq(capsys):
    assert run(capsys, "fc", "{a # a}")[:2] == (1, "bot\n; an irreducible a # a formula remains")
    assert run(capsys, "fc", "{a # f(b, X)}")[:2] == (0, "{a#X}")
    assert run(capsys, "fresh", "--context", "{b#X}", "--formula", "a # (a b)*X")[:2] == (0, "true")
    assert run(capsys, "fresh", "--formula", "a # a")[:2] == (1, "false")
    assert run(capsys, "alphaeq", "--left", "f(a, b)", "--right", "f(a, b)")[:2] == (0, "true")
    assert run(capsys, "alphaeq", "--left", "a.b", "--right", "b.a")[:2] == (1, "false")


def test_subsumes(capsys):
    assert run(capsys, "subsumes", "<{a#X}, f(X)>", "<{}, f(Y)>")[:2] == (1, "false")
    assert run(capsys, "subsumes", "<{}, f(X)>", "<{a#X}, f(X)>")[:2] == (0, "true")
    code, out, _ = run(capsys, "subsumes", "<{a#X}, f(X)>", "<{}, f(Y)>", "--max-depth", "1", "--json")
    assert code == 1 and json.loads(out)["value"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["alphaeq", "--left", "f(a", "--right", "a"],
        ["antiunify", "--left", "a"],
        ["antiunify", "--left", "a", "--right", "b", "--atoms", "a"],
        ["equiv", "--eq", "a ~ b", "--atoms", "a"],
        ["fc", "{a # }"],
        ["antiunify", "--file", "/nonexistent/problem.txt"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_problem_file(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("; first example\natoms: a,b,c,d\ncontext: {}\nleft: f(a, b)\nright: f(b, c)\n")
    code, out, _ = run(capsys, "antiunify", "--file", str(f), "--json")
    assert code == 0 and json.loads(out)["store"][0]["lhs"] == "a"
    g = tmp_path / "e.txt"
    g.write_text("context: {a#X}  ; fresh\neq: a.f(b, (a b)*X) ~ b.f(a, X)\n")
    code, out, _ = run(capsys, "equiv", "--file", str(g))
    assert code == 0 and parse_perm(out) == parse_perm("(a b)")
    with pytest.raises(Exception):
        read_problem("nonsense line")


def test_signature_env(tmp_path, monkeypatch, capsys):
    sig = tmp_path / "sig.txt"
    sig.write_text("f/1\nk/0\n")
    monkeypatch.setenv("NOMINAL_AU_SIGNATURE", str(sig))
    code, out, _ = run(capsys, "alphaeq", "--left", "f(k)", "--right", "f(k())")
    assert (code, out) == (0, "true")
    code, _, _ = run(capsys, "alphaeq", "--left", "f(k, k)", "--right", "f(k)")
    assert code == 2


def test_json_decodes(capsys):
    _, out, _ = run(capsys, "fc", "{a # f(b, X)}", "--json")
    assert decode(out) == ("context", frozenset({("a", "X")}))
    _, out, _ = run(capsys, "equiv", "--left", "a", "--right", "b", "--json")
    kind, value = decode(out)
    assert kind == "permutation" and value("a") == "b"


@pytest.mark.skipif(shutil.which("nominal-au") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["nominal-au", "equiv", "--eq", "a.f(b, X) ~ b.f(a, X)", "--context", "{a#X}"], capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout.startswith("bot")
