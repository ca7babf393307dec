import json
import subprocess
import sys

import pytest

from freecyl.cli import run
from freecyl.double import RectangleUnion
from freecyl.multicyl import MultiCylinder
from freecyl.words import Alphabet

from conftest import PHI0_TEXT

AL2 = Alphabet.of_rank(2)


@pytest.fixture
def auto(tmp_path):
    path = tmp_path / "phi0.aut"
    path.write_text(PHI0_TEXT)
    return str(path)


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out.strip(), cap.err.strip()


def test_reduce_worked_example(capsys):
    code, out, _ = out_of(capsys, ["reduce", "--set", "{aba, abab, bba, bbb, bbA}"])
    assert code == 0
    assert MultiCylinder.parse(out, AL2) == MultiCylinder.parse("{aba, bb}", AL2)


def test_split_display(capsys):
    code, out, _ = out_of(capsys, ["split", "--letter", "a"])
    assert code == 0
    assert RectangleUnion.parse(out, AL2) == RectangleUnion.parse("[b,a] [B,a] [A,a]", AL2)
    assert len(out.splitlines()) == 3


def test_split_uses_automorphism_rank(capsys, tmp_path):
    path = tmp_path / "id3.aut"
    path.write_text("rank 3\n" + "".join(f"phi {g} -> {g}\ninv {g} -> {g}\n" for g in "abc"))
    code, out, _ = out_of(capsys, ["split", "--letter", "c", "--auto", str(path)])
    assert code == 0 and len(out.splitlines()) == 5


def test_equal_exit_codes(capsys):
    assert out_of(capsys, ["equal", "--left", "{ab, abA}", "--right", "{ab}"])[0] == 0
    assert out_of(capsys, ["equal", "--left", "{a}", "--right", "{b}"])[0] == 1


def test_image_and_verify(capsys, auto):
    code, out, _ = out_of(capsys, ["image", "--auto", auto, "--word", "ba"])
    assert code == 0 and out == "{baa, baB}"
    assert out_of(capsys, ["verify", "--auto", auto, "--word", "ba", "--set", out])[0] == 0
    assert out_of(capsys, ["verify", "--auto", auto, "--word", "ba", "--set", "{baaba}"])[0] == 1
    code, out, _ = out_of(capsys, ["image", "--auto", auto, "--word", "ba", "--raw"])
    assert code == 0
    assert out_of(capsys, ["verify", "--auto", auto, "--word", "ba", "--set", out])[0] == 0


def test_dual_and_double(capsys, auto):
    code, out, _ = out_of(capsys, ["dual", "--auto", auto, "--word", "ab"])
    assert code == 0 and out == "{abA, abb, abab}"
    code, out, _ = out_of(capsys, ["double-image", "--auto", auto, "--pair", "[ba, ab]"])
    assert code == 0 and len(out.splitlines()) == 6
    code2, _, _ = out_of(capsys, ["verify-double", "--auto", auto, "--pair", "[ba, ab]", "--claim", out])
    assert code2 == 0
    code, closed, _ = out_of(capsys, ["double-image", "--auto", auto, "--pair", "[ba, ab]", "--closed"])
    assert code == 0 and RectangleUnion.parse(closed, AL2) is not None


def test_constants(capsys, auto):
    code, out, _ = out_of(capsys, ["constants", "--auto", auto, "--empirical-depth", "1", "--json"])
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    r = data["result"]
    assert (r["S"], r["certified_fwd"], r["certified_bwd"]) == (3, 9, 9)
    assert r["empirical_fwd"] >= 4


def test_json_everywhere(capsys, auto):
    for argv in (["reduce", "--set", "{a, aB}"], ["split", "--letter", "B"],
                 ["equal", "--left", "{a}", "--right", "{a}"],
                 ["dual", "--auto", auto, "--word", "a"]):
        code, out, _ = out_of(capsys, argv + ["--json"])
        data = json.loads(out)
        assert data["schema"] == 1 and data["command"] == argv[0] and data["exit"] == code


@pytest.mark.parametrize("argv,token", [
    (["reduce", "--set", "{abX}"], "'X'"),
    (["reduce", "--set", "{aAb}"], "aAb"),
    (["reduce", "--set", "{a}", "--bogus"], "--bogus"),
    (["reduce", "--se", "{a}"], "--se"),
    (["image", "--auto", "/nonexistent.aut", "--word", "a"], "nonexistent"),
    (["double-image", "--pair", "[a, a]", "--auto", "AUTO"], "distinct"),
    (["split", "--letter", "ab"], "ab"),
])
def test_errors_exit_two_and_name_the_token(capsys, auto, argv, token):
    argv = [auto if a == "AUTO" else a for a in argv]
    code, _, err = out_of(capsys, argv)
    assert code == 2
    assert token in err


def test_json_error_payload(capsys):
    code, out, _ = out_of(capsys, ["reduce", "--set", "{abX}", "--json"])
    data = json.loads(out)
    assert code == 2 and data["exit"] == 2 and "X" in data["error"]


def test_budget_exit_three(capsys, auto):
    code, _, err = out_of(capsys, ["image", "--auto", auto, "--word", "ba", "--method", "formula"])
    assert code == 3 and "adaptive" in err


def test_formula_method_when_feasible(capsys, tmp_path):
    path = tmp_path / "n.aut"
    path.write_text("rank 2\nphi a -> ab\nphi b -> b\ninv a -> aB\ninv b -> b\n")
    code, out, _ = out_of(capsys, ["image", "--auto", str(path), "--word", "bA", "--method", "formula"])
    assert code == 0 and out == "{A}"


def test_console_pipeline(auto):
    # image piped into verify, through the installed entry point
    cmd = [sys.executable, "-m", "freecyl.cli"]
    img = subprocess.run(cmd + ["image", "--auto", auto, "--word", "ab", "--json"],
                         capture_output=True, text=True, check=True)
    ver = subprocess.run(cmd + ["verify", "--auto", auto, "--word", "ab", "--json"],
                         input=img.stdout, capture_output=True, text=True)
    assert ver.returncode == 0
    assert json.loads(ver.stdout)["result"]["certified"] is True
