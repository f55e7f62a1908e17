import json
import subprocess
import sys
from pathlib import Path

import pytest

from spinal.algebra import preset
from spinal.boundary import ball, delta, limit_ball
from spinal.cli import main
from spinal.graph import export, gamma_recursive
from spinal.words import parse_point

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gamma_dot_golden(capsys):
    code, out, _ = run(capsys, "gamma", "--preset", "grigorchuk", "--level", "3", "--format", "dot")
    assert code == 0
    assert out == (GOLDEN / "grigorchuk_gamma3.dot").read_text()


def test_gamma_json_matches_library(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out, _ = run(capsys, "gamma", "--preset", "fg", "--level", "3", "--recursive",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == export(gamma_recursive(preset("fg"), 3), "json")
    code, out, _ = run(capsys, "gamma", "--preset", "fg", "--level", "4", "--both", "--verbose")
    assert code == 0 and out.splitlines() == ["equal", "level 4: 81 vertices, diameter 15"]


def test_ends(capsys):
    assert run(capsys, "ends", "--preset", "fabrykowski-gupta", "--xi", "(0)") == (0, "2\n", "")
    assert run(capsys, "ends", "--preset", "fabrykowski-gupta", "--xi", "(2)")[1] == "1\n"
    code, out, _ = run(capsys, "--verbose", "ends", "--preset", "fg", "--xi", "(0)")
    assert out.splitlines()[0] == "2" and len(out.splitlines()) == 2


def test_compat(capsys):
    assert run(capsys, "compat", "--d", "3", "--xi", "1(0)", "--eta", "2(0)") == (0, "incompatible k=0\n", "")
    assert run(capsys, "compat", "--d", "5", "--xi", "1(0)", "--eta", "3(0)")[1] == "compatible\n"


def test_ball_delta_limit_match_library(capsys):
    fg = preset("fg")
    xi = parse_point("1(02)", 3)
    _, out, _ = run(capsys, "ball", "--preset", "fg", "--xi", "1(02)", "--radius", "4")
    assert out.encode() == export(ball(fg, xi, 4), "json")
    _, out, _ = run(capsys, "delta", "--preset", "fg", "--xi", "1(02)", "--n", "2", "--format", "dot")
    assert out.encode() == export(delta(fg, xi, 2), "dot")
    _, out, _ = run(capsys, "limit", "--preset", "fg", "--pi", "0", "--radius", "3")
    assert json.loads(out) == json.loads(export(limit_ball(fg, fg.omega[0], 3), "json"))


def test_annulus(capsys):
    assert run(capsys, "annulus", "--preset", "fg", "--xi", "(0)", "--r", "3", "--R", "12")[1] == "2\n"


def test_iso_and_phi(capsys):
    assert run(capsys, "iso", "--preset", "sunic", "--xi", "1(0)", "--eta", "3(0)", "--radius", "7")[1] == "isomorphic\n"
    assert run(capsys, "iso", "--preset", "fg", "--xi", "1(0)", "--eta", "2(0)", "--radius", "7")[1] == "not-isomorphic\n"
    assert run(capsys, "iso", "--preset", "fg", "--xi", "1(0)", "--eta", "2(0)", "--labeled", "--radius", "3")[1] == "not-isomorphic\n"
    assert run(capsys, "iso", "--preset", "fg", "--xi", "(10)", "--eta", "(20)", "--unrooted")[1] == "not-isomorphic\n"
    assert run(capsys, "phi", "--preset", "sunic", "--xi", "1(0)", "--eta", "3(0)", "--point", "3(0)")[1] == "1(0)\n"
    assert run(capsys, "phi", "--preset", "fg", "--xi", "1(0)", "--eta", "2(0)", "--point", "0(0)")[0] == 1


def test_selfsim_and_validate(capsys):
    assert run(capsys, "selfsim", "--preset", "fg")[1] == "1\n"
    assert run(capsys, "selfsim", "--group-spec", "d=2;m=2;pre=[];per=[(0,1),(0,1),(1,0),(1,1)]")[1] == "none\n"
    assert run(capsys, "validate", "--group-spec", "d=2;m=2;pre=[];per=[(0,1),(1,0),(1,1)]")[:2] == (0, "valid\n")
    code, _, err = run(capsys, "validate", "--group-spec", "d=2;m=2;pre=[];per=[(0,1)]")
    assert code == 1 and "j >= 0" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "diameter", "--seed", "3")
    assert code == 0 and out.count("PASS") == 4


@pytest.mark.parametrize("argv", [[], ["bogus"], ["ends", "--preset", "fg"], ["ends", "--nope", "1"],
                                  ["gamma", "--level", "2"], ["verify", "--suite", "x"],
                                  ["limit", "--preset", "fg", "--pi", "5", "--radius", "1"],
                                  ["gamma", "--preset", "fg", "--level", "2", "--arg", "p"]])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("argv", [["ends", "--preset", "nope", "--xi", "(0)"],
                                  ["ends", "--preset", "fg", "--xi", "(3)"],
                                  ["gamma", "--preset", "fg", "--level", "0"],
                                  ["limit", "--preset", "dihedral", "--pi", "0", "--radius", "1"]])
def test_domain_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "spinal", "compat", "--d", "3", "--xi", "1(0)",
                          "--eta", "2(0)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "incompatible k=0\n"
    res = subprocess.run([sys.executable, "-m", "spinal", "frob"], capture_output=True, text=True)
    assert res.returncode == 2
