import json
import os
import subprocess
import sys

import pytest

from surlim.cli import build_parser, main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
SUBCOMMANDS = ["eval", "cmp", "slim", "ssum", "encode-real", "decode", "decompose", "canonical", "verify-thm1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def g(name):
    return os.path.join(GOLDEN, name)


@pytest.mark.parametrize("argv,expected", [
    (["cmp", "[+w]", "[+w,-1]"], "greater"),
    (["cmp", "1/2", "[+1, -1]"], "equal"),
    (["eval", "nat_sum(w+1, w+1)"], "w*2+2"),
    (["eval", "w^2*3 + w + 4"], "w^2*3+w+4"),
    (["decode", "[+2, -1]"], "3/2"),
    (["encode-real", "11/4"], "[+3, -1, +1]"),
    (["encode-real", "eseries", "--depth", "4"], "[+3, -1] ..."),
    (["ssum", "w+1", "omega-plus-one-swapped"], "w"),
    (["slim", "[+n, -n]", "--variant", "star"], "[+w, -w]"),
    (["slim", "[+1]", "[-1]", "[+3]"], "[+3]  full"),
])
def test_text_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


@pytest.mark.parametrize("argv,code", [
    (["decode", "[+w]"], 1),
    (["ssum", "w", "[+w, -w]"], 2),
    (["eval", "w^"], 2),
    (["cmp", "[+w", "[]"], 2),
    (["encode-real", "1/0"], 2),
    (["decompose", "[+1, -w^2]"], 1),
    (["verify-thm1", "nonexistent"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("surlim:")


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "eval", "w + (n")
    assert "1:7:" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval", "w", "--frobnicate"])
    assert info.value.code == 2


def test_help_lists_every_subcommand():
    text = build_parser().format_help()
    for name in SUBCOMMANDS:
        assert name in text


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify-thm1", "all")
    assert code == 0
    lines = out.splitlines()
    assert len([l for l in lines if l.startswith("PASS")]) == 8


def test_canonical_multiple_rows(capsys):
    code, out, _ = run(capsys, "canonical", "[+1, -1]", "[+1, -1, +1]", "[+1, -1]")
    assert code == 0 and out.startswith("separated")


@pytest.mark.parametrize("argv,golden", [
    (["slim", "[+w, -n]"], "slim_parametric.out.json"),
    (["slim", g("c_family.json"), "--variant", "diamond"], "slim_file_diamond.out.json"),
    (["verify-thm1", "halving"], "verify_halving.out.json"),
    (["verify-thm1", g("third.json"), "--depth", "12"], "verify_file.out.json"),
    (["ssum", "w+1", g("omega_plus_one.json")], "ssum_file.out.json"),
    (["decompose", "[+1, -1, +w]"], "decompose.out.json"),
    (["canonical", "[+1, -1]"], "canonical.out.json"),
])
def test_golden_json(capsys, argv, golden):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    with open(g(golden), encoding="utf-8") as fh:
        assert json.loads(out) == json.load(fh)


def test_probe_budget_environment(monkeypatch, capsys):
    monkeypatch.setenv("SURLIM_PROBE_BUDGET", "8")
    code, out, _ = run(capsys, "verify-thm1", "halving", "--json")
    assert code == 0 and json.loads(out)["result"] == "PASS"


def test_max_cnf_depth_flag(capsys):
    from surlim import ordinal
    try:
        code, _, _ = run(capsys, "eval", "w^(w^(w^(w)))", "--max-cnf-depth", "2")
        assert code == 1
    finally:
        ordinal.set_max_depth(8)


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "surlim.cli", "cmp", "[]", "[+1, -w]"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "less"
