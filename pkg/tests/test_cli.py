import json
import subprocess
import sys

import pytest

from dirichlet.cli import main, parse_matrix, parse_real
from dirichlet.errors import PreconditionError


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    doc = json.loads(out)
    return code, doc, err


def test_pell_2(capsys):
    code, doc, _ = run(["pell", "2"], capsys)
    assert code == 0 and doc["status"] == "certified"
    assert (doc["payload"]["x"], doc["payload"]["y"]) == (3, 2)


def test_lineq(capsys):
    code, doc, _ = run(["lineq", "4", "1"], capsys)
    assert code == 0 and (doc["payload"]["x"], doc["payload"]["y"]) == (0, -1)


def test_pell_square(capsys):
    code, doc, err = run(["pell", "9"], capsys)
    assert code == 1 and doc["status"] == "error" and "square" in err


def test_usage_errors_exit_1(capsys):
    assert run(["nope"], capsys)[0] == 1
    assert run(["approx", "sqrt:2"], capsys)[0] == 1
    assert run(["approx", "pi", "--N", "3"], capsys)[0] == 1
    assert run(["lineq", "2", "4"], capsys)[0] == 1
    assert run(["siegel", "--matrix", "1,2;3,4"], capsys)[0] == 1


def test_limit_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("DIRICHLET_ENUM_CAP", "10")
    code, doc, _ = run(["multidim", "--matrix", "sqrt:2,sqrt:3,e", "--N", "1000"], capsys)
    assert code == 2 and doc["payload"]["kind"] == "InfeasibleEnumeration"


def test_precision_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("DIRICHLET_MAX_BITS", "64")
    code, doc, _ = run(["approx", "sqrt:2", "--N", "3"], capsys)
    assert code == 0
    monkeypatch.setenv("DIRICHLET_MAX_BITS", "bad")
    assert run(["approx", "sqrt:2", "--N", "3"], capsys)[0] == 1


COMMANDS = [
    ["approx", "sqrt:2", "--N", "5"],
    ["simul", "sqrt:2,sqrt:3", "--N", "2"],
    ["linform", "sqrt:2,sqrt:3", "--N", "4"],
    ["multidim", "--matrix", "sqrt:2,sqrt:3;e,zeta2", "--N", "3"],
    ["smallforms", "--matrix", "sqrt:2,sqrt:3", "--N", "4"],
    ["stream", "zeta3", "--count", "4"],
    ["pell", "61"],
    ["pell-powers", "5", "--k", "3"],
    ["lineq", "3", "7"],
    ["witness", "e", "--eps", "1/1000"],
    ["cantor", "--g", "factorial", "--N", "6"],
    ["zeta2", "--n", "4"],
    ["zeta3", "--n", "4"],
    ["zeta2-bound", "--n", "3"],
    ["zeta3-bound", "--n", "3"],
    ["kernel-max", "--which", "zeta2-kernel", "--grid", "16"],
    ["siegel", "--matrix", "1,0,-1;0,1,-1"],
    ["lcm-upto", "10"],
    ["approx", "cantor:geometric:2", "--N", "9"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_every_subcommand_deterministic(argv, capsys):
    code, doc, err = run(argv, capsys)
    assert code == 0, doc
    assert doc["status"] in ("certified", "report-only")
    assert doc["command"] == argv
    main(argv)
    again = capsys.readouterr().out
    assert json.dumps(doc, sort_keys=True) + "\n" == again
    assert " s)" in err  # timing lives on stderr only


def test_big_ints_are_strings(capsys):
    _, doc, _ = run(["pell", "61"], capsys)
    assert doc["payload"]["x"] == 1766319049
    _, doc, _ = run(["pell", "991"], capsys)
    assert isinstance(doc["payload"]["x"], str) and int(doc["payload"]["x"]) > 2**53


def test_matrix_from_file(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("1,0,-1\n0,1,-1\n")
    code, doc, _ = run(["siegel", "--matrix", str(f)], capsys)
    assert code == 0 and doc["payload"]["x"] in ([1, 1, 1], [-1, -1, -1])


def test_parse_helpers():
    assert parse_real("rat:3/4").exact == 0.75
    assert parse_real("sqrt:9").exact == 3
    assert parse_real("cantor:constant:3").exact == 0.5
    assert len(parse_matrix("e,zeta2;zeta3,sqrt:2")) == 2
    for bad in ("", "sqrt:x", "rat:", "e:1", "cantor:"):
        with pytest.raises(PreconditionError):
            parse_real(bad)
    with pytest.raises(PreconditionError):
        parse_matrix("e,e;e")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dirichlet", "lcm-upto", "6"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["V"] == 60
