import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from loopflag import cli
from loopflag.affine import Crossing
from loopflag.degcalc import hecke_degree_action
from loopflag.rootsys import build_root_system
from loopflag.weyl import enumerate_by_length

GOLDEN = Path(__file__).parent / "golden"
REGENERATE = os.environ.get("LOOPFLAG_REGEN_GOLDEN") == "1"

GOLDEN_CASES = {
    "roots_B2": ["roots", "--family", "B", "--rank", "2"],
    "strange_D5": ["strange", "--family", "D", "--rank", "5"],
    "classify_A1_exotic": ["classify", "--family", "A", "--rank", "1", "--cross", "1"],
    "autos_D4": ["autos", "--family", "D", "--rank", "4"],
    "standardize_D5": ["standardize", "--family", "D", "--rank", "5", "--cross", "1"],
    "weyl_count_C2": ["weyl-count", "--family", "C", "--rank", "2", "--max-length", "6"],
    "hasse_A1": ["hasse", "--family", "A", "--rank", "1", "--cross", "0", "--max-length", "4"],
    "degree_A2": ["degree", "--family", "A", "--rank", "2", "--cross", "0,2", "--k", "1,2"],
    "sheafseq_gl4": ["sheafseq", "--family", "gl", "--n", "4", "--cross", "1,3"],
    "hecke_shift_sp": ["hecke-shift", "--family", "sp", "--n", "2", "--i", "0", "--j", "3"],
    "flip_demo": ["flip-demo", "--levels", "2"],
    "window_shift": ["window", "--coeff", "0:1,2;3,-1", "--coeff", "1:0,1;0,0", "--lo", "0", "--hi", "1",
                     "--conjugate", "shift_sln"],
    "monad_k2_n3": ["monad", "--k", "2", "--n", "3", "--seed", "1", "--check-order", "--json"],
}


def text_of(argv):
    result, code = cli.run(argv)
    assert code == 0, result.message
    return result.to_json() if "--json" in argv else result.to_text()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_output(name):
    path = GOLDEN / f"{name}.txt"
    out = text_of(GOLDEN_CASES[name]) + "\n"
    if REGENERATE or not path.exists():
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()


def test_spec_examples():
    res, code = cli.run(["strange", "--family", "A", "--rank", "3"])
    assert code == 0 and res.payload["value"] == "1"
    res, _ = cli.run(["classify", "--family", "A", "--rank", "1", "--cross", "1"])
    assert res.payload["klass"] == "exotic"
    assert res.payload["q_chi"] == ["alpha_1"]
    assert any(line.split() == ["q_chi", "[alpha_1]"] for line in res.to_text().splitlines())
    res, _ = cli.run(["hecke-degrees", "--n", "2", "--k", "4,3"])
    assert res.payload["value"] == "3,4"


def test_adapters_agree_with_the_library():
    res, _ = cli.run(["weyl-count", "--family", "A", "--rank", "2", "--max-length", "5"])
    levels = enumerate_by_length(build_root_system("A", 2), 5)
    assert res.payload["counts"] == [len(levels[k]) for k in range(6)]
    res, _ = cli.run(["hecke-degrees", "--n", "4", "--k", "1,2,3,4"])
    assert res.payload["value"] == ",".join(map(str, hecke_degree_action(4, (1, 2, 3, 4))))
    res, _ = cli.run(["instanton-dim", "--family", "C", "--rank", "3", "--k", "2"])
    assert res.payload["dimension"] == 32
    res, _ = cli.run(["degree", "--family", "A", "--rank", "1", "--cross", "0", "--k", "1"])
    assert res.payload["degree"] == 8
    res, _ = cli.run(["charges", "--k", "2", "--j", "1,0"])
    assert res.payload["value"] == "3,3,2"
    res, _ = cli.run(["hasse", "--family", "A", "--rank", "1", "--cross", "0", "--max-length", "4"])
    assert res.payload["counts"] == [1, 1, 1, 1, 1]
    res, _ = cli.run(["autos", "--family", "D", "--rank", "5"])
    assert res.payload["order"] == 8 and res.payload["exceptional"] is False
    res, _ = cli.run(["standardize", "--family", "D", "--rank", "5", "--cross", "2"])
    assert res.payload["standardizable"] is False
    res, _ = cli.run(["hecke-shift", "--family", "so_even", "--n", "4", "--i", "0", "--j", "4", "--sign", "+",
                      "--op", "swap-middle"])
    assert res.payload["image"] == "E^{0,4,-}"


@pytest.mark.parametrize(
    "argv",
    [
        ["weyl-count", "--family", "A", "--rank", "1", "--max-length", "50"],
        ["roots", "--family", "A", "--rank", "9"],
        ["roots", "--family", "A", "--rank", "3", "--max-rank", "99"],
        ["roots", "--family", "D", "--rank", "3"],
        ["classify", "--family", "A", "--rank", "2", "--cross", "5"],
        ["hasse", "--family", "A", "--rank", "2", "--cross", "", "--max-length", "2"],
        ["hecke-shift", "--family", "gl", "--n", "3", "--i", "0", "--j", "1", "--op", "swap-top"],
        ["monad", "--k", "0", "--n", "2"],
    ],
)
def test_domain_errors_exit_one(argv):
    res, code = cli.run(argv)
    assert code == 1
    assert res.status == "error" and res.message
    assert res.to_text().startswith("error: ")


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["roots", "--family", "E", "--rank", "6"],
        ["roots", "--family", "A"],
        ["charges", "--k", "1", "--j", "a,b"],
        ["window", "--coeff", "garbage"],
        [],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.run(argv)
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_json_round_trip():
    res, _ = cli.run(["degree", "--family", "B", "--rank", "3", "--cross", "0,3", "--k", "1,1", "--json"])
    back = cli.CommandResult.from_json(res.to_json())
    assert back == res
    doc = json.loads(res.to_json())
    assert doc["inputs"]["cross"] == [0, 3]
    assert doc["status"] == "ok"


def test_main_prints_and_returns_codes(capsys):
    assert cli.main(["strange", "--family", "C", "--rank", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["payload"]["value"] == "1"
    assert cli.main(["weyl-count", "--family", "A", "--rank", "1", "--max-length", "45"]) == 1
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "loopflag", "strange", "--family", "B", "--rank", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "value" in proc.stdout and proc.stdout.split()[-1] == "1"


def test_classify_lists_levi_nodes():
    res, _ = cli.run(["classify", "--family", "C", "--rank", "2", "--cross", "1"])
    c = Crossing.from_crossed(2, [1])
    assert res.payload["levi_nodes"] == list(c.uncrossed)
    assert res.payload["klass"] == "exotic"
