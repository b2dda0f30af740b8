import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from polypack.cli import main
from polypack.io import parse_solution

INSTANCE = """knapsack 10
poly 1 w=1 v= 0,0 1,0 1,1 0,1
poly 2 w=2 v= 0,0 1,0 1,1 0,1
"""


@pytest.fixture
def files(tmp_path):
    inst = tmp_path / "inst.txt"
    inst.write_text(INSTANCE)
    return tmp_path, inst


def test_classify(files, capsys):
    _, inst = files
    assert main(["classify", str(inst)]) == 0
    out = capsys.readouterr().out
    assert out.count("Easy") == 2


def test_solve_validate_render(files, capsys):
    tmp, inst = files
    sol, svg = tmp / "s.txt", tmp / "s.svg"
    assert main(["solve", str(inst), "--out", str(sol), "--svg", str(svg)]) == 0
    assert parse_solution(sol.read_text()).total_weight == 3.0
    ET.parse(svg)
    assert main(["validate", str(inst), str(sol)]) == 0
    assert "feasible" in capsys.readouterr().out
    pic = tmp / "r.svg"
    assert main(["render", str(inst), str(sol), "--svg", str(pic), "--containers", "--guide"]) == 0
    ET.parse(pic)


def test_solve_ra_mode(files):
    tmp, inst = files
    out = tmp / "ra.txt"
    assert main(["solve", str(inst), "--mode", "ra", "--delta", "0.5", "--out", str(out)]) == 0
    assert main(["validate", str(inst), str(out), "--ra", "1.5"]) == 0


def test_overlap_exit_code(files, capsys):
    tmp, inst = files
    bad = tmp / "bad.txt"
    bad.write_text("place 1 2 2 1 0\nplace 2 2 2 1 0\nweight 3 producer=Oracle\n")
    assert main(["validate", str(inst), str(bad)]) == 2
    assert "Overlap ids=1,2" in capsys.readouterr().out


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["classify", str(tmp_path / "nope.txt")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_reflex_polygon_exit_code(tmp_path, capsys):
    p = tmp_path / "reflex.txt"
    p.write_text("knapsack 10\npoly 1 w=1 v= 0,0 4,0 1,1 0,4\n")
    assert main(["classify", str(p)]) == 1
    assert "reflex" in capsys.readouterr().err


def test_unknown_id_in_solution(files):
    tmp, inst = files
    bad = tmp / "bad.txt"
    bad.write_text("place 9 0 0 1 0\nweight 1 producer=Oracle\n")
    assert main(["validate", str(inst), str(bad)]) == 1


def test_generate_and_oracle(tmp_path):
    inst = tmp_path / "g.txt"
    assert main(["generate", "--seed", "3", "--N", "8", "--easy", "1", "--hard", "1",
                 "--out", str(inst)]) == 0
    out = tmp_path / "o.txt"
    assert main(["oracle", str(inst), "--fine-grid", "16", "--out", str(out)]) == 0
    assert main(["validate", str(inst), str(out)]) == 0


def test_oracle_guard(tmp_path):
    inst = tmp_path / "g.txt"
    main(["generate", "--seed", "3", "--N", "8", "--easy", "4", "--out", str(inst)])
    assert main(["oracle", str(inst)]) == 1


def test_bench(tmp_path, capsys):
    for k in range(2):
        main(["generate", "--seed", str(k), "--N", "8", "--easy", "1", "--medium", "1",
              "--out", str(tmp_path / f"i{k}.txt")])
    assert main(["bench", str(tmp_path), "--fine-grid", "16"]) == 0
    assert "instances=2 mean=" in capsys.readouterr().out


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "polypack.cli", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "polypack" in out.stdout
