"""CLI behaviour: exit codes, document round trips, golden determinism."""

import pathlib
import subprocess
import sys

import pytest

from toric_dmod.cli import load_fan, load_module, main
from toric_dmod.fan_cox import grading_data

HERE = pathlib.Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"

FANS = ["p1", "p2", "p1p1", "hirzebruch1"]
ZERO = {"p1": "0", "p2": "0", "p1p1": "0,0", "hirzebruch1": "0,0"}


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "toric_dmod.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_fan_info_exit_codes(tmp_path):
    rc, out, _ = run_cli("fan-info", str(FIXTURES / "p1.fan"))
    assert rc == 0
    assert "cl: Z" in out
    rc2, _, err = run_cli("fan-info", str(FIXTURES / "nonsmooth.fan"))
    assert rc2 == 3
    assert "cone" in err
    bad = tmp_path / "bad.fan"
    bad.write_text("rays = [[1], [-1]]\n")
    rc3, _, _ = run_cli("fan-info", str(bad))
    assert rc3 == 2
    empty = tmp_path / "empty.fan"
    empty.write_text("n = 1\nrays = []\nmax_cones = []\n")
    rc4, _, _ = run_cli("fan-info", str(empty))
    assert rc4 == 2


def test_dl_bad_arity_exits_2():
    rc, _, _ = run_cli("dl", str(FIXTURES / "p1.fan"), "0,0")
    assert rc == 2


def test_malformed_relation_exits_2(tmp_path):
    mod = tmp_path / "m.mod"
    mod.write_text('side = "left"\ngenerator_degrees = [[0]]\n'
                   'relations = [["x1 ++ d1"]]\n')
    rc, _, _ = run_cli("check", str(FIXTURES / "p1.fan"), str(mod))
    assert rc == 2


def test_check_verdicts(tmp_path):
    mod = tmp_path / "ss.mod"
    mod.write_text('side = "left"\ngenerator_degrees = [[0]]\n'
                   'relations = [["d1"], ["d2"]]\n')
    rc, out, _ = run_cli("check", str(FIXTURES / "p1.fan"), str(mod))
    assert rc == 0 and "theta-condition: OK" in out
    free = tmp_path / "free.mod"
    free.write_text('side = "left"\ngenerator_degrees = [[0]]\nrelations = []\n')
    rc2, out2, _ = run_cli("check", str(FIXTURES / "p1.fan"), str(free))
    assert rc2 == 0 and "FAIL at generator 1, u = u1" in out2


def test_inhomogeneous_module_exits_3(tmp_path):
    mod = tmp_path / "bad.mod"
    mod.write_text('side = "left"\ngenerator_degrees = [[0]]\n'
                   'relations = [["x1 + x1*d1"]]\n')
    rc, _, err = run_cli("check", str(FIXTURES / "p1.fan"), str(mod))
    assert rc == 3
    assert "homogeneous" in err


def test_charvar_precondition_exit_4(tmp_path):
    free = tmp_path / "free.mod"
    free.write_text('side = "left"\ngenerator_degrees = [[0]]\nrelations = []\n')
    rc, _, err = run_cli("charvar", str(FIXTURES / "p1.fan"), str(free))
    assert rc == 4
    assert "theta condition" in err


def test_local_not_in_jp_exit_4():
    rc, _, _ = run_cli("local", str(FIXTURES / "p1.fan"),
                       "--cone", "1", "--p=-1", "--g", "1")
    assert rc == 4
    rc2, out, _ = run_cli("local", str(FIXTURES / "p1.fan"),
                          "--cone", "1", "--p=-1", "--g", "th1")
    assert rc2 == 0 and "g-image: (-1; v1)" in out


def test_local_unknown_cone_exit_3():
    rc, _, _ = run_cli("local", str(FIXTURES / "p1.fan"),
                       "--cone", "1,2", "--p=-1")
    assert rc == 3


def test_module_document_round_trip(tmp_path):
    for name in FANS:
        fan_path = str(FIXTURES / f"{name}.fan")
        rc, doc, _ = run_cli("dl", fan_path, ZERO[name])
        assert rc == 0
        path = tmp_path / f"{name}.mod"
        path.write_text(doc)
        grading = grading_data(load_fan(fan_path))
        pres = load_module(str(path), grading)
        rc2, doc2, _ = run_cli("swap", fan_path, str(path))
        assert rc2 == 0
        path2 = tmp_path / f"{name}_sw.mod"
        path2.write_text(doc2)
        swapped = load_module(str(path2), grading)
        from toric_dmod.dmod import left_right_swap
        assert left_right_swap(swapped) == pres


def test_dr_document(tmp_path):
    rc, out, _ = run_cli("dr", str(FIXTURES / "p1.fan"), "-2")
    assert rc == 0
    assert 'side = "right"' in out
    assert '"x1*d1 + x2*d2 + 2"' in out
    path = tmp_path / "dr.mod"
    path.write_text(out)
    grading = grading_data(load_fan(str(FIXTURES / "p1.fan")))
    pres = load_module(str(path), grading)
    assert pres.side == "right" and pres.twists == ((-2,),)


def test_multiline_document_values(tmp_path):
    fan = tmp_path / "wrapped.fan"
    fan.write_text("n = 1\nrays = [[1],\n  [-1]]   # wrapped list\nmax_cones = [[1], [2]]\n")
    rc, out, _ = run_cli("fan-info", str(fan))
    assert rc == 0
    assert "cl: Z" in out


def test_machine_format_is_tab_separated():
    rc, out, _ = run_cli("fan-info", str(FIXTURES / "p1.fan"),
                         "--format", "machine")
    assert rc == 0
    for line in out.splitlines():
        assert "\t" in line


def test_golden_reports_and_determinism():
    jobs = []
    for name in FANS:
        fan_path = str(FIXTURES / f"{name}.fan")
        mod_path = str(GOLDEN / f"{name}_dl0.mod")
        jobs.append((f"{name}_fan_info.txt", ("fan-info", fan_path)))
        jobs.append((f"{name}_dl0.mod", ("dl", fan_path, ZERO[name])))
        jobs.append((f"{name}_charvar_dl0.txt",
                     ("charvar", fan_path, mod_path, "--charts", "--saturate")))
    jobs.append(("p1_local.txt",
                 ("local", str(FIXTURES / "p1.fan"), "--cone", "1", "--p=-1")))
    jobs.append(("p1_swap_dl0.mod",
                 ("swap", str(FIXTURES / "p1.fan"), str(GOLDEN / "p1_dl0.mod"))))
    for golden_name, args in jobs:
        expected = (GOLDEN / golden_name).read_text()
        rc1, out1, _ = run_cli(*args)
        rc2, out2, _ = run_cli(*args)
        assert rc1 == rc2 == 0, golden_name
        assert out1 == out2, f"two runs differ for {golden_name}"
        assert out1 == expected, f"golden mismatch for {golden_name}"


def test_main_callable_directly(capsys):
    rc = main(["fan-info", str(FIXTURES / "p1.fan")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "irrelevant-ideal: (x1, x2)" in out
