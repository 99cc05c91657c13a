"""CLI behaviour: golden outputs, exit codes and the machine format.

Set HOPFDUAL_REGEN_GOLDEN=1 to rewrite tests/golden from the current output.
"""
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hopfdual.cli import main
from hopfdual.fileformat import data_path

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("validate_divpow", "validate divided_power_f3.alg", 0),
    ("validate_bad_delta", "validate divided_power_f3_bad_delta.alg", 1),
    ("validate_pair_machine", "validate pair_groupoid.alg --format machine", 0),
    ("dual_mul_pair", "dual-mul divided_power_f3.alg --pair 2,3 --samples 20", 0),
    ("act_pair", "act pair_groupoid.alg", 0),
    ("translate_rank2", "translate rank2_comodule.alg", 0),
    ("round_trip_rank2", "round-trip rank2_comodule.alg", 0),
    ("tensor_rank2", "tensor rank2_comodule.alg --samples 10", 0),
    ("base_change", "base-change divided_power_f3.alg", 0),
    ("beta_dual", "beta-dual divided_power_f3.alg --format machine", 0),
    ("pullback", "pullback rank2_comodule.alg", 0),
    ("identify", "identify rank2_comodule.alg", 0),
    ("qderham_relation", "qderham --p 3 --k 2 --N 5", 0),
    ("qderham_act", "qderham --p 3 --k 2 --N 5 --op act", 0),
    ("qderham_cohomology", "qderham --p 3 --k 1 --N 5 --op cohomology", 0),
    ("qderham_frobenius", "qderham --p 5 --k 1 --N 6 --op frobenius --format machine", 0),
    ("qderham_rightmod", "qderham --p 3 --k 2 --N 5 --op rightmod", 0),
    ("pontryagin", "pontryagin --orders 2,4,3", 0),
]


def run(argv, capsys):
    code = main(argv.split())
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys):
    got_code, out, _ = run(argv, capsys)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("HOPFDUAL_REGEN_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert got_code == code
    assert out == path.read_text()


def test_output_is_deterministic(capsys):
    first = run("dual-mul divided_power_f3.alg --samples 15 --seed 4", capsys)
    second = run("dual-mul divided_power_f3.alg --samples 15 --seed 4", capsys)
    assert first == second


@pytest.mark.parametrize("argv, message", [
    ("validate index_out_of_window.alg", "IndexOutOfWindow: line 20"),
    ("validate", "needs a description file"),
    ("translate divided_power_f3.alg", "needs a file with a [comodule] section"),
    ("qderham --p 2 --k 1 --N 5", "UnsupportedRing"),
    ("validate no_such_file.alg", "No such file"),
])
def test_usage_and_input_errors_exit_2(argv, message, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and message in err


def test_machine_format_lines(capsys):
    code, out, _ = run("validate divided_power_f3_bad_delta.alg --format machine", capsys)
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "COMMAND validate divided_power_f3_bad_delta.alg --format machine"
    assert "CHECK coassociativity fail 4" in lines
    assert all(l.split()[0] in ("COMMAND", "CHECK", "VALUE") for l in lines)


def test_file_paths_work_as_well_as_data_names(capsys):
    a = run("validate divided_power_f3.alg", capsys)
    b = run(f"validate {data_path('divided_power_f3.alg')}", capsys)
    assert a[0] == b[0] == 0
    assert a[1].splitlines()[1:] == b[1].splitlines()[1:]


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "hopfdual.cli", "pontryagin", "--orders", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "result: pass" in res.stdout


def test_validate_with_explicit_window(capsys):
    code, out, _ = run("validate divided_power_f3.alg --window 9", capsys)
    assert code == 0 and out.splitlines()[-1] == "result: pass"
    assert "fail" not in out


def test_cohomology_reports_constants_below_the_band(capsys):
    code, out, _ = run("qderham --p 3 --k 1 --N 5 --op cohomology", capsys)
    assert code == 0
    assert "kernel_below_band = [[0, 0, 0], [1, 0, 0], [2, 0, 0]]" in out


@pytest.mark.parametrize("argv, message", [
    ("frobnicate", "invalid choice"),
    ("qderham --k 1 --N 5", "needs --p"),
])
def test_unknown_command_and_missing_flag(argv, message, capsys):
    try:
        code = main(argv.split())
    except SystemExit as exc:
        code = exc.code
    assert code == 2 and message in capsys.readouterr().err
