import pathlib

import numpy as np
import pytest

from conftest import sign_changes
from dirac_aim.cli import main

ROOT = pathlib.Path(__file__).resolve().parents[1]
DEMO = str(ROOT / "configs" / "demo_bound.ini")
TABLE1 = str(ROOT / "configs" / "table1_row5.ini")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_demo(capsys):
    code, out, _ = run(capsys, "solve", DEMO)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "E,n,n_l,ell_prime,residual,admissible,aim_delta"
    assert lines[1].startswith("-4.97682739,0,-,0,")
    assert lines[-1].startswith("# config_hash=sha256:")


def test_solve_without_states_is_not_an_error(capsys):
    code, out, _ = run(capsys, "solve", TABLE1)
    assert code == 0 and "no bound state" in out


def test_output_is_byte_identical(capsys):
    _, a, _ = run(capsys, "solve", DEMO)
    _, b, _ = run(capsys, "solve", DEMO)
    assert a == b


@pytest.mark.parametrize("n", [0, 1])
def test_wavefunction_columns_and_nodes(capsys, tmp_path, n):
    cfg = tmp_path / "demo.ini"
    cfg.write_text(pathlib.Path(DEMO).read_text().replace("n = 0", f"n = {n}"))
    code, out, _ = run(capsys, "wavefunction", str(cfg), "--grid", "0.05,60,400")
    assert code == 0
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == "r,F"
    F = np.array([float(l.split(",")[1]) for l in rows[1:]])
    assert len(F) == 400
    assert sign_changes(F) <= n


def test_empty_grid_is_rejected(capsys):
    code, _, err = run(capsys, "wavefunction", DEMO, "--grid", "0.1,5,0")
    assert code == 1 and "empty" in err


def test_wavefunction_without_state_fails(capsys):
    code, _, err = run(capsys, "wavefunction", TABLE1)
    assert code == 2 and "no admissible bound state" in err


def test_angular_output(capsys):
    code, out, _ = run(capsys, "angular", TABLE1, "--axis", "2", "--energy", "-4.9")
    assert code == 0
    assert "theta,P" in out
    assert out.count("\n# 1,") == 1 and "# 4," in out


def test_angular_bad_axis(capsys):
    code, _, _ = run(capsys, "angular", TABLE1, "--axis", "5", "--energy", "-4.9")
    assert code == 1


def test_angular_unbound_energy(capsys):
    code, _, err = run(capsys, "angular", TABLE1, "--axis", "1", "--energy", "-6.4721")
    assert code == 2 and "not bound" in err


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", DEMO, "--param", "n", "--values", "0,1,2")
    assert code == 0
    E = [float(l.split(",")[1]) for l in out.splitlines()[1:4]]
    assert E[0] < E[1] < E[2]


def test_sweep_bad_param(capsys):
    assert run(capsys, "sweep", DEMO, "--param", "colour", "--values", "1")[0] == 1
    assert run(capsys, "sweep", DEMO, "--param", "q", "--values", "-1")[0] == 1


def test_table_command(capsys, tmp_path):
    out_path = tmp_path / "t2.csv"
    code, _, _ = run(capsys, "table", "2", "--out", str(out_path))
    assert code == 0
    assert out_path.read_text().splitlines()[0] == "row,q,r_e,n,n_l,E_computed,E_paper,residual,admissible"
    assert run(capsys, "table", "8", "--q", "0.7")[0] == 1


def test_parse_errors_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text("[physics]\nM = 5\n")
    assert run(capsys, "solve", str(bad))[0] == 1
    assert run(capsys, "nonsense")[0] == 1
