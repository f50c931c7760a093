import json
import subprocess
import sys

import pytest

from lietriple import io
from lietriple.cochains import Cochain, yamaguti_delta
from lietriple.linalg import Matrix

from conftest import DATA, GOLDEN, PAIRS
from golden_cases import CASES, run_cli


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_report(name):
    argv, expected = CASES[name]
    code, out, _ = run_cli(argv + ["--json"])
    assert code == expected
    assert out == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["cohomology_t2_adjoint_5", "classify_sl2_standard", "delta_h3",
                                  "equivalent_shifted", "cohomology_zero2_3"])
def test_reports_independent_of_threads(name):
    argv, expected = CASES[name]
    runs = [run_cli(argv + ["--json", "--threads", t]) for t in ("1", "4", "1")]
    assert {code for code, _, _ in runs} == {expected}
    assert len({out for _, out, _ in runs}) == 1


def test_human_output():
    code, out, _ = run_cli(["cohomology", "T2.json", "--adjoint", "--degree", "3"])
    assert code == 0
    assert "field: Q" in out and "h_dim: 1" in out
    assert "representatives: <see --json> (1 items)" in out
    code, out, _ = run_cli(["validate", "T2_F7.json"])
    assert "field: F7" in out


def test_usage_errors_exit_2():
    assert run_cli(["cohomology", "T2.json", "--adjoint", "--degree", "2"])[0] == 2
    assert run_cli(["frobnicate"])[0] == 2
    assert run_cli(["validate", "missing.json"])[0] == 2
    assert run_cli(["validate", "T2.json", "--threads", "0"])[0] == 2
    assert run_cli(["delta", "T2.json", "T2_adjoint.json"])[0] == 2


def test_output_files(tmp_path):
    out = tmp_path / "d.json"
    code, _, _ = run_cli(["delta", "T2.json", "--adjoint", "phi.json", "-o", str(out)])
    assert code == 0
    T, rep = PAIRS["T2-adjoint"]
    expected = yamaguti_delta(T, rep, Cochain.from_hom(Matrix([[1, 2], [0, -1]])))
    assert io.cochain_from_json(io.load(out), T.field) == expected

    ext = tmp_path / "ext.json"
    assert run_cli(["extend", "T2.json", "--adjoint", "T2_h3.json", "-o", str(ext)])[0] == 0
    assert ext.read_text(encoding="utf-8") == (DATA / "T2_ext.json").read_text(encoding="utf-8")
    cochain = tmp_path / "w.json"
    assert run_cli(["extract", str(ext), "--cochain-out", str(cochain)])[0] == 0
    assert io.load(cochain) == io.load(DATA / "T2_h3.json")

    wit = tmp_path / "nu.json"
    assert run_cli(["equivalent", "T2.json", "--adjoint", "T2_h3_shifted.json", "T2_h3.json",
                    "-o", str(wit)])[0] == 0
    assert io.load(wit)["role"] == "witness"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lietriple", "classify", "ZERO2.json", "ZREP1.json", "--json"],
                          cwd=DATA, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["h3_dim"] == 2
    assert proc.stdout == (GOLDEN / "classify_zero2.json").read_text(encoding="utf-8")
