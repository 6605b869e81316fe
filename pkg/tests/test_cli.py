import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from deflaurent.cli import main
from deflaurent.cli.verify import SUITES, run_suites

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "manifest.json").read_text())


def run(args):
    out, err = io.StringIO(), io.StringIO()
    code = main(args, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    code, out, err = run(case["args"])
    name = case["name"]
    assert out == (GOLDEN / f"{name}.out").read_text()
    assert err == (GOLDEN / f"{name}.err").read_text()
    assert f"{code}\n" == (GOLDEN / f"{name}.code").read_text()


def test_golden_is_deterministic():
    for case in CASES[:6]:
        assert run(case["args"]) == run(case["args"])


def test_exit_codes():
    assert run(["eval", "p*q"])[0] == 0
    assert run(["eval", "p*"])[0] == 2
    assert run(["embed", "p"])[0] == 2  # missing --r/--s
    assert run(["eval", "T", "--r", "1", "--s", "0"])[0] == 2
    assert run(["eval", "inv(p)"])[0] == 1
    assert run(["rebase", "alpha", "--r", "1", "--s", "2"])[0] == 1
    assert run(["centralize", "T", "--b0", "1", "--r", "1", "--s", "1"])[0] == 1
    assert run(["frobnicate"])[0] == 2


def test_structured_error_goes_to_stdout():
    code, out, err = run(["eval", "p^-2", "--format", "structured"])
    assert code == 1 and err == ""
    body = json.loads(out)
    assert body["schema"] == "deflaurent/1"
    assert body["error"]["kind"] == "NegativeWeylExponent"


def test_structured_series_record():
    code, out, _ = run(["eval", "T*alpha", "--r", "1", "--s", "1", "--floor", "-6", "--format", "structured"])
    body = json.loads(out)
    assert code == 0
    assert body["result"]["floor"] == -6
    assert body["result"]["spec"] == {"r": 1, "s": 1}
    assert [t[0] for t in body["result"]["terms"]] == [1, -1]


def test_mixed_atoms_rejected():
    code, _, err = run(["rebase", "p + alpha", "--r", "1", "--s", "1"])
    assert code == 1 and "UnknownSymbol" in err


def test_series_division_is_right_inverse():
    code, out, _ = run(["eval", "T/T", "--r", "1", "--s", "2"])
    assert (code, out) == (0, "1/1\n")


def test_rebase_of_embedded_monomial():
    # (1, 2): T0 = p, alpha0 = p^2 q^-1, and alpha0^-1 p^4 = q p^2 = p^2 q + 2p
    code, out, _ = run(["rebase", "p^2*q", "--r", "1", "--s", "2", "--floor", "-6"])
    assert (code, out) == (0, "(1)/(a0)*T0^4 + -2/1*T0^1\n")


def test_verify_all_suites_pass():
    results = run_suites()
    assert [r["suite"] for r in results] == list(SUITES)
    assert all(r["passed"] for r in results)
    code, out, _ = run(["verify"])
    assert code == 0
    assert out.count("PASS") == len(SUITES)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deflaurent", "eval", "q*p"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "p*q + 1\n"
