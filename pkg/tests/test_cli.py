import io
import json
import subprocess
import sys

import jsonschema
import pytest

from gstirling.cli import DIGITS_ENV, OUTPUT_SCHEMA, resolve_digits, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def records(*argv):
    code, out, _ = call("--format", "json", *argv)
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    for r in recs:
        jsonschema.validate(r, OUTPUT_SCHEMA)
    return recs


def test_poly_example():
    (r,) = records("poly", "--k", "2", "--m", "2")
    assert r["value"] == "x^2 - 3x + 2"


def test_poly_at_rational():
    (r,) = records("poly", "--k", "2", "--m", "2", "--x", "3/2")
    assert r["symbolic"] == "-1/4" and r["value"].startswith("-0.25")


def test_nested_coeffs_example():
    (r,) = records("nested", "coeffs", "--N", "5", "--lows", "1,2,3,4,5")
    assert r["value"] == "14,14,9,4,1"


def test_fseq_one_is_zero():
    (r,) = records("fseq", "--j", "1", "--digits", "30")
    assert r["value"] == "0" and r["digits"] == 30


def test_chi_alias_and_flag_positions():
    (a,) = records("chi", "--j", "4", "--digits", "25")
    code, out, _ = call("--digits", "25", "--format", "json", "fseq", "--j", "4")
    b = json.loads(out)
    assert a["value"] == b["value"]


def test_text_and_json_agree():
    (r,) = records("malmsten", "--n", "2", "--a", "2", "--b", "1")
    code, out, _ = call("malmsten", "--n", "2", "--a", "2", "--b", "1")
    assert code == 0 and f"= {r['value']} " in out


def test_symbolic_rhs():
    (r,) = records("nested", "rhs", "--lows", "2,2,2,2,2,2", "--digits", "20")
    assert r["symbolic"] == "126*F[2]+56*F[3]+21*F[4]+6*F[5]+F[6]"
    (s,) = records("nested", "symbolic", "--lows", "2,2,2,2,2,2")
    assert s["value"] == r["symbolic"]


@pytest.mark.parametrize("argv", [
    ("lambda", "--n", "2"),
    ("delta", "--n", "3"),
    ("barnes", "--n", "2", "--s", "15", "--x", "2"),
    ("residue", "--m", "2", "--k", "1", "--x", "5/2"),
    ("chis", "--s", "5/2"),
    ("nested", "integrand", "--lows", "1,2,3"),
])
def test_commands_run(argv):
    (r,) = records(*argv, "--digits", "20")
    assert r["digits"] == 20 and r["value"]


def test_deterministic():
    a = call("--format", "json", "barnes", "--n", "3", "--s", "31/2", "--x", "7/3")
    b = call("--format", "json", "barnes", "--n", "3", "--s", "31/2", "--x", "7/3")
    assert a == b


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("poly", "--k", "5", "--m", "2"),
    ("malmsten", "--n", "1", "--a", "x/y"),
    ("barnes", "--n", "2", "--s", "2", "--x", "1"),
    ("nested", "coeffs", "--N", "3", "--lows", "1,2"),
    ("fseq", "--j", "3", "--digits", "0"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""


def test_precision_failure_exit_3():
    # |zeta(-80, 1/3)| is about 10^57, so 40 absolute decimals are out of reach
    code, out, err = call("barnes", "--n", "1", "--s", "-80", "--x", "1/3")
    assert code == 3 and out == "" and "precision" in err


def test_verify_suite():
    code, out, _ = call("--format", "json", "verify", "--suite", "cycles")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs and all(r["status"] == "PASS" and r["value"] == "inf" for r in recs)


def test_digits_env(monkeypatch):
    assert resolve_digits(None, {}) == 40
    assert resolve_digits(None, {DIGITS_ENV: "25"}) == 25
    assert resolve_digits(33, {DIGITS_ENV: "25"}) == 33
    monkeypatch.setenv(DIGITS_ENV, "22")
    (r,) = records("fseq", "--j", "2")
    assert r["digits"] == 22


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "gstirling", "poly", "--k", "1", "--m", "2"],
                       capture_output=True, text=True, check=True)
    assert "2x - 3" in p.stdout


def test_verify_library_report(ctx30):
    from gstirling.verify import verify

    rep = verify("cycles", ctx30)
    assert rep.passed and rep.exit_code == 0 and len(rep.checks) == 7
    with pytest.raises(ValueError):
        verify("nope", ctx30)
