import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from ellik.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, [str(a) for a in args])

    return invoke


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_eval_k_at_half(run):
    res = run("eval", "K", "0.70710678118654752")
    assert res.exit_code == 0
    k = float(res.output)
    assert k * k / math.sqrt(2) == pytest.approx(2.4307, abs=1e-4)


def test_eval_mu_symmetric_point(run):
    res = run("eval", "mu", "0.70710678118654752")
    assert float(res.output) == pytest.approx(math.pi / 2, rel=1e-15)


def test_eval_q2_small_r(run):
    res = run("eval", "Q2", "1e-8")
    assert float(res.output) == pytest.approx(math.pi / math.log(25), abs=1e-12)


def test_eval_digits(run):
    out = run("eval", "K", "0.5").output.strip()
    assert len(out.replace(".", "").lstrip("0")) == 17
    ext = run("eval", "K", "0.5", "--precision", "extended").output.strip()
    assert len(ext.replace(".", "").lstrip("0")) == 32
    assert ext.startswith(out[:15])


def test_eval_several_arguments(run):
    res = run("eval", "h", "0", "0.5")
    assert len(res.output.split()) == 2


def test_eval_general_f(run):
    res = run("eval", "F", "1/2", "1/2", "1", "0.3")
    assert float(res.output) == pytest.approx(float(run("eval", "F", "0.3").output), rel=1e-15)


def test_eval_q1_with_constant(run):
    a = float(run("eval", "Q1", "0.5", "--c", "e^{4/3}").output)
    b = float(run("eval", "Q1", "0.5", "--c", "3.7937").output)
    assert a == pytest.approx(b, rel=1e-5)


@pytest.mark.parametrize("args", [("K", "1.5"), ("Q1", "2"), ("K", "abc"), ("mu_inv", "-1")])
def test_eval_domain_error(run, args):
    res = run("eval", *args)
    assert res.exit_code == 2
    assert res.output.count("\n") == 1


def test_eval_negative_argument(run):
    res = run("eval", "F", "-0.5")
    assert res.exit_code == 0
    assert float(res.output) == pytest.approx(0.901286299360447, rel=1e-14)


def test_eval_unknown_function(run):
    assert run("eval", "Z", "0.5").exit_code == 2


def test_coeffs_alpha(run):
    rows = _rows(run("coeffs", "alpha", 4).output)
    assert rows[0] == ["n", "num", "den"]
    assert rows[-1] == ["4", "243", "163840"]


def test_coeffs_wallis(run):
    assert _rows(run("coeffs", "wallis", 2).output)[-1] == ["2", "3", "8"]


def test_coeffs_beta(run):
    assert _rows(run("coeffs", "beta", 1).output)[1:] == [["1", "-17", "6"]]


def test_coeffs_json(run):
    data = json.loads(run("coeffs", "P5", 2, "--format", "json").output)
    assert data == [{"n": 2, "num": "67235", "den": "131072"}]


def test_coeffs_unknown(run):
    assert run("coeffs", "zeta", 3).exit_code == 2
    assert run("coeffs", "alpha", 0).exit_code == 2


def test_sweep_d_convex(run):
    rows = _rows(run("sweep", "D", "--points", 1000).output)
    assert rows[0] == ["x", "value"]
    vals = [float(v) for _, v in rows[1:]]
    assert len(vals) == 1000
    assert all(a - 2 * b + c > 0 for a, b, c in zip(vals, vals[1:], vals[2:]))


def test_sweep_q1_decreasing_concave(run):
    rows = _rows(run("sweep", "Q1", "--c", "3.7937", "--points", 200, "--hi", 0.99).output)
    vals = [float(v) for _, v in rows[1:]]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert all(a - 2 * b + c < 0 for a, b, c in zip(vals, vals[1:], vals[2:]))


def test_sweep_q2_increasing(run):
    rows = _rows(run("sweep", "Q2", "--points", 10).output)
    vals = [float(v) for _, v in rows[1:]]
    assert len(vals) == 10
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_sweep_values_round_trip(run):
    rows = _rows(run("sweep", "K", "--points", 5).output)
    for x, v in rows[1:]:
        assert repr(float(x)) == x and repr(float(v)) == v


def test_sweep_invalid_grid(run):
    assert run("sweep", "K", "--lo", 0.9, "--hi", 0.1).exit_code == 2
    assert run("sweep", "K", "--points", 1).exit_code == 2


def test_sweep_out_file(run, tmp_path):
    p = tmp_path / "k.csv"
    assert run("sweep", "K", "--points", 3, "--out", p).exit_code == 0
    assert p.read_text().startswith("x,value\n")


def test_verify_unknown_suite(run):
    assert run("verify", "nope").exit_code == 2


def test_verify_thm3_passes(run):
    res = run("verify", "thm3")
    assert res.exit_code == 0
    reports = json.loads(res.output)
    conv = next(r for r in reports if r["claim_id"] == "thm3-convexity")
    assert conv["status"] == "pass" and conv["worst_margin"] > 0


def test_verify_thm1_wrong_constant_fails(run):
    res = run("verify", "thm1", "--c", "4.0")
    assert res.exit_code == 1
    statuses = {r["claim_id"]: r["status"] for r in json.loads(res.output)}
    assert statuses["thm1-limit0"] == "fail"


def test_verify_sequences_with_grid_flags(run):
    res = run("verify", "sequences", "--points", 100)
    assert res.exit_code == 0
    assert all(r["status"] == "pass" for r in json.loads(res.output))


def test_verify_bad_constant(run):
    assert run("verify", "thm1", "--c", "e^{x}").exit_code == 2
