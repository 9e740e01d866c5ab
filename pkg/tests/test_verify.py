import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellik import verify as V
from ellik.precision import LADDER

SCHEMA = {"claim_id", "status", "worst_margin", "worst_point", "grid", "precision", "runtime_ms"}


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1e-6, max_value=0.4), st.floats(min_value=0.6, max_value=1 - 1e-6),
       st.integers(min_value=2, max_value=500))
def test_uniform_grid_properties(lo, hi, n):
    xs = V.GridSpec(lo, hi, n, "uniform").values()
    assert xs[0] == lo and xs[-1] == hi
    assert all(a < b for a, b in zip(xs, xs[1:]))
    assert len(xs) <= n


def test_uniform_grid_has_no_near_duplicates():
    xs = V.GridSpec(1e-6, 1 - 1e-6, 10_000, "uniform").values()
    assert len(xs) == 10_000
    assert min(b - a for a, b in zip(xs, xs[1:])) > 1e-5


def test_refined_grid_reaches_the_endpoints():
    xs = V.default_grid().values()
    assert len(xs) > 10_000
    assert min(xs) == pytest.approx(1e-12)
    assert 1 - max(xs) == pytest.approx(1e-12, rel=1e-3)
    assert all(a < b for a, b in zip(xs, xs[1:]))


def test_report_schema():
    rep = V.run_claim("thm2-limit0")
    d = rep.to_dict()
    assert SCHEMA <= set(d)
    assert set(d["grid"]) == {"lo", "hi", "points", "spacing"}
    json.dumps(d)


def test_unknown_claim_and_suite():
    with pytest.raises(KeyError):
        V.run_claim("nope")
    with pytest.raises(KeyError):
        V.run_suite("nope")


def test_bad_precision():
    with pytest.raises(ValueError):
        V.run_claim("thm2-limit0", precision="quad")


def test_suites_registered():
    assert set(V.SUITES) == {"thm1", "thm2", "thm3", "corollaries", "sequences", "asymptotics"}


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("ELLIK_THREADS", "3")
    assert V.thread_count() == 3
    monkeypatch.setenv("ELLIK_THREADS", "junk")
    assert V.thread_count() >= 1


def test_chunked_map_keeps_order(monkeypatch):
    monkeypatch.setenv("ELLIK_THREADS", "4")
    items = list(range(1000))
    assert V._chunked_map(lambda v: v * v, items) == [v * v for v in items]


# --- engine semantics on hand-made claims --------------------------------------

def _claim(fn, kind="pointwise", strict=True, direction=1):
    return V.Claim("test", "none", kind, fn, strict=strict, direction=direction)


GRID = V.GridSpec(0.1, 0.9, 50, "uniform")


def test_positive_margin_passes():
    rep = V._run_pointwise(_claim(lambda x, ctx, p: (ctx.num(x), ctx.num(1))), GRID, {}, 0)
    assert rep.status == "pass" and rep.worst_point == 0.1


def test_negative_margin_fails():
    rep = V._run_pointwise(_claim(lambda x, ctx, p: (ctx.num(x) - ctx.num("0.5"), ctx.num(1))), GRID, {}, 0)
    assert rep.status == "fail"


def test_zero_margin_strict_is_indeterminate():
    rep = V._run_pointwise(_claim(lambda x, ctx, p: (ctx.num(0), ctx.num(1))), GRID, {}, 0)
    assert rep.status == "indeterminate"
    assert len(rep.indeterminate_points) == 50
    assert rep.precision == LADDER[-1].name


def test_zero_margin_non_strict_passes():
    rep = V._run_pointwise(_claim(lambda x, ctx, p: (ctx.num(0), ctx.num(1)), strict=False), GRID, {}, 0)
    assert rep.status == "pass"


def test_noise_in_double_resolved_by_escalation():
    # 2^-70 is invisible in double and clear at 128 bits
    fn = lambda x, ctx, p: ((ctx.num(1) + ctx.num(2) ** -70) - 1, ctx.num(1))
    rep = V._run_pointwise(_claim(fn), GRID, {}, 0)
    assert rep.status == "pass" and rep.precision == "extended128"


def test_monotone_runner():
    inc = _claim(lambda x, ctx, p: (ctx.exp(ctx.num(x)), ctx.num(3)), kind="monotone")
    dec = _claim(lambda x, ctx, p: (ctx.exp(ctx.num(x)), ctx.num(3)), kind="monotone", direction=-1)
    assert V._run_monotone(inc, GRID, {}, 0).status == "pass"
    assert V._run_monotone(dec, GRID, {}, 0).status == "fail"


def test_c_override_fails_thm1_limit():
    rep = V.run_claim("thm1-limit0", c=4.0)
    assert rep.status == "fail"
    assert any("c = 4.0" in n for n in rep.notes)


def test_agm_series_gap_small():
    rel, x = V.agm_series_gap([0.001, 0.5, 0.999])
    assert rel < 1e-14


def test_fitted_exponents_near_two():
    assert abs(V.fitted_exponent("c1") - 2) < 0.1
    assert abs(V.fitted_exponent("c2") - 2) < 0.1


def test_derivative_oracle_is_reproducible():
    a = V.derivative_oracle_errors(10)
    b = V.derivative_oracle_errors(10)
    assert a == b
    assert all(v[0] < 1e-6 for v in a.values())
