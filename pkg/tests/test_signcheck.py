import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellik import coeffseq as CS
from ellik.coeffseq import CoeffStream, PiMonomial, Rational
from ellik.errors import DomainError, IndeterminateSign, PatternViolation
from ellik.precision import DOUBLE, EXTENDED
from ellik.signcheck import (
    DifferentiablePair,
    Monotonicity,
    Verdict,
    certified_sign,
    eval_series,
    h_aux,
    limit_sign,
    ratio_derivative,
    ratio_monotonicity_classify,
    series_sign_analysis,
)

# f = x^2, g = x: H = (2x/1) x - x^2 = x^2 > 0, f/g = x increasing
SQ = DifferentiablePair(lambda x: x * x, lambda x: 2 * x)
ID = DifferentiablePair(lambda x: x, lambda x: 1.0)
CONST = DifferentiablePair(lambda x: 1.0, lambda x: 0.0)


def test_h_aux_simple():
    assert h_aux(SQ, ID, 0.3) == pytest.approx(0.09)


def test_h_aux_domain_and_zero_derivative():
    with pytest.raises(DomainError):
        h_aux(SQ, ID, 1.5)
    with pytest.raises(ZeroDivisionError):
        h_aux(SQ, CONST, 0.5)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.95))
def test_ratio_derivative_identity(x):
    # (f/g)' = (g'/g^2) H_{f,g} and matches a central difference
    f = DifferentiablePair(math.exp, math.exp)
    g = DifferentiablePair(lambda t: 1 + t * t, lambda t: 2 * t)
    d = ratio_derivative(f, g, x)
    assert d == pytest.approx(g.derivative(x) / g.value(x) ** 2 * h_aux(f, g, x), rel=1e-12)
    h = 1e-6
    fd = (f.value(x + h) / g.value(x + h) - f.value(x - h) / g.value(x - h)) / (2 * h)
    assert d == pytest.approx(fd, rel=1e-8, abs=1e-8)


def test_limit_sign():
    assert limit_sign(PiMonomial(Rational(-64), -1)) == -1
    assert limit_sign(Rational(0)) == 0
    assert limit_sign(0.25) == 1
    with pytest.raises(IndeterminateSign):
        limit_sign(float("nan"))


@pytest.mark.parametrize("t", [0.0, 0.3, 0.9, 0.999])
def test_eval_series_geometric(t):
    ones = CoeffStream.from_function("ones", lambda n: Rational(1))
    v, e = eval_series(ones, t)
    assert v == pytest.approx(1 / (1 - t), rel=1e-13)
    assert abs(v - 1 / (1 - t)) <= e
    d, _ = eval_series(ones, t, derivative=1)
    assert d == pytest.approx(1 / (1 - t) ** 2, rel=1e-12)


def test_eval_series_extended_against_mpmath():
    s = CS.f3_stream()
    v, e = eval_series(s, "0.5", EXTENDED)
    with mpmath.workdps(50):
        ref = mpmath.mpf(9) / 32 * mpmath.hyp2f1(0.5, 0.5, 3, 0.5) - mpmath.hyp2f1(0.5, 0.5, 2, 0.5) / 4
        assert abs(mpmath.mpf(v) - ref) <= mpmath.mpf(e) + mpmath.mpf("1e-36")


def test_eval_series_polynomial_exact_tail():
    p = CoeffStream.from_list("p", [Rational(1), Rational(2), Rational(3)])
    v, _ = eval_series(p, 2.0)
    assert v == 17.0


def test_certified_sign_escalates():
    # a difference that is pure noise in double but positive at 128 bits
    def fn(t, ctx):
        v = (ctx.num(1) + ctx.num(2) ** -80) - 1
        return v, 4 * ctx.eps

    s, v, e, ctx = certified_sign(fn, 0.0)
    assert s == 1
    assert ctx.bits >= 128


# --- series sign analysis ----------------------------------------------------

def test_linear_unique_crossing():
    s = CoeffStream.from_list("lin", [Rational(-1), Rational(2)])
    res = series_sign_analysis(s, 0, 1, Rational(1))
    assert res.verdict == Verdict.CROSSING
    lo, hi = res.crossing
    assert lo < 0.5 < hi + 1e-15 and hi - lo < 1e-12
    assert res.evidence == "certified"


def test_linear_negative_throughout():
    s = CoeffStream.from_list("lin", [Rational(-2), Rational(1)])
    res = series_sign_analysis(s, 0, 1, Rational(-1))
    assert res.verdict == Verdict.NEGATIVE and res.crossing is None


def test_mirrored_positive():
    s = CoeffStream.from_list("lin", [Rational(2), Rational(-1)])
    res = series_sign_analysis(s, 0, 1, Rational(1))
    assert res.verdict == Verdict.POSITIVE and res.mirrored


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50))
def test_linear_crossing_location(a, b):
    # S(t) = -a + (a + b) t crosses at a/(a+b) in (0, 1)
    s = CoeffStream.from_list("lin", [Rational(-a), Rational(a + b)])
    res = series_sign_analysis(s, 0, 1, Rational(b))
    lo, hi = res.crossing
    root = a / (a + b)
    assert lo - 1e-15 <= root <= hi + 1e-15


def test_pattern_violation():
    s = CoeffStream.from_list("bad", [Rational(-1), Rational(1), Rational(-1)])
    with pytest.raises(PatternViolation):
        series_sign_analysis(s, 0, 1, Rational(0))
    with pytest.raises(PatternViolation):
        series_sign_analysis(CoeffStream.from_list("z", [Rational(0), Rational(1)]), 0, 1, Rational(1))


def test_f3_positive():
    res = series_sign_analysis(CS.f3_stream(), 0, 1, Rational(0), prefix=2000)
    assert res.verdict == Verdict.POSITIVE and res.mirrored
    assert res.evidence == "prefix-verified"


def test_f5_positive():
    res = series_sign_analysis(CS.f5_stream(), 0, 1, CS.f5_value(1))
    assert res.verdict == Verdict.POSITIVE and res.evidence == "certified"


def test_h_nonnegative():
    res = series_sign_analysis(CS.h_coeff_stream(), 3, 1, Rational(0), prefix=2000)
    assert res.verdict == Verdict.POSITIVE


# --- ratio classification ----------------------------------------------------

def _stream(name, vals):
    return CoeffStream.from_list(name, [Rational(v) for v in vals])


def test_ratio_monotone_increasing():
    # a_k/b_k = k+1 increasing, H(1-) irrelevant when nonnegative
    a = CoeffStream.from_function("a", lambda k: Rational(k + 1, 2**k))
    b = CoeffStream.from_function("b", lambda k: Rational(1, 2**k))
    res = ratio_monotonicity_classify(a, b, None, 1, Rational(1), prefix=200)
    assert res.kind == Monotonicity.INCREASING


def test_ratio_decreasing():
    a = CoeffStream.from_function("a", lambda k: Rational(1, (k + 1) * 2**k))
    b = CoeffStream.from_function("b", lambda k: Rational(1, 2**k))
    res = ratio_monotonicity_classify(a, b, None, 1, Rational(-1), prefix=200)
    assert res.kind == Monotonicity.DECREASING


def test_ratio_rejects_nonpositive_denominator():
    with pytest.raises(PatternViolation):
        ratio_monotonicity_classify(_stream("a", [1, 2]), _stream("b", [1, 0]), None, 1, 0)


def test_ratio_rejects_constant():
    with pytest.raises(PatternViolation):
        ratio_monotonicity_classify(_stream("a", [2, 2]), _stream("b", [1, 1]), None, 1, 0)


def test_thm2_classification():
    res = ratio_monotonicity_classify(CS.thm2_a_stream(), CS.thm2_b_stream(), 2, 1,
                                      PiMonomial(Rational(-64), -1), prefix=2000)
    assert res.kind == Monotonicity.INC_DEC
    lo, hi = res.bracket
    assert hi - lo < 1e-11
    assert lo == pytest.approx(0.9537607481, abs=1e-9)


def test_thm2_wrong_turning_index():
    with pytest.raises(PatternViolation):
        ratio_monotonicity_classify(CS.thm2_a_stream(), CS.thm2_b_stream(), 1, 1,
                                    PiMonomial(Rational(-64), -1), prefix=200)
