from fractions import Fraction as Fr

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellik.errors import DomainError
from ellik.hypergeom import (
    HypParams,
    asymptotic_F_near_one,
    beta_function,
    gauss_2f1,
    gauss_2f1_derivative,
    pochhammer,
)
from ellik.precision import EXTENDED, extended

HALF = Fr(1, 2)

# parameter sets hitting every branch near x = 1:
# c-a-b = 0, positive integer, negative integer, non-integer
PARAMS = [
    (HALF, HALF, 1),
    (HALF, HALF, 2),
    (HALF, HALF, 3),
    (Fr(3, 2), Fr(3, 2), 2),
    (Fr(5, 2), Fr(5, 2), 3),
    (HALF, Fr(-1, 2), 1),
    (Fr(1, 3), Fr(2, 5), Fr(7, 4)),
    (Fr(3, 4), Fr(1, 4), Fr(1, 2)),
]
XS = [-0.9, -0.6, -0.3, 0.0, 0.2, 0.5, 0.51, 0.8, 0.95, 0.999, 1 - 1e-9]


def _mp_ref(a, b, c, x):
    with mpmath.workdps(40):
        return mpmath.hyp2f1(mpmath.mpf(a.numerator) / a.denominator if isinstance(a, Fr) else a,
                             mpmath.mpf(b.numerator) / b.denominator if isinstance(b, Fr) else b,
                             mpmath.mpf(Fr(c).numerator) / Fr(c).denominator, x)


@pytest.mark.parametrize("a,b,c", PARAMS)
@pytest.mark.parametrize("x", XS)
def test_double_matches_mpmath(a, b, c, x):
    got = gauss_2f1(HypParams(a, b, c), x)
    ref = _mp_ref(a, b, c, mpmath.mpf(x))
    assert abs(got - float(ref)) <= 1e-13 * max(1.0, abs(float(ref)))


@pytest.mark.parametrize("a,b,c", PARAMS)
@pytest.mark.parametrize("x", ["0.3", "0.75", "0.999999"])
def test_extended_matches_mpmath(a, b, c, x):
    ctx = EXTENDED
    xs = ctx.num(x)
    got = gauss_2f1(HypParams(a, b, c), xs, ctx=ctx)
    with mpmath.workdps(60):
        # same rounded argument: near x = 1 the input rounding alone is amplified by 1/t
        ref = mpmath.hyp2f1(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator,
                            mpmath.mpf(Fr(c).numerator) / Fr(c).denominator, mpmath.mpf(xs))
        assert abs(mpmath.mpf(got) - ref) < mpmath.mpf("1e-33") * abs(ref)


def test_t_argument_carries_one_minus_x():
    # 1 - (1 - 1e-20) is 0 in double; passing t keeps the log singularity
    t = 1e-20
    got = gauss_2f1(HypParams(HALF, HALF, 1), 1.0 - t, t=t)
    with mpmath.workdps(40):
        ref = mpmath.hyp2f1(0.5, 0.5, 1, 1 - mpmath.mpf(t))
    assert got == pytest.approx(float(ref), rel=1e-14)


def test_terminating_series_is_polynomial():
    # F(-2, b; c; x) = 1 - 2bx/c + b(b+1)x^2/(c(c+1))
    b, c, x = Fr(3, 2), Fr(5, 2), 0.9
    exp = 1 - 2 * float(b) * x / float(c) + float(b * (b + 1)) * x * x / float(c * (c + 1))
    assert gauss_2f1(HypParams(-2, b, c), x) == pytest.approx(exp, rel=1e-15)


@pytest.mark.parametrize("x", [-1.0, 1.0, 1.5])
def test_domain(x):
    with pytest.raises(DomainError):
        gauss_2f1(HypParams(HALF, HALF, 1), x)


def test_bad_c_rejected():
    with pytest.raises(ValueError):
        HypParams(HALF, HALF, -1)


@pytest.mark.parametrize("a,n", [(HALF, 0), (HALF, 5), (Fr(-3, 2), 4), (3, 6)])
def test_pochhammer_matches_rf(a, n):
    assert float(pochhammer(a, n)) == pytest.approx(float(mpmath.rf(float(a), n)), rel=1e-15)


def test_pochhammer_exact():
    assert pochhammer(HALF, 3) == Fr(15, 8)


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("x", [0.1, 0.6, 0.97])
def test_derivative_matches_mpmath_diff(order, x):
    got = gauss_2f1_derivative(HypParams(HALF, HALF, 1), x, order)
    with mpmath.workdps(40):
        ref = mpmath.diff(lambda z: mpmath.hyp2f1(0.5, 0.5, 1, z), mpmath.mpf(x), order)
    assert got == pytest.approx(float(ref), rel=1e-12)


def test_beta_function():
    assert beta_function(HALF, HALF) == pytest.approx(3.141592653589793, rel=1e-15)
    assert beta_function(2, 3) == pytest.approx(1 / 12, rel=1e-15)


@pytest.mark.parametrize("kind,c", [("c1", 1), ("c2", 2)])
def test_asymptotic_expansion_residual_order(kind, c):
    # residual against mpmath is O(t^2 ln(1/t)): scaled residual stays bounded
    for t in (1e-2, 1e-3, 1e-4):
        ex = asymptotic_F_near_one(kind, t)
        with mpmath.workdps(40):
            ref = float(mpmath.hyp2f1(0.5, 0.5, c, 1 - mpmath.mpf(t)))
        scaled = abs(ref - ex.value) / (t * t * mpmath.log(1 / t))
        assert 0.01 < scaled < 1


def test_asymptotic_kind_checked():
    with pytest.raises(ValueError):
        asymptotic_F_near_one("c3", 0.1)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fr(-3), max_value=Fr(3), max_denominator=8),
       st.fractions(min_value=Fr(-3), max_value=Fr(3), max_denominator=8),
       st.fractions(min_value=Fr(1, 8), max_value=Fr(4), max_denominator=8),
       st.floats(min_value=-0.9, max_value=0.9))
def test_symmetric_in_a_b(a, b, c, x):
    u = gauss_2f1(HypParams(a, b, c), x)
    v = gauss_2f1(HypParams(b, a, c), x)
    assert u == pytest.approx(v, rel=1e-11, abs=1e-11)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.999))
def test_euler_transformation(x):
    # F(a,b;c;x) = (1-x)^(c-a-b) F(c-a, c-b; c; x)
    a, b, c = Fr(1, 3), Fr(3, 4), Fr(5, 2)
    lhs = gauss_2f1(HypParams(a, b, c), x)
    rhs = (1 - x) ** float(c - a - b) * gauss_2f1(HypParams(c - a, c - b, c), x)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_higher_precision_levels_agree():
    p = HypParams(HALF, HALF, 1)
    lo = gauss_2f1(p, "0.9", ctx=extended(128))
    hi = gauss_2f1(p, "0.9", ctx=extended(512))
    assert abs(float(lo - hi)) < 1e-36


@pytest.mark.parametrize("x", [0.05, 0.2, 0.45, 0.7, 0.9])
def test_first_derivative_vs_central_difference(x):
    p = HypParams(HALF, HALF, 2)
    h = 1e-5
    fd = (gauss_2f1(p, x + h) - gauss_2f1(p, x - h)) / (2 * h)
    assert gauss_2f1_derivative(p, x, 1) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize("x", [0.01, 0.3, 0.6, 0.9, 0.99, 0.9999])
def test_contiguous_identity(x):
    # F(3/2,3/2;2;x) = F(1/2,1/2;2;x) / (1 - x)
    lhs = gauss_2f1(HypParams(Fr(3, 2), Fr(3, 2), 2), x)
    rhs = gauss_2f1(HypParams(HALF, HALF, 2), x) / (1 - x)
    assert lhs == pytest.approx(rhs, rel=1e-12)
