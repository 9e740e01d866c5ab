import math
import pickle
import threading
from fractions import Fraction

import mpmath
import pytest

from ellik.coeffseq import Rational
from ellik.precision import DOUBLE, EXTENDED, LADDER, extended, get_context


def test_ladder_order():
    assert LADDER[0] is DOUBLE
    assert [c.bits for c in LADDER[1:]] == [128, 256, 512, 1024]
    assert all(a.eps > b.eps for a, b in zip(LADDER, LADDER[1:]))


def test_names():
    assert DOUBLE.name == "double"
    assert EXTENDED.name == "extended128"


def test_get_context_cached():
    assert get_context(256) is get_context(256)
    assert extended() is EXTENDED


def test_num_conversions_exact():
    ctx = extended(256)
    assert ctx.num(Fraction(1, 3)) * 3 == 1
    assert ctx.num(Rational(1, 3)) * 3 == 1
    assert ctx.num("0.1") == ctx.mp.mpf(1) / 10
    assert ctx.mp.isinf(ctx.num("-inf"))


@pytest.mark.parametrize("z", [Fraction(1), Fraction(1, 2), Fraction(7, 2), Fraction(5), Fraction(1, 3)])
def test_digamma_plus_euler(z):
    with mpmath.workdps(40):
        ref = mpmath.digamma(mpmath.mpf(z.numerator) / z.denominator) + mpmath.euler
    assert float(DOUBLE.digamma_plus_euler(z)) == pytest.approx(float(ref), abs=1e-14)
    v = EXTENDED.digamma_plus_euler(z)
    with mpmath.workdps(50):
        assert abs(mpmath.mpf(v) - ref) < mpmath.mpf("1e-35")


def test_double_gamma():
    assert DOUBLE.gamma(Fraction(1, 2)) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert DOUBLE.rgamma(Fraction(0)) == 0


def test_pickle_round_trip():
    assert pickle.loads(pickle.dumps(EXTENDED)) is EXTENDED


def test_thread_local_precision():
    # each thread gets its own mpmath context at the right precision
    seen = []

    def work(ctx):
        seen.append((ctx.bits, ctx.mp.prec))

    threads = [threading.Thread(target=work, args=(c,)) for c in LADDER[1:]]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(seen) == [(b, b) for b in (128, 256, 512, 1024)]
