import math

import mpmath
import pytest
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from ellik.elliptic import Modulus, agm, ellip_e, ellip_k, grotzsch_mu, mu_inverse
from ellik.errors import DomainError
from ellik.precision import EXTENDED

RS = [1e-8, 0.1, 0.5, 1 / math.sqrt(2), 0.9, 0.999, 1 - 1e-10]


@pytest.mark.parametrize("r", RS)
def test_k_matches_scipy(r):
    # scipy takes the parameter m = r^2; ellipkm1 takes 1 - m
    rp2 = (1 - r) * (1 + r)
    assert ellip_k(r) == pytest.approx(sp.ellipkm1(rp2), rel=2e-15)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9, 0.999])
def test_k_matches_quadrature(r):
    val, _ = quad(lambda s: 1 / math.sqrt(1 - (r * math.sin(s)) ** 2), 0, math.pi / 2, epsabs=0.0, epsrel=1e-12, limit=200)
    assert ellip_k(r) == pytest.approx(val, rel=1e-12)


@pytest.mark.parametrize("r", RS)
def test_e_matches_scipy(r):
    assert ellip_e(r) == pytest.approx(sp.ellipe(r * r), rel=1e-14)


@pytest.mark.parametrize("r", ["0.3", "0.999999"])
def test_extended_k_matches_mpmath(r):
    rs = EXTENDED.num(r)
    got = ellip_k(rs, EXTENDED)
    with mpmath.workdps(50):
        ref = mpmath.ellipk(mpmath.mpf(rs) ** 2)
        assert abs(mpmath.mpf(got) - ref) < mpmath.mpf("1e-35")


def test_agm_matches_mpmath():
    assert agm(1, 0.3) == pytest.approx(float(mpmath.agm(1, 0.3)), rel=1e-15)
    with pytest.raises(DomainError):
        agm(1, 0)


@pytest.mark.parametrize("r", [0.05, 0.5, 0.95])
def test_series_path_agrees_with_agm(r):
    assert ellip_k(r, method="series") == pytest.approx(ellip_k(r), rel=1e-14)


def test_unknown_method():
    with pytest.raises(ValueError):
        ellip_k(0.5, method="quad")


def test_k_diverges_at_one():
    with pytest.raises(DomainError):
        ellip_k(1.0)


def test_mu_fixed_point():
    assert grotzsch_mu(1 / math.sqrt(2)) == pytest.approx(math.pi / 2, rel=1e-15)


def test_modulus_complement():
    m = Modulus.from_r(0.6)
    assert m.rp == pytest.approx(0.8, rel=1e-15)
    assert m.complement().r == m.rp
    assert Modulus.from_rp(0.6).r == pytest.approx(0.8, rel=1e-15)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_legendre_relation(r):
    # E K' + E' K - K K' = pi/2
    m = Modulus.from_r(r)
    c = m.complement()
    k, kp, e, ep = ellip_k(m), ellip_k(c), ellip_e(m), ellip_e(c)
    assert e * kp + ep * k - k * kp == pytest.approx(math.pi / 2, rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=1e-4, max_value=1 - 1e-4))
def test_mu_product_identity(r):
    # mu(r) mu(r') = pi^2 / 4
    m = Modulus.from_r(r)
    assert grotzsch_mu(m) * grotzsch_mu(m.complement()) == pytest.approx(math.pi**2 / 4, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.99))
def test_mu_inverse_round_trip(r):
    assert mu_inverse(grotzsch_mu(r)) == pytest.approx(r, rel=1e-12)


def test_mu_inverse_domain():
    with pytest.raises(DomainError):
        mu_inverse(0.0)
    with pytest.raises(DomainError):
        mu_inverse(math.inf)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1 - 1e-6), st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_k_increasing(r1, r2):
    lo, hi = sorted((r1, r2))
    if hi - lo > 1e-9:
        assert ellip_k(lo) < ellip_k(hi)


def test_k_increasing_e_decreasing_on_grid():
    rs = [1e-6 + (1 - 2e-6) * i / 9999 for i in range(10_000)]
    ks = [ellip_k(r) for r in rs]
    es = [ellip_e(r) for r in rs]
    assert all(b > a for a, b in zip(ks, ks[1:]))
    assert all(b < a for a, b in zip(es, es[1:]))
