"""Gauss hypergeometric function 2F1(a, b; c; x) for real -1 < x < 1.

Evaluation strategy:

* ``x <= 0.5``: the defining power series.
* ``x < -0.5``: Pfaff transformation onto ``x/(x-1)`` in (1/3, 1/2).
* ``x > 0.5``: connection formulas in ``t = 1 - x``.  When ``c - a - b`` is a
  negative integer the Euler transformation
  ``F(a,b;c;x) = t**(c-a-b) F(c-a,c-b;c;x)`` is applied first; the
  integer cases then use the logarithmic expansions (Abramowitz & Stegun
  15.3.10 and 15.3.11), the non-integer case uses 15.3.6.

Callers that know ``t = 1 - x`` more accurately than ``1 - x`` rounds to
(for instance ``t = r'**2`` for an elliptic modulus) can pass it in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .errors import ConvergenceError, DomainError
from .precision import DOUBLE, RealContext

__all__ = [
    "HypParams",
    "NearOneExpansion",
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_derivative",
    "near_one_value",
    "log_singular_expansion",
    "asymptotic_F_near_one",
    "SWITCH_NEAR_ONE",
    "MAX_TERMS",
]

MAX_TERMS = 10**6
SWITCH_NEAR_ONE = 0.5
SWITCH_PFAFF = -0.5


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(int(v.numerator), int(v.denominator))
    if isinstance(v, Real):
        return Fraction(float(v))
    # mpmath mpf and friends
    return Fraction(str(v))


def _nonpos_int(z: Fraction) -> bool:
    return z <= 0 and z.denominator == 1


@dataclass(frozen=True)
class HypParams:
    """Parameters (a, b; c), stored exactly so integer gaps are detected exactly."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        if _nonpos_int(self.c):
            raise DomainError(f"c = {self.c} is zero or a negative integer")

    @property
    def excess(self) -> Fraction:
        """c - a - b, which decides the behaviour at x = 1."""
        return self.c - self.a - self.b

    def shifted(self, k: int) -> "HypParams":
        return HypParams(self.a + k, self.b + k, self.c + k)


@dataclass(frozen=True)
class NearOneExpansion:
    leading: float
    correction: float
    remainder_order: str = "O(t^2 ln t)"

    @property
    def value(self):
        return self.leading + self.correction


def pochhammer(a, n: int):
    """Rising factorial (a)_n; exact when ``a`` is exact."""
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1.0
    for k in range(n):
        out *= a + k
    return out


def _direct_series(a, b, c, x, ctx: RealContext):
    """Sum the defining series; a, b, c, x are native ctx numbers."""
    one = ctx.num(1)
    term = one
    total = one
    tol = ctx.series_tol
    n = 0
    while True:
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        term = term * ratio
        total += term
        n += 1
        if term == 0:
            return total
        if abs(term) < tol * abs(total):
            nxt = (a + n) * (b + n) / ((c + n) * (n + 1)) * x
            if abs(nxt) < 1:
                return total
        if n >= MAX_TERMS:
            raise ConvergenceError(
                f"2F1 series did not converge within {MAX_TERMS} terms at x={x}"
            )


def _log_case_m0(a: Fraction, b: Fraction, t, ctx: RealContext):
    """c = a + b (A&S 15.3.10)."""
    af, bf = ctx.num(a), ctx.num(b)
    lnt = ctx.log(t)
    # psi values enter only in differences, so the Euler constant cancels
    p1 = ctx.digamma_plus_euler(1)
    pa = ctx.digamma_plus_euler(a)
    pb = ctx.digamma_plus_euler(b)
    coef = ctx.num(1)
    total = coef * (2 * p1 - pa - pb - lnt)
    tol = ctx.series_tol
    n = 0
    while True:
        # advance from index n to n + 1
        p1 += 1 / ctx.num(n + 1)
        pa += 1 / (af + n)
        pb += 1 / (bf + n)
        coef = coef * (af + n) * (bf + n) / ctx.num((n + 1) ** 2) * t
        n += 1
        bracket = 2 * p1 - pa - pb - lnt
        total += coef * bracket
        if coef == 0:
            break
        if abs(coef) * (abs(bracket) + 1) < tol * abs(total):
            if abs((af + n) * (bf + n) / ctx.num((n + 1) ** 2) * t) < 1:
                break
        if n >= MAX_TERMS:
            raise ConvergenceError("logarithmic 2F1 expansion did not converge")
    return total * ctx.gamma(a + b) * ctx.rgamma(a) * ctx.rgamma(b)


def _log_case_m(a: Fraction, b: Fraction, m: int, t, ctx: RealContext):
    """c = a + b + m, m >= 1 (A&S 15.3.11)."""
    af, bf = ctx.num(a), ctx.num(b)
    # finite part
    fin = ctx.num(0)
    coef = ctx.num(1)
    tn = ctx.num(1)
    for n in range(m):
        fin += coef * tn
        coef = coef * (af + n) * (bf + n) / ((n + 1) * ctx.num(1 - m + n)) if n + 1 < m else coef
        tn = tn * t
    fin *= ctx.gamma(m) * ctx.gamma(a + b + m) * ctx.rgamma(a + m) * ctx.rgamma(b + m)

    # logarithmic part
    lnt = ctx.log(t)
    p1 = ctx.digamma_plus_euler(1)
    pm = ctx.digamma_plus_euler(m + 1)
    pa = ctx.digamma_plus_euler(a + m)
    pb = ctx.digamma_plus_euler(b + m)
    am, bm = af + m, bf + m
    fact_m = 1
    for k in range(2, m + 1):
        fact_m *= k
    coef = 1 / ctx.num(fact_m)
    total = coef * (lnt - p1 - pm + pa + pb)
    tol = ctx.series_tol
    n = 0
    while True:
        p1 += 1 / ctx.num(n + 1)
        pm += 1 / ctx.num(n + m + 1)
        pa += 1 / (am + n)
        pb += 1 / (bm + n)
        coef = coef * (am + n) * (bm + n) / ctx.num((n + 1) * (n + m + 1)) * t
        n += 1
        bracket = lnt - p1 - pm + pa + pb
        total += coef * bracket
        if coef == 0:
            break
        if abs(coef) * (abs(bracket) + 1) < tol * abs(total):
            if abs((am + n) * (bm + n) / ctx.num((n + 1) * (n + m + 1)) * t) < 1:
                break
        if n >= MAX_TERMS:
            raise ConvergenceError("logarithmic 2F1 expansion did not converge")
    sign = -1 if m % 2 else 1  # (-t)**m = sign * t**m
    pre = ctx.gamma(a + b + m) * ctx.rgamma(a) * ctx.rgamma(b) * sign * t**m
    return fin - pre * total


def _near_one(a: Fraction, b: Fraction, c: Fraction, t, ctx: RealContext):
    s = c - a - b
    if s.denominator == 1:
        m = int(s)
        if m < 0:
            # Euler transformation lifts the excess to -m > 0
            return t**m * _near_one(c - a, c - b, c, t, ctx)
        if m == 0:
            return _log_case_m0(a, b, t, ctx)
        return _log_case_m(a, b, m, t, ctx)
    # non-integer excess (A&S 15.3.6)
    tf = t
    first = ctx.gamma(c) * ctx.gamma(s) * ctx.rgamma(c - a) * ctx.rgamma(c - b)
    if first != 0:
        first = first * _direct_series(
            ctx.num(a), ctx.num(b), ctx.num(1 - s), tf, ctx
        )
    second = ctx.gamma(c) * ctx.gamma(-s) * ctx.rgamma(a) * ctx.rgamma(b)
    if second != 0:
        second = second * ctx.exp(ctx.num(s) * ctx.log(tf)) * _direct_series(
            ctx.num(c - a), ctx.num(c - b), ctx.num(1 + s), tf, ctx
        )
    return first + second


def _hyp2f1(a: Fraction, b: Fraction, c: Fraction, x, t, ctx: RealContext):
    if a == 0 or b == 0 or x == 0:
        return ctx.num(1)
    if _nonpos_int(a) or _nonpos_int(b) or x <= SWITCH_NEAR_ONE:
        if x < SWITCH_PFAFF and not (_nonpos_int(a) or _nonpos_int(b)):
            # Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1))
            xp = -x / t
            return ctx.exp(-ctx.num(a) * ctx.log(t)) * _hyp2f1(
                a, c - b, c, xp, 1 / t, ctx
            )
        return _direct_series(ctx.num(a), ctx.num(b), ctx.num(c), x, ctx)
    return _near_one(a, b, c, t, ctx)


def _check_x(x, t):
    # x may round to 1 when t = 1 - x is supplied separately; t decides then
    if not (-1 < x <= 1) or not (0 < t < 2):
        raise DomainError(f"2F1 argument x={x} outside (-1, 1)")


def gauss_2f1(p: HypParams, x, *, t=None, ctx: RealContext = DOUBLE):
    """F(a, b; c; x).  ``t`` optionally supplies 1 - x to full accuracy."""
    xs = ctx.num(x)
    ts = ctx.num(1) - xs if t is None else ctx.num(t)
    _check_x(xs, ts)
    return _hyp2f1(p.a, p.b, p.c, xs, ts, ctx)


def gauss_2f1_derivative(p: HypParams, x, order: int = 1, *, t=None, ctx: RealContext = DOUBLE):
    """order-th derivative in x via F' = (ab/c) F(a+1, b+1; c+1; x)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    factor = Fraction(1)
    for k in range(order):
        factor *= (p.a + k) * (p.b + k) / (p.c + k)
    if factor == 0:
        return ctx.num(0)
    return ctx.num(factor) * gauss_2f1(p.shifted(order), x, t=t, ctx=ctx)


def near_one_value(p: HypParams, ctx: RealContext = DOUBLE):
    """F(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)) for c > a + b."""
    if p.excess <= 0:
        raise DomainError("F(a,b;c;1) is finite only for c > a + b")
    if p.a == 0 or p.b == 0:
        return ctx.num(1)
    return ctx.gamma(p.c) * ctx.gamma(p.excess) * ctx.rgamma(p.c - p.a) * ctx.rgamma(p.c - p.b)


def beta_function(a, b, ctx: RealContext = DOUBLE):
    return ctx.gamma(a) * ctx.gamma(b) * ctx.rgamma(_frac(a) + _frac(b))


def r_constant(a, b, ctx: RealContext = DOUBLE):
    """R(a, b) = -2 gamma - psi(a) - psi(b); the Euler constant cancels exactly."""
    return -ctx.digamma_plus_euler(_frac(a)) - ctx.digamma_plus_euler(_frac(b))


def log_singular_expansion(a, b, x, ctx: RealContext = DOUBLE):
    """Leading term (R(a,b) - ln(1-x)) / B(a,b) of F(a, b; a+b; x) as x -> 1."""
    xs = ctx.num(x)
    if not (0 < xs < 1):
        raise DomainError(f"x={x} outside (0, 1)")
    return (r_constant(a, b, ctx) - ctx.log(1 - xs)) / beta_function(_frac(a), _frac(b), ctx)


def asymptotic_F_near_one(kind: str, t, ctx: RealContext = DOUBLE) -> NearOneExpansion:
    """Two-term expansions of F(1/2,1/2;1;1-t) (``c1``) and F(1/2,1/2;2;1-t) (``c2``)."""
    ts = ctx.num(t)
    if not (0 < ts < 1):
        raise DomainError(f"t={t} outside (0, 1)")
    pi = ctx.pi
    lg = ctx.log(16 / ts)
    if kind == "c1":
        return NearOneExpansion(lg / pi, ts / (4 * pi) * (lg - 2))
    if kind == "c2":
        return NearOneExpansion(4 / pi, -ts / pi * (lg - 3))
    raise ValueError(f"unknown expansion kind {kind!r}; expected 'c1' or 'c2'")
