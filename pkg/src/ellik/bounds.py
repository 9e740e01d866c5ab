"""Logarithmic bounds for K(r): the functions Q1, Q2, D and the sharp constants.

Variables follow the usual conventions: ``x`` in (0, 1) with ``t = 1 - x``
for Q1, D and h (so ``K(sqrt(x))``), and the modulus ``r`` with
``r' = sqrt(1 - r^2)`` for Q2 and the K-bounds.

Functions whose value is used as a verification margin have a companion
``*_parts`` returning ``(value, scale)``, where ``scale`` is the sum of the
absolute values of the terms that were combined.  Rounding error is then
bounded by a small multiple of ``eps * scale``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import Modulus, ellip_k, grotzsch_mu
from .errors import DomainError
from .hypergeom import HypParams, gauss_2f1
from .precision import DOUBLE, RealContext

__all__ = [
    "ExpConst",
    "PiOverLog",
    "E43",
    "SharpConstants",
    "sharp_constants",
    "parse_constant",
    "q1",
    "q1_modulus",
    "q1_first",
    "q1_second",
    "q1_second_parts",
    "q1_second_limit0",
    "q2",
    "d_func",
    "d_first",
    "d_first_parts",
    "d_second",
    "d_second_direct",
    "h_func",
    "h_func_parts",
    "k_bounds",
    "product_inequalities",
    "KK_Y_MAX",
    "verify",
]

_F1 = HypParams(Fraction(1, 2), Fraction(1, 2), 1)
_G2 = HypParams(Fraction(1, 2), Fraction(1, 2), 2)
_G3 = HypParams(Fraction(1, 2), Fraction(1, 2), 3)


# ---------------------------------------------------------------------------
# symbolic constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpConst:
    """e**power with an exact rational exponent, so ln c is exact."""

    power: Fraction

    def log(self, ctx: RealContext = DOUBLE):
        return ctx.num(self.power)

    def value(self, ctx: RealContext = DOUBLE):
        return ctx.exp(ctx.num(self.power))

    def __float__(self) -> float:
        return math.exp(self.power)

    def __str__(self) -> str:
        return f"e^{{{self.power}}}"


@dataclass(frozen=True)
class PiOverLog:
    """pi / ln(k)."""

    k: int

    def value(self, ctx: RealContext = DOUBLE):
        return ctx.pi / ctx.log(ctx.num(self.k))

    def log(self, ctx: RealContext = DOUBLE):
        return ctx.log(self.value(ctx))

    def __float__(self) -> float:
        return math.pi / math.log(self.k)

    def __str__(self) -> str:
        return f"pi/ln{self.k}"


E43 = ExpConst(Fraction(4, 3))


def parse_constant(text: str):
    """Decimal literal, ``e^{p/q}`` (also ``e^(p/q)``, ``e^p``) or ``pi/lnK``."""
    s = text.strip().replace(" ", "")
    if s.startswith("e^"):
        body = s[2:].strip("{}()")
        try:
            return ExpConst(Fraction(body))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad exponent in {text!r}") from None
    if s.startswith("pi/ln"):
        try:
            return PiOverLog(int(s[5:]))
        except ValueError:
            raise ValueError(f"bad constant {text!r}") from None
    if s == "e":
        return ExpConst(Fraction(1))
    return float(s)


def _c_log(c, ctx: RealContext):
    if isinstance(c, (ExpConst, PiOverLog)):
        return c.log(ctx)
    return ctx.log(ctx.num(c))


def _c_value(c, ctx: RealContext):
    if isinstance(c, (ExpConst, PiOverLog)):
        return c.value(ctx)
    return ctx.num(c)


@dataclass(frozen=True)
class SharpConstants:
    c0: object
    p0: object
    p1: object
    q2_lower: object
    c_concave: object


def sharp_constants(ctx: RealContext = DOUBLE) -> SharpConstants:
    pi = ctx.pi
    ln2 = ctx.ln2
    ln5 = ctx.log(ctx.num(5))
    c0 = 3 * ctx.gamma(Fraction(1, 4)) ** 2 / (2 * (3 * ln2 + 8) * ctx.sqrt(pi))
    return SharpConstants(
        c0=c0,
        p0=pi / 8 - ctx.num(2) / 5,
        p1=ln5 - pi / 2,
        q2_lower=pi / (2 * ln5),
        c_concave=E43.value(ctx),
    )


# Gamma(1/4)^4 / (16 pi^2): maximum of the (KK<Y)-type upper bound
KK_Y_MAX = math.gamma(0.25) ** 4 / (16 * math.pi**2)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _x_and_t(x, ctx: RealContext, allow_zero: bool = False):
    xs = ctx.num(x)
    lo_ok = xs >= 0 if allow_zero else xs > 0
    if not (lo_ok and xs < 1):
        raise DomainError(f"x={x} outside (0, 1)")
    return xs, 1 - xs


def _log_t(xs, t, ctx: RealContext):
    """ln(1 - x) without losing digits for small x."""
    return ctx.log1p(-xs) if xs < 0.5 else ctx.log(t)


def _kx(xs, t, ctx: RealContext):
    """K(sqrt(x)) = (pi/2) F(1/2, 1/2; 1; x)."""
    if xs == 0:
        return ctx.pi / 2
    return ctx.pi / 2 * gauss_2f1(_F1, xs, t=t, ctx=ctx)


def _check_c(c, x_small: bool) -> None:
    cf = float(c)
    if not cf >= 1:
        raise DomainError(f"c={c} must be >= 1")
    if cf == 1 and x_small:
        raise DomainError("c = 1 makes Q1 a 0/0 form as x -> 0")


# ---------------------------------------------------------------------------
# Q1(x) = K(sqrt x) / ln(c / sqrt(1 - x))
# ---------------------------------------------------------------------------

def _q1_log(xs, t, c, ctx):
    return _c_log(c, ctx) - _log_t(xs, t, ctx) / 2


def q1(x, c=E43, ctx: RealContext = DOUBLE):
    xs, t = _x_and_t(x, ctx)
    _check_c(c, xs < 1e-300)
    return _kx(xs, t, ctx) / _q1_log(xs, t, c, ctx)


def q1_modulus(r, c=E43, ctx: RealContext = DOUBLE):
    """K(r) / ln(c / r'), i.e. Q1(r^2), computed from the modulus."""
    mod = Modulus.from_r(r, ctx)
    _check_c(c, float(r) < 1e-150)
    return ellip_k(mod, ctx) / (_c_log(c, ctx) - ctx.log(mod.rp))


def q1_first(x, c=E43, ctx: RealContext = DOUBLE):
    """Q1'(x) = (pi/2) (F1' L - F1/(2t)) / L^2 with F1' = F(1/2,1/2;2;x) / (4t)."""
    xs, t = _x_and_t(x, ctx)
    _check_c(c, xs < 1e-300)
    L = _q1_log(xs, t, c, ctx)
    f1 = gauss_2f1(_F1, xs, t=t, ctx=ctx)
    g2 = gauss_2f1(_G2, xs, t=t, ctx=ctx)
    return ctx.pi / 2 * (g2 * L / 4 - f1 / 2) / (t * L * L)


def q1_second_parts(x, c=E43, ctx: RealContext = DOUBLE):
    """Q1''(x) and its scale.

    The analytic second derivative combines F(1/2,1/2;1;x), F(3/2,3/2;2;x),
    F(5/2,5/2;3;x) and L = ln(c/sqrt(1-x)).  The last two are rewritten as
    F(1/2,1/2;2;x)/t and F(1/2,1/2;3;x)/t^2 (Euler transformation) and the
    common 1/t^2 is pulled out, which keeps the cancellation near x = 1 down
    to a factor of ln(1/t).
    """
    xs, t = _x_and_t(x, ctx)
    _check_c(c, xs < 1e-300)
    L = _q1_log(xs, t, c, ctx)
    f1 = gauss_2f1(_F1, xs, t=t, ctx=ctx)
    g2 = gauss_2f1(_G2, xs, t=t, ctx=ctx)
    g3 = gauss_2f1(_G3, xs, t=t, ctx=ctx)
    nine32 = ctx.num(9) / 32
    A = nine32 * g3 * L - f1 / 2
    B = g2 * L / 4 - f1 / 2
    L2 = L * L
    L3 = L2 * L
    pre = ctx.pi / (2 * t * t)
    value = pre * (A / L2 - B / L3)
    scale = abs(pre) * ((nine32 * abs(g3 * L) + abs(f1) / 2) / L2 + (abs(g2 * L) / 4 + abs(f1) / 2) / L3)
    return value, scale


def q1_second(x, c=E43, ctx: RealContext = DOUBLE):
    return q1_second_parts(x, c, ctx)[0]


def q1_second_limit0(c, ctx: RealContext = DOUBLE):
    """Q1''(0+) = (pi/64) (3 ln c - 4)^2 / ln(c)^3; exactly 0 for c = e^{4/3}."""
    if isinstance(c, ExpConst):
        lc = c.power
        if lc <= 0:
            raise DomainError("need c > 1")
        ratio = (3 * lc - 4) ** 2 / lc**3  # exact rational
        return ctx.pi / 64 * ctx.num(ratio)
    lc = _c_log(c, ctx)
    if not lc > 0:
        raise DomainError("need c > 1")
    return ctx.pi / 64 * (3 * lc - 4) ** 2 / lc**3


# ---------------------------------------------------------------------------
# Q2(r) = K(r) / ln(1 + 4/r')
# ---------------------------------------------------------------------------

def _ln_1p4(rp, ctx):
    """ln(1 + 4/r')."""
    return ctx.log1p(4 / rp)


def q2(r, ctx: RealContext = DOUBLE):
    mod = Modulus.from_r(r, ctx)
    return ellip_k(mod, ctx) / _ln_1p4(mod.rp, ctx)


# ---------------------------------------------------------------------------
# D(x) = K(sqrt x) - ln(1 + 4/sqrt(1-x)) and h
# ---------------------------------------------------------------------------

def d_func(x, ctx: RealContext = DOUBLE):
    xs, t = _x_and_t(x, ctx)
    return _kx(xs, t, ctx) - _ln_1p4(ctx.sqrt(t), ctx)


def d_first_parts(x, ctx: RealContext = DOUBLE):
    """D'(x) = (pi/8) F(3/2,3/2;2;x) - 2(4 - sqrt t)/((15 + x) t); x = 0 allowed."""
    xs, t = _x_and_t(x, ctx, allow_zero=True)
    g = ctx.num(1) if xs == 0 else gauss_2f1(_G2, xs, t=t, ctx=ctx) / t
    a = ctx.pi / 8 * g
    b = 2 * (4 - ctx.sqrt(t)) / ((15 + xs) * t)
    return a - b, abs(a) + abs(b)


def d_first(x, ctx: RealContext = DOUBLE):
    return d_first_parts(x, ctx)[0]


def h_func_parts(x, ctx: RealContext = DOUBLE):
    """h(x) = (9 pi/64)(x+15)^2 F(1/2,1/2;3;x) + (3x+13) sqrt(1-x) - 16(x+7)."""
    xs, t = _x_and_t(x, ctx, allow_zero=True)
    g3 = ctx.num(1) if xs == 0 else gauss_2f1(_G3, xs, t=t, ctx=ctx)
    a = 9 * ctx.pi / 64 * (xs + 15) ** 2 * g3
    b = (3 * xs + 13) * ctx.sqrt(t)
    c = 16 * (xs + 7)
    return a + b - c, abs(a) + abs(b) + abs(c)


def h_func(x, ctx: RealContext = DOUBLE):
    return h_func_parts(x, ctx)[0]


def d_second(x, ctx: RealContext = DOUBLE):
    """D''(x) = h(x) / ((x + 15)^2 (1 - x)^2)."""
    xs, t = _x_and_t(x, ctx)
    return h_func(xs, ctx) / ((xs + 15) ** 2 * t * t)


def d_second_direct(x, ctx: RealContext = DOUBLE):
    """D'' from (9 pi/64) F(5/2,5/2;3;x) minus the rational-sqrt part; cross-check only."""
    xs, t = _x_and_t(x, ctx)
    g = gauss_2f1(HypParams(Fraction(5, 2), Fraction(5, 2), 3), xs, t=t, ctx=ctx)
    return 9 * ctx.pi / 64 * g - (16 * (xs + 7) - (3 * xs + 13) * ctx.sqrt(t)) / ((xs + 15) ** 2 * t * t)


# ---------------------------------------------------------------------------
# bounds for K(r)
# ---------------------------------------------------------------------------

K_FAMILIES = ("thm2", "mi3", "kgt", "avv")


def k_bounds(r, family: str, ctx: RealContext = DOUBLE):
    """(lower, upper) bound pair for K(r) from the named family."""
    if family not in K_FAMILIES:
        raise ValueError(f"unknown bound family {family!r}; expected one of {K_FAMILIES}")
    mod = Modulus.from_r(r, ctx)
    rs, rp = mod.r, mod.rp
    sc = sharp_constants(ctx)
    ln14 = _ln_1p4(rp, ctx)
    if family == "thm2":
        return sc.q2_lower * ln14, ln14
    if family == "mi3":
        pi = ctx.pi
        lg = E43.log(ctx) - ctx.log(rp)
        rp2 = rp * rp
        return lg * (1 + (3 * pi / 8 - 1) * rp2), lg * (21 * pi / 64 + 3 * pi / 64 * rp2)
    if family == "kgt":
        r2 = rs * rs
        return ln14 - sc.p1 + sc.p0 * r2, ln14 - sc.p1 + sc.p1 * r2
    return ctx.num("-inf") if not ctx.is_double else -math.inf, ln14 - sc.p1 * (1 - rs)


def product_inequalities(r, ctx: RealContext = DOUBLE) -> dict:
    """Margins (bound minus quantity; >= 0 means the inequality holds).

    Keys: ``mi1``, ``mi2``, ``rrkk``, plus the two comparison bounds
    ``kka_bound``/``kky_bound`` and the quantity ``kk`` = (2/pi) r r' K K'.
    """
    mod = Modulus.from_r(r, ctx)
    rs, rp = mod.r, mod.rp
    pi = ctx.pi
    sc = sharp_constants(ctx)
    k = ellip_k(mod, ctx)
    kp = ellip_k(mod.complement(), ctx)
    lr = E43.log(ctx) - ctx.log(rs)
    lrp = E43.log(ctx) - ctx.log(rp)
    mu = pi / 2 * kp / k
    mi1 = pi * sc.c0 * lr / k - pi / 2 * lr / lrp - mu
    mi2 = sc.c0**2 * lr * lrp - k * kp
    half = ctx.sqrt(ctx.num(1) / 2)
    k_half = ellip_k(Modulus(half, half), ctx)
    rrkk = half * k_half**2 - ctx.sqrt(rs * rp) * k * kp
    kk = 2 / pi * rs * rp * k * kp
    kka = min(rs * ctx.log(4 / rs), rp * ctx.log(4 / rp))
    kky = 2 / pi * sc.c0**2 * rs * rp * lr * lrp
    return {"mi1": mi1, "mi2": mi2, "rrkk": rrkk, "kk": kk, "kka_bound": kka, "kky_bound": kky}


def verify(claim_id: str, grid=None, **options):
    """Run one registered claim; see :mod:`ellik.verify`."""
    from .verify import run_claim

    return run_claim(claim_id, grid, **options)
