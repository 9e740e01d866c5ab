"""Complete elliptic integrals K, E and the Groetzsch ring modulus mu.

K defaults to the arithmetic-geometric mean, ``K(r) = pi / (2 agm(1, r'))``;
the hypergeometric series path is kept as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .hypergeom import HypParams, gauss_2f1
from .precision import DOUBLE, RealContext

__all__ = [
    "Modulus",
    "agm",
    "ellip_k",
    "ellip_e",
    "grotzsch_mu",
    "mu_inverse",
]

_K_PARAMS = HypParams(Fraction(1, 2), Fraction(1, 2), 1)
_E_PARAMS = HypParams(Fraction(1, 2), Fraction(-1, 2), 1)


@dataclass(frozen=True)
class Modulus:
    """Modulus r together with its complement r' = sqrt(1 - r^2).

    Build with :meth:`from_r` or :meth:`from_rp`; whichever side is given is
    kept exact and the other is computed without cancellation.
    """

    r: object
    rp: object

    @classmethod
    def from_r(cls, r, ctx: RealContext = DOUBLE) -> "Modulus":
        rs = ctx.num(r)
        if not (0 < rs < 1):
            raise DomainError(f"modulus r={r} outside (0, 1)")
        return cls(rs, ctx.sqrt((1 - rs) * (1 + rs)))

    @classmethod
    def from_rp(cls, rp, ctx: RealContext = DOUBLE) -> "Modulus":
        return cls.from_r(rp, ctx).complement()

    def complement(self) -> "Modulus":
        return Modulus(self.rp, self.r)

    def to(self, ctx: RealContext) -> "Modulus":
        return Modulus(ctx.num(self.r), ctx.num(self.rp))


def _modulus(m, ctx: RealContext) -> Modulus:
    if isinstance(m, Modulus):
        return m.to(ctx)
    return Modulus.from_r(m, ctx)


def agm(a, b, ctx: RealContext = DOUBLE):
    """Arithmetic-geometric mean of two positive numbers."""
    a, b = ctx.num(a), ctx.num(b)
    if a <= 0 or b <= 0:
        raise DomainError("agm needs positive arguments")
    tol = 4 * ctx.eps
    for _ in range(200):
        if abs(a - b) <= tol * a:
            break
        a, b = (a + b) / 2, ctx.sqrt(a * b)
    return (a + b) / 2


def ellip_k(m, ctx: RealContext = DOUBLE, method: str = "agm"):
    """K(r) for a :class:`Modulus` or a bare r in (0, 1)."""
    mod = _modulus(m, ctx)
    if mod.rp == 0:
        raise OverflowError("K(r) diverges as r -> 1")
    if method == "agm":
        return ctx.pi / (2 * agm(1, mod.rp, ctx))
    if method == "series":
        return ctx.pi / 2 * gauss_2f1(_K_PARAMS, mod.r**2, t=mod.rp**2, ctx=ctx)
    raise ValueError(f"unknown method {method!r}")


def ellip_e(m, ctx: RealContext = DOUBLE):
    """E(r) = (pi/2) F(1/2, -1/2; 1; r^2)."""
    mod = _modulus(m, ctx)
    if mod.rp == 0:
        return ctx.num(1)
    return ctx.pi / 2 * gauss_2f1(_E_PARAMS, mod.r**2, t=mod.rp**2, ctx=ctx)


def grotzsch_mu(m, ctx: RealContext = DOUBLE):
    """mu(r) = (pi/2) K(r') / K(r)."""
    mod = _modulus(m, ctx)
    return ctx.pi / 2 * ellip_k(mod.complement(), ctx) / ellip_k(mod, ctx)


def mu_inverse(y: float, tol: float = 1e-12) -> float:
    """r in (0, 1) with mu(r) = y, by bisection (mu is strictly decreasing).

    Bisection runs until the bracket stops shrinking in double precision, so
    the result is as good as the float grid allows; ``tol`` is the largest
    bracket width accepted as converged.
    """
    if not y > 0 or math.isinf(y):
        raise DomainError("mu_inverse needs 0 < y < inf")
    lo, hi = 0.0, 1.0
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if grotzsch_mu(mid) > y:
            lo = mid
        else:
            hi = mid
    if hi - lo > tol:
        raise ArithmeticError("mu_inverse bisection did not converge")
    # return the bracket end whose mu is closer to y
    if lo == 0.0:
        return hi
    if hi == 1.0:
        return lo
    return lo if abs(grotzsch_mu(lo) - y) <= abs(grotzsch_mu(hi) - y) else hi
