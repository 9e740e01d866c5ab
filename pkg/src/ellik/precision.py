"""Working-precision contexts.

``DOUBLE`` evaluates with Python floats and :mod:`math`.  Extended contexts
evaluate with mpmath binary floats at a fixed bit count.  Each thread gets its
own mpmath context (some mpmath routines bump the working precision
internally), so a :class:`RealContext` can be shared freely.
"""

from __future__ import annotations

import math
import numbers
import threading
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DomainError

__all__ = ["RealContext", "DOUBLE", "EXTENDED", "LADDER", "extended", "get_context"]

_EULER = 0.5772156649015329

# Bernoulli numbers B_2 .. B_16 for the digamma asymptotic series.
_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
)


def _is_nonpositive_int(z) -> bool:
    return z <= 0 and z == int(z)


def _digamma_float(z: float) -> float:
    """psi(z) for real z in double: upward recurrence, then Stirling series."""
    if _is_nonpositive_int(z):
        raise DomainError(f"digamma pole at {z}")
    acc = 0.0
    if z < 0:
        # reflection: psi(1-z) - psi(z) = pi*cot(pi*z)
        return _digamma_float(1.0 - z) - math.pi / math.tan(math.pi * z)
    while z < 10.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0.0
    p = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series += float(b) / (2 * k) * p
        p *= inv2
    return acc + math.log(z) - 0.5 / z - series


def _exact_psi_shift(z: Fraction):
    """For integer or half-integer z > 0 return (rational, ln2_coeff) with
    psi(z) + euler_gamma == rational + ln2_coeff * ln 2, else None."""
    if z.denominator not in (1, 2) or _is_nonpositive_int(z):
        return None
    shift = Fraction(0)
    while z <= 0:
        shift -= 1 / z
        z += 1
    if z.denominator == 1:
        n = int(z)
        return shift + sum((Fraction(1, k) for k in range(1, n)), Fraction(0)), 0
    n = int(z - Fraction(1, 2))
    return shift + sum((Fraction(2, 2 * k - 1) for k in range(1, n + 1)), Fraction(0)), -2


class RealContext:
    """Arithmetic backend of a given binary precision.

    ``bits == 53`` means native doubles; anything larger routes through mpmath.
    """

    def __init__(self, bits: int):
        if bits < 53:
            raise ValueError("precision below double is not supported")
        self.bits = bits
        self.is_double = bits == 53
        self.name = "double" if self.is_double else f"extended{bits}"
        self.eps = 2.0 ** (1 - bits)
        # series stopping threshold relative to the partial sum
        self.series_tol = 2.0 ** -60 if self.is_double else 2.0 ** -(bits + 8)
        self._local = threading.local()

    def __repr__(self) -> str:
        return f"RealContext({self.bits})"

    def __reduce__(self):
        return (get_context, (self.bits,))

    @property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        ctx = getattr(self._local, "ctx", None)
        if ctx is None:
            ctx = mpmath.MPContext()
            ctx.prec = self.bits
            self._local.ctx = ctx
        return ctx

    # conversion -----------------------------------------------------------
    def num(self, x):
        if self.is_double:
            return float(x)
        mp = self.mp
        if isinstance(x, numbers.Rational) and not isinstance(x, int):
            return mp.mpf(int(x.numerator)) / int(x.denominator)
        if isinstance(x, str):
            try:
                q = Fraction(x)
            except ValueError:  # inf, nan
                return mp.mpf(x)
            return mp.mpf(q.numerator) / q.denominator
        return mp.mpf(x)

    def to_float(self, x) -> float:
        return float(x)

    # elementary functions ---------------------------------------------------
    def sqrt(self, x):
        return math.sqrt(x) if self.is_double else self.mp.sqrt(x)

    def log(self, x):
        return math.log(x) if self.is_double else self.mp.log(x)

    def log1p(self, x):
        return math.log1p(x) if self.is_double else self.mp.log1p(x)

    def exp(self, x):
        return math.exp(x) if self.is_double else self.mp.exp(x)

    def tan(self, x):
        return math.tan(x) if self.is_double else self.mp.tan(x)

    @property
    def pi(self):
        return math.pi if self.is_double else +self.mp.pi

    @property
    def euler(self):
        return _EULER if self.is_double else +self.mp.euler

    @property
    def ln2(self):
        return math.log(2.0) if self.is_double else +self.mp.ln2

    # special functions --------------------------------------------------------
    def gamma(self, z):
        if _is_nonpositive_int(z):
            raise DomainError(f"gamma pole at {z}")
        if self.is_double:
            return math.gamma(float(z))
        return self.mp.gamma(self.num(z))

    def rgamma(self, z):
        """1/Gamma(z), zero at the poles."""
        if _is_nonpositive_int(z):
            return self.num(0)
        return 1 / self.gamma(z)

    def digamma_plus_euler(self, z):
        """psi(z) + euler_gamma; exact (no gamma constant) at integers and
        half-integers so that the constant cancels symbolically in callers."""
        if isinstance(z, (int, Fraction)):
            exact = _exact_psi_shift(Fraction(z))
            if exact is not None:
                rat, k = exact
                return self.num(rat) + k * self.ln2
        if self.is_double:
            return _digamma_float(float(z)) + _EULER
        return self.mp.digamma(self.num(z)) + self.mp.euler

    def digamma(self, z):
        return self.digamma_plus_euler(z) - self.euler


@lru_cache(maxsize=None)
def get_context(bits: int) -> RealContext:
    return RealContext(bits)


def extended(bits: int = 128) -> RealContext:
    if bits < 100:
        raise ValueError("extended precision needs at least 100 bits")
    return get_context(bits)


DOUBLE = get_context(53)
EXTENDED = extended(128)
# escalation order used by the verification harness
LADDER = (DOUBLE, EXTENDED, extended(256), extended(512), extended(1024))
