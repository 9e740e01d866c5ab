"""Exact rational coefficient sequences for the series expansions of Q1, D and the K ratios.

Every sequence is computed with exact rationals (``gmpy2.mpq``, which always
stays in lowest terms with a positive denominator).  Sequences defined
by a recurrence are memoised in a :class:`CoeffStream`; the direct sums are kept
alongside as independent oracles for the recurrences.

Notation: ``W(n) = (2n-1)!!/(2n)!!`` is the Wallis ratio,
``W(0) = 1`` and ``W(n+1) = (n + 1/2)/(n + 1) W(n)``.
"""

from __future__ import annotations

import math
import numbers
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from gmpy2 import mpq

from .errors import IndeterminateSign
from .precision import DOUBLE, RealContext

Rational = mpq

__all__ = [
    "Rational",
    "PiLinear",
    "PiMonomial",
    "CoeffStream",
    "pi_enclosure",
    "wallis",
    "wallis_stream",
    "beta_direct",
    "beta_seq",
    "lambda_n",
    "beta_recurrence_residual",
    "phi_direct",
    "phi_closed_form",
    "phi_closed_form_residual",
    "alpha_seq",
    "alpha_recurrence_residual",
    "thm2_a",
    "thm2_b",
    "thm2_ratio",
    "thm2_ratio_step_sign",
    "thm2_step_residual",
    "thm3_q",
    "thm3_p4",
    "thm3_p5",
    "thm3_p5_shifted",
    "thm3_d_ratio_sign",
    "thm3_d_ratio_residual",
    "d_minus_one_sign",
    "d_sign_change_index",
    "h_coeff",
    "h_coeff_convolution",
    "f3_coeff",
    "f3_partial_sum",
    "f5_value",
    "f5_coeff",
    "f3_stream",
    "f5_stream",
    "h_coeff_stream",
    "thm2_a_stream",
    "thm2_b_stream",
    "coeff_sign",
    "coeff_value",
    "alpha_positive_range",
    "SEQUENCES",
]


# ---------------------------------------------------------------------------
# pi enclosure and pi-linear numbers
# ---------------------------------------------------------------------------

def _arctan_inv_bounds(x: int, bits: int) -> tuple[Rational, Rational]:
    """Bracket arctan(1/x) by consecutive partial sums of its alternating series."""
    tol = Rational(1, 2 ** (bits + 4))
    s = Rational(0)
    k = 0
    prev = None
    while True:
        term = Rational((-1) ** k, (2 * k + 1) * x ** (2 * k + 1))
        prev, s = s, s + term
        if abs(term) < tol and k > 0:
            break
        k += 1
    return (min(prev, s), max(prev, s))


@lru_cache(maxsize=None)
def pi_enclosure(bits: int = 128) -> tuple[Rational, Rational]:
    """Rational lo < pi < hi with hi - lo < 2**-bits, from Machin's formula.

    Partial sums of an alternating series with decreasing terms bracket the
    limit, so the enclosure is exact, no floating point involved.
    """
    lo5, hi5 = _arctan_inv_bounds(5, bits + 8)
    lo239, hi239 = _arctan_inv_bounds(239, bits + 8)
    lo = 16 * lo5 - 4 * hi239
    hi = 16 * hi5 - 4 * lo239
    # round outward to a dyadic grid to keep the numbers small
    scale = 2 ** (bits + 4)
    lo = Rational((lo.numerator * scale) // lo.denominator, scale)
    hi = Rational(-((-hi.numerator * scale) // hi.denominator), scale)
    assert hi - lo < Rational(1, 2**bits)
    return lo, hi


@dataclass(frozen=True)
class PiLinear:
    """Exact number p*pi + q with rational p, q."""

    p: Rational
    q: Rational

    def __add__(self, other):
        if isinstance(other, PiLinear):
            return PiLinear(self.p + other.p, self.q + other.q)
        return PiLinear(self.p, self.q + Rational(other))

    __radd__ = __add__

    def __neg__(self):
        return PiLinear(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Rational(k)
        return PiLinear(self.p * k, self.q * k)

    __rmul__ = __mul__

    def enclosure(self, bits: int = 128) -> tuple[Rational, Rational]:
        lo, hi = pi_enclosure(bits)
        a, b = self.p * lo + self.q, self.p * hi + self.q
        return (a, b) if a <= b else (b, a)

    def sign_or_none(self, bits: int = 128):
        """+1, -1, 0 (only when p = q = 0), or None when the enclosure straddles 0."""
        if self.p == 0:
            return (self.q > 0) - (self.q < 0)
        lo, hi = self.enclosure(bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        return None

    def sign(self, bits: int = 128) -> int:
        s = self.sign_or_none(bits)
        if s is None:
            raise IndeterminateSign(f"sign of {self} undecided at {bits}-bit pi enclosure")
        return s

    def to(self, ctx: RealContext = DOUBLE):
        return ctx.num(self.p) * ctx.pi + ctx.num(self.q)

    def __float__(self) -> float:
        return float(self.to(DOUBLE))


@dataclass(frozen=True)
class PiMonomial:
    """Exact number coef * pi**power, e.g. -64/pi = PiMonomial(-64, -1)."""

    coef: Rational
    power: int = 1

    def sign(self, bits: int = 128) -> int:
        return (self.coef > 0) - (self.coef < 0)

    def sign_or_none(self, bits: int = 128):
        return self.sign()

    def to(self, ctx: RealContext = DOUBLE):
        return ctx.num(self.coef) * ctx.pi**self.power

    def __float__(self) -> float:
        return float(self.to(DOUBLE))


def coeff_sign(c) -> int:
    """Certified sign of an exact coefficient (Rational, int, PiLinear or PiMonomial)."""
    if isinstance(c, (PiLinear, PiMonomial)):
        return c.sign()
    if isinstance(c, numbers.Rational):
        return (c > 0) - (c < 0)
    raise TypeError(f"cannot certify the sign of {type(c).__name__}")


def coeff_value(c, ctx: RealContext = DOUBLE):
    if isinstance(c, (PiLinear, PiMonomial)):
        return c.to(ctx)
    return ctx.num(c)


# ---------------------------------------------------------------------------
# lazily generated sequences
# ---------------------------------------------------------------------------

class CoeffStream:
    """Lazily generated, memoised sequence c[start], c[start+1], ...

    ``factory`` returns a fresh iterator producing the values in order.  The
    memo only ever grows; growth happens under a lock so concurrent readers see
    a consistent prefix.  ``length`` marks a finite sequence (a polynomial);
    indices past the end read as zero.
    """

    def __init__(self, name: str, factory: Callable[[], Iterator], start: int = 0,
                 length: int | None = None):
        self.name = name
        self.start = start
        self.length = length
        self._factory = factory
        self._it = None
        self._memo: list = []
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"CoeffStream({self.name!r}, cached={len(self._memo)})"

    def _extend(self, count: int) -> None:
        with self._lock:
            if self._it is None:
                self._it = self._factory()
            while len(self._memo) < count:
                self._memo.append(next(self._it))

    def __getitem__(self, n: int):
        i = n - self.start
        if i < 0:
            raise IndexError(f"{self.name} starts at index {self.start}")
        if self.length is not None and i >= self.length:
            return Rational(0)
        if i >= len(self._memo):
            self._extend(i + 1)
        return self._memo[i]

    def prefix(self, count: int) -> list:
        """The first ``count`` values (indices start .. start+count-1)."""
        if self.length is not None:
            count = min(count, self.length)
        if count > len(self._memo):
            self._extend(count)
        return self._memo[:count]

    def sign(self, n: int) -> int:
        return coeff_sign(self[n])

    def values(self, count: int, ctx: RealContext = DOUBLE) -> list:
        return [coeff_value(c, ctx) for c in self.prefix(count)]

    @classmethod
    def from_function(cls, name: str, fn: Callable[[int], object], start: int = 0,
                      length: int | None = None) -> "CoeffStream":
        def gen():
            n = start
            while True:
                yield fn(n)
                n += 1

        return cls(name, gen, start, length)

    @classmethod
    def from_list(cls, name: str, values, start: int = 0) -> "CoeffStream":
        values = list(values)
        return cls(name, lambda: iter(values), start, len(values))


# ---------------------------------------------------------------------------
# Wallis ratio and the beta / alpha sequences
# ---------------------------------------------------------------------------

def _wallis_gen():
    w = Rational(1)
    n = 0
    while True:
        yield w
        w = w * Rational(2 * n + 1, 2 * n + 2)
        n += 1


wallis_stream = CoeffStream("wallis", _wallis_gen)


def wallis(n: int) -> Rational:
    if n < 0:
        raise ValueError("wallis(n) needs n >= 0")
    return wallis_stream[n]


def _beta_term(k: int) -> Rational:
    return Rational(11 * k - 17, (k + 1) * (k + 2) * (k + 3)) * wallis(k) ** 2


_beta_terms = CoeffStream.from_function("beta_terms", _beta_term)


def beta_direct(n: int) -> Rational:
    """sum_{k<n} (11k-17) W(k)^2 / ((k+1)(k+2)(k+3)(n-k)) by direct summation."""
    if n < 1:
        raise ValueError("beta_direct(n) needs n >= 1")
    terms = _beta_terms.prefix(n)
    return sum((tk / (n - k) for k, tk in enumerate(terms)), Rational(0))


def lambda_n(n: int) -> Rational:
    return Rational((11 * n - 6) * (2 * n + 1) ** 2, 4 * (n + 4) * (11 * n - 17) * (n + 1))


def _beta_rhs(n: int) -> Rational:
    """beta(n+1) - lambda(n) beta(n) in closed form."""
    poly = 880 * n**4 + 2404 * n**3 - 7319 * n**2 - 20301 * n - 10404
    den = 9 * (11 * n - 17) * (n + 1) ** 2 * (n + 2) * (n + 3) * (n + 4)
    return -Rational((2 * n + 1) * poly, den) * wallis(n) ** 2


def _beta_gen():
    b1, b2 = beta_direct(1), beta_direct(2)
    yield b1
    yield b2
    b, n = b2, 2
    while True:
        b = lambda_n(n) * b + _beta_rhs(n)
        n += 1
        yield b


beta_seq = CoeffStream("beta", _beta_gen, start=1)


def beta_recurrence_residual(n: int) -> Rational:
    """beta(n+1) - lambda(n) beta(n) - rhs(n), with both betas from direct sums."""
    if n < 2:
        raise ValueError("recurrence is stated for n >= 2")
    return beta_direct(n + 1) - lambda_n(n) * beta_direct(n) - _beta_rhs(n)


def _phi_weight(k: int) -> Rational:
    return wallis(k) ** 2 / ((k + 1) ** 2 * (k + 2) * (k + 3) * (k + 4))


def phi_direct(i: int, n: int) -> Rational:
    """sum_{k<n} (k+1/2)^i W(k)^2 / ((k+1)^2 (k+2)(k+3)(k+4)) for i in {0, 1, 2}."""
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    return sum((Rational(2 * k + 1, 2) ** i * _phi_weight(k) for k in range(n)), Rational(0))


def phi_closed_form(i: int, n: int) -> Rational:
    w2 = wallis(n) ** 2
    den = (n + 1) * (n + 2) * (n + 3)
    if i == 2:
        return Rational((2 * n + 1) ** 2 * (32 * n**2 + 168 * n + 225), 225 * den) * w2 - Rational(1, 6)
    if i == 1:
        poly = 128 * n**3 + 736 * n**2 + 1236 * n + 525
        return Rational(1, 3) - Rational(2 * (2 * n + 1) * poly, 525 * den) * w2
    if i == 0:
        poly = 2048 * n**4 + 12800 * n**3 + 25664 * n**2 + 18288 * n + 3675
        return Rational(4 * poly, 3675 * den) * w2 - Rational(2, 3)
    raise ValueError("i must be 0, 1 or 2")


def phi_closed_form_residual(i: int, n: int) -> Rational:
    if n < 1:
        raise ValueError("n must be >= 1")
    return phi_direct(i, n) - phi_closed_form(i, n)


def _alpha_from_beta(n: int, beta: Rational) -> Rational:
    lead = Rational(5 * n**3 + 32 * n**2 + 77 * n + 3, 5 * (n + 1) * (n + 2) * (n + 3))
    return lead * wallis(n) ** 2 + Rational(9, 80) * beta


alpha_stream = CoeffStream.from_function("alpha", lambda n: _alpha_from_beta(n, beta_seq[n]), start=1)


def alpha_seq(n: int, *, direct: bool = False) -> Rational:
    """alpha(n); ``direct=True`` uses the direct beta sum instead of the memo."""
    if n < 1:
        raise ValueError("alpha_seq(n) needs n >= 1")
    if direct:
        return _alpha_from_beta(n, beta_direct(n))
    return alpha_stream[n]


def alpha_positive_range(lo: int, hi: int) -> bool:
    """True when alpha(n) > 0 for every lo <= n <= hi (exact signs)."""
    return all(alpha_stream[n] > 0 for n in range(lo, hi + 1))


def _alpha_rhs(n: int) -> Rational:
    poly = 44 * n**3 + 293 * n**2 + 263 * n + 840
    den = 80 * (11 * n - 17) * (n + 1) ** 2 * (n + 2) * (n + 3) * (n + 4)
    return Rational(3 * (2 * n + 1) * poly, den) * wallis(n) ** 2


def alpha_recurrence_residual(n: int) -> Rational:
    """alpha(n+1) - lambda(n) alpha(n) - rhs(n) with alphas built on direct beta sums."""
    if n < 2:
        raise ValueError("recurrence is stated for n >= 2")
    return alpha_seq(n + 1, direct=True) - lambda_n(n) * alpha_seq(n, direct=True) - _alpha_rhs(n)


# ---------------------------------------------------------------------------
# coefficient ratio behind the monotonicity of Q2
# ---------------------------------------------------------------------------

def thm2_a(n: int) -> Rational:
    """Coefficients of (15 + x) F(1/2, 1/2; 2; x)."""
    if n == 0:
        return Rational(15)
    return Rational(64 * n**2 - 56 * n + 15, (2 * n - 1) ** 2 * (n + 1)) * wallis(n) ** 2


def thm2_b(n: int) -> Rational:
    """Coefficients of 8 (4 - sqrt(1 - x))."""
    if n == 0:
        return Rational(24)
    return Rational(8, 2 * n - 1) * wallis(n)


def thm2_ratio(n: int) -> Rational:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Rational(5, 8)
    return Rational(64 * n**2 - 56 * n + 15, 8 * (2 * n - 1) * (n + 1)) * wallis(n)


def thm2_ratio_step_sign(n: int) -> Rational:
    """Closed form of ratio(n+1)/ratio(n) - 1 for n >= 1.

    Note the value is positive at n = 1 (the numerator 64n^2 - 168n + 83 is
    -21 there), so the ratio peaks at n = 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return -Rational(64 * n**2 - 168 * n + 83, 2 * (n + 2) * (64 * n**2 - 56 * n + 15))


def thm2_step_residual(n: int) -> Rational:
    return thm2_ratio(n + 1) / thm2_ratio(n) - 1 - thm2_ratio_step_sign(n)


# ---------------------------------------------------------------------------
# coefficients behind the convexity of D
# ---------------------------------------------------------------------------

def thm3_p4(n):
    return 4096 * n**4 - 14848 * n**3 + 17984 * n**2 - 8672 * n + 2025


def thm3_q(n: int) -> Rational:
    """q(n) = d(n)/pi, exact; d(n) > 1 iff q(n) > 1/pi."""
    if n < 2:
        raise ValueError("thm3_q(n) needs n >= 2")
    den = 32 * (2 * n - 1) * (2 * n - 3) * (n + 1) * (n + 2) * (32 * n - 39)
    return Rational(9 * thm3_p4(n), den) * wallis(n)


def thm3_p5(n) -> Rational:
    n = Rational(n)
    return (n**5 - Rational(427, 96) * n**4 + Rational(1823, 256) * n**3
            - Rational(33203, 6144) * n**2 + Rational(4831, 2048) * n - Rational(51165, 131072))


def thm3_p5_shifted(n) -> Rational:
    m = Rational(n) - 2
    return (m**5 + Rational(533, 96) * m**4 + Rational(8861, 768) * m**3
            + Rational(64957, 6144) * m**2 + Rational(23729, 6144) * m + Rational(67235, 131072))


def thm3_d_ratio_sign(n: int) -> Rational:
    """P5(n); raises if the expanded and (n-2)-shifted forms disagree."""
    if n < 2:
        raise ValueError("n must be >= 2")
    p = thm3_p5(n)
    if p != thm3_p5_shifted(n):
        raise ArithmeticError(f"P5 forms disagree at n={n}")
    return p


def thm3_d_ratio_residual(n: int) -> Rational:
    """d(n+1)/d(n) - 1 + 196608 P5(n) / ((32n-7)(n+3) P4(n)); zero when the identity holds."""
    lhs = thm3_q(n + 1) / thm3_q(n) - 1
    return lhs + 196608 * thm3_p5(n) / ((32 * n - 7) * (n + 3) * thm3_p4(n))


def d_minus_one_sign(n: int, bits: int = 128):
    """Sign of d(n) - 1 = pi q(n) - 1, or None if the pi enclosure cannot decide."""
    return PiLinear(thm3_q(n), Rational(-1)).sign_or_none(bits)


def d_sign_change_index(n_max: int, bits: int = 128) -> dict:
    """Locate n0 with d(n) >= 1 for 2 <= n <= n0 and d(n) < 1 beyond, up to n_max.

    Returns ``{"n0": ..., "single_change": bool, "indeterminate": [n, ...]}``.
    """
    signs = {}
    undecided = []
    for n in range(2, n_max + 1):
        s = d_minus_one_sign(n, bits)
        if s is None:
            undecided.append(n)
        signs[n] = s
    n0 = None
    changes = 0
    prev = None
    for n in range(2, n_max + 1):
        s = signs[n]
        if s is None:
            continue
        nonneg = s >= 0
        if nonneg:
            n0 = n
        if prev is not None and prev != nonneg:
            changes += 1
        prev = nonneg
    return {"n0": n0, "single_change": changes == 1 and signs[2] == 1, "indeterminate": undecided}


def h_coeff(n: int) -> PiLinear:
    """Power-series coefficient c(n) of h(x), as p*pi + q."""
    if n == 0:
        return PiLinear(Rational(2025, 64), Rational(-99))
    if n == 1:
        return PiLinear(Rational(1755, 256), Rational(-39, 2))
    k = Rational(32 * n - 39, (2 * n - 1) * (2 * n - 3)) * wallis(n)
    return PiLinear(k * thm3_q(n), -k)


def h_coeff_convolution(n: int) -> PiLinear:
    """c(n) from multiplying out the three pieces of h; oracle for :func:`h_coeff`."""

    def w(k):  # coefficients of F(1/2,1/2;3;x) / 2
        return wallis(k) ** 2 / ((k + 1) * (k + 2)) if k >= 0 else Rational(0)

    def v(k):  # coefficients of -sqrt(1 - x)
        return wallis(k) / (2 * k - 1) if k >= 0 else Rational(0)

    p = Rational(9, 32) * (225 * w(n) + 30 * w(n - 1) + w(n - 2))
    q = -(13 * v(n) + 3 * v(n - 1))
    q -= {0: 112, 1: 16}.get(n, 0)
    return PiLinear(p, q)


def h_coeff_stream() -> CoeffStream:
    return CoeffStream.from_function("h", h_coeff)


# ---------------------------------------------------------------------------
# auxiliary series for the concavity of Q1
# ---------------------------------------------------------------------------

def f3_coeff(n: int) -> Rational:
    """Coefficient of x^n in f3(x) = 9/32 F(1/2,1/2;3;x) - 1/4 F(1/2,1/2;2;x)."""
    if n == 0:
        return Rational(1, 32)
    return -Rational(4 * n - 1, 16 * (n + 2) * (n + 1)) * wallis(n) ** 2


def f3_partial_sum(N: int) -> float:
    """sum_{n=0}^{N} f3_coeff(n), accumulated in double (W(n)^2 by recurrence)."""
    total = 1.0 / 32
    w = 1.0
    for n in range(1, N + 1):
        w *= (2 * n - 1) / (2 * n)
        total -= (4 * n - 1) / (16.0 * (n + 2) * (n + 1)) * w * w
    return total


_F5 = (Rational(1, 10), Rational(-3, 40), Rational(-9, 640), Rational(-31, 20480))


def f5_value(x) -> Rational:
    x = Rational(x)
    return sum((c * x**k for k, c in enumerate(_F5)), Rational(0))


def f5_coeff(n: int) -> Rational:
    return _F5[n] if n < len(_F5) else Rational(0)


def f3_stream() -> CoeffStream:
    return CoeffStream.from_function("f3", f3_coeff)


def f5_stream() -> CoeffStream:
    return CoeffStream.from_list("f5", _F5)


def thm2_a_stream() -> CoeffStream:
    return CoeffStream.from_function("thm2_a", thm2_a)


def thm2_b_stream() -> CoeffStream:
    return CoeffStream.from_function("thm2_b", thm2_b)


def _seq_f3(n):
    return f3_coeff(n)


# name -> (function, first index) for the CLI
SEQUENCES = {
    "wallis": (wallis, 0),
    "beta": (lambda n: beta_seq[n], 1),
    "alpha": (alpha_seq, 1),
    "thm2_ratio": (thm2_ratio, 0),
    "q": (thm3_q, 2),
    "P5": (thm3_d_ratio_sign, 2),
    "f3": (_seq_f3, 0),
}
