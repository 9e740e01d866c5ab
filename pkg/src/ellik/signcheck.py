"""Sign and monotonicity tools for power series and ratios of functions.

Two tools live here:

* the auxiliary function ``H_{f,g} = (f'/g') g - f``, whose sign decides the
  monotonicity of ``f/g`` through ``(f/g)' = (g'/g**2) H_{f,g}``;
* classification results for power series ``S(t) = sum s_k t^k`` whose
  coefficients change sign once, and for ratios ``A/B`` of power series whose
  coefficient ratios ``a_k/b_k`` are piecewise monotone.

The coefficient patterns are checked exactly over a finite prefix.  Limits at
the right end of the interval are supplied by the caller as analytic values;
nothing here extrapolates a limit from samples.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .coeffseq import CoeffStream, PiLinear, PiMonomial, coeff_sign, coeff_value
from .errors import ConvergenceError, DomainError, IndeterminateSign, PatternViolation
from .precision import DOUBLE, LADDER, RealContext

__all__ = [
    "DifferentiablePair",
    "h_aux",
    "ratio_derivative",
    "limit_sign",
    "eval_series",
    "Verdict",
    "SignAnalysis",
    "series_sign_analysis",
    "Monotonicity",
    "RatioClassification",
    "ratio_monotonicity_classify",
    "certified_sign",
    "bisect_sign_change",
    "scan_for_sign",
    "DEFAULT_PREFIX",
    "BRACKET_TOL",
]

DEFAULT_PREFIX = 10_000
BRACKET_TOL = 1e-12
SERIES_MAX_TERMS = 2_000_000
# a point value is trusted only when it clears its error estimate by this factor
SAFETY = 10.0


@dataclass(frozen=True)
class DifferentiablePair:
    """A function with its analytic derivative on an open interval."""

    value: Callable
    derivative: Callable
    domain: tuple = (0.0, 1.0)

    def check(self, x) -> None:
        lo, hi = self.domain
        if not lo < x < hi:
            raise DomainError(f"x={x} outside ({lo}, {hi})")


def h_aux(f: DifferentiablePair, g: DifferentiablePair, x):
    """H_{f,g}(x) = (f'(x)/g'(x)) g(x) - f(x)."""
    f.check(x)
    g.check(x)
    gd = g.derivative(x)
    if gd == 0:
        raise ZeroDivisionError(f"g' vanishes at x={x}")
    return f.derivative(x) / gd * g.value(x) - f.value(x)


def ratio_derivative(f: DifferentiablePair, g: DifferentiablePair, x):
    """(f/g)'(x) from the supplied derivatives, by the quotient rule."""
    gv = g.value(x)
    return (f.derivative(x) * gv - f.value(x) * g.derivative(x)) / (gv * gv)


def limit_sign(v) -> int:
    """Sign of a caller-supplied analytic limit.

    Exact rationals and pi-expressions are signed exactly (pi by enclosure);
    floats are taken at face value.  Raises :class:`IndeterminateSign` when
    the value cannot be signed.
    """
    if isinstance(v, (PiLinear, PiMonomial)):
        return v.sign()
    if isinstance(v, numbers.Rational):
        return (v > 0) - (v < 0)
    x = float(v)
    if math.isnan(x):
        raise IndeterminateSign("limit is NaN")
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# series evaluation
# ---------------------------------------------------------------------------

def eval_series(coeffs: CoeffStream, t, ctx: RealContext = DOUBLE, *, derivative: int = 0,
                max_terms: int = SERIES_MAX_TERMS):
    """Evaluate ``sum c_k t^k`` (or its first derivative) at ``0 <= t``.

    Returns ``(value, err)``.  Summation stops once the geometric tail bound
    ``|T_n| q/(1-q)``, with ``q`` the larger of ``t`` and the last term ratio,
    drops below ``series_tol`` times the running sum of ``|T_k|``.  Using the
    absolute sum as the scale keeps the rule sensible near a zero of the
    series.  ``err`` adds a rounding estimate to that tail bound.
    """
    if derivative not in (0, 1):
        raise ValueError("derivative must be 0 or 1")
    t = ctx.num(t)
    if t == 0:
        # only the t^derivative term survives
        v = coeff_value(coeffs[derivative], ctx) if derivative >= coeffs.start else ctx.num(0)
        return v, ctx.eps * abs(float(v))
    finite = coeffs.length
    total = ctx.num(0)
    abs_total = 0.0
    prev_abs = None
    tail = 0.0
    tf = float(t)
    n = coeffs.start
    power = ctx.num(1)  # t**(n - derivative) for the current n
    k = 0
    while True:
        if finite is not None and k >= finite:
            tail = 0.0
            break
        if k >= max_terms:
            raise ConvergenceError(f"series {coeffs.name} did not converge at t={tf}")
        c = coeffs[n]
        if derivative:
            term = n * coeff_value(c, ctx) * power if n > 0 else ctx.num(0)
            if n > 0:
                power = power * t
        else:
            term = coeff_value(c, ctx) * power
            power = power * t
        total += term
        a = abs(float(term))
        abs_total += a
        if finite is None and a > 0 and prev_abs:
            q = max(tf, a / prev_abs)
            if q < 1:
                tail = a * q / (1 - q)
                if tail < ctx.series_tol * abs_total:
                    break
        if a > 0:
            prev_abs = a
        n += 1
        k += 1
    err = (16 + math.sqrt(k + 1)) * ctx.eps * abs_total + tail
    return total, err


def certified_sign(fn: Callable, t, ladder=LADDER):
    """Sign of fn(t, ctx) -> (value, err) escalating through the precision ladder.

    Returns ``(sign, value, err, ctx)``; sign is None if no level decides.
    """
    last = None
    for ctx in ladder:
        try:
            v, e = fn(t, ctx)
        except ConvergenceError:
            return None, None, None, ctx
        last = (v, e, ctx)
        if abs(float(v)) > SAFETY * float(e):
            return (1 if v > 0 else -1), v, e, ctx
    return None, last[0], last[1], last[2]


def scan_for_sign(fn: Callable, r: float, want: int, max_k: int = 40):
    """First t = r(1 - 2^-k), k = 1, 2, ..., where fn has certified sign ``want``."""
    for k in range(1, max_k + 1):
        t = r * (1 - 2.0**-k)
        s, *_ = certified_sign(fn, t)
        if s == want:
            return t
        if s is None and k > 4:
            # the series got too slow to sum this close to r
            break
    return None


def bisect_sign_change(fn: Callable, lo: float, hi: float, tol: float, sign_hi: int, ladder=LADDER):
    """Shrink [lo, hi] around a sign change of fn; fn(hi) has sign ``sign_hi``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        s, *_ = certified_sign(fn, mid, ladder)
        if s is None:
            # mid may sit on the root itself; accept it if both sides are decided
            d = tol / 4
            s_lo, *_ = certified_sign(fn, mid - d, ladder)
            s_hi, *_ = certified_sign(fn, mid + d, ladder)
            if s_lo == -sign_hi and s_hi == sign_hi:
                return mid - d, mid + d
            raise IndeterminateSign(f"sign undecided at t={mid!r} on the full precision ladder")
        if s == sign_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


# ---------------------------------------------------------------------------
# sign of a power series with one coefficient sign change
# ---------------------------------------------------------------------------

class Verdict(str, Enum):
    NEGATIVE = "NegativeThroughout"
    POSITIVE = "PositiveThroughout"
    CROSSING = "UniqueCrossing"


@dataclass(frozen=True)
class SignAnalysis:
    verdict: Verdict
    crossing: Optional[tuple] = None
    evidence: str = "prefix-verified"
    checked_terms: int = 0
    mirrored: bool = False
    m: int = 0


def _evidence(stream: CoeffStream, checked: int, tail_certified: bool) -> str:
    if tail_certified or (stream.length is not None and checked >= stream.length):
        return "certified"
    return "prefix-verified"


def series_sign_analysis(coeffs: CoeffStream, m: int, r, s_at_r, *, prefix: int = DEFAULT_PREFIX,
                         tail_certified: bool = False, tol: float = BRACKET_TOL) -> SignAnalysis:
    """Classify the sign of ``S(t) = sum s_k t^k`` on (0, r).

    ``coeffs`` are the signed coefficients of S, starting at index 0.  The
    expected shape is ``s_k <= 0`` for ``k <= m`` with ``s_m < 0`` and
    ``s_k >= 0`` beyond, not all zero.  The mirror shape (head positive, tail
    negative) is handled by analysing ``-S`` and flipping the verdict.

    With ``S(r-) <= 0`` the series keeps the head's sign on all of (0, r);
    otherwise it crosses zero exactly once, and the crossing is bracketed by
    bisection to width ``tol``.
    """
    if coeffs.start != 0:
        raise ValueError("coefficients must start at index 0")
    if m < 0:
        raise ValueError("m must be nonnegative")
    r = float(r)
    if not r > 0:
        raise DomainError("r must be positive")
    values = coeffs.prefix(prefix)
    if len(values) <= m:
        raise PatternViolation(f"only {len(values)} coefficients, need more than m={m}")
    signs = [coeff_sign(c) for c in values]
    if signs[m] == 0:
        raise PatternViolation(f"coefficient {m} is zero")
    flip = 1 if signs[m] < 0 else -1
    u = [flip * s for s in signs]
    bad_head = [k for k in range(m + 1) if u[k] > 0]
    bad_tail = [k for k in range(m + 1, len(u)) if u[k] < 0]
    if bad_head or bad_tail:
        where = (bad_head + bad_tail)[0]
        raise PatternViolation(f"{coeffs.name}: coefficient {where} breaks the head/tail sign pattern with m={m}")
    if not any(x > 0 for x in u[m + 1:]):
        raise PatternViolation(f"{coeffs.name}: tail vanishes on the checked prefix")

    evidence = _evidence(coeffs, len(values), tail_certified)
    mirrored = flip < 0
    if flip * limit_sign(s_at_r) <= 0:
        verdict = Verdict.POSITIVE if mirrored else Verdict.NEGATIVE
        return SignAnalysis(verdict, None, evidence, len(values), mirrored, m)

    def fn(t, ctx):
        v, e = eval_series(coeffs, t, ctx)
        return flip * v, e

    hi = scan_for_sign(fn, r, +1)
    if hi is None:
        raise IndeterminateSign(f"{coeffs.name}: no certified positive point found below r={r}")
    lo, hi = bisect_sign_change(fn, 0.0, hi, tol, +1)
    return SignAnalysis(Verdict.CROSSING, (lo, hi), evidence, len(values), mirrored, m)


# ---------------------------------------------------------------------------
# monotonicity of a ratio of power series
# ---------------------------------------------------------------------------

class Monotonicity(str, Enum):
    INCREASING = "MonotoneIncreasing"
    DECREASING = "MonotoneDecreasing"
    INC_DEC = "IncreasingThenDecreasing"
    DEC_INC = "DecreasingThenIncreasing"


@dataclass(frozen=True)
class RatioClassification:
    kind: Monotonicity
    bracket: Optional[tuple] = None
    evidence: str = "prefix-verified"
    checked_terms: int = 0
    m: int = 0


def _piecewise_pattern(rho: list, m: int) -> int:
    """+1 for rising to index m then falling, -1 for the mirror, 0 otherwise."""
    head = rho[: m + 1]
    tail = rho[m:]
    up_down = all(x <= y for x, y in zip(head, head[1:])) and all(x >= y for x, y in zip(tail, tail[1:]))
    down_up = all(x >= y for x, y in zip(head, head[1:])) and all(x <= y for x, y in zip(tail, tail[1:]))
    if up_down and not down_up:
        return 1
    if down_up and not up_down:
        return -1
    return 0


def _turning_index(rho: list) -> int:
    """Index of the first extremum of the ratio sequence (0 if monotone from the start)."""
    for k in range(1, len(rho) - 1):
        if (rho[k] - rho[k - 1]) * (rho[k + 1] - rho[k]) < 0:
            return k
    return 0


def ratio_monotonicity_classify(a: CoeffStream, b: CoeffStream, m: Optional[int], r, h_limit, *,
                                prefix: int = DEFAULT_PREFIX, tail_certified: bool = False,
                                tol: float = BRACKET_TOL) -> RatioClassification:
    """Classify the monotonicity of ``A/B`` on (0, r) for power series A, B.

    Needs ``b_k > 0`` and a non-constant ratio sequence ``a_k/b_k`` that rises
    up to index ``m`` and falls after it (or the mirror).  ``m=None`` takes the
    first turning point of the checked prefix.  ``h_limit`` is the analytic
    value of ``H_{A,B}(r-)``.  For a unimodal result the extremum is bracketed
    by the sign change of ``A'B - AB'``.
    """
    if a.start != 0 or b.start != 0:
        raise ValueError("coefficients must start at index 0")
    av, bv = a.prefix(prefix), b.prefix(prefix)
    n = min(len(av), len(bv))
    if any(coeff_sign(x) <= 0 for x in bv[:n]):
        raise PatternViolation(f"{b.name}: coefficients must be positive")
    rho = [x / y for x, y in zip(av[:n], bv[:n])]
    if all(x == rho[0] for x in rho):
        raise PatternViolation("coefficient ratio is constant")
    evidence = "certified" if tail_certified else "prefix-verified"
    # a monotone ratio sequence settles the question without H
    if all(x <= y for x, y in zip(rho, rho[1:])):
        return RatioClassification(Monotonicity.INCREASING, None, evidence, n, 0)
    if all(x >= y for x, y in zip(rho, rho[1:])):
        return RatioClassification(Monotonicity.DECREASING, None, evidence, n, 0)
    if m is None:
        m = _turning_index(rho)
    if m < 0 or m >= n:
        raise ValueError(f"m={m} outside the checked prefix")
    shape = _piecewise_pattern(rho, m)
    if shape == 0:
        raise PatternViolation(f"ratio {a.name}/{b.name} is not piecewise monotone with turning index m={m}")

    hs = limit_sign(h_limit)
    if shape > 0 and hs >= 0:
        return RatioClassification(Monotonicity.INCREASING, None, evidence, n, m)
    if shape < 0 and hs <= 0:
        return RatioClassification(Monotonicity.DECREASING, None, evidence, n, m)

    r = float(r)

    def fn(t, ctx):
        A, eA = eval_series(a, t, ctx)
        dA, edA = eval_series(a, t, ctx, derivative=1)
        B, eB = eval_series(b, t, ctx)
        dB, edB = eval_series(b, t, ctx, derivative=1)
        v = dA * B - A * dB
        fa, fda, fb, fdb = (abs(float(x)) for x in (A, dA, B, dB))
        e = edA * fb + fda * eB + eA * fdb + fa * edB + 4 * ctx.eps * (fda * fb + fa * fdb)
        return v, e

    # past the extremum the derivative has the opposite sign of the head
    want = -shape
    hi = scan_for_sign(fn, r, want)
    if hi is None:
        raise IndeterminateSign(f"{a.name}/{b.name}: turning point not located below r={r}")
    lo, hi = bisect_sign_change(fn, 0.0, hi, tol, want)
    kind = Monotonicity.INC_DEC if shape > 0 else Monotonicity.DEC_INC
    return RatioClassification(kind, (lo, hi), evidence, n, m)
