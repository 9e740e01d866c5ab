"""Command-line front end: ``ellik eval|coeffs|verify|sweep``.

Exit codes: 0 all pass, 1 claim failure, 2 usage or domain error,
3 indeterminate sign decision.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import bounds as B
from . import coeffseq as CS
from . import verify as V
from .elliptic import ellip_e, ellip_k, grotzsch_mu, mu_inverse
from .errors import ConvergenceError, DomainError
from .hypergeom import HypParams, gauss_2f1
from .precision import DOUBLE, EXTENDED, RealContext

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3

_K_PARAMS = HypParams(Fraction(1, 2), Fraction(1, 2), 1)


def _ctx(precision: str) -> RealContext:
    return EXTENDED if precision == "extended" else DOUBLE


def _fmt(v, ctx: RealContext) -> str:
    if ctx.is_double:
        return format(float(v), ".17g")
    return ctx.mp.nstr(v, 32, min_fixed=-5, max_fixed=5)


def _constant(text):
    if text is None:
        return B.E43
    try:
        return B.parse_constant(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--c") from None


def _scalar_functions(c):
    """name -> f(x, ctx); each takes the argument its name suggests (r, x or y)."""
    return {
        "K": lambda r, ctx: ellip_k(r, ctx),
        "E": lambda r, ctx: ellip_e(r, ctx),
        "mu": lambda r, ctx: grotzsch_mu(r, ctx),
        "mu_inv": lambda y, ctx: mu_inverse(float(y)),
        "F": lambda x, ctx: gauss_2f1(_K_PARAMS, x, ctx=ctx),
        "Q1": lambda x, ctx: B.q1(x, c, ctx),
        "Q2": lambda r, ctx: B.q2(r, ctx),
        "D": lambda x, ctx: B.d_func(x, ctx),
        "h": lambda x, ctx: B.h_func(x, ctx),
    }


FUNCTIONS = tuple(_scalar_functions(B.E43))


def _parse_arg(text: str, ctx: RealContext):
    try:
        return ctx.num(text) if not ctx.is_double else float(text)
    except (ValueError, TypeError):
        raise DomainError(f"not a number: {text!r}") from None


def _die(msg: str, code: int = EXIT_USAGE):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _emit(text: str, out):
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


precision_opt = click.option("--precision", type=click.Choice(["double", "extended"]), default="double",
                             show_default=True)
out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None, help="write output here")
c_opt = click.option("--c", "c_text", default=None, help="constant c for Q1: decimal, e^{4/3}, pi/ln25")


@click.group()
def main():
    """Elliptic-integral bounds toolkit."""


@main.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("function", type=click.Choice(FUNCTIONS))
@click.argument("args", nargs=-1, required=True)
@precision_opt
@c_opt
def cmd_eval(function, args, precision, c_text):
    """Evaluate FUNCTION at each argument.

    F is 2F1(1/2,1/2;1;x); give four arguments ``a b c x`` for other
    parameters.  K, E, mu and Q2 take the modulus r; Q1, D, h take x = r^2.
    """
    ctx = _ctx(precision)
    c = _constant(c_text)
    fn = _scalar_functions(c)[function]
    try:
        if function == "F" and len(args) == 4:
            a, b, cc = (Fraction(v) for v in args[:3])
            vals = [gauss_2f1(HypParams(a, b, cc), _parse_arg(args[3], ctx), ctx=ctx)]
        else:
            vals = [fn(_parse_arg(v, ctx), ctx) for v in args]
    except (DomainError, ValueError, OverflowError, ZeroDivisionError, ConvergenceError) as exc:
        _die(str(exc).splitlines()[0] if str(exc) else type(exc).__name__)
    for v in vals:
        click.echo(_fmt(v, ctx))


@main.command("coeffs")
@click.argument("sequence")
@click.argument("n_max", type=click.IntRange(min=1))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@out_opt
def cmd_coeffs(sequence, n_max, fmt, out):
    """Exact coefficients of SEQUENCE for n = first index .. N_MAX."""
    if sequence not in CS.SEQUENCES:
        _die(f"unknown sequence {sequence!r}; expected one of {', '.join(CS.SEQUENCES)}")
    fn, start = CS.SEQUENCES[sequence]
    rows = []
    for n in range(start, n_max + 1):
        v = fn(n)
        rows.append((n, int(v.numerator), int(v.denominator)))
    if fmt == "json":
        text = json.dumps([{"n": n, "num": str(p), "den": str(q)} for n, p, q in rows]) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "num", "den"])
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, out)


def _grid(points, lo, hi, spacing):
    if points is None and lo is None and hi is None:
        return None
    g = V.GridSpec()
    g = V.GridSpec(g.lo if lo is None else lo, g.hi if hi is None else hi,
                   g.points if points is None else points, spacing)
    if not (0 < g.lo < g.hi < 1) or g.points < 2:
        _die(f"invalid grid: need 0 < lo < hi < 1 and points >= 2 (got {g.lo}, {g.hi}, {g.points})")
    return g


@main.command("verify")
@click.argument("suite")
@click.option("--points", type=int, default=None)
@click.option("--lo", type=float, default=None)
@click.option("--hi", type=float, default=None)
@precision_opt
@c_opt
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@out_opt
def cmd_verify(suite, points, lo, hi, precision, c_text, fmt, out):
    """Run a registered suite (or "all") and print the JSON report array."""
    if suite != "all" and suite not in V.SUITES:
        _die(f"unknown suite {suite!r}; expected one of {', '.join(V.SUITES)} or all")
    grid = _grid(points, lo, hi, "log-endpoint-refined")
    opts = {"precision": precision}
    if c_text is not None:
        opts["c"] = _constant(c_text)
    reports = V.run_suite(suite, grid, **opts)
    _emit(json.dumps([r.to_dict() for r in reports], indent=2) + "\n", out)
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        sys.exit(EXIT_FAIL)
    if "indeterminate" in statuses:
        sys.exit(EXIT_INDETERMINATE)
    sys.exit(EXIT_PASS)


@main.command("sweep")
@click.argument("function", type=click.Choice(FUNCTIONS))
@click.option("--points", type=int, default=1000, show_default=True)
@click.option("--lo", type=float, default=None)
@click.option("--hi", type=float, default=None)
@precision_opt
@c_opt
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@out_opt
def cmd_sweep(function, points, lo, hi, precision, c_text, fmt, out):
    """FUNCTION on a uniform grid, as CSV ``x,value`` rows."""
    if function == "mu_inv":
        # mu maps (0, 1) onto (0, inf), so its inverse is swept over y
        lo_, hi_ = (0.1 if lo is None else lo), (5.0 if hi is None else hi)
        ok = 0 < lo_ < hi_ and points >= 2
    else:
        lo_, hi_ = (1e-6 if lo is None else lo), (1 - 1e-6 if hi is None else hi)
        ok = 0 < lo_ < hi_ < 1 and points >= 2
    if not ok:
        _die(f"invalid grid: lo={lo_}, hi={hi_}, points={points}")
    g = V.GridSpec(lo_, hi_, points, "uniform")
    xs = g.values()
    ctx = _ctx(precision)
    fn = _scalar_functions(_constant(c_text))[function]
    try:
        vals = V._chunked_map(lambda x: fn(x, ctx), xs)
    except (DomainError, ValueError, OverflowError, ConvergenceError) as exc:
        _die(str(exc).splitlines()[0])
    # repr gives the shortest round-tripping decimal for floats
    cells = [(repr(x), repr(float(v)) if ctx.is_double else _fmt(v, ctx)) for x, v in zip(xs, vals)]
    if fmt == "json":
        text = json.dumps([{"x": float(x), "value": float(v)} for x, v in zip(xs, vals)]) + "\n"
    else:
        text = "x,value\n" + "".join(f"{a},{b}\n" for a, b in cells)
    _emit(text, out)


if __name__ == "__main__":  # pragma: no cover
    main()
