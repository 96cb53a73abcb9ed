"""Command-line front end.

Every run prints one JSON document on stdout::

    {"command": [...argv...], "status": "certified" | "report-only" | "error",
     "payload": {...}}

A short summary and the wall time go to stderr, so identical argv gives
byte-identical stdout.  Exit codes: 0 success, 1 precondition or usage
error, 2 precision or enumeration limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import approx, pell, siegel, witness, zeta
from .errors import CertificationFailed, ComputationLimit, PreconditionError
from .exactnum import (
    DEFAULT_ENUM_CAP,
    DEFAULT_MAX_BITS,
    DyadicInterval,
    EulerE,
    Rational,
    RealOracle,
    Sqrt,
    Zeta2,
    Zeta3,
    format_rational,
    lcm_upto,
    parse_rational,
)

log = logging.getLogger("dirichlet")

MAX_BITS_ENV = "DIRICHLET_MAX_BITS"
ENUM_CAP_ENV = "DIRICHLET_ENUM_CAP"


class UsageError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route it to exit code 1 instead
    def error(self, message):
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None
    if value < 1:
        raise UsageError(f"{name} must be positive")
    return value


# ---------------------------------------------------------------------------
# argument grammar


def parse_real(text: str) -> RealOracle:
    """``rat:p/q``, ``sqrt:c``, ``e``, ``zeta2``, ``zeta3`` or ``cantor:<preset>``."""
    text = text.strip()
    kind, _, arg = text.partition(":")
    if kind == "rat" and arg:
        return Rational(parse_rational(arg))
    if kind == "sqrt" and arg:
        try:
            c = int(arg)
        except ValueError:
            raise UsageError(f"sqrt needs an integer radicand, got {arg!r}") from None
        return Sqrt(c)
    if kind == "cantor" and arg:
        return witness.cantor_preset(arg)
    if not arg:
        simple = {"e": EulerE, "zeta2": Zeta2, "zeta3": Zeta3}
        if kind in simple:
            return simple[kind]()
    raise UsageError(f"unrecognised real {text!r} (rat:p/q, sqrt:c, e, zeta2, zeta3, cantor:<preset>)")


def parse_reals(text: str) -> list[RealOracle]:
    return [parse_real(t) for t in text.split(",") if t.strip()]


def _matrix_text(source: str) -> str:
    path = Path(source)
    if path.is_file():
        return path.read_text()
    return source


def parse_matrix(source: str, cell=parse_real) -> list[list]:
    """Rows separated by ``;`` or newlines, entries by ``,``; ``source`` may name a file."""
    text = _matrix_text(source).replace("\n", ";")
    rows = [[cell(c) for c in row.split(",") if c.strip()] for row in text.split(";") if row.strip()]
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise UsageError(f"matrix {source!r} is empty or ragged")
    return rows


def _int_cell(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise UsageError(f"matrix entry {text!r} is not an integer") from None


# ---------------------------------------------------------------------------
# serialisation


def _jsonable(obj):
    if isinstance(obj, DyadicInterval):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        # JSON readers often lose precision beyond 2^53
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _require(cond: bool, what: str):
    if not cond:
        raise CertificationFailed(f"re-validation failed: {what}")


# ---------------------------------------------------------------------------
# subcommands; each returns (status, payload, summary)


def cmd_approx(args, cfg):
    alpha = parse_real(args.real)
    r = approx.dirichlet_approx(alpha, args.N, max_bits=cfg["max_bits"])
    err = r.certified_error
    _require(1 <= r.n <= args.N and err.hi < Fraction(1, args.N), "|n alpha - p| < 1/N")
    payload = {"real": alpha.descriptor(), "N": args.N, "n": r.n, "p": r.p,
               "error_enclosure": err, "method": r.method}
    return "certified", payload, f"{r.n}*alpha ~ {r.p}, error <= {float(err.hi):.3g}"


def _multi_payload(r, N):
    for e in r.certified_errors:
        _require(e.hi < Fraction(1, N), "every form within 1/N of an integer")
    _require(any(r.n) and max(abs(v) for v in r.n) <= r.P, "0 < max|n| <= P")
    return {"N": N, "P": r.P, "n": r.n, "p": r.p, "error_enclosures": r.certified_errors, "method": r.method}


def cmd_simul(args, cfg):
    reals = parse_reals(args.reals)
    r = approx.simultaneous_approx(reals, args.N, max_bits=cfg["max_bits"], cap=cfg["cap"])
    payload = _multi_payload(r, args.N)
    payload["reals"] = [a.descriptor() for a in reals]
    return "certified", payload, f"common denominator n = {r.n[0]}"


def cmd_linform(args, cfg):
    reals = parse_reals(args.reals)
    r = approx.linear_form_approx(reals, args.N, max_bits=cfg["max_bits"], cap=cfg["cap"])
    payload = _multi_payload(r, args.N)
    payload["reals"] = [a.descriptor() for a in reals]
    return "certified", payload, f"n = {r.n}, p = {r.p[0]}"


def cmd_multidim(args, cfg):
    coeffs = parse_matrix(args.matrix)
    r = approx.multidim_approx(coeffs, args.N, max_bits=cfg["max_bits"], cap=cfg["cap"])
    payload = _multi_payload(r, args.N)
    payload["matrix"] = [[a.descriptor() for a in row] for row in coeffs]
    return "certified", payload, f"n = {r.n}, p = {r.p}"


def cmd_smallforms(args, cfg):
    coeffs = parse_matrix(args.matrix)
    r = approx.small_linear_forms(coeffs, args.N, max_bits=cfg["max_bits"], cap=cfg["cap"])
    _require(any(r.x) and max(abs(v) for v in r.x) <= r.P, "0 < max|x| <= P")
    _require(all(v.hi <= r.bound.lo for v in r.certified_values), "every |form| <= bound")
    payload = {"matrix": [[a.descriptor() for a in row] for row in coeffs], "N": args.N, "P": r.P,
               "x": r.x, "value_enclosures": r.certified_values, "bound_enclosure": r.bound}
    return "certified", payload, f"x = {r.x}"


def cmd_stream(args, cfg):
    alpha = parse_real(args.real)
    fracs = approx.good_approx_stream(alpha, args.count, max_bits=cfg["max_bits"])
    qs = [f.denominator for f in fracs]
    _require(all(a < b for a, b in zip(qs, qs[1:])), "denominators strictly increase")
    payload = {"real": alpha.descriptor(), "count": args.count, "approximations": fracs}
    return "certified", payload, ", ".join(format_rational(f) for f in fracs)


def cmd_pell(args, cfg):
    c = args.c
    if c < 2 or pell._is_square(c):
        t = pell.solve_pell_trivial(c)
        for x, y in t.points:
            _require(x * x - c * y * y == 1, "trivial solutions solve the equation")
        payload = {"c": c, "trivial": True, "solutions": t.points, "parametric": t.parametric}
        if c >= 0:
            # a square c (or 0) has only the trivial solutions; report and flag it
            raise pell.SquareInput(f"c = {c} is a square; only trivial solutions {t.points}")
        return "report-only", payload, f"c = {c}: finitely many solutions"
    trace = pell.pell_construction(c)
    sol = trace.fundamental
    _require(sol.x * sol.x - c * sol.y * sol.y == 1 and sol.y > 0, "x^2 - c y^2 = 1")
    eps = trace.epsilon
    payload = {"c": c, "x": sol.x, "y": sol.y, "epsilon": {"xi": eps.xi, "eta": eps.eta},
               "convergents_scanned": len(trace.scanned)}
    return "certified", payload, f"({sol.x}, {sol.y})"


def cmd_pell_powers(args, cfg):
    sol = pell.solve_pell(args.c)
    powers = pell.pell_powers(sol, args.k)
    for s in powers:
        _require(s.x * s.x - s.c * s.y * s.y == 1, "every power solves the equation")
    payload = {"c": args.c, "k": args.k, "solutions": [[s.x, s.y] for s in powers]}
    return "certified", payload, f"{len(powers)} solutions"


def cmd_lineq(args, cfg):
    x, y = pell.solve_unit_linear(args.a, args.b)
    _require(args.a * x - args.b * y == 1, "a x - b y = 1")
    return "certified", {"a": args.a, "b": args.b, "x": x, "y": y}, f"x = {x}, y = {y}"


def cmd_witness(args, cfg):
    alpha = parse_real(args.real)
    eps = parse_rational(args.eps)
    w = witness.find_witness(alpha, eps, max_bits=cfg["max_bits"])
    _require(w.certified_value.lo > 0 and w.certified_value.hi < eps, "0 < |alpha x - y| < eps")
    payload = {"real": alpha.descriptor(), "epsilon": eps, "x": w.x, "y": w.y,
               "value_enclosure": w.certified_value}
    return "certified", payload, f"x = {w.x}, y = {w.y}"


def cmd_cantor(args, cfg):
    series = witness.cantor_preset(args.g)
    r = witness.cantor_partials(series, args.N, max_bits=cfg["max_bits"])
    _require(r.holds, "0 < |alpha G - P| <= bound")
    payload = {"series": series.descriptor(), "N": args.N, "P": r.P, "G": r.G, "bound": r.bound,
               "value_enclosure": r.certified_value, "g_unbounded": series.unbounded}
    return "certified", payload, f"P = {r.P}, G = {r.G}"


def _zeta_witness(fn, s):
    def run(args, cfg):
        w = fn(args.n)
        _require(w.a == w.V**s * w.alpha_coeff and w.b == w.V**s * w.beta, "integrality of a_n, b_n")
        payload = {"n": w.n, "s": s, "alpha_coeff": w.alpha_coeff, "beta": w.beta, "V": w.V,
                   "a": w.a, "b": w.b, "value_enclosure": w.enclosure(64)}
        return "certified", payload, f"a = {w.a}, b = {w.b}"
    return run


def _zeta_bound(fn):
    def run(args, cfg):
        r = fn(args.n, max_bits=cfg["max_bits"])
        _require(r.positive and r.holds and r.lhs.hi <= r.rhs.hi, "0 < lhs <= rhs")
        payload = {"n": r.n, "s": r.s, "lhs_enclosure": r.lhs, "rhs_enclosure": r.rhs, "holds": r.holds}
        if r.majorant is not None:
            payload["majorant_enclosure"] = r.majorant
            payload["majorant_strict"] = r.majorant_strict
        return "certified", payload, f"lhs <= {float(r.lhs.hi):.3g} <= {float(r.rhs.hi):.3g}"
    return run


def cmd_kernel_max(args, cfg):
    r = zeta.kernel_max_estimate(args.which, args.grid, max_bits=cfg["max_bits"])
    payload = {"which": r.which, "grid": r.grid, "argmax": r.argmax, "estimate": r.estimate,
               "grid_max": r.grid_max, "bound_enclosure": r.bound, "holds": r.holds}
    return "report-only", payload, f"max ~ {float(r.estimate):.6g} vs bound {float(r.bound.lo):.6g}"


def cmd_siegel(args, cfg):
    system = siegel.IntLinearSystem.from_rows(parse_matrix(args.matrix, _int_cell))
    r = siegel.siegel_solve(system, cap=cfg["cap"])
    _require(any(r.x) and system.in_kernel(r.x), "nonzero kernel vector")
    _require(r.within_bound(), "max|x|^L <= N^M")
    payload = {"matrix": system.entries, "x": r.x, "N": r.N, "M": r.M, "L": r.L,
               "bound_enclosure": r.bound(), "method": r.method}
    return "certified", payload, f"x = {r.x}"


def cmd_lcm_upto(args, cfg):
    if args.n < 1:
        raise PreconditionError("n must be >= 1")
    v = lcm_upto(args.n)
    return "certified", {"n": args.n, "V": v, "le_3_pow_n": v <= 3**args.n}, f"V({args.n}) = {v}"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirichlet", description="Certified Diophantine approximation toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("approx", cmd_approx, "n <= N with |n alpha - p| < 1/N")
    sp.add_argument("real")
    sp.add_argument("--N", type=int, required=True)
    for name, fn, h in (("simul", cmd_simul, "common denominator for several reals"),
                        ("linform", cmd_linform, "small integer form close to an integer")):
        sp = add(name, fn, h)
        sp.add_argument("reals", help="comma separated reals")
        sp.add_argument("--N", type=int, required=True)
    for name, fn, h in (("multidim", cmd_multidim, "M forms in L unknowns near integers"),
                        ("smallforms", cmd_smallforms, "small values of M < L linear forms")):
        sp = add(name, fn, h)
        sp.add_argument("--matrix", required=True, help="inline 'a,b;c,d' or a file")
        sp.add_argument("--N", type=int, required=True)
    sp = add("stream", cmd_stream, "good approximations |alpha - p/q| < 1/q^2")
    sp.add_argument("real")
    sp.add_argument("--count", type=int, required=True)
    sp = add("pell", cmd_pell, "minimal solution of x^2 - c y^2 = 1")
    sp.add_argument("c", type=int)
    sp = add("pell-powers", cmd_pell_powers, "first k solutions from the fundamental one")
    sp.add_argument("c", type=int)
    sp.add_argument("--k", type=int, required=True)
    sp = add("lineq", cmd_lineq, "solve a x - b y = 1")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp = add("witness", cmd_witness, "x, y with 0 < |alpha x - y| < eps")
    sp.add_argument("real")
    sp.add_argument("--eps", required=True)
    sp = add("cantor", cmd_cantor, "partial sums of a Cantor series")
    sp.add_argument("--g", required=True, help="factorial, constant:k or geometric:k")
    sp.add_argument("--N", type=int, required=True)
    for name, fn in (("zeta2", _zeta_witness(zeta.zeta2_witness, 2)),
                     ("zeta3", _zeta_witness(zeta.zeta3_witness, 3)),
                     ("zeta2-bound", _zeta_bound(zeta.check_zeta2_bound)),
                     ("zeta3-bound", _zeta_bound(zeta.check_zeta3_bound))):
        sp = add(name, fn, f"{name} sequence at index n")
        sp.add_argument("--n", type=int, required=True)
    sp = add("kernel-max", cmd_kernel_max, "grid maximum of a Beukers kernel")
    sp.add_argument("--which", choices=["zeta2-kernel", "zeta3-kernel"], required=True)
    sp.add_argument("--grid", type=int, default=128)
    sp = add("siegel", cmd_siegel, "small nonzero integer x with A x = 0")
    sp.add_argument("--matrix", required=True)
    sp = add("lcm-upto", cmd_lcm_upto, "lcm(1..n)")
    sp.add_argument("n", type=int)
    return p


def _emit(argv, status, payload):
    doc = {"command": list(argv), "status": status, "payload": _jsonable(payload)}
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
        cfg = {"max_bits": _env_int(MAX_BITS_ENV, DEFAULT_MAX_BITS), "cap": _env_int(ENUM_CAP_ENV, DEFAULT_ENUM_CAP)}
        status, payload, summary = args.func(args, cfg)
    except PreconditionError as exc:
        _emit(argv, "error", {"kind": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ComputationLimit as exc:
        _emit(argv, "error", {"kind": type(exc).__name__, "message": str(exc)})
        print(f"limit: {exc}", file=sys.stderr)
        return 2
    _emit(argv, status, payload)
    print(f"{status}: {summary} ({time.perf_counter() - t0:.3f} s)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
