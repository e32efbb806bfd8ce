"""carlitz-tate: compute constants, run verification suites, time kernels.

Exit codes: 0 verified, 1 a check failed, 2 usage error, 3 term budget exceeded.
Every flag can also come from a ``CARLITZ_TATE_<FLAG>`` environment variable;
flags on the command line win.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .carlitz import exp_carlitz, exp_terms_needed, factorial_d, torsion_point
from .config import RunConfig, env_overrides
from .errors import BudgetExceeded, DomainError, PrecisionError
from .field_tower import context_for_q, get_context
from .laurent import to_lattice
from .mu_poly import DigitPolynomial, FieldRing, digits, phi_monomial, reduce_mod_P
from .ratfunc import RationalFunction
from .special_values import omega, pi_bar, zeta, zeta_degree_bound, zeta_term_count
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMPUTE = ("pi", "omega", "zeta", "dn", "torsion", "digit-demo")
VERIFY = tuple(SUITES) + ("all",)
BENCH = ("mul", "exp", "zeta")


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("configuration")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--e", type=int, help="q = p^e")
    g.add_argument("--q", type=int, help="field size (alternative to --p/--e)")
    g.add_argument("--prec", help="precision N (fraction), or a range a..b for bench")
    g.add_argument("--s", type=int, help="number of t-variables")
    g.add_argument("--n", type=int, help="zeta argument or factorial index")
    g.add_argument("--budget", type=int, help="maximum number of zeta summands")
    g.add_argument("--format", dest="fmt", choices=("text", "json"), help="output format")
    g.add_argument("--seed", type=int, help="seed for sampled checks")
    g.add_argument("--range", type=int, help="index bound for the digit-ring brute force")
    g.add_argument("--degree", type=int, help="degree cap for products over polynomials")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carlitz-tate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="print a constant to the requested precision")
    c.add_argument("name", choices=COMPUTE)
    c.add_argument("--eval", help="comma-separated k_i for t_i = θ^(q^k_i) (zeta)")
    c.add_argument("--a", default="θ", help="modulus for torsion (polynomial in θ, t)")
    c.add_argument("--j", type=int, default=0, help="torsion index")
    _common(c)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=VERIFY)
    _common(v)
    b = sub.add_parser("bench", help="time a kernel over a precision sweep")
    b.add_argument("kernel", choices=BENCH)
    _common(b)
    return parser


def _parse_sweep(text: str | None, default: list[Fraction]) -> list[Fraction]:
    if text is None:
        return default
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
        if a > b:
            raise UsageError(f"empty precision range {text}")
        return [Fraction(k) for k in range(a, b + 1)]
    return [Fraction(text)]


def make_config(args: argparse.Namespace, environ=None) -> RunConfig:
    settings = env_overrides(environ)
    for name in ("p", "e", "q", "s", "n", "budget", "fmt", "seed", "range", "degree"):
        val = getattr(args, name, None)
        if val is not None:
            settings[name] = val
    if getattr(args, "prec", None) is not None and args.command != "bench":
        settings["N"] = Fraction(args.prec)
    q = settings.pop("q", None)
    if q is not None:
        if "p" in settings or "e" in settings:
            ctx = get_context(settings.get("p", 3), settings.get("e", 1))
            if ctx.q != q:
                raise UsageError(f"--q {q} contradicts --p/--e")
        ctx = context_for_q(q)
        settings["p"], settings["e"] = ctx.p, ctx.e
    if args.command == "verify" and args.suite == "theorem5" and "N" not in settings:
        settings["N"] = Fraction(12)
    try:
        cfg = RunConfig(**settings)
        cfg.ctx  # validates p, e
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    return cfg


# -- compute -------------------------------------------------------------------------

def _compute(args, cfg: RunConfig):
    ctx, N = cfg.ctx, cfg.N
    name = args.name
    if name == "pi":
        return pi_bar(ctx, N)
    if name == "omega":
        return omega(ctx, N)
    if name == "zeta":
        s = cfg.s or 0
        ks = None
        if args.eval:
            ks = tuple(int(k) for k in args.eval.split(","))
            if len(ks) != s:
                raise UsageError("--eval needs one index per t-variable")
        return zeta(ctx, cfg.n, s, N, evaluation=ks, budget=cfg.budget)
    if name == "dn":
        return factorial_d(ctx, cfg.n)
    if name == "torsion":
        a = RationalFunction.parse(ctx, args.a, cfg.s or 1)
        return torsion_point(a, args.j, N, cfg.s or 1)
    return _digit_demo(cfg)


def _digit_demo(cfg: RunConfig) -> dict:
    ctx, p = cfg.ctx, cfg.p
    bound = cfg.range if cfg.range is not None else p ** 2
    ring = FieldRing(ctx)
    sq = DigitPolynomial.monomial(ring, 2)
    rows = [{"i": i, "digits": list(digits(i, p)), "phi": str(phi_monomial(ctx, i))} for i in range(bound)]
    return {
        "p": p,
        "product": {"lhs": f"{sq} * {sq}", "rhs": str(sq * sq)},
        "reduction": {"X^(p+1)": str(reduce_mod_P(phi_monomial(ctx, 1) ** (p + 1)))},
        "phi": rows,
    }


def _value_json(value):
    return value.to_json() if hasattr(value, "to_json") else value


def _value_text(value) -> str:
    if isinstance(value, dict):
        lines = [f"<Y>^2 product: {value['product']['lhs']} = {value['product']['rhs']}",
                 f"X^(p+1) mod P = {value['reduction']['X^(p+1)']}"]
        lines += [f"φ(Z^{r['i']}) = {r['phi']}" for r in value["phi"]]
        return "\n".join(lines)
    return str(value)


def _header_text(cfg: RunConfig, with_precision: bool = True) -> str:
    h = cfg.header()
    prec = f" N={h['precision']}" if with_precision else ""
    return f"# q={h['q']} (p={h['p']}, e={h['e']}){prec} lattice 1/{h['lattice_den']}"


def cmd_compute(args, cfg: RunConfig, out) -> int:
    value = _compute(args, cfg)
    if cfg.fmt == "json":
        json.dump({"config": cfg.header(), "name": args.name, "value": _value_json(value)}, out,
                  ensure_ascii=False, indent=2)
        out.write("\n")
    else:
        out.write(_header_text(cfg) + "\n" + _value_text(value) + "\n")
    return EXIT_OK


# -- verify --------------------------------------------------------------------------

def cmd_verify(args, cfg: RunConfig, out) -> int:
    rep = run_suite(args.suite, cfg)
    if cfg.fmt == "json":
        json.dump({"config": cfg.header(), "suite": args.suite, "report": rep.to_json()}, out,
                  ensure_ascii=False, indent=2)
        out.write("\n")
    else:
        out.write(_header_text(cfg) + "\n" + "\n".join(rep.lines()) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAILED


# -- bench ---------------------------------------------------------------------------

def _timed(fn, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cmd_bench(args, cfg: RunConfig, out) -> int:
    ctx = cfg.ctx
    rows = []
    if args.kernel == "mul":
        for N in _parse_sweep(args.prec, [Fraction(64, ctx.D)]):
            a = pi_bar(ctx, N)
            b = a.invert()
            sec, _ = _timed(lambda: a * b)
            rows.append({"precision": str(N), "lattice_steps": to_lattice(ctx, N), "seconds": sec})
    elif args.kernel == "exp":
        for N in _parse_sweep(args.prec, [Fraction(32)]):
            z = zeta(ctx, 1, 0, N, budget=cfg.budget)
            imax = exp_terms_needed(ctx, z.raw[0], to_lattice(ctx, N))
            sec, _ = _timed(lambda: exp_carlitz(z, N))
            rows.append({"precision": str(N), "i_max": imax, "seconds": sec})
    else:
        s = cfg.s or 0
        for N in _parse_sweep(args.prec, [Fraction(k) for k in range(8, 21, 4)]):
            dmax = zeta_degree_bound(ctx.q, cfg.n, N, s)
            terms = zeta_term_count(ctx.q, dmax)
            if terms > cfg.budget:
                raise BudgetExceeded(terms, cfg.budget)
            sec, _ = _timed(lambda: zeta(ctx, cfg.n, s, N, budget=cfg.budget), repeat=1)
            rows.append({"precision": str(N), "d_max": dmax, "terms": terms, "seconds": sec})
    backend = ctx.kernel.backend
    if cfg.fmt == "json":
        json.dump({"config": cfg.header(), "kernel": args.kernel, "backend": backend, "rows": rows}, out, indent=2)
        out.write("\n")
    else:
        out.write(_header_text(cfg, False) + f" backend={backend}\n")
        keys = list(rows[0]) if rows else []
        out.write("  ".join(f"{k:>14}" for k in keys) + "\n")
        for r in rows:
            out.write("  ".join(f"{r[k]:>14.6f}" if isinstance(r[k], float) else f"{r[k]!s:>14}" for k in keys) + "\n")
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None, out=None, environ=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = make_config(args, environ)
        return COMMANDS[args.command](args, cfg, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DomainError, PrecisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
