"""Named verification suites.  Each takes a RunConfig and returns a Report.

Reports keep the compared series in ``values`` so a suite can be re-run at a
higher precision and checked coefficient by coefficient.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .carlitz import carlitz_action, exp_carlitz, log_carlitz, torsion_point
from .config import RunConfig
from .field_tower import poly_mul
from .laurent import LaurentSeries
from .mu_poly import (DigitPolynomial, FieldRing, MuPolynomial, _mono, phi_monomial, phi_to_mu,
                      reduce_mod_P)
from .ratfunc import RationalFunction
from .reports import FAILED, VERIFIED, Report, combine, compare, is_zero_check
from .special_values import (capital_omega, euler_carlitz_check, euler_product_check, omega, omega_inverse,
                             pi_bar, residue_formula, residue_via_tau, verify_theorem5, zeta)
from .tate import TateElement, expand_inverse_monic

__all__ = ["SUITES", "run_suite", "random_forcing_terms"]


def _rf(cfg: RunConfig, text: str, s: int = 1) -> RationalFunction:
    return RationalFunction.parse(cfg.ctx, text, s)


def _tate(cfg: RunConfig, text: str, s: int = 1) -> TateElement:
    return _rf(cfg, text, s).to_tate(None, s)


def carlitz_identity(cfg: RunConfig) -> Report:
    ctx, N = cfg.ctx, cfg.N
    z = zeta(ctx, 1, 0, N, budget=cfg.budget)
    one = LaurentSeries.one(ctx)
    return combine("carlitz-identity", [
        compare("exp_C(ζ(1)) = 1", exp_carlitz(z, N), one, N),
        compare("log_C(1) = ζ(1)", log_carlitz(one.truncate(N)), z, N),
    ])


def omega_difference(cfg: RunConfig) -> Report:
    ctx, N = cfg.ctx, cfg.N
    D = ctx.D
    w = omega(ctx, N + 1)
    tmt = _tate(cfg, "θ - t")
    pi = TateElement.from_laurent(pi_bar(ctx, N + 1), 1)
    via_exp = exp_carlitz(pi * expand_inverse_monic(tmt, N + 1 + Fraction(ctx.q, D)), N)
    neg_pi = -pi_bar(ctx, N)
    return combine("omega-difference", [
        compare("τ(ω) = (t-θ)ω", w.tau(), (-tmt) * w, N),
        compare("ω = exp_C(π̃/(θ-t))", w, via_exp, N),
        compare("residue product formula = -π̃", residue_formula(ctx, N), neg_pi, N),
        compare("τ(ω) at t=θ = -π̃", residue_via_tau(ctx, N), neg_pi, N),
        compare("ω^-1 closed form", omega_inverse(ctx, N), w.invert(N), N),
        compare("Ω τ(ω) = 1", capital_omega(ctx, N + Fraction(2 * ctx.q, D)) * w.tau(),
                TateElement.one(ctx, 1), N),
    ])


KERNEL_FACTORS = ("1", "θ", "θ^2+1", "t", "(t+1)*θ")


def kernel(cfg: RunConfig) -> Report:
    ctx, N = cfg.ctx, cfg.N
    checks = []
    for h in KERNEL_FACTORS:
        H = _tate(cfg, h)
        deg = max(0, -Fraction(H._v(), ctx.D))
        arg = TateElement.from_laurent(pi_bar(ctx, N + deg), 1) * H
        checks.append(is_zero_check(f"exp_C(π̃·({h})) = 0", exp_carlitz(arg, N), N))
    return combine("kernel", checks)


TORSION_MODULI = ("θ", "θ^2", "θ - t")


def torsion(cfg: RunConfig) -> Report:
    ctx, N = cfg.ctx, cfg.N
    checks = []
    for a in TORSION_MODULI:
        A = _rf(cfg, a)
        deg = int(-Fraction(A.to_tate(None, 1)._v(), ctx.D))
        for j in range(deg):
            pt = torsion_point(A, j, N + deg, 1)
            nz = Report(f"torsion point ({a}, {j}) non-zero", FAILED if pt.is_zero() else VERIFIED, pt.precision,
                        values={"point": pt})
            checks.append(nz)
            checks.append(is_zero_check(f"C_({a})(torsion({a}, {j})) = 0", carlitz_action(A, pt), N))
    return combine("torsion", checks)


INTERPOLATIONS = ((1, 1, (0,)), (1, 1, (1,)), (1, 2, (0, 1)))


def zeta_interp(cfg: RunConfig) -> Report:
    ctx, N, p, q = cfg.ctx, cfg.N, cfg.p, cfg.q
    checks = []
    for n in (1, 2, 3):
        checks.append(compare(f"ζ({p * n}) = μ(ζ({n}))", zeta(ctx, p * n, 0, p * N, budget=cfg.budget),
                              zeta(ctx, n, 0, N, budget=cfg.budget).mu(1), p * N))
    for n, s, ks in INTERPOLATIONS:
        m = n + sum(q ** k for k in ks)
        lhs = zeta(ctx, m, s, N, evaluation=ks, budget=cfg.budget)
        checks.append(compare(f"ζ({m};{s}) at t=θ^(q^{list(ks)}) = ζ({n})", lhs,
                              zeta(ctx, n, 0, N, budget=cfg.budget), N))
    # the product over degrees <= d reaches θ^(-n(d+1)); pick n so that this covers N
    n_ep = max(1, -(-int(N) // (cfg.degree + 1)))
    checks.append(euler_product_check(ctx, n_ep, cfg.degree))
    checks.append(euler_carlitz_check(ctx, 1, N, budget=cfg.budget))
    return combine("zeta-interp", checks)


def theorem5(cfg: RunConfig) -> Report:
    s_values = range(4) if cfg.s is None else [cfg.s]
    reps = [verify_theorem5(cfg.ctx, s, cfg.N, cfg.budget) for s in s_values]
    # a single s surfaces its recovered polynomial at the top
    return combine("theorem5", reps, witness=reps[0].witness if len(reps) == 1 else None)


def zeta11(cfg: RunConfig) -> Report:
    ctx, N = cfg.ctx, cfg.N
    D = ctx.D
    z = zeta(ctx, 1, 1, N + 1 + Fraction(1, D), budget=cfg.budget)
    lhs = z * _tate(cfg, "θ - t") * omega(ctx, N + 1)
    return combine("zeta11", [compare("ζ(1;1)(θ-t)ω = π̃", lhs, TateElement.from_laurent(pi_bar(ctx, N), 1), N)])


def euler_carlitz(cfg: RunConfig) -> Report:
    # k = 2 has larger numerator and denominator degrees, so it gets twice the coefficients
    return combine("euler-carlitz", [euler_carlitz_check(cfg.ctx, 1, cfg.N, cfg.budget),
                                     euler_carlitz_check(cfg.ctx, 2, 2 * cfg.N, cfg.budget)])


def hoelder(cfg: RunConfig, i_max: int = 3) -> Report:
    ctx, N = cfg.ctx, cfg.N
    q, D = ctx.q, ctx.D
    pi = TateElement.from_laurent(pi_bar(ctx, N), 1)
    w = omega(ctx, N + 1)
    tmt = _tate(cfg, "θ - t")
    checks = []
    prev = TateElement.zero(ctx, 1)
    for i in range(i_max + 1):
        Dw = w.divided_derivative(i)
        f = pi * expand_inverse_monic(tmt ** (i + 1), N + Fraction(q, D))
        checks.append(compare(f"exp_C(π̃/(θ-t)^{i + 1}) = D_{i}(ω)", exp_carlitz(f, N), Dw, N))
        checks.append(compare(f"τ(D_{i}ω) = (t-θ)D_{i}ω + D_{i - 1}ω", Dw.tau(), (-tmt) * Dw + prev, N))
        prev = Dw
    return combine("hoelder", checks)


def random_forcing_terms(cfg: RunConfig, count: int = 5) -> list[RationalFunction]:
    """Seeded polynomials in t with coefficients in θ^(-1) F_q[θ^(-1)]."""
    rng = random.Random(cfg.seed)
    fq = cfg.ctx.fq
    out = []
    while len(out) < count:
        parts = []
        for k in range(1, 4):
            for m in range(3):
                c = rng.randrange(len(fq))
                if c and rng.random() < 0.5:
                    parts.append(f"({cfg.ctx.fmt(fq[c])})*θ^-{k}*t^{m}")
        if parts:
            out.append(_rf(cfg, " + ".join(parts)))
    return out


def solve(cfg: RunConfig) -> Report:
    from .diff_solve import solve_tau_inverse, uniqueness_check

    N = cfg.N
    checks = []
    for idx, g in enumerate(random_forcing_terms(cfg)):
        rep = solve_tau_inverse(g, N).report(f"forcing #{idx}")
        rep.detail = f"g = {g}"
        checks.append(rep)
    g0 = _rf(cfg, "θ^-2")
    checks.append(solve_tau_inverse(g0, N, steps=True).report("identity chain for g = θ^-2"))
    checks.append(uniqueness_check(g0, N))
    checks.append(solve_tau_inverse(RationalFunction.constant(cfg.ctx, 0, 1), N).report("g = 0"))
    return combine("solve", checks)


def polylog(cfg: RunConfig) -> Report:
    from .diff_solve import solve_polylog_system

    one = RationalFunction.constant(cfg.ctx, 1, 1)
    reps = [solve_polylog_system([1], [one], cfg.N).report("d=1"),
            solve_polylog_system([1, 1], [one, one], cfg.N).report("d=2")]
    return combine("polylog", reps)


def digit_ring(cfg: RunConfig) -> Report:
    ctx, p = cfg.ctx, cfg.p
    rng = random.Random(cfg.seed)
    bound = cfg.range if cfg.range is not None else p ** 3
    phis = [phi_monomial(ctx, i) for i in range(2 * bound)]
    bad = [(i, j) for i in range(bound) for j in range(bound)
           if reduce_mod_P(phis[i] * phis[j]) != phis[i + j]]
    checks = [Report(f"φ multiplicative for i, j < {bound}", FAILED if bad else VERIFIED,
                     witness=bad[:5] or None)]

    bad_nf = 0
    one = RationalFunction.constant(ctx, 1)
    for _ in range(1000):
        mono = _mono({(0, j): rng.randrange(3 * p) for j in range(rng.randrange(1, 4))})
        P = MuPolynomial(ctx, 1, {mono: one})
        R = reduce_mod_P(P)
        (rmono,) = R.terms
        weight = sum(e * p ** j for (_, j), e in mono)
        ok = (reduce_mod_P(R) == R and sum(e * p ** j for (_, j), e in rmono) == weight
              and all(e < p for _, e in rmono))
        bad_nf += not ok
    checks.append(Report("reduce_mod_P idempotent, weight-preserving, tame", FAILED if bad_nf else VERIFIED,
                         witness=bad_nf or None))

    ring = FieldRing(ctx)
    bad_iso = 0
    for trial in range(30):
        f = DigitPolynomial.from_rz(ring, [rng.randrange(ctx.Q) for _ in range(rng.randrange(22))])
        g = DigitPolynomial.from_rz(ring, [rng.randrange(ctx.Q) for _ in range(rng.randrange(22))])
        ok = DigitPolynomial.from_rz(ring, f.to_rz()) == f
        ok &= list(poly_mul(ctx, f.to_rz(), g.to_rz())) == (f * g).to_rz()
        ok &= (f + g).to_rz() == DigitPolynomial.from_rz(ring, _rz_add(ctx, f.to_rz(), g.to_rz())).to_rz()
        if trial < 3:
            ok &= reduce_mod_P(phi_to_mu(f) * phi_to_mu(g)) == phi_to_mu(f * g)
        bad_iso += not ok
    checks.append(Report("R<Y> and R[Z] round trip", FAILED if bad_iso else VERIFIED, witness=bad_iso or None))
    return combine("digit-ring", checks)


def _rz_add(ctx, a, b):
    n = max(len(a), len(b))
    return [ctx.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


SUITES: dict[str, Callable[[RunConfig], Report]] = {
    "carlitz-identity": carlitz_identity,
    "omega-difference": omega_difference,
    "kernel": kernel,
    "torsion": torsion,
    "zeta-interp": zeta_interp,
    "theorem5": theorem5,
    "zeta11": zeta11,
    "euler-carlitz": euler_carlitz,
    "hoelder": hoelder,
    "solve": solve,
    "polylog": polylog,
    "digit-ring": digit_ring,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    if name == "all":
        return combine("all", [fn(cfg) for fn in SUITES.values()])
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(cfg)
