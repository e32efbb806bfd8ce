"""Solving τ^(-1)(X) = X + g in one t-variable, and the iterated polylogarithm system.

Equations are always handled in the τ-applied form τ(X) = X - τ(g), which has the
same solutions and stays on the exponent lattice.

The particular solution is x = ω^(-1) exp_C(v/(θ-t)) with v = log_C(-τ(g)(t-θ)ω),
available when -τ(g)(t-θ)ω lies in the logarithm's disk, i.e. v(τ(g)) > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .carlitz import carlitz_action, exp_carlitz, log_carlitz
from .errors import DomainError, PrecisionError
from .laurent import LaurentSeries, format_exponent
from .ratfunc import RationalFunction
from .reports import FAILED, VERIFIED, Report, combine, compare, is_zero_check, require_precision
from .special_values import capital_omega, omega, omega_inverse
from .tate import TateElement, expand_inverse_monic

__all__ = ["SolveReport", "solve_tau_inverse", "solve_tau_applied", "uniqueness_check",
           "PolylogReport", "solve_polylog_system"]

OUT_OF_RANGE = "use a different particular solution; out of constructive range"


@dataclass
class SolveReport:
    x: TateElement
    precision: Fraction
    status: str
    v: TateElement | None = None
    working_precision: Fraction | None = None
    checks: list[Report] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def report(self, name: str = "solve") -> Report:
        rep = combine(name, self.checks) if self.checks else Report(name, self.status, self.precision)
        rep.values["x"] = self.x
        return rep

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "precision": format_exponent(self.precision),
            "working_precision": None if self.working_precision is None else format_exponent(self.working_precision),
            "solution": self.x.to_json(),
            "v": None if self.v is None else self.v.to_json(),
            "checks": {c.name: c.ok for c in self.checks},
        }


def _as_tate(ctx_or_g, N) -> TateElement:
    g = ctx_or_g
    if isinstance(g, RationalFunction):
        return g.to_tate(None if g.is_polynomial() else N, 1)
    if isinstance(g, LaurentSeries):
        return TateElement.from_laurent(g, 1)
    if isinstance(g, TateElement):
        if g.s != 1:
            raise ValueError("the solver works in one t-variable")
        return g
    raise TypeError(f"unsupported forcing term {type(g).__name__}")


def _theta_minus_t(ctx) -> TateElement:
    return RationalFunction.parse(ctx, "θ - t", 1).to_tate(None, 1)


def _attempt(tg: TateElement, W: Fraction):
    """One pass at working precision W; returns (x, v, E, ω)."""
    ctx = tg.ctx
    q, D = ctx.q, ctx.D
    tmt = _theta_minus_t(ctx)
    w = omega(ctx, W + 1)
    arg = (-tg) * (-tmt) * w
    if arg._v() is not None and arg._v() <= -q:
        raise DomainError(OUT_OF_RANGE)
    arg = arg.truncate(W)
    v = log_carlitz(arg, min(W, arg.precision))
    vv = Fraction(v._v(), D)
    z = v * expand_inverse_monic(tmt, v.precision + 1 - vv)
    E = exp_carlitz(z)
    vE = Fraction(E._v(), D)
    x = omega_inverse(ctx, E.precision + Fraction(1, D) - vE) * E
    return x, v, E, w


def solve_tau_applied(tg, N, extra: int = 4, retries: int = 4, steps: bool = False) -> SolveReport:
    """Solve τ(X) = X - tg with tg = τ(g) given directly."""
    Nf = Fraction(N)
    tg = _as_tate(tg, Nf + extra)
    ctx = tg.ctx
    if tg.is_zero():
        zero = TateElement.zero(ctx, 1)
        chk = Report("τ(x) = x - τ(g)", VERIFIED, Nf, detail="homogeneous case; solutions are F_q(t)")
        return SolveReport(zero, Nf, VERIFIED, zero, Nf, [chk])
    if tg._v() is not None and tg._v() <= 0 and not tg.is_zero():
        raise DomainError(OUT_OF_RANGE)
    W = Nf + extra
    for _ in range(retries + 1):
        try:
            x, v, E, w = _attempt(tg, W)
        except PrecisionError:
            x = None
        if x is not None and x.precision >= Nf:
            break
        W += 2 * extra
    else:
        raise PrecisionError(f"could not reach precision {N} for the solution")
    x = x.truncate(Nf)
    residual = x.tau() - x + tg
    main = require_precision(is_zero_check("τ(x) = x - τ(g)", residual, Nf), Nf)
    checks = [main]
    if steps:
        checks.extend(_step_checks(tg, x, v, E, w, Nf))
    status = combine("solve", checks).status
    return SolveReport(x, x.precision, status, v, W, checks)


def solve_tau_inverse(g, N, extra: int = 4, retries: int = 4, steps: bool = False) -> SolveReport:
    """A particular solution of τ^(-1)(X) = X + g, verified as τ(x) = x - τ(g) mod θ^(-N)."""
    Nf = Fraction(N)
    g = _as_tate(g, Nf + extra)
    return solve_tau_applied(g.tau(), Nf, extra, retries, steps)


def _step_checks(tg, x, v, E, w, N) -> list[Report]:
    """The identity chain behind the construction, one check per line."""
    ctx = x.ctx
    tmt = _theta_minus_t(ctx)
    tau_x = x.tau()
    tau_E = E.tau()
    tau_w = w.tau()
    expv = exp_carlitz(v)
    C_E = carlitz_action(RationalFunction.parse(ctx, "θ - t", 1), E)
    tw_inv = tau_w.invert(N + 4)
    lines = [
        compare("τ(f_v) = τ(E) τ(ω)^-1", tau_x, tau_E * tw_inv, N),
        compare("τ(E) = C_(θ-t)(E) - (θ-t)E", tau_E, C_E - tmt * E, N),
        compare("C_(θ-t)(E) = exp_C(v)", C_E, expv, N),
        compare("τ(ω) = (t-θ)ω", tau_w, (-tmt) * w, N),
        compare("τ(f_v) = f_v + exp_C(v)/((t-θ)ω)", tau_x, x + expv * tw_inv, N),
        compare("exp_C(v) = -τ(g)(t-θ)ω", expv, (-tg) * (-tmt) * w, N),
        compare("τ(f_v) = f_v - τ(g)", tau_x, x - tg, N),
    ]
    return [require_precision(r, N) for r in lines]


def uniqueness_check(g, N, extra: tuple[int, int] = (4, 8)) -> Report:
    """Two runs at different working precisions differ by a τ-fixed element."""
    a = solve_tau_inverse(g, N, extra=extra[0])
    b = solve_tau_inverse(g, N, extra=extra[1])
    diff = a.x - b.x
    fixed = is_zero_check("difference is τ-fixed", diff.tau() - diff, N)
    ctx = diff.ctx
    const = all(k == 0 and ctx.in_fq(c) for coeff in diff.terms.values() for k, c in coeff.terms().items())
    in_fqt = Report("difference in F_q[t] at this precision", VERIFIED if const else FAILED, diff.precision)
    return combine("uniqueness", [fixed, in_fqt])


# -- polylogarithm system ----------------------------------------------------------------

@dataclass
class PolylogReport:
    x: dict
    y: dict
    precision: Fraction | None
    status: str
    checks: list[Report] = field(default_factory=list)
    failed_at: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def report(self, name: str = "polylog") -> Report:
        rep = combine(name, self.checks)
        if self.failed_at is not None:
            rep.status = FAILED
            rep.detail = f"out of constructive range at entry {self.failed_at}"
        for (i, j), val in self.x.items():
            rep.values[f"x[{i},{j}]"] = val
        return rep

    def matrix(self, d: int) -> list[list]:
        return [[self.x.get((i, j)) for j in range(d + 1)] for i in range(d + 1)]


def solve_polylog_system(s_list, Q_list, N, extra: int = 4) -> PolylogReport:
    """Lower-triangular system in y_(i,j) (0 <= j <= i <= d), y_(j,j) = 1, solved bottom-up.

    τ-applied: τ(y_(i,j)) = y_(i,j) - Q_i Ω^(s_i) τ(y_(i-1,j)); then
    x_(i,j) = y_(i,j) Ω^(S_(i+1)) with S_i = s_i + ... + s_d.
    """
    d = len(s_list)
    if d < 1 or len(Q_list) != d or any(s < 1 for s in s_list):
        raise ValueError("need d >= 1 positive weights and d coefficients")
    Q_list = list(Q_list)
    ctx = Q_list[0].ctx
    Nf = Fraction(N)
    W = Nf + extra
    S = [0] * (d + 2)
    for i in range(d, 0, -1):
        S[i] = S[i + 1] + s_list[i - 1]
    Om = capital_omega(ctx, W + S[1] + 2)
    Q = [None] + [q.to_tate(None if q.is_polynomial() else W, 1) for q in Q_list]
    one = TateElement.one(ctx, 1)
    y: dict = {}
    failed = None
    checks: list[Report] = []
    for j in range(d + 1):
        y[(j, j)] = one
        for i in range(j + 1, d + 1):
            tg = Q[i] * Om ** s_list[i - 1] * y[(i - 1, j)].tau()
            try:
                sol = solve_tau_applied(tg.truncate(W), W, extra)
            except DomainError:
                failed = (i, j)
                break
            y[(i, j)] = sol.x
            checks.append(Report(f"y[{i},{j}] solves its equation", sol.status, sol.precision))
        if failed:
            break
    x = {}
    for (i, j), val in y.items():
        x[(i, j)] = (val * Om ** S[i + 1]).truncate(Nf) if S[i + 1] else val.truncate(Nf)
    if failed:
        return PolylogReport(x, y, None, FAILED, checks, failed)
    tq = RationalFunction.parse(ctx, f"t - θ^{ctx.q}", 1).to_tate(None, 1)
    for (i, j), val in sorted(x.items()):
        rhs = tq ** S[i + 1] * val.tau()
        if i > j:
            rhs = rhs + Q[i] * tq ** S[i] * x[(i - 1, j)].tau()
        checks.append(require_precision(compare(f"x[{i},{j}] relation", val, rhs, Nf), Nf))
    rep = combine("polylog", checks)
    return PolylogReport(x, y, rep.precision, rep.status, checks)
