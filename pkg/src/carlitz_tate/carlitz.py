"""The Carlitz module: factorials, C_a, exp_C, log_C and torsion points.

Series inputs may be :class:`LaurentSeries` or :class:`TateElement`; results
have the same type.  Precisions are exponents of θ^(-1) (ints, Fractions or
fraction strings), converted internally to lattice indices.

exp_C(f) = Σ d_i^(-1) τ^i(f).  The i-th term has valuation q^i (v(f) + i) and
is known below q^i (N_f + i); the sum stops once the remaining terms all lie
at or beyond the target, and the result precision is the target itself.

log_C(g) = Σ l_i^(-1) τ^i(g) with l_i = Π_{j=1..i} (θ - θ^(q^j)).  The i-th
term has valuation q^i (v(g) + q/(q-1)) - q/(q-1), so the series converges
exactly on v(g) > -q/(q-1).
"""
from __future__ import annotations

from fractions import Fraction

from . import _raw
from .errors import DomainError, PrecisionError
from .field_tower import FieldContext, enumerate_monic
from .laurent import LaurentSeries, from_lattice, to_lattice
from .ratfunc import RationalFunction
from .tate import TateElement, expand_inverse_monic

__all__ = [
    "factorial_d",
    "factorial_d_direct",
    "log_denominator",
    "carlitz_action",
    "exp_carlitz",
    "log_carlitz",
    "exp_terms_needed",
    "torsion_point",
    "weierstrass_partial_product",
]


def factorial_d(ctx: FieldContext, n: int) -> LaurentSeries:
    """d_n, the product of the monic polynomials of degree n, via d_n = (θ^(q^n) - θ) d_(n-1)^q."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return LaurentSeries(ctx, _factorial_raw(ctx, n))


_FACT_CACHE: dict = {}


def _factorial_raw(ctx, n):
    key = (ctx.p, ctx.e, n)
    r = _FACT_CACHE.get(key)
    if r is None:
        if n == 0:
            r = (0, b"\x01")
        else:
            prev = _factorial_raw(ctx, n - 1)
            qn = ctx.q ** n
            coeffs = [0] * (qn + 1)
            coeffs[qn] = 1
            coeffs[1] = ctx.minus_one
            # d_(n-1)^q is the coefficient-wise Frobenius with exponents scaled by q
            r = _raw.mul(ctx, _raw.poly(ctx, coeffs, ctx.D), _raw.mu(ctx, prev, ctx.e))
        _FACT_CACHE[key] = r
    return r


def factorial_d_direct(ctx: FieldContext, n: int) -> LaurentSeries:
    """d_n as a literal product over enumerate_monic (slow oracle)."""
    acc = (0, b"\x01")
    for a in enumerate_monic(ctx, n):
        acc = _raw.mul(ctx, acc, _raw.poly(ctx, list(a), ctx.D))
    return LaurentSeries(ctx, acc)


def log_denominator(ctx: FieldContext, n: int) -> LaurentSeries:
    """l_n = Π_{j=1..n} (θ - θ^(q^j))."""
    acc = (0, b"\x01")
    for j in range(1, n + 1):
        qj = ctx.q ** j
        coeffs = [0] * (qj + 1)
        coeffs[1] = 1
        coeffs[qj] = ctx.minus_one
        acc = _raw.mul(ctx, acc, _raw.poly(ctx, coeffs, ctx.D))
    return LaurentSeries(ctx, acc)


_INV_CACHE: dict = {}


def _inverse_raw(ctx, kind: str, i: int, prec: int):
    """1/d_i or 1/l_i to lattice precision ``prec``, cached at the largest precision seen."""
    key = (ctx.p, ctx.e, kind, i)
    hit = _INV_CACHE.get(key)
    if hit is None or hit[0] < prec:
        base = _factorial_raw(ctx, i) if kind == "d" else log_denominator(ctx, i).raw
        hit = (prec, _raw.inv(ctx, base, prec))
        _INV_CACHE[key] = hit
    return _raw.trunc(hit[1], prec)


def _as_tate(f):
    if isinstance(f, TateElement):
        return f, True
    if isinstance(f, LaurentSeries):
        return TateElement.from_laurent(f, 0), False
    raise TypeError(f"expected a series, got {type(f).__name__}")


def _back(x: TateElement, was_tate: bool):
    return x if was_tate else x.to_laurent()


def _theta_decomposition(a, s: int, ctx) -> list[TateElement]:
    """Write a polynomial a = Σ_k A_k θ^k with A_k ∈ F_{q^2}[t] (exact Tate elements)."""
    if isinstance(a, int):
        a = RationalFunction.constant(ctx, a, s)
    if isinstance(a, RationalFunction):
        if not a.is_polynomial():
            raise ValueError("C_a needs a polynomial a")
        a = a.to_tate(None, max(s, a.s))
    elif isinstance(a, LaurentSeries):
        a = TateElement.from_laurent(a, s)
    if a.N is not None:
        raise ValueError("C_a needs an exact polynomial a")
    D = ctx.D
    parts: dict[int, dict] = {}
    for key, raw in a._terms.items():
        for idx, c in _raw.items(raw):
            if idx % D or idx > 0:
                raise ValueError("a must be a polynomial in θ")
            parts.setdefault(-idx // D, {})[key] = (0, bytes([c]))
    if not parts:
        return []
    return [TateElement(ctx, a.s, parts.get(k, {})) for k in range(max(parts) + 1)]


def carlitz_action(a, f):
    """C_a(f) where C_θ = θ + τ, extended F_q[t]-linearly."""
    F, was_tate = _as_tate(f)
    ctx = F.ctx
    comps = _theta_decomposition(a, F.s, ctx)
    if not comps:
        return _back(TateElement.zero(ctx, F.s, F.precision), was_tate)
    s = max(F.s, comps[0].s)
    F = F.extend(s)
    theta = TateElement(ctx, s, {0: (-ctx.D, b"\x01")})
    g = F
    result = comps[0].extend(s) * g
    for A in comps[1:]:
        g = theta * g + g.tau()
        result = result + A.extend(s) * g
    return _back(result, was_tate or s > 0)


def exp_terms_needed(ctx, v: int, target: int) -> int:
    """Largest i with a term of exp_C below ``target`` (lattice units), given v = v(f)."""
    D, q = ctx.D, ctx.q
    i = 0
    last = -1
    while True:
        tv = q ** i * (v + i * D)
        if tv < target:
            last = i
        elif v + i * D >= 0:
            return last
        i += 1


def exp_carlitz(f, N=None):
    """exp_C(f) mod θ^(-N); ``N=None`` gives the best precision the input supports."""
    F, was_tate = _as_tate(f)
    ctx = F.ctx
    D, q = ctx.D, ctx.q
    Nf = F.N
    T = to_lattice(ctx, N)
    if T is None:
        if Nf is None:
            if F.is_zero():
                return f
            raise PrecisionError("exp_C of an exact non-zero series needs a target precision")
        T = Nf
        i = 1
        while Nf + i * D <= 0:
            T = min(T, q ** i * (Nf + i * D))
            i += 1
    v = F._v()
    if v is None:  # exact zero
        return _back(TateElement.zero(ctx, F.s, from_lattice(ctx, T)), was_tate)
    imax = exp_terms_needed(ctx, v, T)
    for i in range(imax + 1):
        if Nf is not None and q ** i * (Nf + i * D) < T:
            need = max(-(-T // q ** j) - j * D for j in range(imax + 1))
            raise PrecisionError(
                f"exp_C to θ^-({from_lattice(ctx, T)}) needs input precision {from_lattice(ctx, need)}",
                required=from_lattice(ctx, need))
    acc = TateElement.zero(ctx, F.s, from_lattice(ctx, T))
    for i in range(imax + 1):
        ti = F.tau(i) if i else F
        dinv = _inverse_raw(ctx, "d", i, T - q ** i * v)
        term = ti * TateElement(ctx, F.s, {0: dinv}, T - q ** i * v)
        acc = acc + term.truncate(from_lattice(ctx, T))
    return _back(acc, was_tate)


def log_carlitz(g, N=None):
    """log_C(g) mod θ^(-N) on the disk v(g) > -q/(q-1)."""
    G, was_tate = _as_tate(g)
    ctx = G.ctx
    q = ctx.q
    Ng = G.N
    T = to_lattice(ctx, N)
    v = G._v()
    if v is None:
        return g
    if v <= -q:
        raise DomainError("outside logarithm domain: need v_∞ > -q/(q-1)")
    if T is None:
        if Ng is None:
            raise PrecisionError("log_C of an exact non-zero series needs a target precision")
        T = Ng
    if Ng is not None and Ng < T:
        raise PrecisionError(
            f"log_C to θ^-({from_lattice(ctx, T)}) needs input precision {from_lattice(ctx, T)}",
            required=from_lattice(ctx, T))
    acc = TateElement.zero(ctx, G.s, from_lattice(ctx, T))
    i = 0
    while q ** i * (v + q) - q < T:
        linv = _inverse_raw(ctx, "l", i, T - q ** i * v)
        term = (G.tau(i) if i else G) * TateElement(ctx, G.s, {0: linv}, T - q ** i * v)
        acc = acc + term.truncate(from_lattice(ctx, T))
        i += 1
    return _back(acc, was_tate)


def torsion_point(a, j: int, N, s: int | None = None):
    """exp_C(π̃ θ^j / a) mod θ^(-N) for a monic in θ, 0 <= j < deg_θ a."""
    from .special_values import pi_bar

    if not isinstance(a, RationalFunction):
        raise TypeError("a must be a RationalFunction polynomial")
    ctx = a.ctx
    s = a.s if s is None else s
    A = a.to_tate(None, s)
    deg = -A._terms[0][0] // ctx.D if 0 in A._terms else 0
    if not 0 <= j < deg:
        raise ValueError(f"j={j} out of range 0..{deg - 1}")
    Nf = Fraction(N)
    pi = pi_bar(ctx, Nf + j - deg)  # v(θ^j/a) = deg - j
    ainv = expand_inverse_monic(A, Nf + Fraction(ctx.q, ctx.D) + j)
    theta_j = TateElement(ctx, s, {0: (-j * ctx.D, b"\x01")})
    arg = TateElement.from_laurent(pi, s) * theta_j * ainv
    out = exp_carlitz(arg, Nf)
    return out.to_laurent() if s == 0 else out


def weierstrass_partial_product(z: LaurentSeries, degree: int, N) -> LaurentSeries:
    """z · Π (1 - z/(π̃ a)) over non-zero a in F_q[θ] of degree <= ``degree``, mod θ^(-N)."""
    from .special_values import pi_bar

    ctx = z.ctx
    Nf = Fraction(N)
    vz = z.valuation()
    # each factor 1 - z/(π̃ a) is needed to relative precision Nf - vz
    work = Nf - 2 * vz
    pinv = pi_bar(ctx, work).invert()
    acc = z.truncate(Nf)
    for d in range(degree + 1):
        for a in enumerate_monic(ctx, d):
            base = z * pinv * LaurentSeries.from_poly(ctx, a).invert(work)
            for c in ctx.fq[1:]:
                acc = (acc * (LaurentSeries.one(ctx) - base * ctx.inv(c))).truncate(Nf)
    return acc
