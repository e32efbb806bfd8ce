"""Truncated Laurent series in 1/θ on the lattice (1/(q-1))Z.

A :class:`LaurentSeries` stands for ``Σ c_j θ^(-j)`` known for every ``j``
below its precision ``N``.  Exponents and precisions are exposed as
``Fraction`` and stored as integer lattice indices ``k = j*(q-1)``.  ``N is
None`` marks an exact (finite) series.

Precision rules:

* ``a + b``: ``min(N_a, N_b)``
* ``a * b``: ``min(N_a + v(b), N_b + v(a))``
* ``1/a``: ``N_a - 2 v(a)`` (exact for exact monomials)
* ``μ^m(a)``: ``p^m N_a`` (``ceil`` for m < 0)
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from . import _raw
from .errors import IndistinguishableFromZero, PrecisionError, ZeroDivisorError
from .field_tower import FieldContext

__all__ = ["LaurentSeries", "to_lattice", "from_lattice", "format_exponent", "expand_rational"]


def to_lattice(ctx: FieldContext, N) -> int | None:
    """Lattice index of a precision given as int, Fraction or fraction string."""
    if N is None:
        return None
    k = Fraction(N) * ctx.D
    if k.denominator != 1:
        raise ValueError(f"precision {N} is not on the lattice (1/{ctx.D})Z")
    return int(k)


def from_lattice(ctx: FieldContext, k: int | None) -> Fraction | None:
    return None if k is None else Fraction(k, ctx.D)


def format_exponent(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


def _theta_power_text(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "θ"
    if e.denominator == 1:
        return f"θ^{e.numerator}"
    return f"θ^({e.numerator}/{e.denominator})"


def coeff_text(ctx: FieldContext, c: int, e: Fraction) -> str:
    mono = _theta_power_text(e)
    cs = ctx.fmt(c)
    if "+" in cs:
        cs = f"({cs})"
    if not mono:
        return cs
    return mono if c == 1 else cs + mono


def series_text(ctx: FieldContext, raw, N: int | None) -> str:
    parts = [coeff_text(ctx, c, -Fraction(k, ctx.D)) for k, c in _raw.items(raw)]
    if N is not None:
        parts.append(f"O({_theta_power_text(-Fraction(N, ctx.D)) or '1'})")
    return " + ".join(parts) if parts else "0"


class LaurentSeries:
    """Immutable truncated Laurent series; see the module docstring for precision."""

    __slots__ = ("ctx", "raw", "N")

    def __init__(self, ctx: FieldContext, raw=_raw.ZERO, N: int | None = None):
        self.ctx = ctx
        self.N = N
        self.raw = _raw.trunc(_raw.norm(*raw), N)

    # -- constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, ctx, N=None) -> "LaurentSeries":
        return cls(ctx, _raw.ZERO, to_lattice(ctx, N))

    @classmethod
    def one(cls, ctx) -> "LaurentSeries":
        return cls(ctx, (0, b"\x01"))

    @classmethod
    def constant(cls, ctx, c) -> "LaurentSeries":
        c = c.v if hasattr(c, "v") else (c if isinstance(c, int) and 0 <= c < ctx.Q else ctx.from_int(c))
        return cls(ctx, (0, bytes([c])))

    @classmethod
    def theta_power(cls, ctx, e, c: int = 1) -> "LaurentSeries":
        """c·θ^e for e in the lattice."""
        k = to_lattice(ctx, -Fraction(e))
        return cls(ctx, (k, bytes([c])))

    @classmethod
    def from_terms(cls, ctx, terms: dict, N=None) -> "LaurentSeries":
        """From a map ``j -> code`` describing ``Σ c_j θ^(-j)``."""
        Nl = to_lattice(ctx, N)
        ks = {to_lattice(ctx, j): c for j, c in terms.items() if c}
        if Nl is not None:
            ks = {k: c for k, c in ks.items() if k < Nl}
        if not ks:
            return cls(ctx, _raw.ZERO, Nl)
        lo, hi = min(ks), max(ks)
        out = bytearray(hi - lo + 1)
        for k, c in ks.items():
            out[k - lo] = c
        return cls(ctx, (lo, bytes(out)), Nl)

    @classmethod
    def from_poly(cls, ctx, coeffs: Iterable[int]) -> "LaurentSeries":
        """Exact θ-polynomial from codes listed low to high."""
        return cls(ctx, _raw.poly(ctx, list(coeffs), ctx.D))

    # -- inspection ----------------------------------------------------------------
    @property
    def precision(self) -> Fraction | None:
        return from_lattice(self.ctx, self.N)

    @property
    def is_exact(self) -> bool:
        return self.N is None

    def is_zero(self) -> bool:
        """True when no non-zero term is known (exact zero or zero at precision)."""
        return not self.raw[1]

    def _v(self) -> int | None:
        """Lattice valuation; N for zero-at-precision, None for exact zero."""
        return self.raw[0] if self.raw[1] else self.N

    def valuation(self) -> Fraction:
        if not self.raw[1]:
            raise IndistinguishableFromZero(self.precision)
        return Fraction(self.raw[0], self.ctx.D)

    def terms(self) -> dict[Fraction, int]:
        D = self.ctx.D
        return {Fraction(k, D): c for k, c in _raw.items(self.raw)}

    def coefficient(self, j) -> int:
        k = to_lattice(self.ctx, j)
        if self.N is not None and k >= self.N:
            raise PrecisionError(f"coefficient of θ^-({j}) is beyond the precision")
        s, d = self.raw
        return d[k - s] if 0 <= k - s < len(d) else 0

    def truncate(self, N) -> "LaurentSeries":
        Nl = _raw.min_prec(self.N, to_lattice(self.ctx, N))
        return LaurentSeries(self.ctx, self.raw, Nl)

    def agrees(self, other: "LaurentSeries", N=None) -> bool:
        return self.first_discrepancy(other, N) is None

    def first_discrepancy(self, other: "LaurentSeries", N=None) -> Fraction | None:
        """Smallest exponent below the common precision where the two differ."""
        ctx = self.ctx
        bound = _raw.min_prec(self.N, other.N)
        if N is not None:
            bound = _raw.min_prec(bound, to_lattice(ctx, N))
        diff = _raw.sub(ctx, self.raw, other.raw, bound)
        return Fraction(diff[0], ctx.D) if diff[1] else None

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.ctx is not self.ctx:
                raise ValueError("series over different fields")
            return other
        if isinstance(other, int) or hasattr(other, "v"):
            return LaurentSeries.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        N = _raw.min_prec(self.N, o.N)
        return LaurentSeries(self.ctx, _raw.add(self.ctx, self.raw, o.raw, N), N)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.ctx, _raw.neg(self.ctx, self.raw), self.N)

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        N = _mul_prec(self.N, self._v(), o.N, o._v())
        return LaurentSeries(self.ctx, _raw.mul(self.ctx, self.raw, o.raw, N), N)

    __rmul__ = __mul__

    def invert(self, prec=None) -> "LaurentSeries":
        """1/a; exact non-monomial input needs an explicit ``prec``."""
        ctx = self.ctx
        if not self.raw[1]:
            raise ZeroDivisorError()
        cap = to_lattice(ctx, prec)
        v = self.raw[0]
        if self.N is None:
            if _raw.is_monomial(self.raw):
                c = ctx.inv(self.raw[1][0])
                return LaurentSeries(ctx, (-v, bytes([c])), cap)
            if cap is None:
                raise PrecisionError("inverting an exact non-monomial series needs a precision")
            N = cap
        else:
            N = self.N - 2 * v
            if cap is not None:
                N = min(N, cap)
        return LaurentSeries(ctx, _raw.inv(ctx, self.raw, N), N)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.invert()

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = LaurentSeries.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mu(self, m: int = 1) -> "LaurentSeries":
        """μ^m: Frobenius on coefficients, exponents and precision scaled by p^m."""
        ctx = self.ctx
        raw = _raw.mu(ctx, self.raw, m)
        N = self.N
        if N is not None:
            P = ctx.p ** abs(m)
            N = N * P if m >= 0 else -((-N) // P)
        return LaurentSeries(ctx, raw, N)

    def tau(self, k: int = 1) -> "LaurentSeries":
        return self.mu(self.ctx.e * k)

    # -- comparison / output --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.ctx is other.ctx and self.N == other.N and self.raw == other.raw

    def __hash__(self):
        return hash((self.raw, self.N))

    def __str__(self):
        return series_text(self.ctx, self.raw, self.N)

    def __repr__(self):
        return f"LaurentSeries({self})"

    def to_json(self) -> dict:
        ctx = self.ctx
        return {
            "lattice_den": ctx.D,
            "precision": None if self.N is None else format_exponent(Fraction(self.N, ctx.D)),
            "terms": [{"exp": format_exponent(Fraction(k, ctx.D)), "coeff": ctx.fmt(c)}
                      for k, c in _raw.items(self.raw)],
        }

    @classmethod
    def from_json(cls, ctx, obj: dict) -> "LaurentSeries":
        if obj["lattice_den"] != ctx.D:
            raise ValueError("lattice denominator mismatch")
        terms = {Fraction(t["exp"]): ctx.parse(t["coeff"]) for t in obj["terms"]}
        N = None if obj["precision"] is None else Fraction(obj["precision"])
        return cls.from_terms(ctx, terms, N)


def _mul_prec(Na, va, Nb, vb):
    """Precision of a product; va/vb are None only for exact zero."""
    if va is None or vb is None:
        return None
    p1 = None if Na is None else Na + vb
    p2 = None if Nb is None else Nb + va
    return _raw.min_prec(p1, p2)


def expand_rational(r, N) -> LaurentSeries:
    """Expansion at infinity of a θ-only rational function, exact mod θ^(-N)."""
    return r.to_laurent(N)
