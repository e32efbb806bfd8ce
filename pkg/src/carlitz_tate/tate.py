"""Truncated elements of the Tate algebra T_s over the θ-adic series.

A :class:`TateElement` is a finite map from t-exponent vectors to raw series,
known modulo the elements of Gauss valuation >= N (``N`` shared by all
coefficients).  Monomials whose coefficients start at or beyond ``N`` carry
no information and are dropped, which is what keeps the t-support finite for
series such as ω.  The precision rules are the same as for
:class:`~carlitz_tate.laurent.LaurentSeries` with the Gauss valuation in place
of v_∞.

Internally exponent vectors are packed into one int (16 bits per variable), so
adding exponent vectors is integer addition.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from . import _raw
from .errors import DomainError, IndistinguishableFromZero, PrecisionError, ZeroDivisorError
from .field_tower import FieldContext
from .laurent import LaurentSeries, _mul_prec, coeff_text, format_exponent, from_lattice, to_lattice

__all__ = [
    "TateElement",
    "gauss_valuation",
    "mu_tate",
    "divided_derivative",
    "substitute_unit_disk",
    "expand_inverse_monic",
    "binomial_mod_p",
]

_BITS = 16
_MASK = (1 << _BITS) - 1


def pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= _MASK:
            raise ValueError(f"t-exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def unpack(key: int, s: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(s))


def binomial_mod_p(m: int, n: int, p: int) -> int:
    """binom(m, n) mod p by Lucas' theorem."""
    if n < 0 or n > m:
        return 0
    r = 1
    while n:
        mi, ni = m % p, n % p
        if ni > mi:
            return 0
        num = den = 1
        for k in range(ni):
            num = num * (mi - k) % p
            den = den * (k + 1) % p
        r = r * num * pow(den, -1, p) % p
        m //= p
        n //= p
    return r


class TateElement:
    """Immutable truncated element of T_s."""

    __slots__ = ("ctx", "s", "_terms", "N")

    def __init__(self, ctx: FieldContext, s: int, terms: dict | None = None, N: int | None = None):
        self.ctx = ctx
        self.s = s
        self.N = N
        clean = {}
        for key, raw in (terms or {}).items():
            raw = _raw.trunc(raw, N)
            if raw[1]:
                clean[key] = raw
        self._terms = clean

    # -- constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, ctx, s: int = 0, N=None) -> "TateElement":
        return cls(ctx, s, {}, to_lattice(ctx, N))

    @classmethod
    def one(cls, ctx, s: int = 0) -> "TateElement":
        return cls(ctx, s, {0: (0, b"\x01")})

    @classmethod
    def from_laurent(cls, x: LaurentSeries, s: int = 0) -> "TateElement":
        return cls(x.ctx, s, {0: x.raw}, x.N)

    @classmethod
    def variable(cls, ctx, i: int, s: int) -> "TateElement":
        """The variable t_(i+1) (0-based index ``i``)."""
        if not 0 <= i < s:
            raise ValueError(f"variable index {i} out of range for s={s}")
        return cls(ctx, s, {1 << (_BITS * i): (0, b"\x01")})

    @classmethod
    def from_terms(cls, ctx, s: int, terms: dict, N=None) -> "TateElement":
        """From ``{exponent tuple: LaurentSeries}``; N defaults to the coefficients' minimum."""
        Nl = to_lattice(ctx, N)
        packed = {}
        for exps, c in terms.items():
            if len(exps) != s:
                raise ValueError("exponent vector length differs from s")
            if N is None:
                Nl = _raw.min_prec(Nl, c.N)
            elif c.N is not None and c.N < Nl:
                raise PrecisionError("coefficient precision below the requested N")
            packed[pack(exps)] = c.raw
        return cls(ctx, s, packed, Nl)

    # -- inspection ----------------------------------------------------------------
    @property
    def precision(self) -> Fraction | None:
        return from_lattice(self.ctx, self.N)

    @property
    def terms(self) -> dict[tuple[int, ...], LaurentSeries]:
        return {unpack(k, self.s): LaurentSeries(self.ctx, r, self.N)
                for k, r in sorted(self._terms.items())}

    @property
    def degree_cap(self) -> tuple[int, ...]:
        """Largest t-exponent present per variable."""
        caps = [0] * self.s
        for k in self._terms:
            for i, e in enumerate(unpack(k, self.s)):
                if e > caps[i]:
                    caps[i] = e
        return tuple(caps)

    def coefficient(self, exps) -> LaurentSeries:
        return LaurentSeries(self.ctx, self._terms.get(pack(exps), _raw.ZERO), self.N)

    def is_zero(self) -> bool:
        return not self._terms

    def _v(self) -> int | None:
        if self._terms:
            return min(r[0] for r in self._terms.values())
        return self.N

    def gauss_valuation(self) -> Fraction:
        if not self._terms:
            raise IndistinguishableFromZero(self.precision)
        return Fraction(self._v(), self.ctx.D)

    def is_constant_in_t(self) -> bool:
        return all(k == 0 for k in self._terms)

    def to_laurent(self) -> LaurentSeries:
        if not self.is_constant_in_t():
            raise ValueError("element depends on the t-variables")
        return LaurentSeries(self.ctx, self._terms.get(0, _raw.ZERO), self.N)

    def truncate(self, N) -> "TateElement":
        return TateElement(self.ctx, self.s, self._terms, _raw.min_prec(self.N, to_lattice(self.ctx, N)))

    def extend(self, s: int) -> "TateElement":
        """Same element viewed in T_s for s >= self.s."""
        if s < self.s:
            raise ValueError("cannot drop variables")
        return TateElement(self.ctx, s, self._terms, self.N)

    def first_discrepancy(self, other, N=None) -> Fraction | None:
        """Smallest exponent (over all monomials) below the common precision where they differ."""
        other = self._coerce(other)
        ctx = self.ctx
        bound = _raw.min_prec(self.N, other.N)
        if N is not None:
            bound = _raw.min_prec(bound, to_lattice(ctx, N))
        worst = None
        for k in set(self._terms) | set(other._terms):
            d = _raw.sub(ctx, self._terms.get(k, _raw.ZERO), other._terms.get(k, _raw.ZERO), bound)
            if d[1] and (worst is None or d[0] < worst):
                worst = d[0]
        return None if worst is None else Fraction(worst, ctx.D)

    def agrees(self, other, N=None) -> bool:
        return self.first_discrepancy(other, N) is None

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other) -> "TateElement":
        if isinstance(other, TateElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements over different fields")
            if other.s != self.s:
                if other.s < self.s:
                    return other.extend(self.s)
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, LaurentSeries):
            return TateElement.from_laurent(other, self.s)
        if isinstance(other, int) or hasattr(other, "v"):
            return TateElement.from_laurent(LaurentSeries.constant(self.ctx, other), self.s)
        return NotImplemented

    def _lift(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self, o
        if o.s > self.s:
            return self.extend(o.s), o
        return self, o

    def __add__(self, other):
        a, b = self._lift(other)
        if b is NotImplemented:
            return b
        ctx = a.ctx
        N = _raw.min_prec(a.N, b.N)
        out = dict(a._terms)
        for k, r in b._terms.items():
            out[k] = _raw.add(ctx, out[k], r, N) if k in out else r
        return TateElement(ctx, a.s, out, N)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return TateElement(ctx, self.s, {k: _raw.neg(ctx, r) for k, r in self._terms.items()}, self.N)

    def __sub__(self, other):
        a, b = self._lift(other)
        return b if b is NotImplemented else a + (-b)

    def __rsub__(self, other):
        a, b = self._lift(other)
        return b if b is NotImplemented else b + (-a)

    def __mul__(self, other):
        a, b = self._lift(other)
        if b is NotImplemented:
            return b
        ctx = a.ctx
        N = _mul_prec(a.N, a._v(), b.N, b._v())
        return TateElement(ctx, a.s, _mul_terms(ctx, a._terms, b._terms, N), N)

    __rmul__ = __mul__

    def scale(self, c: int) -> "TateElement":
        ctx = self.ctx
        return TateElement(ctx, self.s, {k: _raw.scale(ctx, c, r) for k, r in self._terms.items()}, self.N)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = TateElement.one(self.ctx, self.s)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mu(self, m: int = 1) -> "TateElement":
        """μ^m on coefficients; t-monomials are fixed."""
        ctx = self.ctx
        N = self.N
        if N is not None:
            P = ctx.p ** abs(m)
            N = N * P if m >= 0 else -((-N) // P)
        return TateElement(ctx, self.s, {k: _raw.mu(ctx, r, m) for k, r in self._terms.items()}, N)

    def tau(self, k: int = 1) -> "TateElement":
        return self.mu(self.ctx.e * k)

    def invert(self, prec=None) -> "TateElement":
        """Inverse of a unit multiple c·θ^a·(1 + r) with Gauss valuation v(r) > 0."""
        ctx = self.ctx
        if not self._terms:
            raise ZeroDivisorError()
        cap = to_lattice(ctx, prec)
        v = self._v()
        lead = self._terms.get(0)
        if lead is None or lead[0] != v or any(r[0] <= v for k, r in self._terms.items() if k):
            raise ZeroDivisorError("not a unit of the Tate algebra: the leading part depends on t")
        if len(self._terms) == 1 and self.N is None and _raw.is_monomial(lead):
            c = ctx.inv(lead[1][0])
            return TateElement(ctx, self.s, {0: (-v, bytes([c]))}, cap)
        if self.N is None:
            if cap is None:
                raise PrecisionError("inverting an exact non-monomial element needs a precision")
            N = cap
        else:
            N = self.N - 2 * v
            if cap is not None:
                N = min(N, cap)
        if self.is_constant_in_t():
            return TateElement(ctx, self.s, {0: _raw.inv(ctx, lead, N)}, N)
        # normalize to 1 + r and sum the geometric series by Horner's rule
        c_inv = ctx.inv(lead[1][0])
        rel = N + v  # precision of 1/(1 + r)
        r_terms = {}
        for k, raw in self._terms.items():
            raw = _raw.shift(_raw.scale(ctx, c_inv, raw), -v)
            if k == 0:
                raw = _raw.sub(ctx, raw, (0, b"\x01"))
            raw = _raw.trunc(raw, rel)
            if raw[1]:
                r_terms[k] = raw
        r = TateElement(ctx, self.s, r_terms, rel)
        vr = r._v() if r_terms else rel
        steps = -(-rel // vr) if vr > 0 else 0
        y = TateElement.one(ctx, self.s).truncate(from_lattice(ctx, rel))
        for _ in range(steps):
            y = TateElement.one(ctx, self.s) - r * y
            y = y.truncate(from_lattice(ctx, rel))
        out = {k: _raw.shift(_raw.scale(ctx, c_inv, raw), -v) for k, raw in y._terms.items()}
        return TateElement(ctx, self.s, out, N)

    def __truediv__(self, other):
        a, b = self._lift(other)
        if b is NotImplemented:
            return b
        return a * b.invert()

    def divided_derivative(self, n: int, var: int = 0) -> "TateElement":
        """𝒟_n in t_(var+1): t^m -> binom(m, n) t^(m-n), Lucas-reduced."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if not 0 <= var < self.s:
            raise ValueError("variable index out of range")
        ctx = self.ctx
        shift = _BITS * var
        out = {}
        for k, raw in self._terms.items():
            m = (k >> shift) & _MASK
            b = binomial_mod_p(m, n, ctx.p)
            if b:
                out[k - (n << shift)] = _raw.scale(ctx, b, raw)
        return TateElement(ctx, self.s, out, self.N)

    def substitute(self, var: int, value) -> "TateElement":
        """Substitute t_(var+1) := value with Gauss valuation >= 0."""
        ctx = self.ctx
        value = self._coerce(value)
        if value._terms and value._v() < 0:
            raise DomainError("outside unit disk; use summand-level evaluation")
        shift = _BITS * var
        by_power: dict[int, dict] = {}
        for k, raw in self._terms.items():
            m = (k >> shift) & _MASK
            by_power.setdefault(m, {})[k & ~(_MASK << shift)] = raw
        if not by_power:
            return TateElement(ctx, self.s, {}, self.N)
        result = None
        for m in range(max(by_power), -1, -1):
            c = TateElement(ctx, self.s, by_power.get(m, {}), self.N)
            result = c if result is None else result * value + c
        return result.truncate(self.precision)

    # -- output ----------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TateElement):
            return NotImplemented
        return (self.ctx is other.ctx and self.s == other.s and self.N == other.N
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.s, self.N, tuple(sorted(self._terms.items()))))

    def __str__(self):
        ctx = self.ctx
        parts = []
        for exps, c in self.terms.items():
            tm = "*".join(
                (f"t{i + 1}" if self.s > 1 else "t") + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e)
            for k, code in _raw.items(c.raw):
                txt = coeff_text(ctx, code, -Fraction(k, ctx.D))
                if tm:
                    txt = tm if txt == "1" else f"{txt}*{tm}"
                parts.append(txt)
        if self.N is not None:
            e = -Fraction(self.N, ctx.D)
            parts.append(f"O(θ^{format_exponent(e)})" if e else "O(1)")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TateElement(s={self.s}, {self})"

    def to_json(self) -> dict:
        ctx = self.ctx
        out = []
        for exps, c in self.terms.items():
            for k, code in _raw.items(c.raw):
                out.append({"t": list(exps), "exp": format_exponent(Fraction(k, ctx.D)),
                            "coeff": ctx.fmt(code)})
        return {
            "lattice_den": ctx.D,
            "s": self.s,
            "degree_cap": list(self.degree_cap),
            "precision": None if self.N is None else format_exponent(Fraction(self.N, ctx.D)),
            "terms": out,
        }


def _mul_terms(ctx, A: dict, B: dict, N: int | None) -> dict:
    if not A or not B:
        return {}
    la = sorted(A.items(), key=lambda kv: kv[1][0])
    lb = sorted(B.items(), key=lambda kv: kv[1][0])
    lo = la[0][1][0] + lb[0][1][0]
    if N is None:
        hi = max(_raw.end(r) for _, r in la) + max(_raw.end(r) for _, r in lb) - 1
    else:
        hi = N
    if hi <= lo:
        return {}
    width = hi - lo
    acc = ctx.kernel.conv_acc
    out: dict[int, bytearray] = {}
    get = out.get
    for ka, (sa, da) in la:
        lim = hi - sa
        if lb[0][1][0] >= lim:
            break
        for kb, (sb, db) in lb:
            if sb >= lim:
                break
            key = ka + kb
            buf = get(key)
            if buf is None:
                buf = out[key] = bytearray(width)
            acc(buf, sa + sb - lo, da, db)
    return {k: _raw.norm(lo, buf) for k, buf in out.items()}


# -- functional API -------------------------------------------------------------------

def gauss_valuation(f: TateElement) -> Fraction:
    return f.gauss_valuation()


def mu_tate(f: TateElement, m: int) -> TateElement:
    return f.mu(m)


def divided_derivative(f: TateElement, n: int, var: int = 0) -> TateElement:
    return f.divided_derivative(n, var)


def substitute_unit_disk(f: TateElement, var: int, value) -> TateElement:
    return f.substitute(var, value)


def expand_inverse_monic(a, N, s: int | None = None) -> TateElement:
    """1/a mod θ^(-N) for ``a`` monic in θ with F_q[t]-coefficients.

    ``a`` may be an exact :class:`TateElement` or a polynomial
    :class:`~carlitz_tate.ratfunc.RationalFunction`.
    """
    if not isinstance(a, TateElement):
        a = a.to_tate(None, s)
    if a.N is not None:
        raise ValueError("expand_inverse_monic expects an exact polynomial")
    D = a.ctx.D
    for raw in a._terms.values():
        if any(idx % D or idx > 0 for idx, _ in _raw.items(raw)):
            raise ValueError("coefficients must be polynomials in θ")
    v = a._v()
    lead = a._terms.get(0)
    if (lead is None or lead[0] != v or lead[1][0] != 1
            or any(r[0] <= v for k, r in a._terms.items() if k)):
        raise ValueError("not monic in θ")
    return a.invert(N)
