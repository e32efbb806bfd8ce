"""Rational functions in θ, t_1..t_s over F_{q^2}.

Numerator and denominator are sparse polynomials stored as
``{(a, k_1, ..., k_s): code}`` with ``a`` the θ-degree.  Without t-variables
the representative is fully reduced (univariate gcd, monic denominator).  With
t-variables only common monomial factors are removed and the denominator made
monic in the lexicographic order (θ first); equality is decided by
cross-multiplication, so the representative does not matter for correctness.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction

from . import _raw
from .field_tower import FieldContext, poly_divmod, poly_gcd
from .laurent import LaurentSeries
from .tate import TateElement, pack

__all__ = ["RationalFunction"]


def _padd(ctx, A: dict, B: dict) -> dict:
    out = dict(A)
    add = ctx.add_t
    for k, c in B.items():
        r = add[out.get(k, 0)][c]
        if r:
            out[k] = r
        else:
            out.pop(k, None)
    return out


def _pneg(ctx, A: dict) -> dict:
    return {k: ctx.neg_t[c] for k, c in A.items()}


def _pscale(ctx, c: int, A: dict) -> dict:
    if not c:
        return {}
    row = ctx.mul_t[c]
    return {k: row[x] for k, x in A.items()}


def _pmul(ctx, A: dict, B: dict) -> dict:
    out: dict = {}
    add, mul = ctx.add_t, ctx.mul_t
    for ka, ca in A.items():
        row = mul[ca]
        for kb, cb in B.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            r = add[out.get(k, 0)][row[cb]]
            if r:
                out[k] = r
            else:
                out.pop(k, None)
    return out


def _ppow(ctx, A: dict, n: int, one: dict) -> dict:
    out, base = one, A
    while n:
        if n & 1:
            out = _pmul(ctx, out, base)
        n >>= 1
        if n:
            base = _pmul(ctx, base, base)
    return out


class RationalFunction:
    """Element of F_{q^2}(θ, t_1, ..., t_s)."""

    __slots__ = ("ctx", "s", "num", "den")

    def __init__(self, ctx: FieldContext, s: int, num: dict, den: dict | None = None, _reduce=True):
        self.ctx = ctx
        self.s = s
        one = {(0,) * (s + 1): 1}
        den = one if den is None else den
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if _reduce:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den

    def _reduce(self, num, den):
        ctx, s = self.ctx, self.s
        zero_key = (0,) * (s + 1)
        if not num:
            return {}, {zero_key: 1}
        keys = list(num) + list(den)
        if all(not any(k[1:]) for k in keys):
            a = [0] * (max(k[0] for k in num) + 1)
            for k, c in num.items():
                a[k[0]] = c
            b = [0] * (max(k[0] for k in den) + 1)
            for k, c in den.items():
                b[k[0]] = c
            g = poly_gcd(ctx, tuple(a), tuple(b))
            if len(g) > 1:
                a = poly_divmod(ctx, a, g)[0]
                b = poly_divmod(ctx, b, g)[0]
            lc = ctx.inv(b[-1])
            num = {(i,) + (0,) * s: ctx.mul(c, lc) for i, c in enumerate(a) if c}
            den = {(i,) + (0,) * s: ctx.mul(c, lc) for i, c in enumerate(b) if c}
            return num, den
        low = tuple(min(k[i] for k in keys) for i in range(s + 1))
        if any(low):
            num = {tuple(x - y for x, y in zip(k, low)): c for k, c in num.items()}
            den = {tuple(x - y for x, y in zip(k, low)): c for k, c in den.items()}
        lc = ctx.inv(den[max(den)])
        return _pscale(ctx, lc, num), _pscale(ctx, lc, den)

    # -- constructors ------------------------------------------------------------
    @classmethod
    def constant(cls, ctx, c, s: int = 0) -> "RationalFunction":
        c = c.v if hasattr(c, "v") else (c if 0 <= c < ctx.Q else ctx.from_int(c))
        return cls(ctx, s, {(0,) * (s + 1): c} if c else {})

    @classmethod
    def theta(cls, ctx, s: int = 0) -> "RationalFunction":
        return cls(ctx, s, {(1,) + (0,) * s: 1})

    @classmethod
    def t(cls, ctx, i: int = 0, s: int = 1) -> "RationalFunction":
        k = [0] * (s + 1)
        k[i + 1] = 1
        return cls(ctx, s, {tuple(k): 1})

    @classmethod
    def from_theta_poly(cls, ctx, coeffs, s: int = 0) -> "RationalFunction":
        """θ-polynomial from codes low to high."""
        return cls(ctx, s, {(i,) + (0,) * s: c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, ctx, text: str, s: int = 0) -> "RationalFunction":
        """Parse e.g. ``"(t - θ)/(θ^3 - θ)"``; names θ/theta, t or t1..ts, g."""
        src = text.replace("θ", "theta").replace("^", "**")
        src = re.sub(r"(\d)\s*(theta|t\d*|g)\b", r"\1*\2", src)
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse {text!r}") from exc
        return _Builder(ctx, s).visit(tree.body)

    # -- inspection ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def has_t(self) -> bool:
        return any(any(k[1:]) for k in list(self.num) + list(self.den))

    def is_polynomial(self) -> bool:
        return len(self.den) == 1 and not any(next(iter(self.den)))

    def is_constant(self) -> bool:
        return self.is_polynomial() and all(not any(k) for k in self.num)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.get((0,) * (self.s + 1), 0)

    def in_fp(self) -> bool:
        return self.is_constant() and self.constant_value() < self.ctx.p

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ctx is not self.ctx:
                raise ValueError("different fields")
            if other.s != self.s:
                return other.extend(max(self.s, other.s))
            return other
        if isinstance(other, int) or hasattr(other, "v"):
            return RationalFunction.constant(self.ctx, other, self.s)
        return NotImplemented

    def extend(self, s: int) -> "RationalFunction":
        pad = (0,) * (s - self.s)
        return RationalFunction(self.ctx, s, {k + pad: c for k, c in self.num.items()},
                                {k + pad: c for k, c in self.den.items()})

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return self, o
        a = self.extend(o.s) if o.s > self.s else self
        return a, o

    def __add__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return b
        ctx = a.ctx
        if a.den == b.den:
            return RationalFunction(ctx, a.s, _padd(ctx, a.num, b.num), a.den)
        num = _padd(ctx, _pmul(ctx, a.num, b.den), _pmul(ctx, b.num, a.den))
        return RationalFunction(ctx, a.s, num, _pmul(ctx, a.den, b.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.ctx, self.s, _pneg(self.ctx, self.num), self.den, _reduce=False)

    def __sub__(self, other):
        a, b = self._pair(other)
        return b if b is NotImplemented else a + (-b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return b if b is NotImplemented else b + (-a)

    def __mul__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return b
        ctx = a.ctx
        return RationalFunction(ctx, a.s, _pmul(ctx, a.num, b.num), _pmul(ctx, a.den, b.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._pair(other)
        if b is NotImplemented:
            return b
        if not b.num:
            raise ZeroDivisionError("division by zero rational function")
        ctx = a.ctx
        return RationalFunction(ctx, a.s, _pmul(ctx, a.num, b.den), _pmul(ctx, a.den, b.num))

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        return b if b is NotImplemented else b / a

    def __pow__(self, n: int):
        one = {(0,) * (self.s + 1): 1}
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("zero to a negative power")
            return RationalFunction(self.ctx, self.s, _ppow(self.ctx, self.den, -n, one),
                                    _ppow(self.ctx, self.num, -n, one))
        return RationalFunction(self.ctx, self.s, _ppow(self.ctx, self.num, n, one),
                                _ppow(self.ctx, self.den, n, one))

    def __eq__(self, other):
        if isinstance(other, RationalFunction) and other.ctx is not self.ctx:
            return False
        a, b = self._pair(other)
        if b is NotImplemented:
            return NotImplemented
        ctx = a.ctx
        return _pmul(ctx, a.num, b.den) == _pmul(ctx, b.num, a.den)

    def __hash__(self):
        if not self.has_t():
            return hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))
        return hash(self.s)

    def mu(self, m: int = 1) -> "RationalFunction":
        """θ -> θ^(p^m), coefficients raised to p^m; t-variables fixed."""
        if m < 0:
            raise ValueError("μ^m on rational functions needs m >= 0")
        ctx = self.ctx
        P = ctx.p ** m

        def tw(A):
            return {(k[0] * P,) + k[1:]: ctx.frob(c, m) for k, c in A.items()}
        return RationalFunction(ctx, self.s, tw(self.num), tw(self.den))

    def tau(self, k: int = 1) -> "RationalFunction":
        return self.mu(self.ctx.e * k)

    # -- expansion -------------------------------------------------------------------
    def _poly_tate(self, A: dict, s: int) -> TateElement:
        ctx = self.ctx
        D = ctx.D
        by_key: dict[int, dict[int, int]] = {}
        for k, c in A.items():
            by_key.setdefault(pack(k[1:] + (0,) * (s - self.s)), {})[k[0]] = c
        terms = {}
        for key, cs in by_key.items():
            deg = max(cs)
            terms[key] = _raw.poly(ctx, [cs.get(i, 0) for i in range(deg + 1)], D)
        return TateElement(ctx, s, terms)

    def to_tate(self, N=None, s: int | None = None) -> TateElement:
        """Expansion in T_s mod θ^(-N); ``N=None`` only for polynomials."""
        s = self.s if s is None else s
        if s < self.s:
            raise ValueError("too few variables")
        num = self._poly_tate(self.num, s)
        if self.is_polynomial():
            c = next(iter(self.den.values()))
            out = num.scale(self.ctx.inv(c)) if c != 1 else num
            return out if N is None else out.truncate(N)
        if N is None:
            raise ValueError("expanding a non-polynomial rational function needs a precision")
        den = self._poly_tate(self.den, s)
        if num.is_zero():
            return TateElement.zero(self.ctx, s, N)
        vn = num.gauss_valuation()
        try:
            dinv = den.invert(Fraction(N) - vn)
        except ZeroDivisionError as exc:
            raise ValueError(f"denominator of {self} is not a unit in the Tate algebra") from exc
        return (num * dinv).truncate(N)

    def to_laurent(self, N=None) -> LaurentSeries:
        if self.has_t():
            raise ValueError("rational function depends on t; use to_tate")
        return self.to_tate(N, self.s).to_laurent()

    # -- output ----------------------------------------------------------------------
    def _poly_str(self, A: dict) -> str:
        if not A:
            return "0"
        ctx = self.ctx
        parts = []
        for k in sorted(A, reverse=True):
            c = A[k]
            vs = []
            if k[0]:
                vs.append("θ" if k[0] == 1 else f"θ^{k[0]}")
            for i, e in enumerate(k[1:]):
                if e:
                    name = "t" if self.s == 1 else f"t{i + 1}"
                    vs.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(vs)
            cs = ctx.fmt(c)
            if "+" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(cs + ("" if mono.startswith("θ") else "*") + mono)
        return " + ".join(parts)

    def __str__(self):
        n = self._poly_str(self.num)
        if self.is_polynomial() and next(iter(self.den.values())) == 1:
            return n
        return f"({n})/({self._poly_str(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"


class _Builder(ast.NodeVisitor):
    def __init__(self, ctx, s):
        self.ctx = ctx
        self.s = s

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    def visit_Constant(self, node):
        if not isinstance(node.value, int):
            raise ValueError("only integer constants are allowed")
        # literals are integers, reduced into the prime field
        return RationalFunction.constant(self.ctx, self.ctx.from_int(node.value), self.s)

    def visit_Name(self, node):
        name = node.id
        if name == "theta":
            return RationalFunction.theta(self.ctx, self.s)
        if name == "g":
            return RationalFunction.constant(self.ctx, self.ctx.parse("g"), self.s)
        m = re.fullmatch(r"t(\d*)", name)
        if m:
            i = int(m.group(1) or 1) - 1
            if not 0 <= i < self.s:
                raise ValueError(f"variable {name} needs s >= {i + 1}")
            return RationalFunction.t(self.ctx, i, self.s)
        raise ValueError(f"unknown name {name!r}")

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            e = node.right
            sign = 1
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                sign, e = -1, e.operand
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise ValueError("exponents must be integer literals")
            return self.visit(node.left) ** (sign * e.value)
        a, b = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        return self.generic_visit(node)
