"""μ-polynomials over F_q(θ, t) and the digit ring R<Y>.

A monomial is a sorted tuple of ``((l, j), e)`` with ``e > 0``: the factor
μ^j(X_(l+1))^e.  Coefficients are exact :class:`RationalFunction` values and are
expanded into series only inside :func:`evaluate`.

Text format: ``coeff * X1^a * m(X1)^b * m2(X1)^c`` where ``m<k>`` is μ^k.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Sequence

from .field_tower import FieldContext
from .laurent import LaurentSeries
from .ratfunc import RationalFunction
from .tate import TateElement

__all__ = [
    "MuPolynomial",
    "TAME",
    "REGULAR_BY_DEPTH_ZERO",
    "CRITICAL_CANDIDATE",
    "UNKNOWN",
    "evaluate",
    "twist_coefficients",
    "shift",
    "classify",
    "reduce_mod_P",
    "phi_monomial",
    "phi_to_mu",
    "DigitPolynomial",
    "FieldRing",
    "RationalRing",
    "digits",
    "undigits",
    "carry_add",
    "digit_multiply",
]

TAME = "Tame"
REGULAR_BY_DEPTH_ZERO = "RegularByDepthZero"
CRITICAL_CANDIDATE = "CriticalCandidate"
UNKNOWN = "Unknown"


def _mono(factors: dict) -> tuple:
    return tuple(sorted((k, e) for k, e in factors.items() if e))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    out = dict(a)
    for k, e in b:
        out[k] = out.get(k, 0) + e
    return _mono(out)


class MuPolynomial:
    """Immutable μ-polynomial in ``n`` symbols."""

    __slots__ = ("ctx", "n", "s", "terms")

    def __init__(self, ctx: FieldContext, n: int, terms: dict | None = None, s: int = 0):
        self.ctx = ctx
        self.n = n
        clean = {}
        for mono, c in (terms or {}).items():
            if any(e < 0 for _, e in mono):
                raise ValueError("exponents must be non-negative")
            if any(not 0 <= l < n or j < 0 for (l, j), _ in mono):
                raise ValueError("symbol index out of range")
            s = max(s, c.s)
            if not c.is_zero():
                clean[_mono(dict(mono))] = c
        self.s = s
        self.terms = {m: c.extend(s) for m, c in clean.items()}

    # -- constructors ------------------------------------------------------------
    @classmethod
    def variable(cls, ctx, l: int = 0, j: int = 0, n: int = 1, s: int = 0) -> "MuPolynomial":
        """μ^j(X_(l+1))."""
        return cls(ctx, n, {(((l, j), 1),): RationalFunction.constant(ctx, 1, s)}, s)

    @classmethod
    def constant(cls, ctx, c, n: int = 1, s: int = 0) -> "MuPolynomial":
        if not isinstance(c, RationalFunction):
            c = RationalFunction.constant(ctx, c, s)
        return cls(ctx, n, {(): c}, max(s, c.s))

    @classmethod
    def parse(cls, ctx, text: str, n: int = 1, s: int = 0) -> "MuPolynomial":
        tree = ast.parse(text.replace("^", "**").replace("μ", "m"), mode="eval")
        return _MuBuilder(ctx, n, s).visit(tree.body)

    # -- structure -------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def depth(self) -> int:
        return max((j for mono in self.terms for (_, j), _ in mono), default=0)

    def depends_on_x(self) -> bool:
        return any(self.terms)

    def exponent_table(self, mono: tuple) -> list[list[int]]:
        k = self.depth
        table = [[0] * (k + 1) for _ in range(self.n)]
        for (l, j), e in mono:
            table[l][j] = e
        return table

    # -- arithmetic ------------------------------------------------------------------
    def _coerce(self, other) -> "MuPolynomial":
        if isinstance(other, MuPolynomial):
            if other.ctx is not self.ctx:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, RationalFunction)):
            return MuPolynomial.constant(self.ctx, other, self.n, self.s)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return MuPolynomial(self.ctx, max(self.n, o.n), out, max(self.s, o.s))

    __radd__ = __add__

    def __neg__(self):
        return MuPolynomial(self.ctx, self.n, {m: -c for m, c in self.terms.items()}, self.s)

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
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                m = _mono_mul(ma, mb)
                c = ca * cb
                out[m] = out[m] + c if m in out else c
        return MuPolynomial(self.ctx, max(self.n, o.n), out, max(self.s, o.s))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a μ-polynomial")
        out = MuPolynomial.constant(self.ctx, 1, self.n, self.s)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MuPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    # -- operations --------------------------------------------------------------------
    def evaluate(self, f: Sequence, N) -> TateElement:
        return evaluate(self, f, N)

    def twist(self) -> "MuPolynomial":
        return twist_coefficients(self)

    def shift(self) -> "MuPolynomial":
        return shift(self)

    def classify(self) -> str:
        return classify(self)

    def reduce_mod_P(self) -> "MuPolynomial":
        return reduce_mod_P(self)

    # -- output ------------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda mc: _sort_key(mc[0])):
            factors = [_factor_text(l, j, e) for (l, j), e in mono]
            cs = str(c)
            if factors and cs == "1":
                parts.append(" * ".join(factors))
            else:
                if factors and any(ch in cs for ch in "+-/ ") and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(" * ".join([cs] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MuPolynomial({self})"

    def to_json(self) -> dict:
        return {
            "symbols": self.n,
            "depth": self.depth,
            "terms": [{"coeff": str(c), "exponents": self.exponent_table(m)}
                      for m, c in sorted(self.terms.items(), key=lambda mc: _sort_key(mc[0]))],
        }

    @classmethod
    def from_json(cls, ctx, obj: dict, s: int = 0) -> "MuPolynomial":
        terms = {}
        for t in obj["terms"]:
            mono = _mono({(l, j): e for l, row in enumerate(t["exponents"]) for j, e in enumerate(row)})
            terms[mono] = RationalFunction.parse(ctx, t["coeff"], s)
        return cls(ctx, obj["symbols"], terms, s)


def _sort_key(mono):
    return (sum(e for _, e in mono), [(-j, -l, -e) for (l, j), e in reversed(mono)])


def _factor_text(l: int, j: int, e: int) -> str:
    base = f"X{l + 1}" if j == 0 else (f"m(X{l + 1})" if j == 1 else f"m{j}(X{l + 1})")
    return base if e == 1 else f"{base}^{e}"


class _MuBuilder(ast.NodeVisitor):
    def __init__(self, ctx, n, s):
        self.ctx, self.n, self.s = ctx, n, s

    def _const(self, node) -> MuPolynomial:
        text = ast.unparse(node)
        return MuPolynomial.constant(self.ctx, RationalFunction.parse(self.ctx, text, self.s), self.n, self.s)

    def _has_x(self, node) -> bool:
        return any(isinstance(x, ast.Name) and (x.id.startswith("X") or x.id.startswith("m"))
                   for x in ast.walk(node))

    def _symbol(self, name: str) -> int:
        if not name.startswith("X") or not name[1:].isdigit() or not 1 <= int(name[1:]) <= self.n:
            raise ValueError(f"unknown symbol {name!r}")
        return int(name[1:]) - 1

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {ast.unparse(node)}")

    def visit_Name(self, node):
        if node.id.startswith("X"):
            return MuPolynomial.variable(self.ctx, self._symbol(node.id), 0, self.n, self.s)
        return self._const(node)

    def visit_Constant(self, node):
        return self._const(node)

    def visit_Call(self, node):
        name = node.func.id if isinstance(node.func, ast.Name) else ""
        if not name.startswith("m") or len(node.args) != 1 or not isinstance(node.args[0], ast.Name):
            raise ValueError(f"unsupported call: {ast.unparse(node)}")
        j = int(name[1:]) if name[1:] else 1
        return MuPolynomial.variable(self.ctx, self._symbol(node.args[0].id), j, self.n, self.s)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        if not self._has_x(node):
            return self._const(node)
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ValueError("exponents must be integer literals")
            return self.visit(node.left) ** node.right.value
        left, right = self.visit(node.left), None
        if isinstance(node.op, ast.Div):
            if self._has_x(node.right):
                raise ValueError("division by a μ-polynomial")
            c = RationalFunction.parse(self.ctx, ast.unparse(node.right), self.s)
            return left * MuPolynomial.constant(self.ctx, 1 / c, self.n, self.s)
        right = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        return self.generic_visit(node)


# -- module-level operations -----------------------------------------------------------

def _as_tate(ctx, x, s: int) -> TateElement:
    if isinstance(x, TateElement):
        return x.extend(max(s, x.s))
    if isinstance(x, LaurentSeries):
        return TateElement.from_laurent(x, s)
    if isinstance(x, int):
        return TateElement(ctx, s, {0: (0, bytes([x]))} if x else {})
    if isinstance(x, RationalFunction):
        return x.to_tate(None, max(s, x.s))
    raise TypeError(f"cannot evaluate at {type(x).__name__}")


def evaluate(P: MuPolynomial, f: Sequence, N) -> TateElement:
    """Substitute μ^j(X_l) := μ^j(f_l) and sum with sound precision (capped at N)."""
    ctx = P.ctx
    if len(f) < P.n:
        raise ValueError(f"need {P.n} values, got {len(f)}")
    Nf = Fraction(N)
    s = max([P.s] + [x.s for x in f if isinstance(x, (TateElement, RationalFunction))])
    vals = [_as_tate(ctx, x, s) for x in f]
    cache: dict = {}

    def power(l, j, e):
        key = (l, j, e)
        if key not in cache:
            base = vals[l].mu(j) if j else vals[l]
            cache[key] = base ** e
        return cache[key]

    acc = TateElement.zero(ctx, s, Nf)
    for mono, c in P.terms.items():
        M = TateElement.one(ctx, s)
        for (l, j), e in mono:
            M = M * power(l, j, e)
        vM = M._v()
        if vM is None:  # exact zero
            continue
        if c.is_polynomial():
            C = c.to_tate(None, s)
        else:
            try:
                C = c.to_tate(Nf - Fraction(vM, ctx.D), s)
            except ValueError as exc:
                raise ValueError(f"coefficient {c} cannot be expanded: {exc}") from exc
        acc = acc + C * M
    return acc.truncate(Nf)


def twist_coefficients(P: MuPolynomial, m: int = 1) -> MuPolynomial:
    """P^μ: μ applied to every coefficient, monomials unchanged."""
    return MuPolynomial(P.ctx, P.n, {mono: c.mu(m) for mono, c in P.terms.items()}, P.s)


def shift(P: MuPolynomial) -> MuPolynomial:
    """μ(P): every μ-index raised by one, coefficients twisted."""
    out = {tuple(((l, j + 1), e) for (l, j), e in mono): c.mu(1) for mono, c in P.terms.items()}
    return MuPolynomial(P.ctx, P.n, out, P.s)


def classify(P: MuPolynomial) -> str:
    if P.is_zero():
        raise ValueError("cannot classify the zero polynomial")
    p = P.ctx.p
    if P.depth == 0:
        return REGULAR_BY_DEPTH_ZERO
    if all(e < p for mono in P.terms for _, e in mono):
        return TAME
    weights = {tuple(_weights(mono, P.n, p)) for mono in P.terms}
    if len(weights) == 1:
        return CRITICAL_CANDIDATE
    return UNKNOWN


def _weights(mono, n: int, p: int) -> list[int]:
    w = [0] * n
    for (l, j), e in mono:
        w[l] += e * p ** j
    return w


def _normal_form(mono: tuple, p: int) -> tuple:
    """Carry exponents upward from the lowest μ-index until all are < p."""
    out = dict(mono)
    for l in sorted({l for (l, _), _ in mono}):
        j = 0
        while any(ll == l and jj >= j for (ll, jj) in out):
            e = out.get((l, j), 0)
            if e >= p:
                out[(l, j)] = e % p
                out[(l, j + 1)] = out.get((l, j + 1), 0) + e // p
            j += 1
    return _mono(out)


def reduce_mod_P(P: MuPolynomial) -> MuPolynomial:
    """Tame representative modulo the ideal generated by X^(p^k) - μ^k(X)."""
    if P.n != 1:
        raise ValueError("reduce_mod_P takes a one-symbol μ-polynomial")
    p = P.ctx.p
    out: dict = {}
    for mono, c in P.terms.items():
        m = _normal_form(mono, p)
        out[m] = out[m] + c if m in out else c
    return MuPolynomial(P.ctx, 1, out, P.s)


# -- digit ring -----------------------------------------------------------------------

def digits(i: int, p: int) -> tuple[int, ...]:
    """Base-p digits of i, least significant first (empty for 0)."""
    out = []
    while i:
        i, r = divmod(i, p)
        out.append(r)
    return tuple(out)


def undigits(ds: Iterable[int], p: int) -> int:
    return sum(d * p ** k for k, d in enumerate(ds))


def carry_add(a: Sequence[int], b: Sequence[int], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Digits k and carries b with a_n + b_n + carry_(n-1) = k_n + p carry_n."""
    k, carries = [], []
    carry = 0
    for n in range(max(len(a), len(b))):
        total = (a[n] if n < len(a) else 0) + (b[n] if n < len(b) else 0) + carry
        carry, r = divmod(total, p)
        k.append(r)
        carries.append(carry)
    if carry:
        k.append(carry)
    while k and k[-1] == 0:
        k.pop()
    return tuple(k), tuple(carries)


def phi_monomial(ctx: FieldContext, i: int, symbol: int = 0, n: int = 1) -> MuPolynomial:
    """φ(Z^i) = Π_j μ^j(X)^(i_j) over the base-p digits of i."""
    mono = _mono({(symbol, j): d for j, d in enumerate(digits(i, ctx.p))})
    return MuPolynomial(ctx, n, {mono: RationalFunction.constant(ctx, 1)})


class FieldRing:
    """R = F_{q^2}, elements are codes."""

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.zero, self.one = 0, 1

    def add(self, a, b):
        return self.ctx.add(a, b)

    def mul(self, a, b):
        return self.ctx.mul(a, b)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_rational(self, a) -> RationalFunction:
        return RationalFunction.constant(self.ctx, a)

    def __eq__(self, other):
        return isinstance(other, FieldRing) and other.ctx is self.ctx

    def __hash__(self):
        return hash(("field", self.ctx.p, self.ctx.e))

    def __str__(self):
        return f"F_{self.ctx.Q}"


class RationalRing:
    """R = F_{q^2}(θ, t_1..t_s) elements as RationalFunction."""

    def __init__(self, ctx: FieldContext, s: int = 1):
        self.ctx, self.s = ctx, s
        self.zero = RationalFunction.constant(ctx, 0, s)
        self.one = RationalFunction.constant(ctx, 1, s)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def to_rational(self, a) -> RationalFunction:
        return a

    def __eq__(self, other):
        return isinstance(other, RationalRing) and other.ctx is self.ctx and other.s == self.s

    def __hash__(self):
        return hash(("rational", self.ctx.p, self.ctx.e, self.s))

    def __str__(self):
        return f"F_{self.ctx.Q}(θ, t)"


class DigitPolynomial:
    """Element Σ f_i <Y>^i of R<Y>, with <Y>^i = Π_j Y_j^(i_j)."""

    __slots__ = ("ring", "p", "coeffs")

    def __init__(self, ring, coeffs: dict | None = None):
        self.ring = ring
        self.p = ring.ctx.p
        self.coeffs = {i: c for i, c in (coeffs or {}).items() if not ring.is_zero(c)}
        if any(i < 0 for i in self.coeffs):
            raise ValueError("indices must be non-negative")

    @classmethod
    def monomial(cls, ring, i: int, c=None) -> "DigitPolynomial":
        return cls(ring, {i: ring.one if c is None else c})

    @classmethod
    def from_rz(cls, ring, coeffs: Sequence) -> "DigitPolynomial":
        """From an R[Z] element given low to high."""
        return cls(ring, dict(enumerate(coeffs)))

    def to_rz(self) -> list:
        if not self.coeffs:
            return []
        deg = max(self.coeffs)
        return [self.coeffs.get(i, self.ring.zero) for i in range(deg + 1)]

    def monomials(self) -> dict[tuple[int, ...], object]:
        """The Y-monomial view: digit vectors (i_0, i_1, ...) -> coefficient."""
        return {digits(i, self.p): c for i, c in self.coeffs.items()}

    def _check(self, other: "DigitPolynomial"):
        if not isinstance(other, DigitPolynomial) or other.ring != self.ring:
            raise ValueError("digit polynomials over different coefficient rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = self.ring.add(out[i], c) if i in out else c
        return DigitPolynomial(self.ring, out)

    def __mul__(self, other):
        return digit_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, DigitPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def to_mu(self, symbol: int = 0, n: int = 1) -> MuPolynomial:
        return phi_to_mu(self, n, symbol)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            ys = "*".join(f"Y{j}" + (f"^{d}" if d > 1 else "") for j, d in enumerate(digits(i, self.p)) if d)
            cs = self.ring.ctx.fmt(c) if isinstance(self.ring, FieldRing) else f"({c})"
            parts.append(cs if not ys else (ys if cs == "1" else f"{cs}*{ys}"))
        return " + ".join(parts)


def digit_multiply(f: DigitPolynomial, g: DigitPolynomial) -> DigitPolynomial:
    """Product <Y>^i <Y>^j = <Y>^k with k's digits from the carry recurrence."""
    f._check(g)
    ring, p = f.ring, f.p
    out: dict = {}
    gd = [(digits(j, p), c) for j, c in g.coeffs.items()]
    for i, a in f.coeffs.items():
        di = digits(i, p)
        for dj, b in gd:
            k = undigits(carry_add(di, dj, p)[0], p)
            c = ring.mul(a, b)
            out[k] = ring.add(out[k], c) if k in out else c
    return DigitPolynomial(ring, out)


def phi_to_mu(f: DigitPolynomial, n: int = 1, symbol: int = 0) -> MuPolynomial:
    """φ: Σ f_i <Y>^i -> Σ f_i Π_j μ^j(X)^(i_j), a tame μ-polynomial."""
    ctx = f.ring.ctx
    terms = {}
    for i, c in f.coeffs.items():
        mono = _mono({(symbol, j): d for j, d in enumerate(digits(i, f.p))})
        terms[mono] = f.ring.to_rational(c)
    return MuPolynomial(ctx, n, terms)
