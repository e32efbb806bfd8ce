"""Finite fields F_p ⊂ F_q ⊂ F_{q^2} with byte-coded elements.

An element of F_{q^2} is an ``int`` in ``range(q*q)``.  Its base-p digits are
its coordinates in the basis ``1, g, ..., g^(2e-1)``, where ``g`` is a root of
the canonical modulus: the least primitive monic polynomial of degree 2e over
F_p, ordering candidates by their non-leading coefficients read as a base-p
integer (constant term least significant).  Because ``g`` is primitive,
multiplication goes through discrete-log tables.

F_p sits inside as the codes ``0..p-1`` and F_q as the fixed points of
``x -> x^q``.  All arithmetic tables are also exported as ``bytes`` so that the
series kernels can work on ``bytes`` coefficient strings directly.
"""
from __future__ import annotations

import functools
import itertools
import re
from typing import Iterator, Sequence

from ._kernels import make_kernel

__all__ = [
    "FieldConfig",
    "FieldContext",
    "FieldElement",
    "get_context",
    "frobenius",
    "zeta_ram",
    "enumerate_monic",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_is_irreducible",
]

MAX_ORDER = 256


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _digits(x: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _primitive_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least primitive monic polynomial of degree n over F_p (low to high)."""
    order = p**n - 1
    for m in range(p**n):
        low = _digits(m, p, n)
        if low[0] == 0:
            continue
        # walk powers of x in F_p[x]/(f) until we return to 1
        cur = [1] + [0] * (n - 1)
        k = 0
        while True:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * low[i]) % p for i, c in enumerate(cur)]
            k += 1
            if cur == [1] + [0] * (n - 1):
                break
        if k == order:
            return tuple(low) + (1,)
    raise AssertionError("no primitive polynomial found")


class FieldConfig:
    """Serializable description of the tower: p, e and the three moduli."""

    def __init__(self, p: int, e: int, modulus, subfield_modulus, quadratic_modulus):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self.subfield_modulus = tuple(subfield_modulus)
        self.quadratic_modulus = tuple(quadratic_modulus)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "modulus": list(self.modulus),
            "subfield_modulus": list(self.subfield_modulus),
            "quadratic_modulus": list(self.quadratic_modulus),
        }


class FieldContext:
    """Arithmetic in F_{q^2} plus everything derived from (p, e).

    Use :func:`get_context` instead of calling this directly so that equal
    parameters share one context (series compare contexts by identity).
    """

    def __init__(self, p: int, e: int = 1):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1:
            raise ValueError("e must be a positive integer")
        q = p**e
        Q = q * q
        if Q > MAX_ORDER:
            raise ValueError(f"q^2={Q} exceeds the supported order {MAX_ORDER}")
        self.p, self.e, self.q, self.Q = p, e, q, Q
        self.D = q - 1  # lattice denominator
        self.deg = 2 * e
        self.modulus = _primitive_modulus(p, self.deg)

        # exp/log tables for the primitive element g
        exp = [0] * (Q - 1)
        cur = [1] + [0] * (self.deg - 1)
        low = self.modulus[:-1]
        for k in range(Q - 1):
            exp[k] = _undigits(cur, p)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * low[i]) % p for i, c in enumerate(cur)]
        log = [0] * Q
        for k, x in enumerate(exp):
            log[x] = k
        self._exp, self._log = exp, log

        digs = [_digits(x, p, self.deg) for x in range(Q)]
        add = [[_undigits([(u + v) % p for u, v in zip(digs[a], digs[b])], p) for b in range(Q)]
               for a in range(Q)]
        neg = [_undigits([(-u) % p for u in digs[a]], p) for a in range(Q)]
        mul = [[0] * Q for _ in range(Q)]
        for a in range(1, Q):
            for b in range(1, Q):
                mul[a][b] = exp[(log[a] + log[b]) % (Q - 1)]
        inv = [0] + [exp[(-log[a]) % (Q - 1)] for a in range(1, Q)]
        self.add_t, self.mul_t, self.neg_t, self.inv_t = add, mul, neg, inv
        self.add_bytes = bytes(itertools.chain.from_iterable(add))
        self.mul_bytes = bytes(itertools.chain.from_iterable(mul))
        self.neg_bytes = bytes(neg)
        self.inv_bytes = bytes(inv)
        # 256-entry translation tables for bytes.translate
        pad = bytes(256 - Q)
        self.neg_trans = bytes(neg) + pad
        self.mul_trans = [bytes(mul[c]) + pad for c in range(Q)]
        self._frob_trans: dict[int, bytes] = {}

        self.fq = tuple(x for x in range(Q) if self.frob(x, e) == x)
        assert len(self.fq) == q
        self.minus_one = neg[1]
        self.zeta = next(x for x in range(1, Q) if self.pow(x, q - 1) == self.minus_one)
        self.kernel = make_kernel(p, Q, self.add_bytes, self.mul_bytes, self.neg_bytes,
                                  self.inv_bytes)

    # -- scalar arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_{q^2}")
        return self.inv_t[a]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.Q - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime field."""
        return n % self.p

    def frob(self, a: int, m: int = 1) -> int:
        """a^(p^m); negative m gives the p^|m|-th root."""
        if a == 0:
            return 0
        k = pow(self.p, m % self.deg)
        return self._exp[(self._log[a] * k) % (self.Q - 1)]

    def frob_trans(self, m: int) -> bytes:
        m %= self.deg
        t = self._frob_trans.get(m)
        if t is None:
            t = bytes(self.frob(x, m) for x in range(self.Q)) + bytes(256 - self.Q)
            self._frob_trans[m] = t
        return t

    def in_fq(self, a: int) -> bool:
        return self.frob(a, self.e) == a

    # -- config / serialization ----------------------------------------------------
    @functools.cached_property
    def config(self) -> FieldConfig:
        p, e, q = self.p, self.e, self.q
        h = self.pow(self._exp[1], q + 1)  # generator of F_q^x
        conj = [self.frob(h, k) for k in range(e)]
        poly = (1,)
        for r in conj:
            poly = poly_mul(self, poly, (self.neg(r), 1))
        assert all(c < p for c in poly)
        g = self._exp[1]
        quad = (self.pow(g, q + 1), self.neg(self.add(g, self.frob(g, e))), 1)
        return FieldConfig(p, e, self.modulus, poly, tuple(self.fmt(c) for c in quad))

    def fmt(self, a: int) -> str:
        """Polynomial-in-generator string ``c0+c1*g+c2*g^2``; F_p elements print bare."""
        ds = _digits(a, self.p, self.deg)
        if all(d == 0 for d in ds[1:]):
            return str(ds[0])
        parts = [str(ds[0])]
        for i, d in enumerate(ds[1:], 1):
            parts.append(f"{d}*g" if i == 1 else f"{d}*g^{i}")
        return "+".join(parts)

    _TERM = re.compile(r"^\s*(\d+)\s*(?:\*\s*g(?:\s*\^\s*(\d+))?)?\s*$|^\s*g(?:\s*\^\s*(\d+))?\s*$")

    def parse(self, s: str) -> int:
        ds = [0] * self.deg
        for part in str(s).split("+"):
            m = self._TERM.match(part)
            if not m:
                raise ValueError(f"cannot parse field element {s!r}")
            if m.group(1) is not None:
                c = int(m.group(1))
                i = 0 if "g" not in part else int(m.group(2) or 1)
            else:
                c, i = 1, int(m.group(3) or 1)
            if i >= self.deg:
                raise ValueError(f"generator power {i} out of range in {s!r}")
            ds[i] = (ds[i] + c) % self.p
        return _undigits(ds, self.p)

    def element(self, a) -> "FieldElement":
        return FieldElement(self, a)

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, e={self.e})"

    def __reduce__(self):
        return (get_context, (self.p, self.e))


@functools.lru_cache(maxsize=None)
def get_context(p: int, e: int = 1) -> FieldContext:
    return FieldContext(p, e)


def context_for_q(q: int) -> FieldContext:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not _is_prime(p):
                break
            return get_context(p, e)
    raise ValueError(f"q={q} is not a prime power")


class FieldElement:
    """A boxed F_{q^2} element; the series code works on raw codes instead."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldContext, v):
        self.ctx = ctx
        if isinstance(v, FieldElement):
            v = v.v
        elif isinstance(v, str):
            v = ctx.parse(v)
        elif not 0 <= v < ctx.Q:
            v = ctx.from_int(v)
        self.v = v

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("field elements from different contexts")
            return other.v
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.sub(o, self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.v, self.ctx.inv(o)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.v))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.v, n))

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.v == o

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.v))

    def __bool__(self):
        return self.v != 0

    def frobenius(self, m: int = 1) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.frob(self.v, m))

    def __str__(self):
        return self.ctx.fmt(self.v)

    def __repr__(self):
        return f"FieldElement({self.ctx.fmt(self.v)!r})"


def frobenius(x: FieldElement, m: int) -> FieldElement:
    """x^(p^m); for m < 0 the unique p^|m|-th root."""
    return x.frobenius(m)


def zeta_ram(ctx: FieldContext) -> FieldElement:
    """Smallest code ζ with ζ^(q-1) = -1; it fixes the root (-θ)^(1/(q-1)) = ζ·θ^(1/(q-1))."""
    return FieldElement(ctx, ctx.zeta)


def enumerate_monic(ctx: FieldContext, d: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of degree d over F_q as coefficient tuples (low to high).

    Order: the non-leading coefficient vector counts in base q with the
    constant term as least significant digit; digit k means ``ctx.fq[k]``.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    for combo in itertools.product(ctx.fq, repeat=d):
        yield combo[::-1] + (1,)


# -- univariate polynomials over F_{q^2}, tuples low to high, no trailing zeros ------

def poly_trim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_add(ctx, a, b) -> tuple[int, ...]:
    n = max(len(a), len(b))
    add = ctx.add_t
    return poly_trim(add[a[i] if i < len(a) else 0][b[i] if i < len(b) else 0] for i in range(n))


def poly_sub(ctx, a, b) -> tuple[int, ...]:
    return poly_add(ctx, a, tuple(ctx.neg_t[x] for x in b))


def poly_scale(ctx, c: int, a) -> tuple[int, ...]:
    row = ctx.mul_t[c]
    return poly_trim(row[x] for x in a)


def poly_mul(ctx, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    add, mul = ctx.add_t, ctx.mul_t
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return poly_trim(out)


def poly_divmod(ctx, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(a))
    if len(r) < len(b):
        return (), tuple(r)
    lead_inv = ctx.inv(b[-1])
    qt = [0] * (len(r) - len(b) + 1)
    for k in range(len(r) - len(b), -1, -1):
        c = ctx.mul(r[k + len(b) - 1], lead_inv)
        qt[k] = c
        if c:
            nc = ctx.neg(c)
            for j, y in enumerate(b):
                r[k + j] = ctx.add(r[k + j], ctx.mul(nc, y))
    return poly_trim(qt), poly_trim(r)


def poly_monic(ctx, a) -> tuple[int, ...]:
    a = poly_trim(a)
    return poly_scale(ctx, ctx.inv(a[-1]), a) if a else a


def poly_gcd(ctx, a, b) -> tuple[int, ...]:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(ctx, a, b)[1]
    return poly_monic(ctx, a)


def poly_powmod(ctx, a, n: int, m) -> tuple[int, ...]:
    result, base = (1,), poly_divmod(ctx, a, m)[1]
    while n:
        if n & 1:
            result = poly_divmod(ctx, poly_mul(ctx, result, base), m)[1]
        base = poly_divmod(ctx, poly_mul(ctx, base, base), m)[1]
        n >>= 1
    return result


def poly_is_irreducible(ctx, f, order: int | None = None) -> bool:
    """Ben-Or test over F_order (default F_q) for a polynomial with coefficients there."""
    f = poly_monic(ctx, f)
    n = len(f) - 1
    if n <= 0:
        return False
    order = ctx.q if order is None else order
    x = (0, 1)
    xp = x
    for _ in range(n // 2):
        xp = poly_powmod(ctx, xp, order, f)
        if len(poly_gcd(ctx, f, poly_sub(ctx, xp, x))) > 1:
            return False
    return True
