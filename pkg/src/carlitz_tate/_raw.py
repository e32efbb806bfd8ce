"""Raw truncated series used by every series type.

A raw series is a pair ``(start, data)``: ``data[i]`` is the coefficient code of
``θ^(-(start+i)/D)`` where ``D = q-1``.  Exponents are handled as integer
*lattice indices* throughout; ``(0, b"")`` is zero.  Normalized series have
non-zero first and last bytes.  A precision ``prec`` is a lattice index (terms
with index >= prec are unknown) or ``None`` for exact.
"""
from __future__ import annotations

ZERO = (0, b"")


def norm(start: int, data) -> tuple[int, bytes]:
    data = bytes(data)
    n = len(data)
    data = data.lstrip(b"\0")
    if not data:
        return ZERO
    return start + n - len(data), data.rstrip(b"\0")


def trunc(r, prec):
    if prec is None:
        return r
    s, d = r
    if s + len(d) <= prec:
        return r
    if s >= prec:
        return ZERO
    return norm(s, d[:prec - s])


def end(r) -> int:
    return r[0] + len(r[1])


def min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


def add(ctx, a, b, prec=None):
    if not a[1]:
        return trunc(b, prec)
    if not b[1]:
        return trunc(a, prec)
    lo = min(a[0], b[0])
    hi = max(end(a), end(b))
    if prec is not None and prec < hi:
        hi = prec
    if hi <= lo:
        return ZERO
    out = bytearray(hi - lo)
    seg = a[1][:hi - a[0]]
    out[a[0] - lo:a[0] - lo + len(seg)] = seg
    ctx.kernel.axpy(out, b[0] - lo, 1, b[1])
    return norm(lo, out)


def neg(ctx, a):
    return (a[0], a[1].translate(ctx.neg_trans)) if a[1] else ZERO


def sub(ctx, a, b, prec=None):
    return add(ctx, a, neg(ctx, b), prec)


def scale(ctx, c: int, a):
    if not c or not a[1]:
        return ZERO
    if c == 1:
        return a
    return a[0], a[1].translate(ctx.mul_trans[c])


def shift(a, k: int):
    """Multiply by θ^(-k/D)."""
    return (a[0] + k, a[1]) if a[1] else ZERO


def mul(ctx, a, b, prec=None):
    if not a[1] or not b[1]:
        return ZERO
    start = a[0] + b[0]
    n = len(a[1]) + len(b[1]) - 1
    if prec is not None:
        n = min(n, prec - start)
        if n <= 0:
            return ZERO
    return norm(start, ctx.kernel.conv(a[1], b[1], n))


def inv(ctx, a, prec):
    """1/a known below lattice index ``prec``."""
    if not a[1]:
        raise ZeroDivisionError("zero divisor at working precision")
    start = -a[0]
    n = prec - start
    if n <= 0:
        return ZERO
    return norm(start, ctx.kernel.inv_series(a[1], n))


def is_monomial(a) -> bool:
    return len(a[1]) == 1


def mu(ctx, a, m: int):
    """Coefficient Frobenius p^m together with exponent scaling by p^m."""
    if not a[1] or m == 0:
        return a
    s, d = a
    P = ctx.p ** abs(m)
    tr = ctx.frob_trans(m)
    if m > 0:
        out = bytearray(len(d) * P - (P - 1))
        out[::P] = d.translate(tr)
        return s * P, bytes(out)
    if s % P:
        raise ValueError(f"not in the image of μ^{-m}")
    kept = d[::P]
    if len(d) - d.count(0) != len(kept) - kept.count(0):
        raise ValueError(f"not in the image of μ^{-m}")
    return s // P, kept.translate(tr)


def poly(ctx, coeffs, D: int):
    """Exact raw series of a θ-polynomial given low to high (codes)."""
    deg = len(coeffs) - 1
    if deg < 0:
        return ZERO
    out = bytearray(deg * D + 1)
    for i, c in enumerate(coeffs):
        out[(deg - i) * D] = c
    return norm(-deg * D, out)


def power(ctx, a, n: int):
    """Exact a^n for an exact raw series."""
    result = (0, b"\x01")
    base = a
    while n:
        if n & 1:
            result = mul(ctx, result, base)
        n >>= 1
        if n:
            base = mul(ctx, base, base)
    return result


def items(a):
    """(lattice index, code) pairs of the non-zero terms."""
    s, d = a
    return [(s + i, c) for i, c in enumerate(d) if c]
