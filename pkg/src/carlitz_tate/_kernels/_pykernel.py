"""Pure-Python series kernels over byte-coded F_{q^2}.

Same interface as the compiled ``_ckernel.CKernel``; selected when the
extension is missing or ``CARLITZ_TATE_BACKEND=python``.
"""
from __future__ import annotations


class PyKernel:
    backend = "python"

    def __init__(self, p: int, Q: int, add_tab: bytes, mul_tab: bytes, neg_tab: bytes, inv_tab: bytes):
        self.p = p
        self.Q = Q
        self._add = [list(add_tab[i * Q:(i + 1) * Q]) for i in range(Q)]
        pad = bytes(256 - Q)
        self._mulrows = [mul_tab[i * Q:(i + 1) * Q] + pad for i in range(Q)]
        self._neg = neg_tab
        self._inv = inv_tab

    def conv(self, a: bytes, b: bytes, n: int) -> bytes:
        """First ``n`` coefficients of the product of two coefficient strings."""
        la, lb = len(a), len(b)
        m = min(n, la + lb - 1)
        if m <= 0 or not la or not lb:
            return b""
        out = [0] * m
        add = self._add
        mulrows = self._mulrows
        for i in range(min(la, m)):
            x = a[i]
            if not x:
                continue
            bx = b[:m - i].translate(mulrows[x])
            for j, y in enumerate(bx, i):
                if y:
                    out[j] = add[out[j]][y]
        return bytes(out)

    def conv_acc(self, out: bytearray, off: int, a: bytes, b: bytes) -> None:
        """out[off + k] += (a*b)[k] wherever 0 <= off + k < len(out)."""
        lo = len(out)
        if off >= lo:
            return
        add = self._add
        mulrows = self._mulrows
        lb = len(b)
        for i, x in enumerate(a):
            if not x:
                continue
            base = off + i
            if base >= lo:
                break
            j0 = -base if base < 0 else 0
            j1 = min(lb, lo - base)
            if j0 >= j1:
                continue
            bx = b[j0:j1].translate(mulrows[x])
            for k, y in enumerate(bx, base + j0):
                if y:
                    out[k] = add[out[k]][y]

    def axpy(self, out: bytearray, off: int, c: int, a: bytes) -> None:
        """out[off + k] += c*a[k] wherever in range."""
        if not c:
            return
        lo = len(out)
        j0 = -off if off < 0 else 0
        j1 = min(len(a), lo - off)
        if j0 >= j1:
            return
        add = self._add
        seg = a[j0:j1] if c == 1 else a[j0:j1].translate(self._mulrows[c])
        for k, y in enumerate(seg, off + j0):
            if y:
                out[k] = add[out[k]][y]

    def inv_series(self, a: bytes, n: int) -> bytes:
        """First ``n`` coefficients of 1/a for a power series with a[0] != 0."""
        if n <= 0:
            return b""
        a0 = a[0]
        if not a0:
            raise ZeroDivisionError("constant term is zero")
        add = self._add
        mulrows = self._mulrows
        neg_c0 = self._neg[self._inv[a0]]
        la = len(a)
        y = [0] * n
        y[0] = self._inv[a0]
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, la - 1) + 1):
                x = a[i]
                if x:
                    z = y[k - i]
                    if z:
                        s = add[s][mulrows[x][z]]
            y[k] = mulrows[neg_c0][s] if s else 0
        return bytes(y)
