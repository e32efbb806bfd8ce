# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled series kernels over byte-coded F_{q^2} (q^2 <= 256)."""
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from cpython.bytearray cimport PyByteArray_AS_STRING
from libc.string cimport memset


cdef class CKernel:
    cdef unsigned char add_t[256][256]
    cdef unsigned char mul_t[256][256]
    cdef unsigned char neg_t[256]
    cdef unsigned char inv_t[256]
    cdef readonly int p
    cdef readonly int Q

    backend = "c"

    def __init__(self, int p, int Q, bytes add_tab, bytes mul_tab, bytes neg_tab, bytes inv_tab):
        cdef int i, j
        if Q > 256 or len(add_tab) != Q * Q or len(mul_tab) != Q * Q:
            raise ValueError("bad table sizes")
        self.p = p
        self.Q = Q
        memset(self.add_t, 0, sizeof(self.add_t))
        memset(self.mul_t, 0, sizeof(self.mul_t))
        memset(self.neg_t, 0, sizeof(self.neg_t))
        memset(self.inv_t, 0, sizeof(self.inv_t))
        for i in range(Q):
            self.neg_t[i] = neg_tab[i]
            self.inv_t[i] = inv_tab[i]
            for j in range(Q):
                self.add_t[i][j] = add_tab[i * Q + j]
                self.mul_t[i][j] = mul_tab[i * Q + j]

    def conv(self, bytes a, bytes b, Py_ssize_t n):
        cdef Py_ssize_t la = len(a), lb = len(b), m, i, j, jmax
        cdef const unsigned char* pa = a
        cdef const unsigned char* pb = b
        cdef unsigned char* r
        cdef unsigned char x, y
        cdef unsigned char* row
        m = la + lb - 1
        if n < m:
            m = n
        if m <= 0 or la == 0 or lb == 0:
            return b""
        res = PyBytes_FromStringAndSize(NULL, m)
        r = <unsigned char*> PyBytes_AS_STRING(res)
        memset(r, 0, m)
        for i in range(la if la < m else m):
            x = pa[i]
            if x == 0:
                continue
            row = self.mul_t[x]
            jmax = m - i
            if lb < jmax:
                jmax = lb
            for j in range(jmax):
                y = pb[j]
                if y:
                    r[i + j] = self.add_t[r[i + j]][row[y]]
        return res

    def conv_acc(self, bytearray out, Py_ssize_t off, bytes a, bytes b):
        cdef Py_ssize_t lo = len(out), la = len(a), lb = len(b), i, j, j0, j1, base
        cdef const unsigned char* pa = a
        cdef const unsigned char* pb = b
        cdef unsigned char* r = <unsigned char*> PyByteArray_AS_STRING(out)
        cdef unsigned char x, y
        cdef unsigned char* row
        for i in range(la):
            x = pa[i]
            if x == 0:
                continue
            base = off + i
            if base >= lo:
                break
            j0 = -base if base < 0 else 0
            j1 = lo - base
            if lb < j1:
                j1 = lb
            row = self.mul_t[x]
            for j in range(j0, j1):
                y = pb[j]
                if y:
                    r[base + j] = self.add_t[r[base + j]][row[y]]

    def axpy(self, bytearray out, Py_ssize_t off, int c, bytes a):
        cdef Py_ssize_t lo = len(out), la = len(a), j, j0, j1
        cdef const unsigned char* pa = a
        cdef unsigned char* r = <unsigned char*> PyByteArray_AS_STRING(out)
        cdef unsigned char y
        cdef unsigned char* row
        if c == 0:
            return
        row = self.mul_t[c]
        j0 = -off if off < 0 else 0
        j1 = lo - off
        if la < j1:
            j1 = la
        for j in range(j0, j1):
            y = pa[j]
            if y:
                r[off + j] = self.add_t[r[off + j]][row[y]]

    def inv_series(self, bytes a, Py_ssize_t n):
        cdef Py_ssize_t la = len(a), k, i, imax
        cdef const unsigned char* pa = a
        cdef unsigned char* y
        cdef unsigned char s, x, z, negc
        if n <= 0:
            return b""
        if la == 0 or pa[0] == 0:
            raise ZeroDivisionError("constant term is zero")
        res = PyBytes_FromStringAndSize(NULL, n)
        y = <unsigned char*> PyBytes_AS_STRING(res)
        memset(y, 0, n)
        y[0] = self.inv_t[pa[0]]
        negc = self.neg_t[y[0]]
        for k in range(1, n):
            s = 0
            imax = k if k < la - 1 else la - 1
            for i in range(1, imax + 1):
                x = pa[i]
                if x:
                    z = y[k - i]
                    if z:
                        s = self.add_t[s][self.mul_t[x][z]]
            y[k] = self.mul_t[negc][s] if s else 0
        return res
