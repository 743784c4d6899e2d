# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled arithmetic kernels for F_{q^t}.

Same encoding and API as ``_pykernels.FieldKernel``.  Limited to
``q < 2**31``, ``t <= 32`` and ``q**t < 2**62``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    MAXT = 32


cdef class FieldKernel:
    cdef readonly int64_t q
    cdef readonly int t
    cdef readonly int64_t order
    cdef int64_t red[MAXT][MAXT]

    backend = "cython"

    def __init__(self, int64_t q, int t, modulus):
        cdef int i, d
        cdef int64_t top
        cdef int64_t cur[MAXT]
        cdef int64_t nxt[MAXT]
        mod = [int(c) for c in modulus]
        if len(mod) != t + 1 or mod[t] != 1:
            raise ValueError("modulus must be monic of degree t")
        if t < 1 or t > MAXT or q >= (1 << 31) or (<object>q) ** t >= (1 << 62):
            raise OverflowError("field too large for the compiled kernel")
        self.q = q
        self.t = t
        self.order = (<object>q) ** t
        for i in range(t):
            cur[i] = (-mod[i]) % q
        for d in range(t - 1):
            for i in range(t):
                self.red[d][i] = cur[i]
            top = cur[t - 1]
            nxt[0] = 0
            for i in range(1, t):
                nxt[i] = cur[i - 1]
            for i in range(t):
                nxt[i] = (nxt[i] - top * (mod[i] % q)) % q
                if nxt[i] < 0:
                    nxt[i] += q
            for i in range(t):
                cur[i] = nxt[i]

    # -- scalar arithmetic -------------------------------------------------

    cdef inline int64_t _add(self, int64_t a, int64_t b) nogil:
        cdef int64_t v = 0, p = 1, x, y, s
        cdef int64_t q = self.q
        if a == 0:
            return b
        if b == 0:
            return a
        while a or b:
            x = a % q
            a = a // q
            y = b % q
            b = b // q
            s = x + y
            if s >= q:
                s -= q
            v += s * p
            p *= q
        return v

    cdef inline int64_t _sub(self, int64_t a, int64_t b) nogil:
        cdef int64_t v = 0, p = 1, x, y, s
        cdef int64_t q = self.q
        if b == 0:
            return a
        while a or b:
            x = a % q
            a = a // q
            y = b % q
            b = b // q
            s = x - y
            if s < 0:
                s += q
            v += s * p
            p *= q
        return v

    cdef inline int64_t _neg(self, int64_t a) nogil:
        return self._sub(0, a)

    cdef int64_t _mul(self, int64_t a, int64_t b) nogil:
        cdef int64_t x[MAXT]
        cdef int64_t y[MAXT]
        cdef int64_t c[2 * MAXT]
        cdef int i, j, d
        cdef int t = self.t
        cdef int64_t q = self.q, v, cd
        if a == 0 or b == 0:
            return 0
        if a < q and b < q:
            return (a * b) % q
        for i in range(t):
            x[i] = a % q
            a = a // q
            y[i] = b % q
            b = b // q
        for i in range(2 * t - 1):
            c[i] = 0
        for i in range(t):
            if x[i]:
                for j in range(t):
                    if y[j]:
                        c[i + j] = (c[i + j] + x[i] * y[j]) % q
        d = 2 * t - 2
        while d >= t:
            cd = c[d]
            if cd:
                for i in range(t):
                    if self.red[d - t][i]:
                        c[i] = (c[i] + cd * self.red[d - t][i]) % q
            d -= 1
        v = 0
        i = t - 1
        while i >= 0:
            v = v * q + c[i]
            i -= 1
        return v

    cdef int64_t _pow(self, int64_t a, int64_t e) nogil:
        cdef int64_t result = 1
        while e:
            if e & 1:
                result = self._mul(result, a)
            e >>= 1
            if e:
                a = self._mul(a, a)
        return result

    cdef inline int64_t _inv(self, int64_t a) nogil:
        return self._pow(a, self.order - 2)

    def add(self, int64_t a, int64_t b):
        return self._add(a, b)

    def sub(self, int64_t a, int64_t b):
        return self._sub(a, b)

    def neg(self, int64_t a):
        return self._neg(a)

    def mul(self, int64_t a, int64_t b):
        return self._mul(a, b)

    def pow(self, int64_t a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        return self._pow(a, e)

    def inv(self, int64_t a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._inv(a)

    def unpack(self, int64_t a):
        out = []
        for _ in range(self.t):
            out.append(a % self.q)
            a //= self.q
        return out

    def pack(self, digits):
        v = 0
        for d in reversed(list(digits)):
            v = v * self.q + int(d)
        return v

    # -- dense linear algebra ---------------------------------------------

    cdef int _echelon(self, int64_t[:, ::1] m, int ncols, bint reduced,
                      int* swaps, int* pivots) nogil:
        cdef int nrows = m.shape[0], width = m.shape[1]
        cdef int r = 0, c, i, cc, piv
        cdef int64_t s, f, tmp
        swaps[0] = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for cc in range(width):
                    tmp = m[r, cc]
                    m[r, cc] = m[piv, cc]
                    m[piv, cc] = tmp
                swaps[0] += 1
            s = self._inv(m[r, c])
            if reduced:
                for cc in range(c, width):
                    if m[r, cc]:
                        m[r, cc] = self._mul(s, m[r, cc])
            for i in range(nrows):
                if i == r or (not reduced and i < r):
                    continue
                f = m[i, c]
                if f == 0:
                    continue
                if not reduced:
                    f = self._mul(f, s)
                for cc in range(c, width):
                    if m[r, cc]:
                        m[i, cc] = self._sub(m[i, cc], self._mul(f, m[r, cc]))
            pivots[r] = c
            r += 1
        return r

    def rank(self, mat):
        cdef cnp.ndarray[int64_t, ndim=2] a = np.array(mat, dtype=np.int64, ndmin=2, order="C")
        cdef int swaps, r
        if a.shape[0] == 0 or a.shape[1] == 0:
            return 0
        cdef int* piv = <int*>malloc(a.shape[0] * sizeof(int))
        try:
            r = self._echelon(a, a.shape[1], False, &swaps, piv)
        finally:
            free(piv)
        return r

    def det(self, mat):
        cdef cnp.ndarray[int64_t, ndim=2] a = np.array(mat, dtype=np.int64, ndmin=2, order="C")
        cdef int swaps, r, i, n
        cdef int64_t d = 1
        if a.shape[0] != a.shape[1]:
            raise ValueError("determinant needs a square matrix")
        n = a.shape[0]
        if n == 0:
            return 1
        cdef int* piv = <int*>malloc(n * sizeof(int))
        try:
            r = self._echelon(a, n, False, &swaps, piv)
        finally:
            free(piv)
        if r < n:
            return 0
        for i in range(n):
            d = self._mul(d, a[i, i])
        return self._neg(d) if swaps % 2 else d

    def rref(self, mat):
        m = np.asarray(mat, dtype=np.int64)
        cdef cnp.ndarray[int64_t, ndim=2] a = np.array(m, dtype=np.int64, ndmin=2, order="C")
        cdef int swaps, r
        if a.shape[0] == 0 or a.shape[1] == 0:
            return a.reshape(m.shape), []
        cdef int* piv = <int*>malloc(a.shape[0] * sizeof(int))
        try:
            r = self._echelon(a, a.shape[1], True, &swaps, piv)
            pivots = [piv[i] for i in range(r)]
        finally:
            free(piv)
        return a.reshape(m.shape), pivots

    def vecmat(self, u, mat):
        cdef int64_t[:, ::1] m = np.ascontiguousarray(mat, dtype=np.int64)
        cdef int64_t[::1] uu = np.ascontiguousarray(u, dtype=np.int64)
        out_arr = np.zeros(m.shape[1], dtype=np.int64)
        cdef int64_t[::1] out = out_arr
        cdef int i, c
        for i in range(m.shape[0]):
            if uu[i] == 0:
                continue
            for c in range(m.shape[1]):
                if m[i, c]:
                    out[c] = self._add(out[c], self._mul(uu[i], m[i, c]))
        return out_arr

    def min_weight(self, mat, int k_first):
        """Minimum weight of ``u @ mat`` over u with u[:k_first] != 0."""
        cdef int64_t[:, ::1] m = np.array(mat, dtype=np.int64, ndmin=2, order="C")
        cdef int nrows = m.shape[0], ncols = m.shape[1]
        cdef int best = ncols + 1
        cdef int p, free_n, lvl, c, w
        cdef int64_t e
        cdef int64_t Q = self.order
        part_arr = np.zeros((nrows + 1, ncols), dtype=np.int64)
        digit_arr = np.zeros(nrows + 1, dtype=np.int64)
        best_arr = np.zeros(nrows, dtype=np.int64)
        cdef int64_t[:, ::1] part = part_arr
        cdef int64_t[::1] digits = digit_arr
        cdef int64_t[::1] bestu = best_arr
        if nrows == 0:
            return best, []
        with nogil:
            for p in range(min(k_first, nrows)):
                free_n = nrows - p - 1
                for c in range(ncols):
                    part[0, c] = m[p, c]
                for lvl in range(free_n):
                    digits[lvl] = 0
                    for c in range(ncols):
                        part[lvl + 1, c] = part[lvl, c]
                while True:
                    w = 0
                    for c in range(ncols):
                        if part[free_n, c]:
                            w += 1
                    if w < best:
                        best = w
                        for c in range(nrows):
                            bestu[c] = 0
                        bestu[p] = 1
                        for lvl in range(free_n):
                            bestu[p + 1 + lvl] = digits[lvl]
                    # odometer step, innermost position last
                    lvl = free_n - 1
                    while lvl >= 0:
                        digits[lvl] += 1
                        if digits[lvl] < Q:
                            break
                        digits[lvl] = 0
                        lvl -= 1
                    if lvl < 0:
                        break
                    e = digits[lvl]
                    for c in range(ncols):
                        if m[p + 1 + lvl, c]:
                            part[lvl + 1, c] = self._add(part[lvl, c], self._mul(e, m[p + 1 + lvl, c]))
                        else:
                            part[lvl + 1, c] = part[lvl, c]
                    lvl += 1
                    while lvl < free_n:
                        for c in range(ncols):
                            part[lvl + 1, c] = part[lvl, c]
                        lvl += 1
        if best > ncols:
            return best, []
        return best, [int(v) for v in best_arr]
