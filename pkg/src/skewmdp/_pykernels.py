"""Pure-Python arithmetic kernels for F_{q^t}.

Elements are encoded as integers ``sum(c_i * q**i)`` where ``c_i`` is the
i-th coordinate in the polynomial basis ``1, w, ..., w^(t-1)``.  Matrices are
2-D integer arrays (numpy or nested lists) of such encodings.

This module mirrors ``_ckernels.pyx`` exactly; the compiled module is used
when present.
"""

from __future__ import annotations

from itertools import product

import numpy as np


#: inverses memoised per kernel; the table is dropped when it fills up
_INV_CACHE_SIZE = 1 << 16


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


class FieldKernel:
    """Scalar and dense linear-algebra kernels over one extension field."""

    backend = "python"

    def __init__(self, q: int, t: int, modulus):
        modulus = [int(c) for c in modulus]
        if len(modulus) != t + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree t")
        self.q = q
        self.t = t
        self.order = q**t
        self._pw = [q**i for i in range(t)]
        self._modulus = modulus
        self._inv_cache: dict[int, int] = {}
        # coords of w^d for d = t .. 2t-2
        self._red = []
        cur = [(-c) % q for c in modulus[:t]]
        for _ in range(max(t - 1, 0)):
            self._red.append(cur)
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                nxt = [(a - top * m) % q for a, m in zip(nxt, modulus[:t])]
            cur = nxt

    # -- scalar arithmetic -------------------------------------------------

    def unpack(self, a: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.t):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def pack(self, digits) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.q + d
        return v

    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        q = self.q
        v = 0
        p = 1
        while a or b:
            a, x = divmod(a, q)
            b, y = divmod(b, q)
            s = x + y
            if s >= q:
                s -= q
            v += s * p
            p *= q
        return v

    def neg(self, a: int) -> int:
        q = self.q
        v = 0
        p = 1
        while a:
            a, x = divmod(a, q)
            if x:
                v += (q - x) * p
            p *= q
        return v

    def sub(self, a: int, b: int) -> int:
        if not b:
            return a
        q = self.q
        v = 0
        p = 1
        while a or b:
            a, x = divmod(a, q)
            b, y = divmod(b, q)
            s = x - y
            if s < 0:
                s += q
            v += s * p
            p *= q
        return v

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        q, t = self.q, self.t
        if a < q and b < q:
            return a * b % q
        x = self.unpack(a)
        y = self.unpack(b)
        c = [0] * (2 * t - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        c[i + j] += xi * yj
        for d in range(2 * t - 2, t - 1, -1):
            cd = c[d] % q
            if cd:
                for i, r in enumerate(self._red[d - t]):
                    c[i] += cd * r
        v = 0
        for i in range(t - 1, -1, -1):
            v = v * q + c[i] % q
        return v

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero in finite field")
        hit = self._inv_cache.get(a)
        if hit is not None:
            return hit
        v = self._inv_euclid(a)
        if len(self._inv_cache) >= _INV_CACHE_SIZE:
            self._inv_cache.clear()
        self._inv_cache[a] = v
        return v

    def _inv_euclid(self, a: int) -> int:
        """Extended Euclid in F_q[w] against the modulus."""
        q = self.q
        r0, r1 = list(self._modulus), _trim(self.unpack(a))
        s0, s1 = [0], [1]
        while len(r1) > 1:
            # one polynomial long division r0 = quot * r1 + rem
            rem = r0[:]
            lead = pow(r1[-1], q - 2, q)
            quot = [0] * (len(rem) - len(r1) + 1)
            for d in range(len(rem) - len(r1), -1, -1):
                c = rem[d + len(r1) - 1] * lead % q
                quot[d] = c
                if c:
                    for i, v in enumerate(r1):
                        rem[d + i] = (rem[d + i] - c * v) % q
            rem = _trim(rem[: len(r1) - 1] or [0])
            prod = [0] * (len(quot) + len(s1) - 1)
            for i, x in enumerate(quot):
                if x:
                    for j, y in enumerate(s1):
                        prod[i + j] += x * y
            width = max(len(s0), len(prod))
            s_new = _trim([((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % q
                           for i in range(width)])
            r0, r1, s0, s1 = r1, rem, s1, s_new
        # r1 is a nonzero constant since the modulus is irreducible
        c = pow(r1[0], q - 2, q)
        out = [(v * c) % q for v in s1] + [0] * self.t
        return self.pack(out[: self.t])

    # -- dense linear algebra ---------------------------------------------

    def _echelon(self, rows: list[list[int]], ncols: int, reduced: bool):
        """In-place row echelon form; returns (pivots, swap parity)."""
        nrows = len(rows)
        pivots = []
        swaps = 0
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if rows[i][c]), -1)
            if piv < 0:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                swaps += 1
            prow = rows[r]
            if reduced:
                s = self.inv(prow[c])
                prow = rows[r] = [self.mul(s, v) for v in prow]
                targets = [i for i in range(nrows) if i != r]
            else:
                s = self.inv(prow[c])
                targets = range(r + 1, nrows)
            for i in targets:
                f = rows[i][c]
                if not f:
                    continue
                if not reduced:
                    f = self.mul(f, s)
                row = rows[i]
                for cc in range(c, len(row)):
                    if prow[cc]:
                        row[cc] = self.sub(row[cc], self.mul(f, prow[cc]))
            pivots.append(c)
            r += 1
        return pivots, swaps

    def rank(self, mat) -> int:
        rows = [list(map(int, row)) for row in np.asarray(mat, dtype=np.int64)]
        if not rows:
            return 0
        pivots, _ = self._echelon(rows, len(rows[0]), reduced=False)
        return len(pivots)

    def det(self, mat) -> int:
        m = np.asarray(mat, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("determinant needs a square matrix")
        n = m.shape[0]
        if n == 0:
            return 1
        rows = [list(map(int, row)) for row in m]
        pivots, swaps = self._echelon(rows, n, reduced=False)
        if len(pivots) < n:
            return 0
        d = 1
        for i in range(n):
            d = self.mul(d, rows[i][i])
        return self.neg(d) if swaps % 2 else d

    def rref(self, mat):
        m = np.asarray(mat, dtype=np.int64)
        rows = [list(map(int, row)) for row in m]
        ncols = m.shape[1] if m.ndim == 2 else 0
        pivots, _ = self._echelon(rows, ncols, reduced=True)
        return np.array(rows, dtype=np.int64).reshape(m.shape), pivots

    def vecmat(self, u, mat) -> np.ndarray:
        m = np.asarray(mat, dtype=np.int64)
        out = [0] * m.shape[1]
        for ui, row in zip(map(int, u), m.tolist()):
            if not ui:
                continue
            for c, v in enumerate(row):
                if v:
                    out[c] = self.add(out[c], self.mul(ui, v))
        return np.array(out, dtype=np.int64)

    def min_weight(self, mat, k_first: int):
        """Minimum Hamming weight of ``u @ mat`` over u with u[:k_first] != 0.

        Messages are normalised so their first nonzero coordinate is 1, which
        leaves weights unchanged.  Returns ``(weight, u)`` for the first
        minimiser in enumeration order.
        """
        rows = [list(map(int, r)) for r in np.asarray(mat, dtype=np.int64)]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        best = ncols + 1
        best_u: list[int] = []
        elems = range(self.order)
        for p in range(min(k_first, nrows)):
            base = rows[p]
            free = nrows - p - 1
            # partial[l] = codeword after fixing the first l free positions
            partial = [list(base)] + [None] * free
            prev: tuple = ()
            for digits in product(elems, repeat=free):
                # first position whose digit changed since the last leaf
                start = 0
                if prev:
                    while digits[start] == prev[start]:
                        start += 1
                for lvl in range(start, free):
                    e = digits[lvl]
                    src = partial[lvl]
                    if e:
                        row = rows[p + 1 + lvl]
                        partial[lvl + 1] = [
                            self.add(s, self.mul(e, v)) if v else s
                            for s, v in zip(src, row)
                        ]
                    else:
                        partial[lvl + 1] = src
                prev = digits
                w = sum(1 for v in partial[free] if v)
                if w < best:
                    best = w
                    best_u = [0] * p + [1] + list(digits)
        return best, best_u
