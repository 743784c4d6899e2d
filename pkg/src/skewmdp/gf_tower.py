"""Exact arithmetic in F_q (q prime) and the extension F_{q^t}.

Elements use the polynomial basis ``1, w, ..., w^(t-1)`` where ``w`` is the
residue of the modulus variable.  Internally an element is the integer
``sum(c_i * q**i)``; matrices are numpy ``int64`` arrays of these encodings.

>>> F = make_extension(3, 2)
>>> F.modulus
(1, 0, 1)
>>> F.gamma.coords
(1, 1)
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._backend import make_kernel


class FieldError(ValueError):
    """Invalid field parameters or mixed-field operands."""


# -- integer helpers --------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_q (low degree first) --------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], q: int) -> list[int]:
    a = _trim([x % q for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], q - 2, q)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % q
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % q
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, q)


def _poly_powmod(a: list[int], e: int, m: list[int], q: int) -> list[int]:
    result = [1]
    a = _poly_mod(a, m, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, a, m, q)
        e >>= 1
        if e:
            a = _poly_mulmod(a, a, m, q)
    return result


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a = _trim([x % q for x in a])
    b = _trim([x % q for x in b])
    while b:
        a, b = b, _poly_mod(a, b, q)
    return a


def _sub_x(a: list[int], q: int) -> list[int]:
    a = a + [0] * max(0, 2 - len(a))
    a[1] = (a[1] - 1) % q
    return _trim(a)


def is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Rabin's test for a monic polynomial over F_q given low degree first."""
    m = [int(c) % q for c in modulus]
    t = len(m) - 1
    if t < 1 or m[-1] != 1:
        return False
    if t == 1:
        return True
    # cheap rejections: linear factors
    if m[0] == 0:
        return False
    for r in range(1, q):
        acc = 0
        for c in reversed(m):
            acc = (acc * r + c) % q
        if acc == 0:
            return False
    x = [0, 1]
    # x^(q^i) mod m for i = 0..t
    frob = [x]
    for _ in range(t):
        frob.append(_poly_powmod(frob[-1], q, m, q))
    if _sub_x(frob[t], q):
        return False
    for p in prime_factors(t):
        g = _poly_gcd(m, _sub_x(frob[t // p], q), q)
        if len(g) > 1:
            return False
    return True


def prime_field_rank(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of an integer matrix over F_q by Gaussian elimination."""
    m = [[int(v) % q for v in row] for row in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], q - 2, q)
        for i in range(rank + 1, len(m)):
            f = m[i][c] * inv % q
            if f:
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


# -- fields -----------------------------------------------------------------


class BaseField:
    """The prime field F_q."""

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_prime(q):
            raise FieldError(f"q must be prime, got {q!r}")
        if q < 3:
            raise FieldError("q must be at least 3")
        self.q = q

    def __repr__(self) -> str:
        return f"BaseField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("BaseField", self.q))


class ExtensionField:
    """F_{q^t} = F_q[w] / (modulus).

    Use :func:`make_extension` for the canonical modulus and primitive
    element; the constructor accepts explicit choices (e.g. when loading a
    serialized descriptor) and validates them.
    """

    def __init__(
        self,
        q: int,
        t: int,
        modulus: Sequence[int],
        gamma: Sequence[int] | None = None,
        backend: str | None = None,
    ):
        self.base = BaseField(q)
        if not isinstance(t, int) or t < 1:
            raise FieldError(f"extension degree must be >= 1, got {t!r}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != t + 1 or modulus[-1] != 1 or any(not 0 <= c < q for c in modulus):
            raise FieldError("modulus must be monic of degree t with coefficients in [0, q)")
        if not is_irreducible(modulus, q):
            raise FieldError(f"modulus {modulus} is reducible over F_{q}")
        self.q = q
        self.t = t
        self.order = q**t
        self.modulus = modulus
        self.kernel = make_kernel(q, t, modulus, backend)
        if gamma is None:
            self._gamma = self._find_primitive()
        else:
            g = self.kernel.pack(self._check_coords(gamma))
            if not self._is_primitive(g):
                raise FieldError(f"{tuple(gamma)} is not a primitive element")
            self._gamma = g

    # identity -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"ExtensionField(q={self.q}, t={self.t}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and other.q == self.q
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __len__(self) -> int:
        return self.order

    # primitive element ----------------------------------------------------

    @cached_property
    def _order_factors(self) -> list[int]:
        return prime_factors(self.order - 1)

    def _is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.order - 1
        return all(self.kernel.pow(a, n // p) != 1 for p in self._order_factors)

    def _find_primitive(self) -> int:
        for coords in product(range(self.q), repeat=self.t):
            a = self.kernel.pack(coords)
            if self._is_primitive(a):
                return a
        raise FieldError("no primitive element found")  # unreachable for a field

    # element construction -------------------------------------------------

    def _check_coords(self, v: Iterable[int]) -> list[int]:
        v = [int(c) for c in v]
        if len(v) != self.t:
            raise FieldError(f"expected {self.t} coordinates, got {len(v)}")
        if any(not 0 <= c < self.q for c in v):
            raise FieldError(f"coordinates must lie in [0, {self.q})")
        return v

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (base-field scalar, reduced mod q) or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.q)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def from_coords(self, v: Iterable[int]) -> "FieldElement":
        return FieldElement(self, self.kernel.pack(self._check_coords(v)))

    def from_int(self, value: int) -> "FieldElement":
        """Element with internal encoding ``value``."""
        value = int(value)
        if not 0 <= value < self.order:
            raise FieldError(f"encoding {value} out of range")
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def w(self) -> "FieldElement":
        """Residue of the modulus variable."""
        if self.t > 1:
            return FieldElement(self, self.q)
        return FieldElement(self, (-self.modulus[0]) % self.q)

    @property
    def gamma(self) -> "FieldElement":
        return FieldElement(self, self._gamma)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.order):
            yield FieldElement(self, v)

    def base_elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def basis(self) -> list["FieldElement"]:
        return [FieldElement(self, self.q**i) for i in range(self.t)]

    # matrices ---------------------------------------------------------------

    def matrix(self, rows) -> np.ndarray:
        """Encode a nested sequence of elements / ints as an int64 array."""
        return np.array(
            [[self._encode(x) for x in row] for row in rows], dtype=np.int64
        ).reshape(len(rows), -1)

    def _encode(self, x) -> int:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError("element belongs to a different field")
            return x.value
        return int(x)

    def rank(self, mat) -> int:
        return self.kernel.rank(mat)

    def det(self, mat) -> "FieldElement":
        return FieldElement(self, self.kernel.det(mat))

    def rref(self, mat) -> tuple[np.ndarray, list[int]]:
        return self.kernel.rref(mat)

    def vecmat(self, u, mat) -> np.ndarray:
        return self.kernel.vecmat(np.asarray(u, dtype=np.int64), mat)

    def solve_left(self, mat, target) -> np.ndarray:
        """Unique u with ``u @ mat == target``; raises if none or not unique."""
        m = np.asarray(mat, dtype=np.int64)
        aug = np.concatenate([m.T, np.asarray(target, dtype=np.int64)[:, None]], axis=1)
        red, pivots = self.kernel.rref(aug)
        nvars = m.shape[0]
        if nvars in pivots:
            raise np.linalg.LinAlgError("inconsistent system")
        if len(pivots) < nvars:
            raise np.linalg.LinAlgError("system has no unique solution")
        return red[:nvars, nvars].copy()

    # serialization --------------------------------------------------------

    def descriptor(self) -> dict:
        return {
            "q": self.q,
            "t": self.t,
            "modulus": list(self.modulus),
            "gamma": list(self.gamma.coords),
        }

    @classmethod
    def from_descriptor(cls, d: dict, backend: str | None = None) -> "ExtensionField":
        try:
            return cls(int(d["q"]), int(d["t"]), d["modulus"], d["gamma"], backend=backend)
        except (KeyError, TypeError) as exc:
            raise FieldError(f"malformed field descriptor: {exc}") from exc


def make_extension(q: int, t: int, backend: str | None = None) -> ExtensionField:
    """Canonical F_{q^t}: lexicographically smallest monic irreducible modulus
    and lexicographically smallest primitive element.

    Lexicographic order compares coordinate tuples ``(c_0, ..., c_{t-1})``
    with ``c_0`` most significant.
    """
    if not isinstance(q, int) or not is_prime(q):
        raise FieldError(f"q must be prime, got {q!r}")
    if q < 3:
        raise FieldError("q must be at least 3")
    if not isinstance(t, int) or t < 1:
        raise FieldError(f"extension degree must be >= 1, got {t!r}")
    for low in product(range(q), repeat=t):
        modulus = (*low, 1)
        if is_irreducible(modulus, q):
            return ExtensionField(q, t, modulus, backend=backend)
    raise FieldError(f"no irreducible polynomial of degree {t} over F_{q}")  # unreachable


class FieldElement:
    """Immutable element of an :class:`ExtensionField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: ExtensionField, value: int):
        self.field = field
        self.value = value

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.field.kernel.unpack(self.value))

    def to_coords(self) -> list[int]:
        return list(self.coords)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.q
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.kernel.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.kernel.mul(self.value, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.kernel.inv(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        k = self.field.kernel
        return FieldElement(self.field, k.mul(self.value, k.inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        k = self.field.kernel
        return FieldElement(self.field, k.mul(b, k.inv(self.value)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.kernel.pow(self.value, int(e)))

    def frobenius(self, i: int = 1) -> "FieldElement":
        """``a^(q^i)``; the exponent is reduced modulo t."""
        if i < 0:
            raise ValueError("iteration count must be nonnegative")
        f = self.field
        return FieldElement(f, f.kernel.pow(self.value, f.q ** (i % f.t)))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def in_base_field(self) -> bool:
        return self.value < self.field.q

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.field.modulus, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"


def frobenius(a: FieldElement, i: int = 1) -> FieldElement:
    return a.frobenius(i)


def from_coords(field: ExtensionField, v: Iterable[int]) -> FieldElement:
    return field.from_coords(v)


def to_coords(a: FieldElement) -> list[int]:
    return a.to_coords()
