"""The skew polynomial ring F_{q^t}[x; sigma] with sigma(a) = a^q.

Coefficients sit to the left of powers of x, so ``f = sum f_i x^i`` and the
product obeys ``x a = sigma(a) x``.  Evaluation uses the twisted norms
``N_0(a) = 1``, ``N_{i+1}(a) = sigma(N_i(a)) a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf_tower import ExtensionField, FieldElement, FieldError, prime_field_rank

NEG_INF = float("-inf")

#: largest field for which conjugacy classes are materialised
MAX_ENUMERABLE = 2**20


class SkewPolynomial:
    """Immutable skew polynomial; ``coeffs[i]`` multiplies ``x^i`` on the left."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtensionField, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def x(cls, field: ExtensionField) -> "SkewPolynomial":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: ExtensionField, c) -> "SkewPolynomial":
        return cls(field, [c])

    @property
    def degree(self) -> int | float:
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _coerce(self, other) -> "SkewPolynomial":
        if isinstance(other, SkewPolynomial):
            if other.field != self.field:
                raise FieldError("skew polynomials over different fields")
            return other
        return SkewPolynomial(self.field, [other])

    def __add__(self, other):
        g = self._coerce(other)
        n = max(len(self.coeffs), len(g.coeffs))
        return SkewPolynomial(self.field, [self[i] + g[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SkewPolynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return skew_mul(self, self._coerce(other))

    def __rmul__(self, other):
        return skew_mul(self._coerce(other), self)

    def __call__(self, a: FieldElement) -> FieldElement:
        return skew_eval(self, a)

    def __eq__(self, other) -> bool:
        if isinstance(other, SkewPolynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (FieldElement, int)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "SkewPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c}){mono}")
        return "SkewPolynomial(" + " + ".join(terms) + ")"

    def to_json(self) -> list[list[int]]:
        return [c.to_coords() for c in self.coeffs]

    @classmethod
    def from_json(cls, field: ExtensionField, data: Sequence[Sequence[int]]) -> "SkewPolynomial":
        return cls(field, [field.from_coords(c) for c in data])


def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Product with ``(fg)_m = sum_{i+j=m} f_i sigma^i(g_j)``."""
    if f.field != g.field:
        raise FieldError("skew polynomials over different fields")
    F = f.field
    if f.is_zero() or g.is_zero():
        return SkewPolynomial(F)
    out = [F.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            if gj:
                out[i + j] = out[i + j] + fi * gj.frobenius(i)
    return SkewPolynomial(F, out)


def norm_iterate(i: int, a: FieldElement) -> FieldElement:
    """N_i(a); equals ``a^((q^i - 1)/(q - 1))``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    n = a.field.one
    for _ in range(i):
        n = n.frobenius() * a
    return n


def skew_eval(f: SkewPolynomial, a: FieldElement) -> FieldElement:
    """``f(a) = sum f_i N_i(a)``."""
    if a.field != f.field:
        raise FieldError("evaluation point from a different field")
    acc = f.field.zero
    n = f.field.one
    for i, c in enumerate(f.coeffs):
        if i:
            n = n.frobenius() * a
        if c:
            acc = acc + c * n
    return acc


def conjugate(a: FieldElement, beta: FieldElement) -> FieldElement:
    """The beta-conjugate ``sigma(beta) a beta^{-1}``."""
    if not beta:
        raise ZeroDivisionError("conjugation by zero")
    return beta.frobenius() * a / beta


@dataclass(frozen=True)
class ConjugacyClass:
    representative: FieldElement
    members: frozenset | None = None

    @property
    def size(self) -> int:
        F = self.representative.field
        if not self.representative:
            return 1
        return (F.order - 1) // (F.q - 1)

    def __contains__(self, b: FieldElement) -> bool:
        if self.members is not None:
            return b in self.members
        return are_conjugate(self.representative, b)


def class_index(a: FieldElement) -> int | None:
    """Index i such that ``a`` lies in the class of ``gamma^i``; None for 0.

    Conjugates share the norm ``a^((q^t-1)/(q-1))``, which lies in F_q*; the
    index is its discrete log to base ``N(gamma)``.
    """
    if not a:
        return None
    F = a.field
    e = (F.order - 1) // (F.q - 1)
    target = a**e
    g = F.gamma**e
    cur = F.one
    for i in range(F.q - 1):
        if cur == target:
            return i
        cur = cur * g
    raise AssertionError("norm outside F_q*")  # impossible in a field


def are_conjugate(a: FieldElement, b: FieldElement) -> bool:
    if not a or not b:
        return not a and not b
    return class_index(a) == class_index(b)


def conjugacy_partition(field: ExtensionField) -> list[ConjugacyClass]:
    """Classes of 0, gamma^0, ..., gamma^(q-2), with members materialised."""
    if field.order > MAX_ENUMERABLE:
        raise ValueError(f"field of size {field.order} too large to enumerate")
    q = field.q
    sub_order = (field.order - 1) // (q - 1)
    h = field.gamma ** (q - 1)
    # the (q-1)-th powers form the class of 1
    powers = [field.one]
    for _ in range(sub_order - 1):
        powers.append(powers[-1] * h)
    classes = [ConjugacyClass(field.zero, frozenset([field.zero]))]
    rep = field.one
    for _ in range(q - 1):
        classes.append(ConjugacyClass(rep, frozenset(rep * p for p in powers)))
        rep = rep * field.gamma
    return classes


def linearized_map(f: SkewPolynomial, a: FieldElement, beta: FieldElement) -> FieldElement:
    """``D_{f,a}(beta) = f(^beta a) beta``, with ``D(0) = 0``."""
    if not beta:
        return f.field.zero
    return skew_eval(f, conjugate(a, beta)) * beta


def linearized_matrix(f: SkewPolynomial, a: FieldElement) -> list[list[int]]:
    """Rows are the coordinates of D_{f,a} applied to the basis w^0..w^(t-1)."""
    return [linearized_map(f, a, b).to_coords() for b in f.field.basis()]


def kernel_dimension(f: SkewPolynomial, a: FieldElement) -> int:
    """dim over F_q of the kernel of D_{f,a}."""
    if f.is_zero():
        raise ValueError("kernel dimension of the zero polynomial")
    F = f.field
    if not a:
        # N_i(0) = 0 for i >= 1, so D_{f,0}(beta) = f_0 beta
        return F.t if not f[0] else 0
    return F.t - prime_field_rank(linearized_matrix(f, a), F.q)


def skew_vandermonde(
    k: int, omega: Sequence[FieldElement], field: ExtensionField | None = None
) -> np.ndarray:
    """k x n matrix with entries ``N_i(a_j)`` (int64 encodings)."""
    if field is None:
        if not omega:
            raise ValueError("field required for an empty point set")
        field = omega[0].field
    out = np.zeros((k, len(omega)), dtype=np.int64)
    for j, a in enumerate(omega):
        n = field.one
        for i in range(k):
            if i:
                n = n.frobenius() * a
            out[i, j] = n.value
    return out


def minimal_annihilator(
    points: Sequence[FieldElement], field: ExtensionField | None = None
) -> SkewPolynomial:
    """Monic skew polynomial vanishing on ``points``, built one point at a time.

    Points already annihilated are skipped, so the degree never exceeds the
    number of points.
    """
    if field is None:
        if not points:
            raise ValueError("field required for an empty point set")
        field = points[0].field
    f = SkewPolynomial(field, [1])
    x = SkewPolynomial.x(field)
    for c in points:
        v = skew_eval(f, c)
        if v:
            f = (x - conjugate(c, v)) * f
    return f
