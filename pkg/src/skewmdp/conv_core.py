"""Convolutional codes over F_{q^t}: degrees, truncated matrices, column
distances and the full-size-minor test for a maximum distance profile.

A generator matrix ``G(D) = G_0 + G_1 D + ... + G_m D^m`` is stored as the
tuple of its coefficient matrices.  Column indices in reports are 1-based.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .gf_tower import ExtensionField, FieldError

#: hard cap on enumeration states for exact distance computations
ENUMERATION_LIMIT = 10**7


class InfeasibleError(RuntimeError):
    """Exact computation would exceed the enumeration limit."""


class PreconditionError(ValueError):
    """Input violates a hypothesis of the requested check."""


class PolyMatrix:
    """k x n matrix of polynomials in D, stored as coefficient matrices."""

    def __init__(self, field: ExtensionField, coeffs: Sequence):
        blocks = [np.array(c, dtype=np.int64, ndmin=2) for c in coeffs]
        if not blocks:
            raise ValueError("need at least one coefficient matrix")
        shape = blocks[0].shape
        if any(b.shape != shape for b in blocks):
            raise ValueError("coefficient matrices must share one shape")
        if any(((b < 0) | (b >= field.order)).any() for b in blocks):
            raise FieldError("entries outside the field")
        while len(blocks) > 1 and not blocks[-1].any():
            blocks.pop()
        for b in blocks:
            b.flags.writeable = False
        self.field = field
        self.coeffs: tuple[np.ndarray, ...] = tuple(blocks)

    @property
    def k(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[1]

    @property
    def memory(self) -> int:
        return len(self.coeffs) - 1

    def block(self, i: int) -> np.ndarray:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return np.zeros((self.k, self.n), dtype=np.int64)

    def entry_degrees(self) -> np.ndarray:
        """Degree of each entry, -1 for zero entries."""
        deg = np.full((self.k, self.n), -1, dtype=np.int64)
        for i, b in enumerate(self.coeffs):
            deg[b != 0] = i
        return deg

    def __repr__(self) -> str:
        return f"PolyMatrix(k={self.k}, n={self.n}, memory={self.memory}, field={self.field!r})"


@dataclass(frozen=True)
class DegreeStats:
    row_degrees: tuple[int, ...]
    memory: int
    overall_constraint_length: int
    generic_row_degrees: bool


def degree_stats(G: PolyMatrix) -> DegreeStats:
    rows = G.entry_degrees().max(axis=1)
    if (rows < 0).any():
        raise ValueError("generator matrix has a zero row")
    m = int(rows.max())
    nu = tuple(int(v) for v in rows)
    return DegreeStats(nu, m, sum(nu), all(v in (m, m - 1) for v in nu))


def highest_order_matrix(G: PolyMatrix) -> np.ndarray:
    rows = G.entry_degrees().max(axis=1)
    out = np.zeros((G.k, G.n), dtype=np.int64)
    for i, d in enumerate(rows):
        if d >= 0:
            out[i] = G.coeffs[d][i]
    return out


def is_minimal(G: PolyMatrix) -> bool:
    return G.field.rank(highest_order_matrix(G)) == G.k


# -- truncated matrices -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedMatrix:
    """G_j^c (kind "generator") or H_j^c (kind "parity").

    ``rows_per_block`` is k for a generator and n - k for a parity check;
    ``code_dim`` is the dimension of the code either way.
    """

    kind: str
    j: int
    n: int
    rows_per_block: int
    matrix: np.ndarray
    field: ExtensionField

    @property
    def code_dim(self) -> int:
        if self.kind == "generator":
            return self.rows_per_block
        return self.n - self.rows_per_block

    def block(self, r: int, c: int) -> np.ndarray:
        rb, n = self.rows_per_block, self.n
        return self.matrix[r * rb:(r + 1) * rb, c * n:(c + 1) * n]


def truncate(G: PolyMatrix, j: int, kind: str = "generator") -> TruncatedMatrix:
    """Assemble the j-th truncated matrix from the coefficient blocks.

    Generator kind puts ``G_{c-r}`` at block (r, c) for c >= r; parity kind
    puts ``H_{r-c}`` at block (r, c) for r >= c.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    if kind not in ("generator", "parity"):
        raise ValueError(f"unknown kind {kind!r}")
    rb, n = G.k, G.n
    out = np.zeros((rb * (j + 1), n * (j + 1)), dtype=np.int64)
    for r in range(j + 1):
        for c in range(j + 1):
            d = c - r if kind == "generator" else r - c
            if 0 <= d <= G.memory:
                out[r * rb:(r + 1) * rb, c * n:(c + 1) * n] = G.coeffs[d]
    return TruncatedMatrix(kind, j, n, rb, out, G.field)


def qualifying_column_sets(T: TruncatedMatrix, rule: str = "structural") -> Iterator[tuple[int, ...]]:
    """0-based column sets whose full-size minor must be nonzero.

    Generator kind: at most ``k s`` chosen columns among the first ``n s``,
    s = 1..j.  Parity kind: at least ``r s`` among the first ``n s``.  Under
    ``rule="structural"`` r is the block row count n - k, so exactly the
    minors that are not zero by block shape qualify.  ``rule="literal"`` uses
    the code dimension k for r, a stricter filter that for k > n - k can
    leave no sets at all.
    """
    if rule not in ("structural", "literal"):
        raise ValueError(f"unknown rule {rule!r}")
    n, j = T.n, T.j
    size = T.rows_per_block * (j + 1)
    ncols = n * (j + 1)
    if T.kind == "generator":
        lim = T.rows_per_block
        for cols in combinations(range(ncols), size):
            if all(cols[lim * s] >= n * s for s in range(1, j + 1)):
                yield cols
        return
    lim = T.rows_per_block if rule == "structural" else T.code_dim
    for cols in combinations(range(ncols), size):
        ok = True
        for s in range(1, j + 1):
            need = lim * s
            if need > size or (need > 0 and cols[need - 1] >= n * s):
                ok = False
                break
        if ok:
            yield cols


def count_qualifying_sets(T: TruncatedMatrix, rule: str = "structural") -> int:
    return sum(1 for _ in qualifying_column_sets(T, rule))


@dataclass(frozen=True)
class MinorCheck:
    ok: bool
    kind: str
    j: int
    minors_checked: int
    witness: tuple[int, ...] | None = None  # 1-based columns of a zero minor

    def __bool__(self) -> bool:
        return self.ok


def mdp_minor_check(T: TruncatedMatrix, rule: str = "structural") -> MinorCheck:
    """Check that every qualifying full-size minor of ``T`` is nonzero."""
    det = T.field.kernel.det
    m = T.matrix
    checked = 0
    for cols in qualifying_column_sets(T, rule):
        checked += 1
        if det(m[:, cols]) == 0:
            return MinorCheck(False, T.kind, T.j, checked, tuple(c + 1 for c in cols))
    return MinorCheck(True, T.kind, T.j, checked)


# -- Singleton-type bounds --------------------------------------------------


@dataclass(frozen=True)
class SingletonData:
    n: int
    k: int
    delta: int
    free_bound: int
    L: int
    M: int

    def column_bound(self, j: int) -> int:
        return (self.n - self.k) * (j + 1) + 1


def singleton_data(n: int, k: int, delta: int) -> SingletonData:
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if delta < 0:
        raise ValueError("degree must be nonnegative")
    free = (n - k) * (delta // k + 1) + delta + 1
    L = delta // k + delta // (n - k)
    M = delta // k + -(-delta // (n - k))
    return SingletonData(n, k, delta, free, L, M)


# -- distances ----------------------------------------------------------------


def _require_full_rank_g0(G: PolyMatrix) -> None:
    if G.field.rank(G.coeffs[0]) != G.k:
        raise PreconditionError("column distance needs G_0 of full rank")


def message_engine_states(G: PolyMatrix, j: int) -> int:
    return G.field.order ** (G.k * (j + 1))


def support_engine_states(G: PolyMatrix, j: int) -> int:
    N = G.n * (j + 1)
    bound = (G.n - G.k) * (j + 1) + 1
    return sum(comb(N, s) for s in range(1, min(bound, N) + 1))


def _cd_message(G: PolyMatrix, j: int) -> int:
    T = truncate(G, j)
    w, _ = G.field.kernel.min_weight(T.matrix, G.k)
    return w


def _cd_support(G: PolyMatrix, j: int) -> int:
    """Smallest s such that some s columns can hold a codeword with u_0 != 0.

    Outside a candidate support T the codeword vanishes, so u lies in the left
    kernel of the remaining columns A.  A kernel vector with u_0 != 0 exists
    iff ``dim ker A > dim ker A[k:]``, i.e. ``k - rank A + rank A[k:] > 0``.
    """
    rank = G.field.kernel.rank
    M = truncate(G, j).matrix
    k = G.k
    N = M.shape[1]
    for s in range(1, N + 1):
        for support in combinations(range(N), s):
            keep = [c for c in range(N) if c not in support]
            if not keep:
                return s
            A = M[:, keep]
            if k - rank(A) + rank(A[k:]) > 0:
                return s
    raise AssertionError("unreachable: full support always admits a codeword")


def column_distance_exact(G: PolyMatrix, j: int, engine: str = "auto") -> int:
    """Exact j-th column distance.

    ``engine`` is "message" (enumerate u), "support" (enumerate column
    supports with rank tests) or "auto" (message when small enough).
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    _require_full_rank_g0(G)
    msg_ok = message_engine_states(G, j) <= ENUMERATION_LIMIT
    sup_ok = support_engine_states(G, j) <= ENUMERATION_LIMIT
    if engine == "auto":
        engine = "message" if msg_ok else "support" if sup_ok else ""
        if not engine:
            raise InfeasibleError(f"column distance at j={j} exceeds the enumeration limit")
    if engine == "message":
        if not msg_ok:
            raise InfeasibleError("message enumeration exceeds the limit")
        return _cd_message(G, j)
    if engine == "support":
        if not sup_ok:
            raise InfeasibleError("support enumeration exceeds the limit")
        return _cd_support(G, j)
    raise ValueError(f"unknown engine {engine!r}")


@dataclass(frozen=True)
class FreeDistanceBound:
    weight: int
    max_deg: int
    message_degree: int
    message: tuple[int, ...]

    @property
    def converged(self) -> bool:
        """Minimiser found strictly inside the searched degree range."""
        return self.message_degree < self.max_deg


def free_distance_upper(G: PolyMatrix, max_deg: int) -> FreeDistanceBound:
    """Minimum weight of ``u(D) G(D)`` over nonzero u with deg u <= max_deg.

    Shifting by D preserves weight, so it suffices to enumerate u with
    ``u_0 != 0``.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    k, n, m = G.k, G.n, G.memory
    if G.field.order ** (k * (max_deg + 1)) > ENUMERATION_LIMIT:
        raise InfeasibleError(f"free-distance search to degree {max_deg} exceeds the limit")
    full = np.zeros((k * (max_deg + 1), n * (max_deg + m + 1)), dtype=np.int64)
    for r in range(max_deg + 1):
        for d in range(m + 1):
            full[r * k:(r + 1) * k, (r + d) * n:(r + d + 1) * n] = G.coeffs[d]
    w, u = G.field.kernel.min_weight(full, k)
    deg = max((i // k for i, v in enumerate(u) if v), default=0)
    return FreeDistanceBound(w, max_deg, deg, tuple(u))


# -- MDP --------------------------------------------------------------------


@dataclass(frozen=True)
class MdpResult:
    is_mdp: bool
    delta: int
    L: int
    minors_checked: int
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_mdp

    def to_dict(self) -> dict:
        d = {"is_mdp": self.is_mdp, "L": self.L, "delta": self.delta,
             "minors_checked": self.minors_checked}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def _generator_of(code) -> PolyMatrix:
    return code if isinstance(code, PolyMatrix) else code.generator


def is_mdp(code) -> MdpResult:
    """Decide MDP via the minor test on G_L^c for a minimal generator with
    generic row degrees (which then is also basic)."""
    G = _generator_of(code)
    if not is_minimal(G):
        raise PreconditionError("generator matrix is not minimal")
    stats = degree_stats(G)
    if not stats.generic_row_degrees:
        raise PreconditionError("generator matrix lacks generic row degrees")
    delta = stats.overall_constraint_length
    L = singleton_data(G.n, G.k, delta).L
    chk = mdp_minor_check(truncate(G, L))
    return MdpResult(chk.ok, delta, L, chk.minors_checked, chk.witness)


# -- profiles -----------------------------------------------------------------


@dataclass
class DistanceProfile:
    n: int
    k: int
    delta: int | None
    distances: list[int] = field(default_factory=list)
    free_bound: int | None = None
    L: int | None = None
    M: int | None = None
    free_upper: FreeDistanceBound | None = None

    def bound(self, j: int) -> int:
        return (self.n - self.k) * (j + 1) + 1

    @property
    def bounds(self) -> list[int]:
        return [self.bound(j) for j in range(len(self.distances))]

    @property
    def met(self) -> list[bool]:
        return [d == b for d, b in zip(self.distances, self.bounds)]

    @property
    def is_mdp(self) -> bool | None:
        """None when L is unknown or beyond the computed range."""
        if self.L is None or self.L >= len(self.distances):
            return None
        return self.distances[self.L] == self.bound(self.L)

    @property
    def is_strongly_mds(self) -> bool | None:
        if self.M is None or self.M >= len(self.distances):
            return None
        return self.distances[self.M] == self.free_bound

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["j", "d_j_c", "bound", "met"])
        for j, (d, b, ok) in enumerate(zip(self.distances, self.bounds, self.met)):
            writer.writerow([j, d, b, "yes" if ok else "no"])
        return buf.getvalue()


def distance_profile(G: PolyMatrix, jmax: int, engine: str = "auto") -> DistanceProfile:
    """Column distances d_0^c .. d_jmax^c with the matching bounds.

    The degree is reported only for minimal generators (then it equals the
    overall constraint length); otherwise ``delta``, ``L`` and ``M`` are None.
    """
    delta = degree_stats(G).overall_constraint_length if is_minimal(G) else None
    prof = DistanceProfile(G.n, G.k, delta)
    if delta is not None:
        sd = singleton_data(G.n, G.k, delta)
        prof.free_bound, prof.L, prof.M = sd.free_bound, sd.L, sd.M
    prof.distances = [column_distance_exact(G, j, engine) for j in range(jmax + 1)]
    return prof
