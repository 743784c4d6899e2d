"""Unit-memory MDP convolutional codes from skew Vandermonde matrices.

For ``t = 2k`` and a prime ``q >= max(3, n)`` the generator is
``G(D) = G_0 + G_1 D`` with

    G_0[j, i] = N_j(^{alpha_i} 1) alpha_i
    G_1[j, i] = N_j(^{beta_i} gamma) beta_i

where ``alpha_i = (1, l_i, ..., l_i^(k-1), 0, ..., 0)`` and
``beta_i = (1, l_i, ..., l_i^(t-1))`` in coordinates, for distinct
``l_1, ..., l_n`` in F_q.  For ``n > 2k`` the code is an (n, k, k) MDP code
and its dual an (n, n-k, k) MDP code.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .conv_core import (
    PolyMatrix,
    is_mdp,
    is_minimal,
    mdp_minor_check,
    singleton_data,
    truncate,
)
from .gf_tower import ExtensionField, FieldElement, is_prime, make_extension, next_prime
from .skew_poly import conjugate, norm_iterate

SCHEMA_VERSION = 1


class ConstructionError(ValueError):
    """Parameters outside the construction's range."""


class VerificationError(RuntimeError):
    """A property guaranteed by the construction failed to verify."""


class HypothesisWarning(UserWarning):
    """Parameters outside the range where MDP is guaranteed (n <= 2k)."""


@dataclass(frozen=True)
class EvaluationPoints:
    lambdas: tuple[int, ...]
    alphas: tuple[FieldElement, ...]
    betas: tuple[FieldElement, ...]


@dataclass(eq=False)
class ConvCode:
    n: int
    k: int
    q: int
    t: int
    field: ExtensionField
    G0: np.ndarray
    G1: np.ndarray
    points: EvaluationPoints | None = None
    verified: dict = field(default_factory=dict)

    @property
    def generator(self) -> PolyMatrix:
        return PolyMatrix(self.field, [self.G0, self.G1])

    @property
    def field_size(self) -> int:
        return self.field.order

    def to_json(self) -> dict:
        enc = lambda M: [[self.field.from_int(v).to_coords() for v in row] for row in M]
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "t": self.t,
            "field": self.field.descriptor(),
            "lambdas": list(self.points.lambdas) if self.points else None,
            "G0": enc(self.G0),
            "G1": enc(self.G1),
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data: dict, backend: str | None = None) -> "ConvCode":
        """Rebuild a code from its export; raises ValueError on malformed input."""
        try:
            if data.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
                raise ValueError(f"unsupported schema {data.get('schema')!r}")
            F = ExtensionField.from_descriptor(data["field"], backend=backend)
            n, k = int(data["n"]), int(data["k"])
            G0 = F.matrix([[F.from_coords(c) for c in row] for row in data["G0"]])
            G1 = F.matrix([[F.from_coords(c) for c in row] for row in data["G1"]])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed code file: {exc}") from exc
        if G0.shape != (k, n) or G1.shape != (k, n):
            raise ValueError(f"generator blocks must be {k}x{n}")
        if int(data.get("q", F.q)) != F.q or int(data.get("t", F.t)) != F.t:
            raise ValueError("q/t disagree with the field descriptor")
        points = None
        lambdas = data.get("lambdas")
        if lambdas is not None:
            points = _points_from_lambdas(F, k, [int(v) for v in lambdas])
        return cls(n, k, F.q, F.t, F, G0, G1, points, dict(data.get("verified") or {}))


def default_q(n: int) -> int:
    """Smallest prime >= max(3, n)."""
    return next_prime(max(3, n))


def _points_from_lambdas(F: ExtensionField, k: int, lambdas) -> EvaluationPoints:
    q, t = F.q, F.t
    alphas = tuple(
        F.from_coords([pow(l, e, q) for e in range(k)] + [0] * (t - k)) for l in lambdas
    )
    betas = tuple(F.from_coords([pow(l, e, q) for e in range(t)]) for l in lambdas)
    return EvaluationPoints(tuple(lambdas), alphas, betas)


def build_points(
    n: int, k: int, q: int, field: ExtensionField, lambda_seed: int | None = None
) -> EvaluationPoints:
    """Distinct lambdas 0..n-1 of F_q (or a seeded sample) and the induced
    alphas and betas."""
    if q < 3:
        raise ConstructionError("q must be at least 3")
    if n > q:
        raise ConstructionError(f"need n <= q distinct lambdas, got n={n}, q={q}")
    if field.q != q or field.t != 2 * k:
        raise ConstructionError("field must be F_{q^(2k)}")
    if lambda_seed is None:
        lambdas = list(range(n))
    else:
        lambdas = random.Random(lambda_seed).sample(range(q), n)
    return _points_from_lambdas(field, k, lambdas)


def build_generator(points: EvaluationPoints, field: ExtensionField, k: int | None = None):
    """(G0, G1) as int64 encodings; k defaults to t/2."""
    if k is None:
        k = field.t // 2
    n = len(points.lambdas)
    G0 = np.zeros((k, n), dtype=np.int64)
    G1 = np.zeros((k, n), dtype=np.int64)
    one, gamma = field.one, field.gamma
    for i, (a, b) in enumerate(zip(points.alphas, points.betas)):
        ca = conjugate(one, a)
        cb = conjugate(gamma, b)
        for j in range(k):
            G0[j, i] = (norm_iterate(j, ca) * a).value
            G1[j, i] = (norm_iterate(j, cb) * b).value
    return G0, G1


# -- verification -------------------------------------------------------------


def _singular_subset(field: ExtensionField, M: np.ndarray) -> tuple[int, ...] | None:
    k = M.shape[0]
    for cols in combinations(range(M.shape[1]), k):
        if field.kernel.det(M[:, cols]) == 0:
            return tuple(c + 1 for c in cols)
    return None


def verify_construction(code: ConvCode) -> dict:
    """Every k x k submatrix of G0 and G1 is nonsingular, and G(D) is minimal."""
    F = code.field
    w0 = _singular_subset(F, code.G0)
    w1 = _singular_subset(F, code.G1)
    G = code.generator
    minimal = G.memory == 1 and is_minimal(G)
    report = {
        "ok": w0 is None and w1 is None and minimal,
        "G0_submatrices_nonsingular": w0 is None,
        "G1_submatrices_nonsingular": w1 is None,
        "minimal": minimal,
        "submatrices_checked": 2 * len(list(combinations(range(code.n), code.k))),
    }
    if w0 is not None:
        report["G0_witness"] = list(w0)
    if w1 is not None:
        report["G1_witness"] = list(w1)
    return report


def verify_mdp_guarantee(code: ConvCode) -> dict:
    """MDP check for n > 2k: delta = k, L = 1 and d_1^c = 2(n-k) + 1."""
    if code.n <= 2 * code.k:
        raise ConstructionError("MDP guarantee requires n > 2k")
    res = is_mdp(code)
    out = res.to_dict()
    if res.is_mdp:
        out["column_distance_L"] = (code.n - code.k) * (res.L + 1) + 1
    return out


def verify_dual_mdp(code: ConvCode, rule: str = "structural") -> dict:
    """Minor test on H_{L'}^c with H := G(D) for the (n, n-k, k) dual code."""
    n, k = code.n, code.k
    sd = singleton_data(n, n - k, k)
    T = truncate(code.generator, sd.L, kind="parity")
    chk = mdp_minor_check(T, rule=rule)
    out = {"dual_mdp": chk.ok, "L": sd.L, "dual_params": [n, n - k, k],
           "rule": rule, "minors_checked": chk.minors_checked}
    if chk.witness is not None:
        out["witness"] = list(chk.witness)
    return out


def field_size_report(code: ConvCode) -> dict:
    n, q, k = code.n, code.q, code.k
    cap = 2 * max(3, n)
    return {
        "field_size": q ** (2 * k),
        "q": q,
        "q_cap": cap,
        "q_within_cap": q <= cap,
        "field_size_cap": cap ** (2 * k),
    }


def verify_all(code: ConvCode) -> dict:
    """Full verification bundle embedded in exported codes."""
    out = {"construction": verify_construction(code)}
    if code.n > 2 * code.k:
        out["mdp"] = verify_mdp_guarantee(code)
    else:
        out["mdp"] = None
    out["dual"] = verify_dual_mdp(code)
    out["field"] = field_size_report(code)
    guaranteed = code.n > 2 * code.k
    out["ok"] = bool(
        out["construction"]["ok"]
        and (not guaranteed or (out["mdp"]["is_mdp"] and out["dual"]["dual_mdp"]))
    )
    return out


def construct_code(
    n: int,
    k: int,
    q: int | None = None,
    lambda_seed: int | None = None,
    verify: bool = True,
    backend: str | None = None,
) -> ConvCode:
    """Build and (by default) verify the (n, k) unit-memory code."""
    if not (isinstance(n, int) and isinstance(k, int)) or not 0 < k < n:
        raise ConstructionError("need integers 0 < k < n")
    if q is None:
        q = default_q(n)
    if not is_prime(q):
        raise ConstructionError(f"q must be prime, got {q}")
    if q < max(3, n):
        raise ConstructionError(f"need q >= max(3, n) = {max(3, n)}, got {q}")
    if n <= 2 * k:
        warnings.warn(
            f"n = {n} <= 2k = {2 * k}: MDP is not guaranteed for these parameters",
            HypothesisWarning,
            stacklevel=2,
        )
    F = make_extension(q, 2 * k, backend=backend)
    pts = build_points(n, k, q, F, lambda_seed)
    G0, G1 = build_generator(pts, F, k)
    code = ConvCode(n, k, q, 2 * k, F, G0, G1, pts)
    if verify:
        code.verified = verify_all(code)
        if not code.verified["ok"]:
            raise VerificationError(f"construction failed verification: {code.verified}")
    return code
