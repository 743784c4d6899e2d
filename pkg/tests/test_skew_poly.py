import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from skewmdp.gf_tower import make_extension, prime_field_rank
from skewmdp.skew_poly import (
    NEG_INF,
    SkewPolynomial,
    are_conjugate,
    class_index,
    conjugacy_partition,
    conjugate,
    kernel_dimension,
    linearized_map,
    minimal_annihilator,
    norm_iterate,
    skew_eval,
    skew_mul,
    skew_vandermonde,
)


def P(F, *coeffs):
    return SkewPolynomial(F, [F(c) if isinstance(c, int) else c for c in coeffs])


def random_poly(F, rng, max_deg):
    d = rng.randint(0, max_deg)
    coeffs = [F.from_int(rng.randrange(F.order)) for _ in range(d)]
    coeffs.append(F.from_int(rng.randrange(1, F.order)))
    return SkewPolynomial(F, coeffs)


# -- examples -----------------------------------------------------------------


def test_mul_examples(F9):
    x = SkewPolynomial.x(F9)
    f = (x - 2) * (x - 1)
    assert f == P(F9, 2, 0, 1)
    assert f * 1 == f
    w = SkewPolynomial.constant(F9, F9.w)
    assert skew_mul(x, w) == SkewPolynomial(F9, [F9.zero, 2 * F9.w])
    assert skew_mul(x, w) != skew_mul(w, x)


def test_degree_and_zero(F9):
    assert SkewPolynomial(F9, [0, 0]).degree == NEG_INF
    assert SkewPolynomial(F9, [1, 2, 0]).degree == 1
    f = P(F9, 1, 1)
    assert (f * P(F9, 2, 0, 1)).degree == 3


def test_mixed_fields_rejected(F9, F25):
    with pytest.raises(ValueError):
        skew_mul(P(F9, 1), P(F25, 1))


def test_norm_examples(F9):
    g = F9.gamma
    for a in F9.elements():
        assert norm_iterate(0, a) == F9.one
        assert norm_iterate(1, a) == a
    assert norm_iterate(2, g) == F9(2)
    with pytest.raises(ValueError):
        norm_iterate(-1, g)


def test_eval_examples(F9):
    w = F9.w
    f = P(F9, 2, 0, 1)
    for a in (F9(1), F9(2), w, 2 * w):
        assert f(a) == F9.zero
    assert f(1 + w) == F9.one
    x = SkewPolynomial.x(F9)
    assert all(x(a) == a for a in F9.elements())
    # degenerate point: f(0) = f_0
    assert P(F9, w, 1, 1)(F9.zero) == w


def test_conjugate_examples(F9):
    w = F9.w
    assert all(conjugate(a, F9.one) == a for a in F9.elements())
    assert conjugate(F9.one, w) == F9(2)
    assert conjugate(F9.zero, w) == F9.zero
    with pytest.raises(ZeroDivisionError):
        conjugate(F9.one, F9.zero)


def test_partition_f9(F9):
    w = F9.w
    classes = conjugacy_partition(F9)
    members = [set(c.members) for c in classes]
    assert members == [
        {F9.zero},
        {F9(1), F9(2), w, 2 * w},
        {1 + w, 2 + 2 * w, 2 + w, 1 + 2 * w},
    ]
    assert [c.size for c in classes] == [1, 4, 4]
    assert F9.one not in classes[2]
    assert not are_conjugate(F9.one, F9.gamma)
    assert class_index(F9.zero) is None


@pytest.mark.parametrize("q,t", [(3, 2), (5, 2), (3, 3), (7, 2), (3, 4), (5, 3)])
def test_partition_matches_brute_force(q, t):
    F = make_extension(q, t)
    classes = conjugacy_partition(F)
    assert len(classes) == q
    seen = {}
    for idx, c in enumerate(classes):
        for m in c.members:
            assert m not in seen
            seen[m] = idx
    assert len(seen) == F.order
    # orbit of each representative under beta^(q-1) * a
    nonzero = [b for b in F.elements() if b]
    for idx, c in enumerate(classes[1:], start=1):
        orbit = {b ** (q - 1) * c.representative for b in nonzero}
        assert orbit == set(c.members)
        assert class_index(c.representative) == idx - 1
        assert c.size == (F.order - 1) // (q - 1)


def test_partition_too_large():
    with pytest.raises(ValueError):
        conjugacy_partition(make_extension(3, 13))


def test_linearized_examples(F9):
    f = P(F9, 2, 1)  # x - 1
    one = F9.one
    for b in F9.elements():
        assert linearized_map(f, one, b) == b**3 - b
    assert kernel_dimension(f, one) == 1
    assert kernel_dimension(P(F9, 2, 0, 1), one) == 2
    assert kernel_dimension(f, F9.gamma) == 0
    assert linearized_map(f, F9.gamma, F9.zero) == F9.zero
    with pytest.raises(ValueError):
        kernel_dimension(SkewPolynomial(F9, []), one)


def test_kernel_dimension_zero_point(F9):
    assert kernel_dimension(P(F9, 0, 1), F9.zero) == 2
    assert kernel_dimension(P(F9, 1, 1), F9.zero) == 0


def test_vandermonde_examples(F9):
    pts = [F9(1), F9(2)]
    assert skew_vandermonde(1, pts).tolist() == [[1, 1]]
    assert skew_vandermonde(2, pts).tolist() == [[1, 1], [1, 2]]
    # conjugates of 1 by F_q-independent betas give a full-rank matrix
    betas = [F9.one, F9.w]
    pts = [conjugate(F9.one, b) for b in betas]
    assert F9.rank(skew_vandermonde(2, pts)) == 2
    # dependent betas (1 and 2) collapse to the same point
    pts = [conjugate(F9.one, b) for b in (F9.one, F9(2))]
    assert F9.rank(skew_vandermonde(2, pts)) == 1


def test_annihilator_examples(F9):
    a = F9.gamma
    assert minimal_annihilator([a]) == SkewPolynomial(F9, [-a, F9.one])
    f = minimal_annihilator([F9(1), F9(2)])
    assert f == P(F9, 2, 0, 1)
    assert all(f(c) == F9.zero for c in (F9(1), F9(2), F9.w, 2 * F9.w))
    assert minimal_annihilator([], F9) == P(F9, 1)


def test_json_round_trip(F25):
    f = P(F25, F25.gamma, 0, 3)
    data = f.to_json()
    assert data == [list(F25.gamma.coords), [0, 0], [3, 0]]
    assert SkewPolynomial.from_json(F25, data) == f


# -- properties ---------------------------------------------------------------


@pytest.mark.parametrize("q", [3, 5])
def test_norm_closed_form_exhaustive(q):
    F = make_extension(q, 2)
    for a in F.elements():
        for i in range(7):
            assert norm_iterate(i, a) == a ** ((q**i - 1) // (q - 1))


@pytest.fixture(scope="module", params=[(3, 2), (5, 2), (3, 4)], ids=str)
def field(request):
    return make_extension(*request.param)


def test_twist_law(field):
    rng = random.Random(11)
    x = SkewPolynomial.x(field)
    for _ in range(500):
        f = random_poly(field, rng, 5)
        xf = skew_mul(x, f)
        assert xf[0] == field.zero
        for i in range(f.degree + 1):
            assert xf[i + 1] == f[i].frobenius()


def test_mul_associative_distributive(field):
    rng = random.Random(5)
    for _ in range(100):
        f, g, h = (random_poly(field, rng, 3) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f * g).degree == f.degree + g.degree


def test_product_evaluation_rule(field):
    rng = random.Random(2024)
    for _ in range(500):
        f = random_poly(field, rng, 4)
        g = random_poly(field, rng, 4)
        a = field.from_int(rng.randrange(field.order))
        ga = g(a)
        expect = field.zero if not ga else f(conjugate(a, ga)) * ga
        assert skew_eval(f * g, a) == expect


def test_linearity(field):
    rng = random.Random(99)
    q = field.q
    for _ in range(500):
        f = random_poly(field, rng, 4)
        a = field.from_int(rng.randrange(field.order))
        b1, b2 = (field.from_int(rng.randrange(field.order)) for _ in range(2))
        l1, l2 = field(rng.randrange(q)), field(rng.randrange(q))
        lhs = linearized_map(f, a, l1 * b1 + l2 * b2)
        rhs = l1 * linearized_map(f, a, b1) + l2 * linearized_map(f, a, b2)
        assert lhs == rhs


def _kernel_size(f, a):
    F = f.field
    return sum(1 for b in F.elements() if not linearized_map(f, a, b))


def test_kernel_dimension_matches_count(F9):
    rng = random.Random(1)
    for _ in range(60):
        f = random_poly(F9, rng, 3)
        a = F9.from_int(rng.randrange(9))
        assert _kernel_size(f, a) == 3 ** kernel_dimension(f, a)


@pytest.mark.parametrize("q", [3, 5])
def test_kernel_dimension_bound(q):
    F = make_extension(q, 2)
    rng = random.Random(q)
    gammas = [F.gamma**i for i in range(q - 1)]
    for _ in range(200):
        f = random_poly(F, rng, F.t - 1)
        total = sum(kernel_dimension(f, g) for g in gammas)
        assert total <= f.degree


@pytest.mark.parametrize("q,t", [(3, 2), (5, 2), (3, 3)])
def test_annihilator_root_span_bound(q, t):
    """Roots of the annihilator inside one class form a subspace of dim <= deg."""
    F = make_extension(q, t)
    classes = conjugacy_partition(F)[1:]
    rng = random.Random(q * 10 + t)
    for _ in range(40):
        cls = rng.choice(classes)
        members = sorted(cls.members, key=lambda e: e.value)
        S = rng.sample(members, rng.randint(1, min(4, len(members))))
        f = minimal_annihilator(S)
        assert all(not f(c) for c in S)
        assert f.degree <= len(S)
        a = cls.representative
        # betas with f(^beta a) = 0, plus zero, form the kernel of D_{f,a}
        count = _kernel_size(f, a)
        dim = round(math.log(count, q))
        assert q**dim == count
        assert dim == kernel_dimension(f, a)
        assert dim <= f.degree
        # the root set of f in the class has (q^dim - 1)/(q - 1) points
        roots = [c for c in members if not f(c)]
        assert len(roots) == (q**dim - 1) // (q - 1)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_vandermonde_rank_tracks_beta_independence(data):
    F = make_extension(3, 3)
    k = data.draw(st.integers(1, 3))
    betas = [F.from_int(data.draw(st.integers(1, F.order - 1))) for _ in range(k)]
    pts = [conjugate(F.one, b) for b in betas]
    V = skew_vandermonde(k, pts)
    indep = prime_field_rank([b.to_coords() for b in betas], F.q) == k
    assert (F.rank(V) == k) == indep
