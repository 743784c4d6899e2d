import json
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import f9_oracle as o9
from skewmdp.gf_tower import (
    ExtensionField,
    FieldError,
    is_irreducible,
    make_extension,
    next_prime,
    prime_field_rank,
)


def _coords(F, pair):
    return F.from_coords(pair)


def test_f9_modulus_is_smallest_irreducible(F9):
    assert F9.modulus == (1, 0, 1)
    # degree 2: irreducible iff rootless; every lexicographically smaller
    # monic candidate has a root mod 3
    for low in product(range(3), repeat=2):
        if low >= (1, 0):
            break
        c0, c1 = low
        assert any((r * r + c1 * r + c0) % 3 == 0 for r in range(3))
    assert all((r * r + 1) % 3 for r in range(3))


def test_f9_primitive_element(F9):
    assert F9.gamma.coords == (1, 1)
    assert o9.order((1, 1)) == 8
    assert o9.power((1, 1), 4) == (2, 0)
    # no lexicographically smaller nonzero element has order 8
    for pair in o9.ELEMENTS:
        if pair == (1, 1):
            break
        if pair != o9.ZERO:
            assert o9.order(pair) < 8


def test_field_sizes():
    assert make_extension(5, 4).order == 625
    assert len(make_extension(3, 1)) == 3


@pytest.mark.parametrize("q,t", [(2, 2), (4, 2), (9, 1), (3, 0)])
def test_make_extension_rejects(q, t):
    with pytest.raises(FieldError):
        make_extension(q, t)


def test_mul_matches_oracle(F9):
    for x, y in product(o9.ELEMENTS, repeat=2):
        got = (_coords(F9, x) * _coords(F9, y)).coords
        assert got == o9.mul(x, y)
        assert (_coords(F9, x) + _coords(F9, y)).coords == o9.add(x, y)


def test_spec_examples(F9):
    w = F9.w
    assert w * w == F9(2)
    assert w.frobenius() == 2 * w
    assert (1 + w).frobenius() == 1 + 2 * w
    assert F9.from_coords((1, 2)) == 1 + 2 * w
    assert F9.from_coords((1, 0)) == F9.one


def test_inverse_and_mixed_fields(F9, F25):
    with pytest.raises(ZeroDivisionError):
        F9.zero.inverse()
    with pytest.raises(FieldError):
        F9.one + F25.one


@pytest.mark.parametrize("bad", [(1,), (1, 2, 0), (3, 0), (-1, 0)])
def test_from_coords_validation(F9, bad):
    with pytest.raises(FieldError):
        F9.from_coords(bad)


FIELDS = {(3, 2): None, (5, 2): None, (7, 3): None, (3, 5): None}


def _field(qt):
    if FIELDS[qt] is None:
        FIELDS[qt] = make_extension(*qt)
    return FIELDS[qt]


@settings(max_examples=1000, deadline=None)
@given(qt=st.sampled_from(sorted(FIELDS)), data=st.data())
def test_field_axioms(qt, data):
    F = _field(qt)
    a, b, c = (F.from_int(data.draw(st.integers(0, F.order - 1))) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a - a == F.zero
    if a:
        assert a * a.inverse() == F.one
    # Frobenius is a ring homomorphism
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert a.frobenius(F.t) == a and a.frobenius(0) == a
    assert F.from_coords(a.to_coords()) == a


@pytest.mark.parametrize("q,t", [(3, 2), (5, 2), (3, 4), (7, 3)])
def test_frobenius_fixed_field_and_gamma_generates(q, t):
    F = make_extension(q, t)
    fixed = [a for a in F.elements() if a.frobenius() == a]
    assert sorted(a.value for a in fixed) == list(range(q))
    seen = set()
    g = F.one
    for _ in range(F.order - 1):
        seen.add(g.value)
        g = g * F.gamma
    assert len(seen) == F.order - 1 and g == F.one


def test_irreducibility_cross_check():
    # degree-3 polys over F_5: irreducible iff rootless
    for low in product(range(5), repeat=3):
        m = (*low, 1)
        rootless = all(sum(c * r**i for i, c in enumerate(m)) % 5 for r in range(5))
        assert is_irreducible(m, 5) == rootless
    # (x^2+1)^2 over F_3 has no roots but is reducible
    assert not is_irreducible((1, 0, 2, 0, 1), 3)


def test_descriptor_round_trip(F9):
    d = F9.descriptor()
    assert d == {"q": 3, "t": 2, "modulus": [1, 0, 1], "gamma": [1, 1]}
    assert ExtensionField.from_descriptor(json.loads(json.dumps(d))) == F9
    with pytest.raises(FieldError):
        ExtensionField.from_descriptor({**d, "gamma": [1, 0]})
    with pytest.raises(FieldError):
        ExtensionField.from_descriptor({**d, "modulus": [2, 0, 1]})


def test_helpers():
    assert next_prime(8) == 11 and next_prime(3) == 3
    assert prime_field_rank([[1, 2], [2, 4]], 3) == 1
    assert prime_field_rank([[1, 2], [0, 1]], 5) == 2


def test_solve_left(F25):
    import numpy as np

    M = F25.matrix([[1, 2, 3], [0, 1, 4]])
    u = np.array([F25.gamma.value, 3])
    target = F25.vecmat(u, M)
    np.testing.assert_array_equal(F25.solve_left(M, target), u)
    with pytest.raises(np.linalg.LinAlgError):
        F25.solve_left(M, np.array([0, 0, 1]) + target)
