import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassclique.errors import MixedFieldsError
from grassclique.field import field_for
from grassclique.subspace import (
    cyclic_shift,
    format_elems,
    from_elems,
    intersection_dim,
    rank_gf2,
    rref_gf2,
    span,
    subspace_distance,
)


@pytest.fixture(scope="module")
def f16():
    return field_for(2, 4, "x^4+x+1")


@pytest.fixture(scope="module")
def f64():
    return field_for(2, 6)


def random_subspace(ctx, k, rng):
    while True:
        v = span(ctx, rng.sample(range(ctx.order), k))
        if v.dim == k:
            return v


def test_span_subfield_f4(f16):
    v = span(f16, [0, 5, 10])
    assert v.dim == 2
    assert v.elems == (0, 5, 10)


def test_span_single_generator(f16):
    v = span(f16, [0])
    assert v.dim == 1
    assert v.elems == (0,)


def test_span_subfield_f8(f64):
    v = span(f64, [0, 9, 18, 27, 36, 45, 54])
    assert v.dim == 3
    assert v.elems == tuple(range(0, 63, 9))


def test_span_contains_generators(f64):
    rng = random.Random(5)
    for _ in range(50):
        gens = rng.sample(range(63), 3)
        v = span(f64, gens)
        assert set(gens) <= set(v.elems)
        assert v.dim <= 3
        assert len(v.elems) == 2**v.dim - 1


def test_intersection_dim_self(f16):
    v = span(f16, [0, 5, 10])
    assert intersection_dim(v, v) == v.dim


def test_spread_members_intersect_trivially(f16):
    x = span(f16, [0, 5, 10])
    y = span(f16, [1, 6, 11])
    assert intersection_dim(x, y) == 0
    assert subspace_distance(x, y) == 4


def test_intersection_dim_matches_membership_count(f64):
    rng = random.Random(11)
    for _ in range(100):
        x = random_subspace(f64, 3, rng)
        y = random_subspace(f64, 3, rng)
        common = len(set(x.elems) & set(y.elems))
        # the intersection is a subspace: common = 2^m - 1
        m = (common + 1).bit_length() - 1
        assert 2**m - 1 == common
        assert intersection_dim(x, y) == m


def test_distance_identity_and_symmetry(f64):
    rng = random.Random(13)
    for _ in range(200):
        x = random_subspace(f64, 3, rng)
        y = random_subspace(f64, 3, rng)
        assert subspace_distance(x, x) == 0
        assert subspace_distance(x, y) == subspace_distance(y, x)
        assert (subspace_distance(x, y) == 0) == (x == y)
        assert subspace_distance(x, y) % 2 == 0


def test_triangle_inequality(f64):
    rng = random.Random(17)
    for _ in range(1000):
        x = random_subspace(f64, 3, rng)
        y = random_subspace(f64, 3, rng)
        z = random_subspace(f64, 3, rng)
        assert subspace_distance(x, z) <= subspace_distance(x, y) + subspace_distance(y, z)


def test_shift_isometry(f64):
    rng = random.Random(19)
    for _ in range(300):
        x = random_subspace(f64, 2, rng)
        y = random_subspace(f64, 2, rng)
        s = rng.randrange(63)
        assert subspace_distance(
            cyclic_shift(f64, x, s), cyclic_shift(f64, y, s)
        ) == subspace_distance(x, y)


def test_cyclic_shift_examples(f16):
    v = span(f16, [0, 5, 10])
    assert cyclic_shift(f16, v, 0) == v
    assert cyclic_shift(f16, v, 5) == v
    assert cyclic_shift(f16, v, 1).elems == (1, 6, 11)


def test_cyclic_shift_preserves_dim(f64):
    rng = random.Random(23)
    for _ in range(100):
        v = random_subspace(f64, 3, rng)
        s = rng.randrange(63)
        assert cyclic_shift(f64, v, s).dim == v.dim


def test_rref_canonicity(f64):
    rng = random.Random(29)
    for _ in range(100):
        v = random_subspace(f64, 3, rng)
        assert span(f64, v.elems) == v
        assert from_elems(f64, v.elems) == v


def test_rref_gf2_is_basis_invariant():
    rng = random.Random(31)
    for _ in range(200):
        rows = [rng.randrange(1, 256) for _ in range(3)]
        basis = rref_gf2(rows)
        # xor a random combination into the first row: same span, same rref
        mixed = list(rows)
        mixed[0] ^= rows[rng.randrange(len(rows))]
        if mixed[0] == 0:
            continue
        assert rref_gf2(mixed + rows) == basis
        assert rank_gf2(list(basis)) == len(basis)


def test_subspace_equality_and_hash(f16):
    a = span(f16, [0, 5])
    b = span(f16, [5, 10])
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1


def test_mixed_fields_rejected(f16, f64):
    with pytest.raises(MixedFieldsError):
        subspace_distance(span(f16, [0]), span(f64, [0]))


def test_q3_span_and_distance():
    ctx = field_for(3, 3)
    v = span(ctx, [0, 1])
    assert v.dim == 2
    assert len(v.elems) == 3**2 - 1
    w = cyclic_shift(ctx, v, 4)
    assert w.dim == 2
    assert subspace_distance(v, v) == 0
    assert subspace_distance(v, w) % 2 == 0
    assert span(ctx, v.elems) == v


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 62), min_size=1, max_size=4), st.integers(0, 62))
def test_shift_then_span_commutes(gens, s):
    ctx = field_for(2, 6)
    v = span(ctx, gens)
    shifted = cyclic_shift(ctx, v, s)
    direct = span(ctx, [(e + s) % 63 for e in gens])
    assert shifted == direct


def test_format_elems():
    assert format_elems((0, 5, 10)) == "{0, 5, 10}"
