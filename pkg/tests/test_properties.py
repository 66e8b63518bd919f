import random

from hypothesis import given, settings
from hypothesis import strategies as st

import properties
from freeinv.fiber import multiply
from freeinv.gf2 import BitMatrix, Subspace, kernel_basis, membership, rank


@st.composite
def matrices(draw, max_dim=64):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BitMatrix(r, c, tuple(rows))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + kernel_basis(M).dim == M.cols
    assert rank(M) == rank(M.transpose())


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 20).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(0, (1 << d) - 1), max_size=d + 2),
                        st.integers(0, (1 << d) - 1))))
def test_membership_coordinates_reconstruct(args):
    d, vecs, v = args
    S = Subspace.span(d, vecs)
    coords = membership(S, v)
    if coords is None:
        assert S.reduce(v) != 0
    else:
        w = 0
        for bit, b in zip(coords, S.basis):
            if bit:
                w ^= b
        assert w == v


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
def test_fiber_product_is_bilinear(x, y, z):
    assert multiply(x ^ y, z) == multiply(x, z) ^ multiply(y, z)


def test_rank_nullity_random():
    assert properties.rank_nullity(random.Random(1), 500) == 500


def test_subspace_lattice_random():
    assert properties.subspace_lattice(random.Random(2), 500) == 500


def test_boundary_squared_random():
    assert properties.boundary_squared(random.Random(3), 300) == 300


def test_spectral_walks_random():
    assert properties.spectral_walks(random.Random(4), 20) > 0
