import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmanifold.fibprod import (
    d_transverse_at,
    fibre_product_affine,
    is_witness_zero,
    swap,
    swap_identification,
    swap_involution_ok,
    validate_square,
    vdim_check,
)
from dmanifold.polyalg import Mat, PolyMap, PolyRing, Polynomial, variables
from dmanifold.stdmodel import StdOneMor, new_std_model
from dmanifold.testing import rand_affine_map, rand_model

(x,) = variables(1)
POINT = new_std_model(0, 0, [])
LINE = new_std_model(1, 0, [])


def test_line_over_line_against_a_point():
    sq = fibre_product_affine(LINE, PolyMap.identity(1), POINT, PolyMap(0, 1, (Polynomial.zero(0),)))
    assert (sq.W.n, sq.W.k, sq.W.vdim) == (1, 1, 0)
    assert sq.W.s == (x,)
    assert validate_square(sq)


def test_point_over_line_has_negative_vdim():
    zero = PolyMap(0, 1, (Polynomial.zero(0),))
    sq = fibre_product_affine(POINT, zero, POINT, zero)
    assert (sq.W.n, sq.W.k, sq.W.vdim) == (0, 1, -1)
    assert vdim_check(sq) and sq.W.vdim == POINT.vdim + POINT.vdim - 1
    assert swap(sq).W == sq.W


def test_obstructed_point_over_line():
    X = new_std_model(1, 1, [x ** 2])
    sq = fibre_product_affine(X, PolyMap.identity(1), POINT, PolyMap(0, 1, (Polynomial.zero(0),)))
    assert (sq.W.n, sq.W.k, sq.W.vdim) == (1, 2, -1)
    assert set(sq.W.s) == {x ** 2, x}
    assert is_witness_zero(sq, (0,), ()) and not is_witness_zero(sq, (1,), ())


def test_vdim_of_two_lines():
    sq = fibre_product_affine(LINE, PolyMap.identity(1), LINE, PolyMap.identity(1))
    assert sq.W.vdim == 1 and vdim_check(sq)


def _zhat(n, rows, cols):
    return Mat.zeros(PolyRing(n), rows, cols)


def test_d_transverse_examples():
    # Z a manifold: no bundle rows to hit, so vacuously transverse
    g = StdOneMor(PolyMap.identity(1), _zhat(1, 0, 0))
    assert d_transverse_at(LINE, LINE, LINE, g, g, [((0,), (0,))])
    Zl = new_std_model(1, 1, [x])
    X = new_std_model(1, 1, [x])
    g = StdOneMor(PolyMap.identity(1), _zhat(1, 1, 1))
    assert d_transverse_at(X, X, Zl, g, g, [((0,), (0,))])
    Zq = new_std_model(1, 1, [x ** 2])
    Xq = new_std_model(1, 1, [x ** 2])
    assert not d_transverse_at(Xq, Xq, Zq, g, g, [((0,), (0,))])
    with pytest.raises(ValueError):
        d_transverse_at(X, X, Zl, g, g, [((1,), (1,))])


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_vdim_additive_and_square_valid(seed):
    rng = random.Random(seed)
    n, k, m, l, d = (rng.randint(0, 3) for _ in range(5))
    X, Y = rand_model(rng, n, k), rand_model(rng, m, l)
    sq = fibre_product_affine(X, rand_affine_map(rng, n, d), Y, rand_affine_map(rng, m, d))
    assert vdim_check(sq)
    assert swap_involution_ok(sq)
    if n + m <= 3:
        assert validate_square(sq)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_swap_matches_components_up_to_sign(seed):
    rng = random.Random(seed)
    n, k, m, l, d = (rng.randint(0, 3) for _ in range(5))
    X, Y = rand_model(rng, n, k), rand_model(rng, m, l)
    sq = fibre_product_affine(X, rand_affine_map(rng, n, d), Y, rand_affine_map(rng, m, d))
    ident = swap_identification(sq)
    assert sorted(i for i, _ in ident.bundle) == list(range(sq.W.k))


def test_mismatched_targets_are_rejected():
    with pytest.raises(ValueError):
        fibre_product_affine(LINE, PolyMap.identity(1), LINE, PolyMap(1, 2, (x, x)))
