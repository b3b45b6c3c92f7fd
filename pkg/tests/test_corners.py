import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmanifold.corners import (
    CornerModel,
    Face,
    GroupAction,
    Positive,
    Rejection,
    Zero,
    boundary,
    boundary_decomposition,
    boundary_preimage,
    classify_map,
    compose_corner_maps,
    corner_counts_multiply,
    corner_functor,
    corners,
    depth,
    fibre_boundary_terms,
    fixed_locus,
    functorial_on_pieces,
    product,
    transverse_check,
    validate_corner_map,
)
from dmanifold.polyalg import PolyMap, Polynomial, variables

(x,) = variables(1)
x1, x2 = variables(2)

HALF = CornerModel(1, 1)
LINE = CornerModel(0, 1)
QUAD = CornerModel(2, 2)
PT = CornerModel(0, 0)


def cmap(src, dst, *comps):
    cm = validate_corner_map(src, dst, PolyMap(src.n, dst.n, tuple(comps)))
    assert not isinstance(cm, Rejection), cm
    return cm


def inclusion():
    return cmap(HALF, LINE, x)


def diagonal():
    return cmap(HALF, QUAD, x, x)


def origin():
    return cmap(PT, HALF, Polynomial.zero(0))


# strata and boundaries ----------------------------------------------------------

def test_depth():
    assert depth(QUAD, (0, 0)) == 2
    assert depth(QUAD, (0, 1)) == 1
    assert depth(QUAD, (3, 1)) == 0
    assert depth(CornerModel(1, 3), (0, -5, 2)) == 1
    with pytest.raises(ValueError):
        depth(QUAD, (-1, 0))


def test_boundary_of_quadrant():
    b = boundary(QUAD)
    assert len(b) == 2 and all(m == HALF for _, m in b)
    assert len(boundary_preimage(QUAD, (0, 0))) == 2
    assert boundary_preimage(QUAD, (0, 3)) == [(1, (3,))]
    assert boundary_preimage(QUAD, (1, 1)) == []


def test_boundaries_of_simple_models():
    assert len(boundary(CornerModel(0, 4))) == 0
    b = boundary(CornerModel(1, 2))
    assert len(b) == 1 and b.model(frozenset({1})) == LINE


@given(st.integers(0, 4), st.integers(0, 3), st.data())
def test_preimage_count_is_depth(k, r, data):
    m = CornerModel(k, k + r)
    pt = [data.draw(st.integers(0, 2)) for _ in range(k)] + [data.draw(st.integers(-2, 2)) for _ in range(r)]
    assert len(boundary_preimage(m, pt)) == depth(m, pt)


# corner pieces --------------------------------------------------------------------

def test_corners_of_quadrant():
    c = corners(QUAD)
    assert c.degree_counts() == [1, 2, 1]
    assert c.model(frozenset({1, 2})) == PT


def test_corners_of_euclidean_space_and_octant():
    assert corners(CornerModel(0, 3)).degree_counts() == [1]
    c2 = corners(CornerModel(3, 3)).degree(2)
    assert len(c2) == 3 and all(m == HALF for _, m in c2)


@given(st.integers(0, 5), st.integers(0, 2))
def test_low_degree_corners_are_model_and_boundary(k, r):
    m = CornerModel(k, k + r)
    c = corners(m)
    assert [p for _, p in c.degree(0)] == [m]
    assert c.degree(1) == list(boundary(m))
    assert c.degree_counts() == [comb(k, l) for l in range(k + 1)]


def test_products():
    assert product(HALF, HALF) == QUAD
    assert product(LINE, LINE) == CornerModel(0, 2)
    assert len(corners(product(HALF, HALF))) == len(corners(HALF)) ** 2 == 4


def test_corner_counts_multiply_up_to_five():
    for k1, k2 in itertools.product(range(6), repeat=2):
        if k1 + k2 <= 5:
            assert corner_counts_multiply(CornerModel(k1, k1 + 1), CornerModel(k2, k2))


# smooth maps ------------------------------------------------------------------------

def test_validate_corner_map_examples():
    r = validate_corner_map(HALF, HALF, PolyMap(1, 1, (x ** 2,)))
    assert isinstance(r, Rejection) and r.component == 1
    cm = validate_corner_map(HALF, HALF, PolyMap(1, 1, (2 * x,)))
    assert cm.table == (Face(1, Polynomial.const(2, 1)),)
    cm = validate_corner_map(QUAD, HALF, PolyMap(2, 1, (x1,)))
    assert cm.table == (Face(1, Polynomial.one(2)),)


def test_validate_corner_map_other_cases():
    assert isinstance(validate_corner_map(QUAD, HALF, PolyMap(2, 1, (x1 * x2,))), Rejection)
    assert isinstance(validate_corner_map(HALF, HALF, PolyMap(1, 1, (-x,))), Rejection)
    assert validate_corner_map(HALF, HALF, PolyMap(1, 1, (Polynomial.zero(1),))).table == (Zero(),)
    cm = validate_corner_map(HALF, HALF, PolyMap(1, 1, (x + 1,)))
    assert isinstance(cm.table[0], Positive) and cm.warnings
    cm = validate_corner_map(HALF, HALF, PolyMap(1, 1, (x * (x + 1),)))
    assert cm.table == (Face(1, x + 1),) and cm.warnings


def test_classification_examples():
    f = classify_map(inclusion())
    assert f.semisimple and f.flat and not f.simple
    f = classify_map(diagonal())
    assert f.flat and not f.semisimple
    f = classify_map(origin())
    assert f.simple and not f.flat
    assert classify_map(inclusion()).describe() == "semisimple, flat, not simple"
    assert classify_map(diagonal()).describe() == "flat, not semisimple"
    assert classify_map(origin()).describe() == "simple, not flat"


def test_classification_at_witnesses():
    proj = cmap(CornerModel(1, 2), HALF, x1)
    f = classify_map(proj, [(0, 0), (1, 5)])
    assert f.submersion and not f.immersion
    # at 0 the stratum of [0,inf) is a point, so it cannot map onto the tangent line
    f = classify_map(inclusion(), [(0,)])
    assert f.immersion and not f.submersion
    assert classify_map(inclusion(), [(1,)]).submersion


def test_boundary_decomposition_examples():
    proj = cmap(QUAD, HALF, x1)
    d = boundary_decomposition(proj)
    assert [i for i, _ in d.plus] == [2]
    assert [(i, j) for i, j, _ in d.minus] == [(1, 1)] and d.squares_commute
    assert d.minus[0][2].src == HALF and d.minus[0][2].dst == PT
    d = boundary_decomposition(inclusion())
    assert d.minus == [] and [i for i, _ in d.plus] == [1]
    ident = cmap(QUAD, QUAD, x1, x2)
    d = boundary_decomposition(ident)
    assert d.plus == [] and len(d.minus) == 2
    with pytest.raises(ValueError):
        boundary_decomposition(diagonal())


# corner functors ------------------------------------------------------------------------

def test_corner_functor_examples():
    C = corner_functor(inclusion()).assignment
    Ch = corner_functor(inclusion(), "Chat").assignment
    assert C == Ch == {frozenset(): frozenset(), frozenset({1}): frozenset()}
    C = corner_functor(origin()).assignment
    Ch = corner_functor(origin(), "Chat").assignment
    assert C[frozenset()] == frozenset() and Ch[frozenset()] == frozenset({1})
    d = corner_functor(diagonal()).assignment
    assert d[frozenset({1})] == frozenset({1, 2})


FIXTURES = [
    lambda: inclusion(),
    lambda: diagonal(),
    lambda: origin(),
    lambda: cmap(QUAD, HALF, x1),
    lambda: cmap(QUAD, QUAD, x2, x1),
    lambda: cmap(QUAD, QUAD, 2 * x1, x2 * (1 + x1)),
    lambda: cmap(CornerModel(1, 2), QUAD, x1, Polynomial.zero(2)),
]


@pytest.mark.parametrize("make", FIXTURES)
def test_corner_functor_degree_laws(make):
    cm = make()
    flags = classify_map(cm)
    C = corner_functor(cm).assignment
    Ch = corner_functor(cm, "Chat").assignment
    assert flags.flat == (C == Ch)
    if flags.semisimple:
        assert all(len(t) <= len(s) for s, t in C.items())
    if flags.simple:
        assert all(len(t) == len(s) for s, t in C.items())


def test_corner_functor_is_functorial():
    maps = [m() for m in FIXTURES]
    checked = 0
    for f, g in itertools.product(maps, repeat=2):
        if f.dst != g.src:
            continue
        gf = compose_corner_maps(g, f)
        if isinstance(gf, Rejection):
            continue
        for variant in ("C", "Chat"):
            assert functorial_on_pieces(g, f, variant)
        checked += 1
    assert checked >= 5


# transversality and fibre products ---------------------------------------------------------

def test_transverse_examples():
    v = transverse_check(inclusion(), inclusion(), [((0,), (0,))])
    assert not v.transverse and not v.strongly_transverse
    ident = cmap(LINE, LINE, x)
    v = transverse_check(inclusion(), ident, [((0,), (0,))])
    assert v.transverse and v.strongly_transverse
    g = cmap(QUAD, LINE, x1 + x2 - 1)
    h = cmap(PT, LINE, Polynomial.zero(0))
    v = transverse_check(g, h, [((1, 0), ()), ((0, 1), ())])
    assert v.transverse and v.strongly_transverse
    with pytest.raises(ValueError):
        transverse_check(g, h, [((0, 0), ())])


def test_fibre_terms_half_line_over_line():
    fb = fibre_boundary_terms(inclusion(), cmap(LINE, LINE, x))
    assert fb.dim_W == 1 and fb.formula == "boundary-free target"
    assert [(sorted(t.x_piece), sorted(t.y_piece)) for t in fb.boundary] == [([1], [])]
    assert fb.audit_ok


def test_fibre_terms_simplex():
    g = cmap(QUAD, LINE, x1 + x2 - 1)
    h = cmap(PT, LINE, Polynomial.zero(0))
    fb = fibre_boundary_terms(g, h)
    assert fb.dim_W == 1
    assert sorted(sorted(t.x_piece) for t in fb.boundary) == [[1], [2]]
    # the corner x1 = x2 = 0 misses the line x1 + x2 = 1
    assert [sorted(t.x_piece) for t in fb.pruned] == [[1, 2]]
    for i, terms in fb.corner_table.items():
        for t in terms:
            j, k, l = t.jkl
            assert i == j + k - l and t.dim == fb.dim_W - i


def test_oriented_fibre_terms_sign():
    X, Y = CornerModel(0, 1), CornerModel(1, 1)
    g = cmap(X, LINE, x)
    h = cmap(Y, LINE, x)
    fb = fibre_boundary_terms(g, h, oriented=True)
    (t,) = fb.boundary
    assert t.y_piece == frozenset({1}) and t.sign == (-1) ** (X.n + LINE.n)
    Y2 = CornerModel(1, 2)
    fb = fibre_boundary_terms(cmap(X, LINE, x), cmap(Y2, LINE, x2), oriented=True)
    assert fb.boundary[0].sign == (-1) ** (1 + 1)
    fb = fibre_boundary_terms(cmap(CornerModel(0, 2), LINE, x1), cmap(Y, LINE, x), oriented=True)
    assert fb.boundary[0].sign == -1


# fixed loci ---------------------------------------------------------------------------------

def test_swap_fixed_locus():
    a = GroupAction.of(QUAD, [((1, 2), []), ((2, 1), [])])
    fl = fixed_locus(QUAD, a)
    assert fl.model == HALF
    assert len(fl.fixed_boundary) == 0
    assert len(fl.boundary_of_fixed) == 1
    (orbit, face) = fl.boundary_of_fixed.pieces[0]
    assert orbit == frozenset({1, 2}) and face == PT
    point = [m for m in fl.corner_matching if m[2] == 1]
    assert point == [((frozenset({1, 2}),), frozenset({1, 2}), 1, 2)]
    assert fl.matching_ok


def test_trivial_group_fixes_everything():
    m = CornerModel(2, 3)
    fl = fixed_locus(m, GroupAction.of(m, [((1, 2), [[1]])]))
    assert fl.model == m and fl.matching_ok
    assert fl.fixed_boundary.keys() == fl.boundary_of_fixed.keys() == [frozenset({1}), frozenset({2})]
    assert all(a == b for _, _, a, b in fl.corner_matching)


def test_reflection_on_free_factor():
    m = CornerModel(1, 2)
    fl = fixed_locus(m, GroupAction.of(m, [((1,), [[1]]), ((1,), [[-1]])]))
    assert fl.model == HALF
    assert len(fl.fixed_boundary) == len(fl.boundary_of_fixed) == 1


def test_bad_actions_are_rejected():
    with pytest.raises(ValueError):
        GroupAction.of(QUAD, [((2, 1), [])])  # no identity
    with pytest.raises(ValueError):
        GroupAction.of(HALF, [((1,), [[2]])])


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(0, 2), st.data())
def test_fixed_boundary_inside_boundary_of_fixed(k, r, data):
    # cyclic group generated by a permutation of the corner block, acting trivially elsewhere
    perm = data.draw(st.permutations(list(range(1, k + 1))))
    m = CornerModel(k, k + r)
    els, p = [], tuple(range(1, k + 1))
    while True:
        els.append((p, [[int(i == j) for j in range(r)] for i in range(r)]))
        p = tuple(perm[q - 1] for q in p)
        if p == tuple(range(1, k + 1)):
            break
    fl = fixed_locus(m, GroupAction.of(m, els))
    inner, outer = set(fl.fixed_boundary.keys()), set(fl.boundary_of_fixed.keys())
    assert inner <= outer
    assert (inner == outer) == all(len(o) == 1 for o in fl.orbits)
    assert fl.matching_ok
