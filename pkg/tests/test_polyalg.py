from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dmanifold.polyalg import (
    QQ,
    ArtinianRing,
    Mat,
    NoSolution,
    PolyMap,
    Polynomial,
    det,
    evaluate,
    groebner,
    ideal_square,
    is_groebner,
    jacobian,
    kernel,
    linear_solve,
    member,
    normal_form,
    qmat,
    quotient_basis,
    rank,
    variables,
)
from dmanifold.polyalg.poly import as_fraction

x, y = variables(2)
(t,) = variables(1)

coef = st.integers(-4, 4)
monos2 = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys2 = st.dictionaries(monos2, coef, max_size=4).map(lambda d: Polynomial(d, 2))
rats = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
points2 = st.tuples(rats, rats)


def to_sympy(p: Polynomial, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** e for s, e in zip(syms, m)])
               for m, c in p.items())


# ring axioms and evaluation ----------------------------------------------------

@given(polys2, polys2, polys2)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Polynomial.zero(2)


@given(polys2, polys2, points2)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


@given(polys2)
def test_term_list_round_trip(a):
    assert Polynomial.from_terms(a.to_terms(), 2) == a


def test_floats_are_refused():
    with pytest.raises((TypeError, ValueError)):
        as_fraction(0.5)
    assert as_fraction("3/4") == Fraction(3, 4)


# Groebner bases ----------------------------------------------------------------

def test_groebner_already_reduced():
    gb = groebner([x ** 2 - y, y ** 2])
    assert set(gb.generators) == {x ** 2 - y, y ** 2}


def test_groebner_duplicate_and_unit():
    assert list(groebner([t, t]).generators) == [t]
    gb = groebner([Polynomial.one(1)], nvars=1)
    assert list(gb.generators) == [Polynomial.one(1)] and gb.is_unit()


def test_groebner_is_canonical():
    a = groebner([x * y - 1, x ** 2 - y, y ** 3 - x])
    b = groebner([y ** 3 - x, x ** 2 - y, x * y - 1, (x * y - 1) * x])
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.lists(polys2, min_size=1, max_size=3))
def test_groebner_matches_sympy(gens):
    """Independent oracle: sympy's reduced grevlex basis, compared after making both monic."""
    gens = [g for g in gens if g]
    if not gens:
        return
    X, Y = sympy.symbols("x y")
    ours = groebner(gens, nvars=2)
    assert is_groebner(ours)
    theirs = sympy.groebner([to_sympy(g, (X, Y)) for g in gens], X, Y, order="grevlex")
    mine = {sympy.Poly(to_sympy(g.monic(), (X, Y)), X, Y, domain="QQ") for g in ours.generators}
    ref = {sympy.Poly(g / sympy.LC(g, X, Y, order="grevlex"), X, Y, domain="QQ") for g in theirs.exprs}
    assert mine == ref


def test_normal_form_examples():
    gb = groebner([t ** 2])
    assert normal_form(t ** 3 + t + 1, gb) == t + 1
    assert normal_form(Polynomial.zero(1), gb).is_zero()
    assert normal_form(x ** 2 - y, groebner([x ** 2 - y, y ** 2])).is_zero()


def test_member_examples():
    assert not member(t - t ** 3, groebner([t ** 2]))
    assert member(t ** 4, groebner([t ** 4]))
    assert member(Polynomial.zero(2), groebner([x, y]))


@settings(max_examples=30, deadline=None)
@given(polys2, polys2, polys2)
def test_combinations_are_members(a, b, c):
    gens = [g for g in (a, b) if g]
    if not gens:
        return
    gb = groebner(gens, nvars=2)
    combo = c * gens[0] + (c + x) * gens[-1]
    assert member(combo, gb)


def test_ideal_square_examples():
    assert ideal_square([t]) == [t ** 2]
    assert set(ideal_square([x, y])) == {x ** 2, x * y, y ** 2}
    g, h = x ** 2 - y, y ** 2
    assert set(ideal_square([g, h])) == {g * g, g * h, h * h}


def test_quotient_bases():
    q = quotient_basis(groebner([x ** 2 - y, y ** 2]))
    assert q.artinian and q.dimension == 4
    assert set(q.monomial_basis) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    q1 = quotient_basis(groebner([t]))
    assert q1.artinian and q1.monomial_basis == ((0,),)
    assert not quotient_basis(groebner([x * y])).artinian


@settings(max_examples=30, deadline=None)
@given(polys2, points2)
def test_normal_form_preserves_values_on_the_variety(p, pt):
    # the ideal of a single rational point
    gb = groebner([x - pt[0], y - pt[1]])
    assert normal_form(p, gb).evaluate(pt) == p.evaluate(pt)


# maps, Jacobians, evaluation ------------------------------------------------------

def test_jacobian_examples():
    assert jacobian(PolyMap(1, 1, (t ** 2,))).entries == ((2 * t,),)
    J = jacobian(PolyMap.identity(2))
    assert J.entries == ((Polynomial.one(2), Polynomial.zero(2)), (Polynomial.zero(2), Polynomial.one(2)))
    J = jacobian(PolyMap(2, 2, (x * y, x + y)))
    assert J.entries == ((y, x), (Polynomial.one(2), Polynomial.one(2)))
    assert evaluate(jacobian(PolyMap(1, 1, (t ** 2,))), (3,)).entries == ((6,),)


def test_evaluate_examples():
    assert (t ** 2 - 1).evaluate((2,)) == 3
    assert Polynomial.zero(2).evaluate((5, 7)) == 0


@given(polys2, polys2, points2)
def test_chain_rule(a, b, pt):
    f = PolyMap(2, 2, (a, b))
    g = PolyMap(2, 1, (x * y + x ** 2,))
    lhs = evaluate(jacobian(g.compose(f)), pt)
    rhs = evaluate(jacobian(g), f(pt)) @ evaluate(jacobian(f), pt)
    assert lhs == rhs


# linear algebra ---------------------------------------------------------------------

def test_linear_solve_examples():
    assert linear_solve(qmat([[2]]), qmat([[1]])).entries == ((Fraction(1, 2),),)
    A = ArtinianRing(groebner([t ** 2]))
    with pytest.raises(NoSolution):
        linear_solve(Mat.of(A, [[2 * t]]), Mat.of(A, [[1]]))
    K = kernel(qmat([[1, 1]]))
    assert K.cols == 1 and K[0, 0] == -K[1, 0] != 0


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_and_kernel_against_sympy(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    M = qmat(rows)
    ref = sympy.Matrix(rows)
    assert rank(M) == ref.rank()
    K = kernel(M)
    assert K.cols == c - ref.rank()
    assert (M @ K).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_det_against_sympy(n, data):
    rows = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    assert det(qmat(rows)) == Fraction(int(sympy.Matrix(rows).det()))


def test_empty_blocks_have_shape():
    Z = Mat.zeros(QQ, 0, 3)
    assert Z.shape == (0, 3)
    assert (Mat.zeros(QQ, 2, 0) @ Z).shape == (2, 3)
