"""Exact polynomial algebra over Q: Groebner bases, quotients, Jacobians, linear algebra."""

from .groebner import (
    GroebnerBasis,
    NotArtinian,
    QuotientPresentation,
    groebner,
    ideal_square,
    is_groebner,
    member,
    normal_form,
    quotient_basis,
)
from .linalg import (
    Mat,
    NoSolution,
    RingSystem,
    block_diag,
    det,
    hstack,
    inverse,
    is_injective,
    is_surjective,
    kernel,
    linear_solve,
    qmat,
    rank,
    rref,
    solve,
    vstack,
)
from .maps import (
    PolyMap,
    RationalPoint,
    const_matrix,
    evaluate,
    jacobian,
    point,
    poly_matrix,
    pullback_matrix,
)
from .poly import Polynomial, poly, variables
from .rings import QQ, ArtinianRing, PolyRing, Rationals

__all__ = [name for name in dir() if not name.startswith("_")]
