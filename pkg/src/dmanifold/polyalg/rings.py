"""Coefficient rings for matrices: the rationals, polynomial rings and Artinian quotients.

Every ring keeps its elements canonical (Fractions, polynomials, normal forms) so
plain ``==`` is ring equality.  Finite-dimensional rings additionally expose a
rational basis via ``dim``, ``coords`` and ``from_coords``; that is what lets
ring-level linear systems be solved by rational elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis, NotArtinian, QuotientPresentation, quotient_basis
from .poly import Polynomial, as_fraction


class Rationals:
    """The field of rational numbers as a one-dimensional algebra over itself."""

    dim = 1
    finite = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if not x.is_constant():
                raise ValueError(f"{x} is not a constant")
            return x.constant_term()
        return as_fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def coords(self, a) -> list:
        return [a]

    def from_coords(self, c: Sequence):
        return Fraction(c[0])

    def basis(self) -> list:
        return [Fraction(1)]

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class PolyRing:
    """Q[x_1..x_n]; infinite dimensional, so no ring-level solves."""

    finite = False

    def __init__(self, nvars: int):
        self.nvars = nvars

    def zero(self):
        return Polynomial.zero(self.nvars)

    def one(self):
        return Polynomial.one(self.nvars)

    def coerce(self, x):
        return Polynomial.coerce(x, self.nvars)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("poly", self.nvars))

    def __repr__(self):
        return f"PolyRing({self.nvars})"


class ArtinianRing:
    """Q[x]/I for a zero-dimensional ideal; elements are normal forms."""

    finite = True

    def __init__(self, qp: QuotientPresentation | GroebnerBasis):
        if isinstance(qp, GroebnerBasis):
            qp = quotient_basis(qp)
        if not qp.artinian:
            raise NotArtinian("quotient ring is not finite-dimensional")
        self.qp = qp
        self.nvars = qp.nvars
        self.dim = qp.dimension

    def zero(self):
        return Polynomial.zero(self.nvars)

    def one(self):
        return self.qp.reduce(Polynomial.one(self.nvars))

    def coerce(self, x):
        return self.qp.reduce(Polynomial.coerce(x, self.nvars))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.qp.reduce(a * b)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def coords(self, a) -> list:
        return self.qp.coordinates(a)

    def from_coords(self, c: Sequence):
        return self.qp.element(c)

    def basis(self) -> list:
        return [Polynomial.monomial(e) for e in self.qp.monomial_basis]

    def __eq__(self, other):
        return isinstance(other, ArtinianRing) and other.qp.gb == self.qp.gb

    def __hash__(self):
        return hash(("artinian", self.qp.gb.generators))

    def __repr__(self):
        return f"ArtinianRing(dim={self.dim})"
