"""Base contexts: an Artinian quotient ring, or a finite set of rational points.

A point set is treated as the product ring Q^N, one factor per point, so both
kinds of base are finite-dimensional commutative Q-algebras and share one
linear-solve path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..polyalg import ArtinianRing, Mat, Polynomial, QQ, RationalPoint
from ..polyalg.groebner import GroebnerBasis, quotient_basis


class PointSet:
    """The ring of rational functions on finitely many points of a zero set."""

    finite = True

    def __init__(self, points: Sequence, ideal: Sequence[Polynomial] = (), nvars: int | None = None):
        pts = tuple(p if isinstance(p, RationalPoint) else RationalPoint(tuple(p)) for p in points)
        if not pts:
            raise ValueError("a point set base must be nonempty")
        n = len(pts[0]) if nvars is None else nvars
        for p in pts:
            if len(p) != n:
                raise ValueError(f"point {p.to_json()} does not have {n} coordinates")
            for g in ideal:
                if g.evaluate(tuple(p)) != 0:
                    raise ValueError(f"point {p.to_json()} is not a zero of {g.pretty()}")
        self.points = pts
        self.nvars = n
        self.dim = len(pts)

    def zero(self):
        return (Fraction(0),) * self.dim

    def one(self):
        return (Fraction(1),) * self.dim

    def coerce(self, x):
        if isinstance(x, Polynomial):
            return self.from_poly(x)
        if isinstance(x, tuple):
            if len(x) != self.dim:
                raise ValueError("point-value tuple has the wrong length")
            return tuple(Fraction(v) for v in x)
        return (Fraction(x),) * self.dim

    def from_poly(self, p: Polynomial):
        return tuple(p.evaluate(tuple(pt)) for pt in self.points)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def is_zero(self, a) -> bool:
        return not any(a)

    def coords(self, a) -> list:
        return list(a)

    def from_coords(self, c):
        return tuple(Fraction(x) for x in c)

    def basis(self) -> list:
        return [tuple(Fraction(int(i == j)) for j in range(self.dim)) for i in range(self.dim)]

    def at(self, M: Mat, idx: int) -> Mat:
        """The rational matrix of M at the idx-th point."""
        return M.map(lambda v: v[idx], QQ)

    def __eq__(self, other):
        return isinstance(other, PointSet) and other.points == self.points

    def __hash__(self):
        return hash(("points", self.points))

    def __repr__(self):
        return f"PointSet({[p.to_json() for p in self.points]})"


BaseContext = (ArtinianRing, PointSet)


def artinian_base(gb: GroebnerBasis) -> ArtinianRing:
    return ArtinianRing(quotient_basis(gb))


def lift(M: Mat, ring) -> Mat:
    """Push a polynomial (or rational) matrix into a base ring."""
    if isinstance(ring, PointSet):
        return M.map(ring.from_poly if M.ring is not QQ else ring.coerce, ring)
    return M.map(ring.coerce, ring)


def per_point(M: Mat, base) -> list:
    """Rational matrices of M at each point of a point set base."""
    if not isinstance(base, PointSet):
        raise TypeError("pointwise data needs a point set base")
    return [base.at(M, i) for i in range(base.dim)]
