"""Polynomial maps, Jacobians and exact evaluation at rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Mat
from .poly import Polynomial, as_fraction
from .rings import QQ, PolyRing


@dataclass(frozen=True)
class RationalPoint:
    coordinates: tuple

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(as_fraction(x) for x in self.coordinates))

    def __len__(self) -> int:
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def concat(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.coordinates + tuple(other))

    def to_json(self) -> list:
        return [str(x) for x in self.coordinates]


def point(*xs) -> RationalPoint:
    return RationalPoint(tuple(xs))


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map Q^n -> Q^m given by its m components."""

    source_vars: int
    target_vars: int
    components: tuple

    def __post_init__(self):
        comps = tuple(Polynomial.coerce(c, self.source_vars) for c in self.components)
        if len(comps) != self.target_vars:
            raise ValueError(f"expected {self.target_vars} components, got {len(comps)}")
        for c in comps:
            if c.nvars != self.source_vars:
                raise ValueError(f"component has {c.nvars} variables, expected {self.source_vars}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, n, tuple(Polynomial.var(i, n) for i in range(n)))

    @classmethod
    def projection(cls, n: int, indices: Sequence[int]) -> "PolyMap":
        return cls(n, len(indices), tuple(Polynomial.var(i, n) for i in indices))

    @classmethod
    def constant(cls, n: int, values: Sequence) -> "PolyMap":
        return cls(n, len(values), tuple(Polynomial.const(v, n) for v in values))

    def __getitem__(self, i) -> Polynomial:
        return self.components[i]

    def __len__(self) -> int:
        return self.target_vars

    def __call__(self, pt) -> tuple:
        return tuple(c.evaluate(tuple(pt)) for c in self.components)

    def pullback(self, p: Polynomial) -> Polynomial:
        """p o self."""
        if p.nvars != self.target_vars:
            raise ValueError(f"cannot pull back a polynomial in {p.nvars} variables")
        return p.compose_into(list(self.components), self.source_vars)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self o inner."""
        if inner.target_vars != self.source_vars:
            raise ValueError("maps are not composable")
        return PolyMap(inner.source_vars, self.target_vars,
                       tuple(inner.pullback(c) for c in self.components))

    def __add__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(self.source_vars, self.target_vars,
                       tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(self.source_vars, self.target_vars,
                       tuple(a - b for a, b in zip(self.components, other.components)))

    def as_column(self) -> Mat:
        return Mat(PolyRing(self.source_vars), self.target_vars, 1, tuple((c,) for c in self.components))

    def to_json(self) -> dict:
        return {"source_vars": self.source_vars, "target_vars": self.target_vars,
                "components": [c.to_terms() for c in self.components]}


def jacobian(f: PolyMap) -> Mat:
    """m x n matrix with entry (j, i) = d f_j / d x_i."""
    return Mat.build(PolyRing(f.source_vars), f.target_vars, f.source_vars,
                     lambda j, i: f.components[j].diff(i))


def pullback_matrix(M: Mat, f: PolyMap) -> Mat:
    """Entrywise M o f for a matrix of polynomials in f's target variables."""
    return M.map(f.pullback, PolyRing(f.source_vars))


def evaluate(obj, pt) -> object:
    """Exact value of a polynomial, PolyMap or polynomial matrix at a rational point."""
    pt = tuple(pt)
    if isinstance(obj, Polynomial):
        return obj.evaluate(pt)
    if isinstance(obj, PolyMap):
        return obj(pt)
    if isinstance(obj, Mat):
        return obj.map(lambda p: p.evaluate(pt), QQ)
    raise TypeError(f"cannot evaluate {type(obj).__name__}")


def poly_matrix(nvars: int, data: Sequence[Sequence], rows: int | None = None,
                cols: int | None = None) -> Mat:
    return Mat.of(PolyRing(nvars), data, rows, cols)


def const_matrix(M: Mat, nvars: int) -> Mat:
    """Promote a rational matrix to constant polynomials."""
    return M.map(lambda c: Polynomial.const(c, nvars), PolyRing(nvars))


def zero_rational(x) -> bool:
    return Fraction(x) == 0
