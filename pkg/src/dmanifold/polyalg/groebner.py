"""Reduced Groebner bases, normal forms, ideal membership and quotient bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .poly import (
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    order_key,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; the monomial order is part of its identity."""

    generators: tuple
    nvars: int
    order: str = "grevlex"

    @property
    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_terms(self) -> list:
        return [g.to_terms() for g in self.generators]


def _reduce(p: Polynomial, basis: Sequence[Polynomial], order: str) -> Polynomial:
    """Full multivariate division remainder; ``basis`` members must be monic."""
    if not p or not basis:
        return p
    key = order_key(order)
    leads = [(g.leading_monomial(order), g) for g in basis]
    work = dict(p.items())
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, g in leads:
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                for e, gc in g.items():
                    t = mono_mul(e, shift)
                    v = work.get(t, 0) - c * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial._raw(rem, p.nvars)


def _spoly(f: Polynomial, g: Polynomial, order: str) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    return f.mul_term(mono_div(lcm, lf), 1) - g.mul_term(mono_div(lcm, lg), 1)


def _interreduce(gens: list, order: str) -> list:
    key = order_key(order)
    gens = [g.monic(order) for g in gens if g]
    # drop generators whose leading monomial is divisible by another's
    gens.sort(key=lambda g: key(g.leading_monomial(order)))
    minimal = []
    for g in gens:
        lm = g.leading_monomial(order)
        if not any(mono_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(_reduce(g, others, order).monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)))
    return out


def groebner(gens: Sequence[Polynomial], order: str = "grevlex", nvars: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` (Buchberger)."""
    gens = list(gens)
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required for an empty generator list")
        nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise ValueError(f"generator has {g.nvars} variables, expected {nvars}")
    order_key(order)
    basis = []
    for g in gens:
        r = _reduce(g, basis, order)
        if r:
            basis.append(r.monic(order))
    if any(g.is_constant() for g in basis):
        return GroebnerBasis((Polynomial.one(nvars),), nvars, order)

    key = order_key(order)
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        # normal selection strategy: smallest lcm first
        pairs.sort(
            key=lambda ij: key(
                mono_lcm(basis[ij[0]].leading_monomial(order), basis[ij[1]].leading_monomial(order))
            ),
            reverse=True,
        )
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        lf, lg = f.leading_monomial(order), g.leading_monomial(order)
        lcm = mono_lcm(lf, lg)
        # product criterion
        if lcm == mono_mul(lf, lg):
            continue
        # chain criterion
        if any(
            k != i and k != j
            and mono_divides(basis[k].leading_monomial(order), lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = _reduce(_spoly(f, g, order), basis, order)
        if r:
            if r.is_constant():
                return GroebnerBasis((Polynomial.one(nvars),), nvars, order)
            basis.append(r.monic(order))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    return GroebnerBasis(tuple(_interreduce(basis, order)), nvars, order)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.nvars != gb.nvars:
        raise ValueError(f"polynomial has {p.nvars} variables, basis has {gb.nvars}")
    return _reduce(p, gb.generators, gb.order)


def member(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero()


def ideal_square(gens: Sequence[Polynomial]) -> list:
    """Generators g_i g_j (i <= j) of the square of the ideal (gens)."""
    gens = list(gens)
    if gens:
        n = gens[0].nvars
        if any(g.nvars != n for g in gens):
            raise ValueError("generators must share a variable count")
    return [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = gb.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if _reduce(_spoly(gens[i], gens[j], gb.order), gens, gb.order):
                return False
    return True


@dataclass(frozen=True)
class QuotientPresentation:
    """The ring Q[x]/I with I given by a reduced Groebner basis."""

    gb: GroebnerBasis
    artinian: bool
    monomial_basis: tuple | None = None
    _index: dict = field(default=None, compare=False, repr=False)

    @property
    def nvars(self) -> int:
        return self.gb.nvars

    @property
    def dimension(self) -> int | None:
        return None if self.monomial_basis is None else len(self.monomial_basis)

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.gb)

    def coordinates(self, p: Polynomial) -> list:
        """Coefficients of the normal form of ``p`` in the standard monomial basis."""
        if not self.artinian:
            raise NotArtinian("quotient ring is not finite-dimensional")
        r = self.reduce(p)
        out = [Fraction(0)] * len(self.monomial_basis)
        for e, c in r.items():
            out[self._index[e]] = c
        return out

    def element(self, coords: Sequence) -> Polynomial:
        return Polynomial(
            {e: c for e, c in zip(self.monomial_basis, coords) if c}, self.nvars
        )


class NotArtinian(ValueError):
    """A ring-level solve was requested over a quotient of infinite dimension."""


def quotient_basis(gb: GroebnerBasis) -> QuotientPresentation:
    """Standard monomials of Q[x]/I when finite (pure power of every variable among leads)."""
    n = gb.nvars
    if gb.is_unit():
        return QuotientPresentation(gb, True, (), {})
    leads = gb.leading_monomials
    bounds = []
    for i in range(n):
        powers = [
            lm[i] for lm in leads if lm[i] > 0 and all(lm[j] == 0 for j in range(n) if j != i)
        ]
        if not powers:
            return QuotientPresentation(gb, False, None, None)
        bounds.append(min(powers))
    key = order_key(gb.order)
    basis = [
        e for e in product(*(range(b) for b in bounds))
        if not any(mono_divides(lm, e) for lm in leads)
    ]
    basis.sort(key=key)
    basis = tuple(tuple(e) for e in basis)
    return QuotientPresentation(gb, True, basis, {e: i for i, e in enumerate(basis)})
