"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

ORDERS = ("grevlex", "grlex", "lex")


def order_key(order: str):
    """Return a sort key on exponent vectors; larger key means larger monomial."""
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "grlex":
        return lambda e: (sum(e), e)
    if order == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}")


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(c)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial in ``nvars`` variables with Fraction coefficients.

    Terms are held as a mapping from exponent tuples to nonzero coefficients.
    """

    __slots__ = ("nvars", "_terms", "_hash", "_sorted")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int = 0):
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.nvars = nvars
        self._terms = clean
        self._hash = None
        self._sorted = {}

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        p._sorted = {}
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "Polynomial":
        c = as_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Polynomial":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def coerce(cls, x, nvars: int) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.nvars != nvars:
                raise ValueError(f"polynomial has {x.nvars} variables, expected {nvars}")
            return x
        return cls.const(x, nvars)

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, e: Monomial) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, order: str = "grevlex") -> list:
        """Terms sorted from largest to smallest monomial."""
        st = self._sorted.get(order)
        if st is None:
            key = order_key(order)
            st = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
            self._sorted[order] = st
        return st

    def leading_term(self, order: str = "grevlex") -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order)[0]

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: str = "grevlex") -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: str = "grevlex") -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coeff(order))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({e: v * c for e, v in self._terms.items()}, self.nvars)

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            {mono_mul(e, mono): v * c for e, v in self._terms.items()}, self.nvars
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(self._terms) > len(other._terms):
            a, b = other, self
        else:
            a, b = self, other
        out: dict = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(out, self.nvars)

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            raise TypeError("polynomial division is not supported; use normal_form")
        return self.scale(1 / as_fraction(c))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # calculus and substitution -------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial._raw(out, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def compose(self, subs: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``subs[i]`` for variable ``i``; all subs share one variable count."""
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            m = 0
            return Polynomial.const(self.constant_term(), m)
        m = subs[0].nvars
        powers: list[dict] = [dict() for _ in subs]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = subs[i] ** k
            return cache[k]

        total = Polynomial.zero(m)
        for e, c in self._terms.items():
            term = Polynomial.const(c, m)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def compose_into(self, subs: Sequence["Polynomial"], nvars: int) -> "Polynomial":
        """Like :meth:`compose` but well defined when ``subs`` is empty."""
        if not subs:
            return Polynomial.const(self.constant_term(), nvars)
        return self.compose(subs)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-index into ``nvars`` variables, sending variable i to ``positions[i]``."""
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return Polynomial._raw(out, nvars)

    def substitute_zero(self, indices: Iterable[int]) -> "Polynomial":
        """Set the listed variables to 0 (variable count unchanged)."""
        idx = set(indices)
        return Polynomial._raw(
            {e: c for e, c in self._terms.items() if not any(e[i] for i in idx)}, self.nvars
        )

    def drop_vars(self, indices: Iterable[int]) -> "Polynomial":
        """Set the listed variables to 0 and remove them from the variable list."""
        idx = sorted(set(indices))
        keep = [i for i in range(self.nvars) if i not in idx]
        out = {}
        for e, c in self._terms.items():
            if any(e[i] for i in idx):
                continue
            out[tuple(e[i] for i in keep)] = c
        return Polynomial._raw(out, len(keep))

    def divide_by_var(self, i: int):
        """Return p / x_i if x_i divides p exactly, else None."""
        out = {}
        for e, c in self._terms.items():
            if not e[i]:
                return None
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c
        return Polynomial._raw(out, self.nvars)

    # serialization --------------------------------------------------------
    def to_terms(self) -> list:
        """Sparse term list ``[[num, den, [e1..en]], ...]`` in grevlex-descending order."""
        return [[c.numerator, c.denominator, list(e)] for e, c in self.sorted_terms("grevlex")]

    @classmethod
    def from_terms(cls, terms: Sequence, nvars: int) -> "Polynomial":
        out = {}
        for t in terms:
            if len(t) == 3:
                c = Fraction(int(t[0]), int(t[1]))
                e = t[2]
            elif len(t) == 2:
                c = as_fraction(t[0])
                e = t[1]
            else:
                raise ValueError(f"malformed term {t!r}")
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"term {t!r} does not have {nvars} exponents")
            out[e] = out.get(e, 0) + c
        return cls(out, nvars)

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()!r}, nvars={self.nvars})"

    def pretty(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms("grevlex"):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def variables(nvars: int) -> list:
    return [Polynomial.var(i, nvars) for i in range(nvars)]


def poly(terms: Mapping[Monomial, object], nvars: int) -> Polynomial:
    return Polynomial(terms, nvars)
