"""Standard models S(n, k, s) over R^n with trivial bundles, and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from ..polyalg import (
    ArtinianRing,
    Mat,
    NotArtinian,
    PolyMap,
    PolyRing,
    Polynomial,
    QQ,
    RationalPoint,
    evaluate,
    groebner,
    hstack,
    ideal_square,
    jacobian,
    normal_form,
    pullback_matrix,
    quotient_basis,
    rank,
    vstack,
)
from ..vvb import VVB, VVBMor, PointSet, classify, is_equivalence, lift, validate_mor


@dataclass
class Verdict:
    """A pass/fail answer with the data needed to audit it."""

    ok: bool
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class StdModel:
    n: int
    k: int
    s: tuple

    def __post_init__(self):
        s = tuple(Polynomial.coerce(c, self.n) for c in self.s)
        if len(s) != self.k:
            raise ValueError(f"section has {len(s)} components, expected k={self.k}")
        for c in s:
            if c.nvars != self.n:
                raise ValueError(f"section component in {c.nvars} variables, expected {self.n}")
        object.__setattr__(self, "s", s)

    @property
    def vdim(self) -> int:
        return self.n - self.k

    # Groebner data is computed on first use; large random models never need I_s^2.
    @cached_property
    def gb_s(self):
        return groebner(list(self.s), nvars=self.n)

    @cached_property
    def gb_s2(self):
        return groebner(ideal_square(list(self.s)), nvars=self.n)

    @cached_property
    def quotient(self):
        return quotient_basis(self.gb_s)

    @property
    def artinian(self) -> bool:
        return self.quotient.artinian

    def artinian_base(self) -> ArtinianRing:
        if not self.artinian:
            raise NotArtinian("Q[x]/I_s is not finite-dimensional; supply witness points")
        return ArtinianRing(self.quotient)

    def witness_base(self, points: Sequence) -> PointSet:
        return PointSet(points, self.s, self.n)

    @cached_property
    def ds(self) -> Mat:
        return jacobian(self.section_map)

    @property
    def section_map(self) -> PolyMap:
        return PolyMap(self.n, self.k, self.s)

    def is_zero(self, pt) -> bool:
        return all(c.evaluate(tuple(pt)) == 0 for c in self.s)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "s": [c.to_terms() for c in self.s]}


def new_std_model(n: int, k: int, s: Sequence) -> StdModel:
    return StdModel(n, k, tuple(s))


@dataclass(frozen=True)
class StdOneMor:
    f: PolyMap
    fhat: Mat  # l x k over Q[x_1..x_n]

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "fhat": [[p.to_terms() for p in r] for r in self.fhat.entries]}


@dataclass(frozen=True)
class StdTwoMor:
    lam: Mat  # m x k over Q[x_1..x_n]


@dataclass(frozen=True)
class WitnessSet:
    points: tuple
    complete: bool = False  # user assertion that the points exhaust the zero set

    def __post_init__(self):
        object.__setattr__(
            self, "points",
            tuple(p if isinstance(p, RationalPoint) else RationalPoint(tuple(p)) for p in self.points),
        )

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


# helpers ---------------------------------------------------------------------

def _prings(X: StdModel) -> PolyRing:
    return PolyRing(X.n)


def _check_arity(X: StdModel, Y: StdModel, m: StdOneMor):
    if m.f.source_vars != X.n or m.f.target_vars != Y.n:
        raise ValueError(f"base map is {m.f.source_vars}->{m.f.target_vars}, expected {X.n}->{Y.n}")
    if m.fhat.shape != (Y.k, X.k):
        raise ValueError(f"fhat has shape {m.fhat.shape}, expected ({Y.k}, {X.k})")
    if m.fhat.ring != _prings(X):
        raise ValueError("fhat must have entries in the source variables")


def _column(polys: Sequence[Polynomial], n: int) -> Mat:
    return Mat(PolyRing(n), len(polys), 1, tuple((p,) for p in polys))


def _remainders(polys, gb) -> list:
    return [normal_form(p, gb) for p in polys]


def _cert(label: str, rems: list) -> dict:
    bad = [(i, r) for i, r in enumerate(rems) if not r.is_zero()]
    return {label: [{"index": i, "remainder": r.to_terms()} for i, r in bad]}


def identity_one(X: StdModel) -> StdOneMor:
    return StdOneMor(PolyMap.identity(X.n), Mat.identity(_prings(X), X.k))


def zero_two(X: StdModel, Y: StdModel) -> StdTwoMor:
    return StdTwoMor(Mat.zeros(_prings(X), Y.n, X.k))


# validation and equality -------------------------------------------------------

def validate_one_mor(X: StdModel, Y: StdModel, m: StdOneMor) -> Verdict:
    """fhat . s - t o f lies in I_s^2 componentwise."""
    _check_arity(X, Y, m)
    lhs = m.fhat @ _column(X.s, X.n)
    diffs = [lhs[j, 0] - m.f.pullback(Y.s[j]) for j in range(Y.k)]
    rems = _remainders(diffs, X.gb_s2)
    ok = all(r.is_zero() for r in rems)
    return Verdict(ok, {} if ok else _cert("fhat_s_minus_t_f", rems))


def one_mor_equal(X: StdModel, Y: StdModel, m1: StdOneMor, m2: StdOneMor) -> Verdict:
    """g = f + O(s^2) and ghat = fhat + O(s)."""
    _check_arity(X, Y, m1)
    _check_arity(X, Y, m2)
    r1 = _remainders([g - f for g, f in zip(m2.f.components, m1.f.components)], X.gb_s2)
    r2 = _remainders(list(m2.fhat - m1.fhat), X.gb_s)
    ok = all(r.is_zero() for r in r1 + r2)
    cert = {} if ok else {**_cert("base", r1), **_cert("fhat", r2)}
    return Verdict(ok, cert)


def validate_two_mor(X: StdModel, Y: StdModel, m1: StdOneMor, m2: StdOneMor, t: StdTwoMor) -> Verdict:
    """g = f + Lambda s + O(s^2) and ghat = fhat + (dt o f) Lambda + O(s)."""
    _check_arity(X, Y, m1)
    _check_arity(X, Y, m2)
    if t.lam.shape != (Y.n, X.k):
        raise ValueError(f"Lambda has shape {t.lam.shape}, expected ({Y.n}, {X.k})")
    ls = t.lam @ _column(X.s, X.n)
    r1 = _remainders(
        [m2.f[a] - m1.f[a] - ls[a, 0] for a in range(Y.n)], X.gb_s2
    )
    dtf = pullback_matrix(Y.ds, m1.f)
    r2 = _remainders(list(m2.fhat - m1.fhat - dtf @ t.lam), X.gb_s)
    ok = all(r.is_zero() for r in r1 + r2)
    cert = {} if ok else {**_cert("base", r1), **_cert("fhat", r2)}
    return Verdict(ok, cert)


def two_mor_equal(X: StdModel, t1: StdTwoMor, t2: StdTwoMor) -> Verdict:
    if t1.lam.shape != t2.lam.shape:
        raise ValueError("2-morphisms have different shapes")
    rems = _remainders(list(t1.lam - t2.lam), X.gb_s)
    ok = all(r.is_zero() for r in rems)
    return Verdict(ok, {} if ok else _cert("lambda", rems))


# composition -----------------------------------------------------------------

def compose_one(g: StdOneMor, f: StdOneMor) -> StdOneMor:
    """g o f: base map g o f, bundle map (ghat o f) fhat."""
    if g.f.source_vars != f.f.target_vars:
        raise ValueError("base maps are not composable")
    if g.fhat.cols != f.fhat.rows:
        raise ValueError("bundle maps are not composable")
    return StdOneMor(g.f.compose(f.f), pullback_matrix(g.fhat, f.f) @ f.fhat)


def vertical_compose(t2: StdTwoMor, t1: StdTwoMor) -> StdTwoMor:
    if t1.lam.shape != t2.lam.shape:
        raise ValueError("2-morphisms have different shapes")
    return StdTwoMor(t2.lam + t1.lam)


def horizontal_compose(z: StdTwoMor, t: StdTwoMor, g: StdOneMor, f: StdOneMor, Y: StdModel) -> StdTwoMor:
    """z * t : g o f => g' o f' for t: f => f' (X -> Y) and z: g => g' (Y -> Z).

    Lambda = (dg o f) Lambda_t + (M_z o f) fhat + (M_z o f)(dt o f) Lambda_t.
    """
    if z.lam.cols != Y.k or t.lam.rows != Y.n:
        raise ValueError("2-morphisms do not share the middle model")
    dgf = pullback_matrix(jacobian(g.f), f.f)
    mzf = pullback_matrix(z.lam, f.f)
    dtf = pullback_matrix(Y.ds, f.f)
    return StdTwoMor(dgf @ t.lam + mzf @ f.fhat + mzf @ dtf @ t.lam)


# cotangent complexes -------------------------------------------------------------

def _base_matrix(M: Mat, base) -> Mat:
    return lift(M, base)


def resolve_base(X: StdModel, base=None):
    """Default base: the Artinian quotient when finite, else an error."""
    if base is None:
        return X.artinian_base()
    if isinstance(base, WitnessSet):
        return X.witness_base(base.points)
    return base


def cotangent_complex(X: StdModel, base=None) -> VVB:
    """(ds)^T : E* -> T*V restricted to the base."""
    base = resolve_base(X, base)
    return VVB(base, X.k, X.n, _base_matrix(X.ds.T, base))


def omega_of_morphism(X: StdModel, Y: StdModel, m: StdOneMor, base=None) -> tuple:
    """(f*(T*Y), T*X, Omega_f) with Omega_f = (fhat^T, df^T)."""
    _check_arity(X, Y, m)
    base = resolve_base(X, base)
    dtf = pullback_matrix(Y.ds, m.f)
    src = VVB(base, Y.k, Y.n, _base_matrix(dtf.T, base))
    dst = cotangent_complex(X, base)
    om = VVBMor(_base_matrix(m.fhat.T, base), _base_matrix(jacobian(m.f).T, base))
    if not validate_mor(src, dst, om):
        raise RuntimeError("Omega_f does not commute; the 1-morphism data is inconsistent")
    return src, dst, om


def classify_morphism(X: StdModel, Y: StdModel, m: StdOneMor, base=None) -> dict:
    src, dst, om = omega_of_morphism(X, Y, m, base)
    fl = classify(src, dst, om)
    return {"w_submersion": fl.weakly_injective, "submersion": fl.injective,
            "w_immersion": fl.weakly_surjective, "immersion": fl.surjective}


def is_manifold(X: StdModel, base=None) -> bool:
    """Does (ds)^T admit a left inverse over the base?"""
    from ..polyalg import NoSolution, RingSystem

    base = resolve_base(X, base)
    phi = cotangent_complex(X, base).phi
    sys = RingSystem(base)
    sys.unknown("gamma", X.k, X.n)
    sys.equation([(None, "gamma", phi)], Mat.identity(base, X.k))
    try:
        sys.solve()
    except NoSolution:
        return False
    return True


# pointwise criteria -------------------------------------------------------------

def _check_witnesses(X: StdModel, pts):
    for p in pts:
        if len(p) != X.n:
            raise ValueError(f"witness {p.to_json()} has the wrong dimension")
        if not X.is_zero(p):
            raise ValueError(f"witness {p.to_json()} is not a zero of s")


def exact_sequence_at(X: StdModel, Y: StdModel, m: StdOneMor, v) -> dict:
    """Exactness of 0 -> T_v V -> E_v + T_w W -> F_w -> 0 at one zero v."""
    v = tuple(v)
    w = m.f(v)
    A = vstack(evaluate(X.ds, v), evaluate(jacobian(m.f), v))  # (k+m) x n
    B = hstack(evaluate(m.fhat, v), -evaluate(Y.ds, w))  # l x (k+m)
    comp_zero = (B @ A).is_zero()
    rA, rB = rank(A), rank(B)
    injective = rA == X.n
    surjective = rB == Y.k
    middle = comp_zero and (X.k + Y.n - rB) == rA
    return {
        "point": [str(x) for x in v],
        "image": [str(x) for x in w],
        "injective": injective,
        "middle_exact": middle,
        "surjective": surjective,
        "exact": injective and middle and surjective,
        "A": [[str(x) for x in r] for r in A.entries],
        "B": [[str(x) for x in r] for r in B.entries],
    }


def etale_at(X: StdModel, Y: StdModel, m: StdOneMor, w) -> Verdict:
    _check_arity(X, Y, m)
    pts = list(w)
    _check_witnesses(X, pts)
    per = [exact_sequence_at(X, Y, m, p) for p in pts]
    return Verdict(all(r["exact"] for r in per), {"points": per})


def is_equivalence_std(X: StdModel, Y: StdModel, m: StdOneMor, wX: WitnessSet, wY: WitnessSet) -> Verdict:
    """Etale at every zero and a bijection of the (asserted complete) zero sets."""
    if not (wX.complete and wY.complete):
        raise ValueError("equivalence needs witness sets asserted complete")
    et = etale_at(X, Y, m, wX)
    _check_witnesses(Y, list(wY))
    images = [tuple(m.f(tuple(p))) for p in wX]
    targets = [tuple(p) for p in wY]
    bij = len(set(images)) == len(images) and set(images) == set(targets)
    return Verdict(et.ok and bij, {"etale": et.ok, "bijective": bij, "points": et.certificate["points"]})
