"""Fibre products of standard models over affine targets R^d."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..polyalg import Mat, PolyMap, PolyRing, Polynomial, evaluate, rank, vstack
from ..polyalg.linalg import det
from ..stdmodel import (
    StdModel,
    StdOneMor,
    StdTwoMor,
    Verdict,
    new_std_model,
    one_mor_equal,
    validate_one_mor,
    validate_two_mor,
)


@dataclass(frozen=True)
class FibreSquare:
    """W = X x_{R^d} Y with projections e, f and the 2-morphism eta: g e => h f."""

    W: StdModel
    e: StdOneMor
    f: StdOneMor
    eta: StdTwoMor
    X: StdModel
    gX: PolyMap
    Y: StdModel
    gY: PolyMap
    d: int

    @property
    def Z(self) -> StdModel:
        return new_std_model(self.d, 0, ())

    def g(self) -> StdOneMor:
        return StdOneMor(self.gX, Mat.zeros(PolyRing(self.X.n), 0, self.X.k))

    def h(self) -> StdOneMor:
        return StdOneMor(self.gY, Mat.zeros(PolyRing(self.Y.n), 0, self.Y.k))

    def layout(self) -> dict:
        n, m, k, l, d = self.X.n, self.Y.n, self.X.k, self.Y.k, self.d
        return {"vars": {"X": [0, n], "Y": [n, n + m]},
                "bundle": {"X": [0, k], "Y": [k, k + l], "Z": [k + l, k + l + d]}}


def fibre_product_affine(X: StdModel, gX: PolyMap, Y: StdModel, gY: PolyMap) -> FibreSquare:
    if gX.source_vars != X.n or gY.source_vars != Y.n:
        raise ValueError("maps to the target must start at the models' ambient spaces")
    if gX.target_vars != gY.target_vars:
        raise ValueError(f"target mismatch: R^{gX.target_vars} vs R^{gY.target_vars}")
    n, m, k, l, d = X.n, Y.n, X.k, Y.k, gX.target_vars
    N = n + m
    piV = PolyMap.projection(N, range(n))
    piW = PolyMap.projection(N, range(n, N))
    s = [piV.pullback(c) for c in X.s]
    t = [piW.pullback(c) for c in Y.s]
    u = [piV.pullback(a) - piW.pullback(b) for a, b in zip(gX.components, gY.components)]
    W = new_std_model(N, k + l + d, s + t + u)
    R = PolyRing(N)
    K = k + l + d
    one, zero = R.one(), R.zero()
    e_hat = Mat.build(R, k, K, lambda i, j: one if j == i else zero)
    f_hat = Mat.build(R, l, K, lambda i, j: one if j == k + i else zero)
    lam = Mat.build(R, d, K, lambda i, j: -one if j == k + l + i else zero)
    return FibreSquare(W, StdOneMor(piV, e_hat), StdOneMor(piW, f_hat), StdTwoMor(lam),
                       X, gX, Y, gY, d)


def validate_square(sq: FibreSquare) -> Verdict:
    """Projections and eta pass the standard-model checks."""
    ve = validate_one_mor(sq.W, sq.X, sq.e)
    vf = validate_one_mor(sq.W, sq.Y, sq.f)
    from ..stdmodel import compose_one
    ge = compose_one(sq.g(), sq.e)
    hf = compose_one(sq.h(), sq.f)
    vt = validate_two_mor(sq.W, sq.Z, ge, hf, sq.eta)
    return Verdict(ve.ok and vf.ok and vt.ok,
                   {"e": ve.certificate, "f": vf.certificate, "eta": vt.certificate})


def vdim_check(sq: FibreSquare) -> bool:
    return sq.W.vdim == sq.X.vdim + sq.Y.vdim - sq.d


def is_witness_zero(sq: FibreSquare, v, w) -> bool:
    """(v, w) is a zero of W iff s(v)=0, t(w)=0 and gX(v)=gY(w)."""
    return sq.W.is_zero(tuple(v) + tuple(w))


def swap(sq: FibreSquare) -> FibreSquare:
    return fibre_product_affine(sq.Y, sq.gY, sq.X, sq.gX)


def swap_involution_ok(sq: FibreSquare) -> bool:
    back = swap(swap(sq))
    return (back.W == sq.W
            and one_mor_equal(sq.W, sq.X, sq.e, back.e).ok
            and one_mor_equal(sq.W, sq.Y, sq.f, back.f).ok)


# identifications between models presented in different coordinates -------------

@dataclass(frozen=True)
class Identification:
    """A linear identification W1 ~ W2: x2 = x1[var_perm], s2 = bundle @ s1."""

    var_perm: tuple  # W2 variable i is W1 variable var_perm[i]
    bundle: tuple  # W2 component j equals sign * W1 component index: (index, sign)

    def sign(self) -> int:
        """Sign of the induced map on det(E) (x) det(T*V)."""
        return _perm_sign([i for i, _ in self.bundle]) * _prod(s for _, s in self.bundle) \
            * _perm_sign(list(self.var_perm))


def _prod(xs) -> int:
    p = 1
    for x in xs:
        p *= x
    return p


def _perm_sign(p: Sequence[int]) -> int:
    p = list(p)
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def identify(W1: StdModel, W2: StdModel, var_perm: Sequence[int]) -> Identification:
    """Match each section component of W2 to +- a unique component of W1 after relabelling.

    A search: when components coincide up to sign (zero components, repeats) the
    match is not unique and the chosen sign is arbitrary; prefer a layout-built
    identification such as swap_identification where one exists.
    """
    if W1.n != W2.n or W1.k != W2.k:
        raise ValueError("models have different shapes")
    n = W1.n
    # variable i of W2 is variable var_perm[i] of W1; rewrite W1's section in W2's variables
    inv = [0] * n
    for i, p in enumerate(var_perm):
        inv[p] = i
    moved = [c.embed(n, inv) for c in W1.s]
    used = set()
    bundle = []
    for c in W2.s:
        hit = None
        for idx, m in enumerate(moved):
            if idx in used:
                continue
            if m == c:
                hit = (idx, 1)
            elif m == -c:
                hit = (idx, -1)
            if hit:
                break
        if hit is None:
            raise ValueError(f"component {c.pretty()} has no counterpart")
        used.add(hit[0])
        bundle.append(hit)
    return Identification(tuple(var_perm), tuple(bundle))


def swap_identification(sq: FibreSquare) -> Identification:
    """The natural map X x_Z Y -> Y x_Z X: swap the factors and negate the R^d block.

    Built from the layouts rather than by matching components, so zero or repeated
    section components cannot pick the wrong sign.
    """
    n, m, k, l, d = sq.X.n, sq.Y.n, sq.X.k, sq.Y.k, sq.d
    var_perm = tuple(range(n, n + m)) + tuple(range(n))
    bundle = tuple((k + j, 1) for j in range(l)) + tuple((j, 1) for j in range(k)) \
        + tuple((k + l + j, -1) for j in range(d))
    W, W2 = sq.W, swap(sq).W
    inv = [0] * W.n
    for i, p in enumerate(var_perm):
        inv[p] = i
    moved = [c.embed(W.n, inv) for c in W.s]
    for j, (idx, sgn) in enumerate(bundle):
        if W2.s[j] != moved[idx].scale(sgn):
            raise RuntimeError("swapped square does not have the expected layout")
    return Identification(var_perm, bundle)


# d-transversality ---------------------------------------------------------------

def d_transverse_at(X: StdModel, Y: StdModel, Z: StdModel, g: StdOneMor, h: StdOneMor,
                    pairs: Sequence) -> Verdict:
    """Pointwise left-invertibility of (ghat^T; -hhat^T; du^T) from G*_z."""
    per = []
    for v, w in pairs:
        v, w = tuple(v), tuple(w)
        if not X.is_zero(v) or not Y.is_zero(w):
            raise ValueError("pair is not a pair of zeros")
        z = g.f(v)
        if z != h.f(w):
            raise ValueError("g(v) != h(w)")
        if not Z.is_zero(z):
            raise ValueError("target section does not vanish at g(v)")
        M = vstack(evaluate(g.fhat, v).T, -evaluate(h.fhat, w).T, evaluate(Z.ds, z).T)
        ok = rank(M) == Z.k
        per.append({"v": [str(x) for x in v], "w": [str(x) for x in w], "ok": ok,
                    "matrix": [[str(x) for x in r] for r in M.entries]})
    return Verdict(all(p["ok"] for p in per), {"pairs": per})


def jacobian_det_at(W: StdModel, pt) -> int:
    """Sign of det ds at a zero of a square model (0 if degenerate)."""
    d = det(evaluate(W.ds, tuple(pt)))
    return (d > 0) - (d < 0)
