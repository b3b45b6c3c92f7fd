"""Corner calculus on model domains [0,inf)^k x R^(n-k).

Corner coordinates come first.  Faces and corner subsets are labelled by the
1-based number of the corner coordinate that vanishes on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polyalg import Mat, PolyMap, Polynomial, QQ, evaluate, groebner, jacobian, kernel, rank


@dataclass(frozen=True)
class CornerModel:
    """[0,inf)^k x R^(n-k)."""

    k: int
    n: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def faces(self) -> tuple:
        return tuple(range(1, self.k + 1))

    def contains(self, pt) -> bool:
        pt = tuple(Fraction(x) for x in pt)
        return len(pt) == self.n and all(x >= 0 for x in pt[: self.k])

    def vanishing(self, pt) -> frozenset:
        """Corner coordinates (1-based) that are zero at pt."""
        return frozenset(i + 1 for i in range(self.k) if Fraction(pt[i]) == 0)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n}


def _check_point(m: CornerModel, pt) -> tuple:
    pt = tuple(Fraction(x) for x in pt)
    if not m.contains(pt):
        raise ValueError(f"{[str(x) for x in pt]} is not in [0,inf)^{m.k} x R^{m.n - m.k}")
    return pt


def depth(m: CornerModel, pt) -> int:
    return len(m.vanishing(_check_point(m, pt)))


# piece objects ---------------------------------------------------------------

@dataclass(frozen=True)
class PieceObject:
    """A disjoint union of model pieces keyed by corner subsets."""

    pieces: tuple  # ((frozenset, CornerModel), ...)

    def __post_init__(self):
        keys = [s for s, _ in self.pieces]
        if len(set(keys)) != len(keys):
            raise ValueError("pieces must be indexed by distinct subsets")

    def __len__(self) -> int:
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def keys(self) -> list:
        return [s for s, _ in self.pieces]

    def model(self, key) -> CornerModel:
        for s, m in self.pieces:
            if s == key:
                return m
        raise KeyError(key)

    def degree(self, l: int) -> list:
        return [(s, m) for s, m in self.pieces if len(s) == l]

    def degree_counts(self) -> list:
        top = max((len(s) for s, _ in self.pieces), default=-1)
        return [len(self.degree(l)) for l in range(top + 1)]

    def to_json(self) -> list:
        return [{"subset": _key_json(s), "model": m.to_json()} for s, m in self.pieces]


def _key_json(s):
    return sorted(_key_json(x) if isinstance(x, frozenset) else x for x in s)


def _sorted_subsets(ground: Sequence[int], size: int) -> list:
    return [frozenset(c) for c in itertools.combinations(sorted(ground), size)]


def boundary(m: CornerModel) -> PieceObject:
    """One face [0,inf)^(k-1) x R^(n-k) per corner coordinate."""
    return PieceObject(tuple((frozenset({i}), CornerModel(m.k - 1, m.n - 1)) for i in m.faces))


def boundary_preimage(m: CornerModel, pt) -> list:
    """Points of the boundary over pt: one per vanishing corner coordinate.

    Each entry is (face, point in the face's coordinates).
    """
    pt = _check_point(m, pt)
    return [(i, pt[: i - 1] + pt[i:]) for i in sorted(m.vanishing(pt))]


def corners(m: CornerModel) -> PieceObject:
    pieces = []
    for l in range(m.k + 1):
        for s in _sorted_subsets(m.faces, l):
            pieces.append((s, CornerModel(m.k - l, m.n - l)))
    return PieceObject(tuple(pieces))


def product(m1: CornerModel, m2: CornerModel) -> CornerModel:
    return CornerModel(m1.k + m2.k, m1.n + m2.n)


def product_order(m1: CornerModel, m2: CornerModel) -> list:
    """Position in the product of each coordinate of m1 followed by m2."""
    k, k1 = m1.k + m2.k, m1.k
    pos = list(range(k1)) + [k + i for i in range(m1.n - m1.k)]
    pos += [k1 + i for i in range(m2.k)] + [k + (m1.n - m1.k) + i for i in range(m2.n - m2.k)]
    return pos


def corner_counts_multiply(m1: CornerModel, m2: CornerModel) -> bool:
    """C(X x Y) = C(X) x C(Y) at the level of piece counts per degree."""
    a = corners(m1).degree_counts()
    b = corners(m2).degree_counts()
    c = corners(product(m1, m2)).degree_counts()
    conv = [sum(a[j] * b[i - j] for j in range(len(a)) if 0 <= i - j < len(b)) for i in range(len(c))]
    return conv == c and sum(c) == sum(a) * sum(b)


# corner maps -----------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    """The component vanishes identically."""

    kind = "Zero"

    def to_json(self) -> dict:
        return {"kind": "Zero"}


@dataclass(frozen=True)
class Face:
    """The component equals x_i u with u(0) > 0."""

    i: int
    u: Polynomial
    kind = "Face"

    def to_json(self) -> dict:
        return {"kind": "Face", "i": self.i, "u": self.u.to_terms()}


@dataclass(frozen=True)
class Positive:
    """The component stays positive on the domain: the target face is never reached."""

    c: Polynomial
    kind = "Positive"

    def to_json(self) -> dict:
        return {"kind": "Positive", "c": self.c.to_terms()}


@dataclass(frozen=True)
class Rejection:
    component: int
    reason: str

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"rejected": True, "component": self.component, "reason": self.reason}


@dataclass(frozen=True)
class CornerMap:
    src: CornerModel
    dst: CornerModel
    f: PolyMap
    table: tuple  # entry for each target corner coordinate 1..k'
    warnings: tuple = ()

    def entry(self, j: int):
        return self.table[j - 1]

    def faces_hit(self) -> dict:
        """Source face -> target faces it is sent into (the component-level S_f)."""
        out: dict = {}
        for j, e in enumerate(self.table, 1):
            if isinstance(e, Face):
                out.setdefault(e.i, []).append(j)
        return out

    def zero_faces(self) -> list:
        """Target faces containing the whole image (the component-level T_f)."""
        return [j for j, e in enumerate(self.table, 1) if isinstance(e, Zero)]

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(), "f": self.f.to_json(),
                "table": [e.to_json() for e in self.table], "warnings": list(self.warnings)}


def _corner_divisors(p: Polynomial, k: int) -> list:
    return [i for i in range(k) if p.divide_by_var(i) is not None]


def validate_corner_map(src: CornerModel, dst: CornerModel, f: PolyMap, witnesses=()) -> CornerMap | Rejection:
    """Read off the face table of f, or say which component breaks smoothness."""
    if f.source_vars != src.n or f.target_vars != dst.n:
        raise ValueError(f"map R^{f.source_vars} -> R^{f.target_vars} does not fit {src} -> {dst}")
    pts = [_check_point(src, w) for w in witnesses]
    table, warnings = [], []
    for j in range(dst.k):
        c = f.components[j]
        if c.is_zero():
            table.append(Zero())
            continue
        divs = _corner_divisors(c, src.k)
        if len(divs) > 1:
            names = ", ".join(f"x{i + 1}" for i in divs)
            return Rejection(j + 1, f"divisible by {names}: differential vanishes on the corner they cut out")
        if divs:
            i = divs[0]
            u = c.divide_by_var(i)
            if u.divide_by_var(i) is not None:
                return Rejection(j + 1, f"divisible by x{i + 1}^2: differential vanishes on the face x{i + 1}=0")
            if u.constant_term() <= 0:
                return Rejection(j + 1, f"cofactor of x{i + 1} is not positive at the origin")
            for w in pts:
                if u.evaluate(w) <= 0:
                    return Rejection(j + 1, f"cofactor of x{i + 1} is not positive at {[str(x) for x in w]}")
            table.append(Face(i + 1, u))
            if not u.is_constant():
                warnings.append(f"component {j + 1}: positivity of the cofactor checked at the origin and witnesses only")
            continue
        if c.constant_term() <= 0:
            return Rejection(j + 1, "neither a face defining function nor zero, and not positive at the origin")
        for w in pts:
            if c.evaluate(w) <= 0:
                return Rejection(j + 1, f"not positive at {[str(x) for x in w]}")
        table.append(Positive(c))
        if not c.is_constant():
            warnings.append(f"component {j + 1}: positivity checked at the origin and witnesses only")
    return CornerMap(src, dst, f, tuple(table), tuple(warnings))


@dataclass
class MapFlags:
    simple: bool
    semisimple: bool
    flat: bool
    submersion: bool | None = None
    immersion: bool | None = None
    witnesses: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"simple": self.simple, "semisimple": self.semisimple, "flat": self.flat,
                "submersion": self.submersion, "immersion": self.immersion}

    def describe(self) -> str:
        # simple implies semisimple, and "not semisimple" already rules out simple
        if self.simple:
            words = ["simple"]
        elif self.semisimple:
            words = ["semisimple"]
        else:
            words = []
        words.append("flat" if self.flat else "not flat")
        if self.semisimple and not self.simple:
            words.append("not simple")
        if not self.semisimple:
            words.append("not semisimple")
        return ", ".join(words)


def _free_dirs(m: CornerModel, pt) -> list:
    """Coordinate directions tangent to the stratum through pt."""
    zero = m.vanishing(pt)
    return [i for i in range(m.n) if i >= m.k or (i + 1) not in zero]


def _rows_cols(M: Mat, rows: list, cols: list) -> Mat:
    return Mat(QQ, len(rows), len(cols), tuple(tuple(M[r, c] for c in cols) for r in rows))


def classify_map(cm: CornerMap, witnesses=()) -> MapFlags:
    hit = cm.faces_hit()
    semisimple = all(len(js) == 1 for js in hit.values())
    simple = semisimple and set(hit) == set(cm.src.faces)
    flat = not cm.zero_faces()
    flags = MapFlags(simple, semisimple, flat)
    pts = [_check_point(cm.src, w) for w in witnesses]
    if pts:
        J = jacobian(cm.f)
        sub, imm = True, True
        for x in pts:
            y = cm.f(x)
            Jx = evaluate(J, x)
            src_dirs, dst_dirs = _free_dirs(cm.src, x), _free_dirs(cm.dst, y)
            full_onto = rank(Jx) == cm.dst.n
            strat_onto = rank(_rows_cols(Jx, dst_dirs, src_dirs)) == len(dst_dirs)
            injective = rank(Jx) == cm.src.n
            sub &= full_onto and strat_onto
            imm &= injective
            flags.witnesses.append({"point": [str(v) for v in x], "submersion": full_onto and strat_onto,
                                    "immersion": injective})
        flags.submersion, flags.immersion = sub, imm
    return flags


# boundary decomposition -------------------------------------------------------

def _restrict(f: PolyMap, src: CornerModel, zero_src: frozenset, dst: CornerModel, drop_dst: frozenset) -> PolyMap:
    idx = [i - 1 for i in zero_src]
    comps = [c.drop_vars(idx) for j, c in enumerate(f.components) if (j + 1) not in drop_dst]
    return PolyMap(src.n - len(idx), len(comps), tuple(comps))


def _insert_zeros(n_small: int, zero_at: frozenset, n_big: int) -> PolyMap:
    """Inclusion of a corner piece: put 0 at the listed 1-based corner coordinates."""
    comps, v = [], 0
    for i in range(n_big):
        if (i + 1) in zero_at:
            comps.append(Polynomial.zero(n_small))
        else:
            comps.append(Polynomial.var(v, n_small))
            v += 1
    return PolyMap(n_small, n_big, tuple(comps))


@dataclass
class BoundaryDecomposition:
    plus: list  # [(face, f_+ as PolyMap into Y)]
    minus: list  # [(face, target face, f_- as CornerMap)]
    squares_commute: bool

    def to_json(self) -> dict:
        return {"plus": [i for i, _ in self.plus],
                "minus": [{"face": i, "target_face": j, "map": g.to_json()} for i, j, g in self.minus],
                "squares_commute": self.squares_commute}


def boundary_decomposition(cm: CornerMap) -> BoundaryDecomposition:
    """Split the source faces into those f carries into a target face and the rest."""
    hit = cm.faces_hit()
    if any(len(js) > 1 for js in hit.values()):
        raise ValueError("boundary decomposition needs a semisimple map")
    plus, minus, ok = [], [], True
    face = CornerModel(cm.src.k - 1, cm.src.n - 1) if cm.src.k else None
    for i in cm.src.faces:
        inc = _insert_zeros(cm.src.n - 1, frozenset({i}), cm.src.n)
        if i not in hit:
            plus.append((i, cm.f.compose(inc)))
            continue
        j = hit[i][0]
        tface = CornerModel(cm.dst.k - 1, cm.dst.n - 1)
        g = _restrict(cm.f, cm.src, frozenset({i}), cm.dst, frozenset({j}))
        gm = validate_corner_map(face, tface, g)
        if isinstance(gm, Rejection):
            raise ValueError(f"induced map on face {i} is not smooth: {gm.reason}")
        ok &= cm.f.compose(inc) == _insert_zeros(cm.dst.n - 1, frozenset({j}), cm.dst.n).compose(g)
        minus.append((i, j, gm))
    return BoundaryDecomposition(plus, minus, ok)


# corner functors --------------------------------------------------------------

@dataclass
class CornerFunctorImage:
    variant: str
    assignment: dict  # source subset -> target subset
    maps: dict  # source subset -> induced CornerMap

    def to_json(self) -> list:
        return [{"source": sorted(s), "target": sorted(t)}
                for s, t in sorted(self.assignment.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]


def corner_target(cm: CornerMap, s: frozenset, variant: str = "C") -> frozenset:
    t = {j for j, e in enumerate(cm.table, 1) if isinstance(e, Face) and e.i in s}
    if variant == "Chat":
        t |= set(cm.zero_faces())
    elif variant != "C":
        raise ValueError(f"unknown corner functor {variant!r}")
    return frozenset(t)


def corner_functor(cm: CornerMap, variant: str = "C") -> CornerFunctorImage:
    assignment, maps = {}, {}
    for s, piece in corners(cm.src):
        t = corner_target(cm, s, variant)
        tpiece = CornerModel(cm.dst.k - len(t), cm.dst.n - len(t))
        g = _restrict(cm.f, cm.src, s, cm.dst, t)
        gm = validate_corner_map(piece, tpiece, g)
        if isinstance(gm, Rejection):
            raise ValueError(f"induced map on piece {sorted(s)} is not smooth: {gm.reason}")
        assignment[s] = t
        maps[s] = gm
    return CornerFunctorImage(variant, assignment, maps)


def compose_corner_maps(g: CornerMap, f: CornerMap) -> CornerMap | Rejection:
    """g o f."""
    if f.dst != g.src:
        raise ValueError("corner maps are not composable")
    return validate_corner_map(f.src, g.dst, g.f.compose(f.f))


def functorial_on_pieces(g: CornerMap, f: CornerMap, variant: str = "C") -> bool:
    gf = compose_corner_maps(g, f)
    if isinstance(gf, Rejection):
        raise ValueError(gf.reason)
    Cf, Cg, Cgf = (corner_functor(x, variant).assignment for x in (f, g, gf))
    return all(Cgf[s] == Cg[Cf[s]] for s in Cf)


# transversality ---------------------------------------------------------------

@dataclass
class TransverseVerdict:
    transverse: bool
    strongly_transverse: bool
    pairs: list

    def to_json(self) -> dict:
        return {"transverse": self.transverse, "strongly_transverse": self.strongly_transverse,
                "pairs": self.pairs}


def _subsets(zero: frozenset):
    z = sorted(zero)
    for r in range(len(z) + 1):
        for c in itertools.combinations(z, r):
            yield frozenset(c)


def _side_by_side(A: Mat, B: Mat) -> Mat:
    return Mat(QQ, A.rows, A.cols + B.cols, tuple(A.entries[r] + B.entries[r] for r in range(A.rows)))


def transverse_check(g: CornerMap, h: CornerMap, pairs) -> TransverseVerdict:
    """Span conditions at each witness pair, plus the piece condition on corners through it."""
    if g.dst != h.dst:
        raise ValueError("maps have different targets")
    Z = g.dst
    Jg, Jh = jacobian(g.f), jacobian(h.f)
    out, tr, strong = [], True, True
    for x, y in pairs:
        x, y = _check_point(g.src, x), _check_point(h.src, y)
        z = g.f(x)
        if z != h.f(y):
            raise ValueError(f"g(x) != h(y) at {[str(v) for v in x]}, {[str(v) for v in y]}")
        A, B = evaluate(Jg, x), evaluate(Jh, y)
        zdirs = _free_dirs(Z, z)
        full = rank(_side_by_side(A, B)) == Z.n
        As = _rows_cols(A, zdirs, _free_dirs(g.src, x))
        Bs = _rows_cols(B, zdirs, _free_dirs(h.src, y))
        stratum = rank(_side_by_side(As, Bs)) == len(zdirs)
        bad = []
        for s in _subsets(g.src.vanishing(x)):
            for s2 in _subsets(h.src.vanishing(y)):
                t = corner_target(g, s)
                if t != corner_target(h, s2):
                    continue
                j, k, l = len(s), len(s2), len(t)
                if not (j + k > l or j == k == l == 0):
                    bad.append({"x_piece": sorted(s), "y_piece": sorted(s2), "z_piece": sorted(t)})
        tr &= full and stratum
        strong &= full and stratum and not bad
        out.append({"x": [str(v) for v in x], "y": [str(v) for v in y], "full_span": full,
                    "stratum_span": stratum, "piece_violations": bad})
    return TransverseVerdict(tr, strong, out)


# fibre products: boundary and corner bookkeeping ----------------------------------

@dataclass(frozen=True)
class FibreTerm:
    """C_j^{g,l}(X) x_{C_l(Z)} C_k^{h,l}(Y) restricted to the pieces S, S2 over T."""

    x_piece: frozenset
    y_piece: frozenset
    z_piece: frozenset
    dim: int
    sign: int = 1

    @property
    def jkl(self) -> tuple:
        return len(self.x_piece), len(self.y_piece), len(self.z_piece)

    @property
    def degree(self) -> int:
        j, k, l = self.jkl
        return j + k - l

    def to_json(self) -> dict:
        j, k, l = self.jkl
        return {"x_piece": sorted(self.x_piece), "y_piece": sorted(self.y_piece),
                "z_piece": sorted(self.z_piece), "j": j, "k": k, "l": l, "i": self.degree,
                "dim": self.dim, "sign": self.sign}


@dataclass
class FibreBoundary:
    dim_W: int
    formula: str
    boundary: list  # FibreTerm list describing the boundary of W
    corner_table: dict  # degree i -> FibreTerm list
    pruned: list
    audit_ok: bool

    def to_json(self) -> dict:
        return {"dim_W": self.dim_W, "formula": self.formula,
                "boundary": [t.to_json() for t in self.boundary],
                "corner_table": {str(i): [t.to_json() for t in ts] for i, ts in sorted(self.corner_table.items())},
                "pruned": [t.to_json() for t in self.pruned], "audit_ok": self.audit_ok}


def _term_is_empty(g: CornerMap, h: CornerMap, s: frozenset, s2: frozenset) -> bool:
    """True when x_S = 0, y_S2 = 0, g(x) = h(y) has no solution even over C."""
    n, m = g.src.n, h.src.n
    N = n + m
    gens = [Polynomial.var(i - 1, N) for i in s] + [Polynomial.var(n + i - 1, N) for i in s2]
    gens += [a.embed(N, list(range(n))) - b.embed(N, list(range(n, N)))
             for a, b in zip(g.f.components, h.f.components)]
    return groebner(gens, nvars=N).is_unit()


def fibre_boundary_terms(g: CornerMap, h: CornerMap, oriented: bool = False) -> FibreBoundary:
    """Boundary of W = X x_Z Y and its corner pieces as formal fibre-product terms."""
    if g.dst != h.dst:
        raise ValueError("maps have different targets")
    X, Y, Z = g.src, h.src, g.dst
    dim_W = X.n + Y.n - Z.n
    sign_y = (-1) ** ((X.n + Z.n) % 2) if oriented else 1
    table: dict = {}
    pruned = []
    audit = True
    for s, _ in corners(X):
        t = corner_target(g, s)
        for s2, _ in corners(Y):
            if corner_target(h, s2) != t:
                continue
            i = len(s) + len(s2) - len(t)
            dim = (X.n - len(s)) + (Y.n - len(s2)) - (Z.n - len(t))
            audit &= dim == dim_W - i
            term = FibreTerm(s, s2, t, dim)
            if _term_is_empty(g, h, s, s2):
                pruned.append(term)
            else:
                table.setdefault(i, []).append(term)

    gx, hx = classify_map(g), classify_map(h)
    terms = []
    if Z.k == 0:
        formula = "boundary-free target"
        terms += [FibreTerm(frozenset({i}), frozenset(), frozenset(), dim_W - 1) for i in X.faces]
        terms += [FibreTerm(frozenset(), frozenset({i}), frozenset(), dim_W - 1, sign_y) for i in Y.faces]
    elif gx.semisimple:
        hit_g = g.faces_hit()
        terms += [FibreTerm(frozenset({i}), frozenset(), frozenset(), dim_W - 1) for i in X.faces if i not in hit_g]
        if hx.semisimple:
            formula = "both semisimple"
            hit_h = h.faces_hit()
            terms += [FibreTerm(frozenset(), frozenset({i}), frozenset(), dim_W - 1, sign_y)
                      for i in Y.faces if i not in hit_h]
            for i, (j,) in sorted(hit_g.items()):
                for i2, (j2,) in sorted(hit_h.items()):
                    if j == j2:
                        terms.append(FibreTerm(frozenset({i}), frozenset({i2}), frozenset({j}), dim_W - 1))
        else:
            formula = "first map semisimple"
            terms += [FibreTerm(frozenset(), frozenset({i}), frozenset(), dim_W - 1, sign_y) for i in Y.faces]
    else:
        formula = "corner table only"
        terms = [t for t in table.get(1, [])]
    empty = {(t.x_piece, t.y_piece) for t in pruned}
    terms = [t for t in terms if (t.x_piece, t.y_piece) not in empty]
    return FibreBoundary(dim_W, formula, terms, table, pruned, audit)


# fixed loci of finite group actions -------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    perm: tuple  # corner coordinate i (1-based) goes to perm[i-1]
    matrix: Mat  # action on the R^(n-k) block

    def act(self, m: CornerModel, pt) -> tuple:
        pt = tuple(Fraction(x) for x in pt)
        out = [Fraction(0)] * m.k
        for i, p in enumerate(self.perm):
            out[p - 1] = pt[i]
        free = self.matrix @ Mat(QQ, m.n - m.k, 1, tuple((x,) for x in pt[m.k:]))
        return tuple(out) + tuple(free[i, 0] for i in range(m.n - m.k))

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self o other."""
        return GroupElement(tuple(self.perm[p - 1] for p in other.perm), self.matrix @ other.matrix)


@dataclass(frozen=True)
class GroupAction:
    model: CornerModel
    elements: tuple

    def __post_init__(self):
        m = self.model
        r = m.n - m.k
        for g in self.elements:
            if sorted(g.perm) != list(range(1, m.k + 1)):
                raise ValueError(f"{g.perm} does not permute the corner coordinates")
            if g.matrix.shape != (r, r) or rank(g.matrix) != r:
                raise ValueError("linear part must be an invertible map of the R^(n-k) block")
        if not self.elements:
            raise ValueError("a group has at least one element")
        if self.closure_table() is None:
            raise ValueError("elements are not closed under composition and inverses")

    @classmethod
    def of(cls, model: CornerModel, elements: Sequence) -> "GroupAction":
        r = model.n - model.k
        return cls(model, tuple(GroupElement(tuple(p), Mat.of(QQ, a, r, r)) for p, a in elements))

    def closure_table(self):
        els = list(self.elements)
        table = []
        for a in els:
            row = []
            for b in els:
                c = a.compose(b)
                if c not in els:
                    return None
                row.append(els.index(c))
            table.append(row)
        ident = GroupElement(tuple(range(1, self.model.k + 1)), Mat.identity(QQ, self.model.n - self.model.k))
        if ident not in els:
            return None
        e = els.index(ident)
        if any(e not in row for row in table):
            return None
        return table

    def orbits(self) -> list:
        seen, out = set(), []
        for i in self.model.faces:
            if i in seen:
                continue
            orb = frozenset(g.perm[i - 1] for g in self.elements)
            seen |= orb
            out.append(orb)
        return out

    def fixed_free_dim(self) -> int:
        r = self.model.n - self.model.k
        if r == 0:
            return 0
        avg = Mat.zeros(QQ, r, r)
        for g in self.elements:
            avg = avg + g.matrix
        avg = avg.scale(Fraction(1, len(self.elements))) - Mat.identity(QQ, r)
        return kernel(avg).cols

    def restrict(self, s: frozenset) -> "GroupAction":
        """The induced action on the corner piece x_S = 0 (S must be invariant)."""
        keep = [i for i in self.model.faces if i not in s]
        new = {i: a for a, i in enumerate(keep, 1)}
        piece = CornerModel(self.model.k - len(s), self.model.n - len(s))
        els = []
        for g in self.elements:
            if any(g.perm[i - 1] not in s for i in s):
                raise ValueError(f"{sorted(s)} is not invariant")
            els.append(GroupElement(tuple(new[g.perm[i - 1]] for i in keep), g.matrix))
        return GroupAction(piece, tuple(dict.fromkeys(els)))


@dataclass
class FixedLocus:
    model: CornerModel  # X^Gamma
    orbits: list
    fixed_boundary: PieceObject  # (dX)^Gamma
    boundary_of_fixed: PieceObject  # d(X^Gamma), keyed by orbit
    corner_matching: list  # (subset of orbits, union in C(X), degree in C(X^Gamma), degree in C(X))
    matching_ok: bool

    @property
    def pieces(self) -> PieceObject:
        return PieceObject(((frozenset(), self.model),))

    def to_json(self) -> dict:
        return {"fixed": self.model.to_json(), "orbits": [sorted(o) for o in self.orbits],
                "fixed_boundary": self.fixed_boundary.to_json(),
                "boundary_of_fixed": self.boundary_of_fixed.to_json(),
                "corner_matching": [{"orbits": [sorted(o) for o in u], "subset": sorted(s),
                                     "degree_fixed": a, "degree_ambient": b} for u, s, a, b in self.corner_matching],
                "matching_ok": self.matching_ok}


def _fixed_model(a: GroupAction) -> CornerModel:
    k = len(a.orbits())
    return CornerModel(k, k + a.fixed_free_dim())


def fixed_locus(m: CornerModel, a: GroupAction) -> FixedLocus:
    if a.model != m:
        raise ValueError("action is on a different model")
    orbits = a.orbits()
    XG = _fixed_model(a)
    face = CornerModel(XG.k - 1, XG.n - 1) if XG.k else None
    fixed_boundary = PieceObject(tuple((o, face) for o in orbits if len(o) == 1))
    boundary_of_fixed = PieceObject(tuple((o, face) for o in orbits))
    matching, ok = [], True
    for r in range(len(orbits) + 1):
        for u in itertools.combinations(orbits, r):
            s = frozenset().union(*u)
            # the fixed part of the corner piece S of X, computed from the restricted action
            there = _fixed_model(a.restrict(s))
            here = CornerModel(XG.k - r, XG.n - r)
            ok &= there == here
            matching.append((u, s, r, len(s)))
    invariant = [s for s, _ in corners(m) if all(frozenset(g.perm[i - 1] for i in s) == s for g in a.elements)]
    ok &= len(invariant) == len(matching)
    return FixedLocus(XG, orbits, fixed_boundary, boundary_of_fixed, matching, ok)

