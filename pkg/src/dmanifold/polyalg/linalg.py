"""Matrices over the coefficient rings, exact rational elimination, and ring-level solves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .groebner import NotArtinian
from .rings import QQ


class NoSolution(ArithmeticError):
    """A linear system is inconsistent."""


@dataclass(frozen=True, eq=False)
class Mat:
    """A rows x cols matrix over ``ring``.  Shape is explicit so empty blocks are fine."""

    ring: object
    rows: int
    cols: int
    entries: tuple

    # construction ---------------------------------------------------------
    @classmethod
    def build(cls, ring, rows: int, cols: int, fn: Callable[[int, int], object]) -> "Mat":
        return cls(ring, rows, cols, tuple(tuple(fn(i, j) for j in range(cols)) for i in range(rows)))

    @classmethod
    def of(cls, ring, data: Sequence[Sequence], rows: int | None = None, cols: int | None = None) -> "Mat":
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not have shape {rows}x{cols}")
        return cls(ring, rows, cols, tuple(tuple(ring.coerce(x) for x in r) for r in data))

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Mat":
        z = ring.zero()
        return cls.build(ring, rows, cols, lambda i, j: z)

    @classmethod
    def identity(cls, ring, n: int) -> "Mat":
        z, o = ring.zero(), ring.one()
        return cls.build(ring, n, n, lambda i, j: o if i == j else z)

    @classmethod
    def column(cls, ring, values: Sequence) -> "Mat":
        return cls.of(ring, [[v] for v in values], len(values), 1)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def __iter__(self):
        for r in self.entries:
            yield from r

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, {self.tolist()!r})"

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for x in self)

    # arithmetic -----------------------------------------------------------
    def _same_shape(self, other: "Mat"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        add = self.ring.add
        return Mat.build(self.ring, self.rows, self.cols, lambda i, j: add(self[i, j], other[i, j]))

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        sub = self.ring.sub
        return Mat.build(self.ring, self.rows, self.cols, lambda i, j: sub(self[i, j], other[i, j]))

    def __neg__(self) -> "Mat":
        neg = self.ring.neg
        return Mat.build(self.ring, self.rows, self.cols, lambda i, j: neg(self[i, j]))

    def scale(self, c) -> "Mat":
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return Mat.build(self.ring, self.rows, self.cols, lambda i, j: mul(c, self[i, j]))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        add, mul, zero = ring.add, ring.mul, ring.zero()
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for r in self.entries:
            row = []
            for c in ocols:
                acc = zero
                for a, b in zip(r, c):
                    if not ring.is_zero(a) and not ring.is_zero(b):
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return Mat(ring, self.rows, other.cols, tuple(out))

    @property
    def T(self) -> "Mat":
        return Mat.build(self.ring, self.cols, self.rows, lambda i, j: self[j, i])

    def map(self, fn: Callable, ring=None) -> "Mat":
        return Mat.build(ring or self.ring, self.rows, self.cols, lambda i, j: fn(self[i, j]))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        return Mat.build(self.ring, len(rows), len(cols), lambda i, j: self[rows[i], cols[j]])


def hstack(*mats: Mat) -> Mat:
    ring, rows = mats[0].ring, mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack needs equal row counts")
    return Mat(ring, rows, sum(m.cols for m in mats),
               tuple(tuple(x for m in mats for x in m.row(i)) for i in range(rows)))


def vstack(*mats: Mat) -> Mat:
    ring, cols = mats[0].ring, mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack needs equal column counts")
    return Mat(ring, sum(m.rows for m in mats), cols, tuple(r for m in mats for r in m.entries))


def block_diag(*mats: Mat) -> Mat:
    ring = mats[0].ring
    r, c = sum(m.rows for m in mats), sum(m.cols for m in mats)
    out = Mat.zeros(ring, r, c).tolist()
    i0 = j0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[i0 + i][j0 + j] = m[i, j]
        i0, j0 = i0 + m.rows, j0 + m.cols
    return Mat(ring, r, c, tuple(tuple(x) for x in out))


def qmat(data: Sequence[Sequence], rows: int | None = None, cols: int | None = None) -> Mat:
    """Rational matrix shorthand."""
    return Mat.of(QQ, data, rows, cols)


# rational elimination --------------------------------------------------------

def _as_rows(M) -> tuple:
    if isinstance(M, Mat):
        return M.rows, M.cols, [list(map(Fraction, r)) for r in M.entries]
    rows = [[Fraction(x) for x in r] for r in M]
    return len(rows), (len(rows[0]) if rows else 0), rows


def rref(M) -> tuple:
    """Reduced row echelon form and pivot columns of a rational matrix."""
    nr, nc, a = _as_rows(M)
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Mat(QQ, nr, nc, tuple(tuple(x) for x in a)), pivots


def rank(M) -> int:
    return len(rref(M)[1])


def kernel(M) -> Mat:
    """Basis of the right kernel, as the columns of a cols x k matrix."""
    R, pivots = rref(M)
    n = R.cols
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        vecs.append(v)
    return Mat(QQ, n, len(vecs), tuple(tuple(v[j] for v in vecs) for j in range(n)))


def det(M) -> Fraction:
    nr, nc, a = _as_rows(M)
    if nr != nc:
        raise ValueError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(nc):
        p = next((i for i in range(c, nr) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, nr):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def solve(A, B) -> Mat:
    """A particular X with A X = B over Q; raises NoSolution."""
    A = A if isinstance(A, Mat) else qmat(A)
    B = B if isinstance(B, Mat) else qmat(B)
    if A.rows != B.rows:
        raise ValueError("row count mismatch")
    R, pivots = rref(hstack(A, B))
    n = A.cols
    if any(p >= n for p in pivots):
        raise NoSolution("inconsistent rational system")
    X = [[Fraction(0)] * B.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        for j in range(B.cols):
            X[p][j] = R[i, n + j]
    return Mat(QQ, n, B.cols, tuple(tuple(r) for r in X))


def inverse(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    if rank(M) != M.rows:
        raise NoSolution("matrix is singular")
    return solve(M, Mat.identity(QQ, M.rows))


def is_injective(M) -> bool:
    nr, nc, _ = _as_rows(M)
    return rank(M) == nc


def is_surjective(M) -> bool:
    nr, nc, _ = _as_rows(M)
    return rank(M) == nr


def sparse_solve(rows: list, rhs: list, nunknowns: int):
    """Solve a sparse rational system; rows are dicts col -> coeff.  Returns a list or None."""
    piv: dict = {}  # pivot column -> (row dict, rhs)
    order = []
    for r, b in zip(rows, rhs):
        r = dict(r)
        b = Fraction(b)
        # eliminate known pivots
        changed = True
        while changed:
            changed = False
            for c in [c for c in r if c in piv]:
                f = r.pop(c, None)
                if f is None:
                    continue
                pr, pb = piv[c]
                for cc, v in pr.items():
                    if cc == c:
                        continue
                    nv = r.get(cc, 0) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
                b -= f * pb
                changed = True
        if not r:
            if b != 0:
                return None
            continue
        c = min(r)
        inv = 1 / r[c]
        r = {cc: v * inv for cc, v in r.items()}
        b *= inv
        # back-substitute into existing pivots to keep them reduced
        for pc in order:
            pr, pb = piv[pc]
            f = pr.get(c)
            if f:
                nr_ = dict(pr)
                del nr_[c]
                for cc, v in r.items():
                    if cc == c:
                        continue
                    nv = nr_.get(cc, 0) - f * v
                    if nv:
                        nr_[cc] = nv
                    else:
                        nr_.pop(cc, None)
                piv[pc] = (nr_, pb - f * b)
        piv[c] = (r, b)
        order.append(c)
    x = [Fraction(0)] * nunknowns
    for c, (r, b) in piv.items():
        x[c] = b  # free variables set to zero
    return x


# ring-level systems ---------------------------------------------------------

class RingSystem:
    """Linear equations sum_t L_t X_t R_t = C in unknown matrices over a finite ring.

    Each unknown entry is expanded over the ring's rational basis, so the system
    becomes a sparse rational one.
    """

    def __init__(self, ring):
        if not getattr(ring, "finite", False):
            raise NotArtinian("ring-level solve needs a finite-dimensional base")
        self.ring = ring
        self.unknowns: dict = {}
        self._offset = 0
        self._rows: list = []
        self._rhs: list = []
        self._basis = ring.basis()

    def unknown(self, name: str, rows: int, cols: int) -> str:
        self.unknowns[name] = (rows, cols, self._offset)
        self._offset += rows * cols * self.ring.dim
        return name

    def _var(self, name, i, j, b) -> int:
        rows, cols, off = self.unknowns[name]
        return off + (i * cols + j) * self.ring.dim + b

    def equation(self, terms: Sequence[tuple], rhs: Mat):
        """``terms`` are (L, name, R) with L, R matrices or None for identity."""
        ring, D = self.ring, self.ring.dim
        nr, nc = rhs.shape
        acc = [[dict() for _ in range(nc * D)] for _ in range(nr)]
        for L, name, R in terms:
            xr, xc, _ = self.unknowns[name]
            if L is None:
                L = Mat.identity(ring, xr)
            if R is None:
                R = Mat.identity(ring, xc)
            if L.shape != (nr, xr) or R.shape != (xc, nc):
                raise ValueError(f"term for {name} has incompatible shapes")
            for p in range(nr):
                for i in range(xr):
                    lp = L[p, i]
                    if ring.is_zero(lp):
                        continue
                    for j in range(xc):
                        for q in range(nc):
                            rq = R[j, q]
                            if ring.is_zero(rq):
                                continue
                            lr = ring.mul(lp, rq)
                            if ring.is_zero(lr):
                                continue
                            for b, e in enumerate(self._basis):
                                co = ring.coords(ring.mul(lr, e))
                                v = self._var(name, i, j, b)
                                for d, cval in enumerate(co):
                                    if cval:
                                        row = acc[p][q * D + d]
                                        row[v] = row.get(v, 0) + cval
        for p in range(nr):
            for q in range(nc):
                co = ring.coords(rhs[p, q])
                for d in range(D):
                    row = {v: c for v, c in acc[p][q * D + d].items() if c}
                    self._rows.append(row)
                    self._rhs.append(co[d])

    def solve(self) -> dict:
        """Return name -> Mat, raising NoSolution when inconsistent."""
        x = sparse_solve(self._rows, self._rhs, self._offset)
        if x is None:
            raise NoSolution("inconsistent ring-level system")
        ring, D = self.ring, self.ring.dim
        out = {}
        for name, (rows, cols, off) in self.unknowns.items():
            out[name] = Mat.build(
                ring, rows, cols,
                lambda i, j: ring.from_coords(x[off + (i * cols + j) * D: off + (i * cols + j + 1) * D]),
            )
        return out


def linear_solve(M: Mat, b: Mat) -> Mat:
    """Solve M X = b over the ring of M (rationals or an Artinian quotient)."""
    if M.ring is QQ:
        return solve(M, b)
    sys = RingSystem(M.ring)
    sys.unknown("X", M.cols, b.cols)
    sys.equation([(M, "X", None)], b)
    return sys.solve()["X"]
