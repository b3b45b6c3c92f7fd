"""Checkable gluing data for an ordered family of standard-model charts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..polyalg import Mat, PolyMap, Polynomial, normal_form, pullback_matrix
from ..stdmodel import StdModel, StdOneMor, exact_sequence_at

DEFAULT_CAP = 4


@dataclass(frozen=True)
class Overlap:
    """V_ij (the whole chart, or where p != 0) with e_ij : V_ij -> V_j and ehat_ij : E_i -> e_ij^* E_j."""

    e: PolyMap
    ehat: Mat
    p: Polynomial | None = None
    witnesses: tuple = ()

    def mor(self) -> StdOneMor:
        return StdOneMor(self.e, self.ehat)


@dataclass
class Atlas:
    charts: tuple  # StdModel per chart, in the chosen total order
    vdim: int
    overlaps: dict  # (i, j) with i < j -> Overlap; absent means V_ij is empty
    assertions: tuple = ()  # topological hypotheses, echoed but never checked
    names: tuple | None = None

    def __post_init__(self):
        self.charts = tuple(self.charts)
        if self.names is None:
            self.names = tuple(str(i) for i in range(len(self.charts)))
        for (i, j), ov in self.overlaps.items():
            if not 0 <= i < j < len(self.charts):
                raise ValueError(f"overlap ({i}, {j}) needs i < j among {len(self.charts)} charts")
            X, Y = self.charts[i], self.charts[j]
            if ov.e.source_vars != X.n or ov.e.target_vars != Y.n:
                raise ValueError(f"e_{i}{j} has arity {ov.e.source_vars}->{ov.e.target_vars}")
            if ov.ehat.shape != (Y.k, X.k):
                raise ValueError(f"ehat_{i}{j} has shape {ov.ehat.shape}, expected {(Y.k, X.k)}")
            if ov.p is not None and ov.p.nvars != X.n:
                raise ValueError(f"domain polynomial of V_{i}{j} is in the wrong variables")


@dataclass
class AtlasVerdict:
    ok: bool
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, **self.certificate}


@dataclass
class AtlasReport:
    vdim: int
    vdim_ok: bool
    bad_charts: list
    overlaps: dict  # (i, j) -> AtlasVerdict
    triples: dict  # (i, j, k) -> AtlasVerdict
    assertions: list
    warnings: list
    cap: int

    @property
    def ok(self) -> bool:
        return self.vdim_ok and all(self.overlaps.values()) and all(self.triples.values())

    def to_json(self) -> dict:
        return {
            "status": "PASS" if self.ok else "FAIL",
            "vdim": self.vdim,
            "vdim_ok": self.vdim_ok,
            "bad_charts": self.bad_charts,
            "overlaps": [{"i": i, "j": j, **v.to_json()} for (i, j), v in sorted(self.overlaps.items())],
            "triples": [{"i": i, "j": j, "k": k, **v.to_json()} for (i, j, k), v in sorted(self.triples.items())],
            "unverified_assertions": self.assertions,
            "warnings": self.warnings,
            "localization_cap": self.cap,
        }


def _localized_member(r: Polynomial, p: Polynomial | None, gb, cap: int) -> tuple:
    """Smallest N <= cap with p^N r in the ideal, and the remainder of r itself."""
    rem = normal_form(r, gb)
    if rem.is_zero():
        return 0, rem
    if p is None:
        return None, rem
    q = r
    for N in range(1, cap + 1):
        q = q * p
        if normal_form(q, gb).is_zero():
            return N, rem
    return None, rem


def _memberships(diffs: Sequence[Polynomial], p, gb, cap: int, label: str) -> tuple:
    ok, bad, used = True, [], 0
    for idx, r in enumerate(diffs):
        N, rem = _localized_member(r, p, gb, cap)
        if N is None:
            ok = False
            bad.append({"component": idx, "remainder": rem.to_terms()})
        else:
            used = max(used, N)
    cert = {f"{label}_localization_power": used}
    if bad:
        cert[f"{label}_remainders"] = bad
    return ok, cert


def validate_overlap(a: Atlas, i: int, j: int, cap: int = DEFAULT_CAP) -> AtlasVerdict:
    """ehat s_i = e^* s_j + O(s_i^2) on V_ij, and exactness at each witness zero."""
    ov = a.overlaps[(i, j)]
    X, Y = a.charts[i], a.charts[j]
    col = Mat(ov.ehat.ring, X.k, 1, tuple((c,) for c in X.s))
    lhs = ov.ehat @ col
    diffs = [lhs[r, 0] - ov.e.pullback(Y.s[r]) for r in range(Y.k)]
    ok, cert = _memberships(diffs, ov.p, X.gb_s2, cap, "congruence")
    seqs = []
    for w in ov.witnesses:
        w = tuple(w)
        if ov.p is not None and ov.p.evaluate(w) == 0:
            raise ValueError(f"witness {[str(x) for x in w]} lies outside V_{i}{j}")
        if not X.is_zero(w):
            raise ValueError(f"witness {[str(x) for x in w]} is not a zero of s_{i}")
        seqs.append(exact_sequence_at(X, Y, ov.mor(), w))
    exact = all(s["exact"] for s in seqs)
    cert["congruence_ok"] = ok
    cert["exact_ok"] = exact
    cert["sequences"] = seqs if not exact else [{"point": s["point"], "exact": True} for s in seqs]
    if not ov.witnesses:
        cert["warning"] = "no witness zeros supplied; exactness not checked"
    return AtlasVerdict(ok and exact, cert)


def validate_triple(a: Atlas, i: int, j: int, k: int, cap: int = DEFAULT_CAP) -> AtlasVerdict:
    """e_ik = e_jk o e_ij + O(s_i^2) and ehat_ik = e_ij^*(ehat_jk) ehat_ij + O(s_i) on V_ij and V_ik."""
    if (i, j) not in a.overlaps or (i, k) not in a.overlaps:
        return AtlasVerdict(True, {"vacuous": "V_ij or V_ik is empty"})
    if (j, k) not in a.overlaps:
        return AtlasVerdict(False, {"error": f"V_{i}{j} and V_{i}{k} are declared but V_{j}{k} is not, "
                                             "so e_jk o e_ij has no domain"})
    oij, oik, ojk = a.overlaps[(i, j)], a.overlaps[(i, k)], a.overlaps[(j, k)]
    X = a.charts[i]
    # the triple domain is where p_ij, p_ik and p_jk o e_ij are all nonzero
    p = Polynomial.one(X.n)
    for q in (oij.p, oik.p, None if ojk.p is None else oij.e.pullback(ojk.p)):
        if q is not None:
            p = p * q
    p = None if p == Polynomial.one(X.n) else p
    comp = ojk.e.compose(oij.e)
    d1 = [x - y for x, y in zip(oik.e.components, comp.components)]
    ok1, c1 = _memberships(d1, p, X.gb_s2, cap, "base")
    hat = pullback_matrix(ojk.ehat, oij.e) @ oij.ehat
    d2 = list(oik.ehat - hat)
    ok2, c2 = _memberships(d2, p, X.gb_s, cap, "bundle")
    return AtlasVerdict(ok1 and ok2, {**c1, **c2})


def atlas_report(a: Atlas, cap: int = DEFAULT_CAP) -> AtlasReport:
    bad = [i for i, X in enumerate(a.charts) if X.vdim != a.vdim]
    warnings = []
    if not a.charts:
        warnings.append("empty atlas: nothing to glue")
    overlaps = {key: validate_overlap(a, *key, cap=cap) for key in sorted(a.overlaps)}
    N = len(a.charts)
    triples = {}
    for i in range(N):
        for j in range(i + 1, N):
            for k in range(j + 1, N):
                triples[(i, j, k)] = validate_triple(a, i, j, k, cap=cap)
    return AtlasReport(a.vdim, not bad, bad, overlaps, triples, list(a.assertions), warnings, cap)
