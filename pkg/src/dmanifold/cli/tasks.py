"""Task dispatch: each op maps named scene entities onto a library call and a JSON result."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .. import corners as cn
from ..atlas import DEFAULT_CAP, atlas_report
from ..fibprod import d_transverse_at, fibre_product_affine, validate_square, vdim_check
from ..orientcount import OrientedStdModel, degree_1d, orient_fibre_product, signed_count
from ..polyalg import Mat, PolyRing, Polynomial
from ..stdmodel import (
    StdModel,
    WitnessSet,
    classify_morphism,
    compose_one,
    etale_at,
    is_equivalence_std,
    validate_one_mor,
    validate_two_mor,
    vertical_compose,
)
from ..testing import run_property
from .scene import Scene, SceneError, parse_rational


class TaskInputError(SceneError):
    """A task names the wrong kind of entity or the wrong number of them."""


def jsonable(x):
    """Fractions become "p/q" strings, sets become sorted lists, library objects use to_json."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Polynomial):
        return x.to_terms()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    raise TypeError(f"cannot serialize {type(x).__name__}")


# positional argument names per op; a trailing "?" marks an optional argument
SIGNATURES = {
    "validate": ["entity"],
    "compose": ["first", "second"],
    "etale": ["morphism", "witnesses", "target_witnesses?"],
    "classify": ["entity", "witnesses?"],
    "fiber": ["left", "right", "witnesses?"],
    "count": ["entity", "witnesses?"],
    "corner": ["action", "entity?", "other?"],
    "atlas-check": ["atlas"],
    "property": ["name"],
}


def bind_positional(op: str, values: list) -> dict:
    sig = SIGNATURES[op]
    required = [a for a in sig if not a.endswith("?")]
    if not len(required) <= len(values) <= len(sig):
        raise TaskInputError(f"{op} takes {len(required)} to {len(sig)} arguments "
                             f"({', '.join(sig)}), got {len(values)}")
    return {a.rstrip("?"): v for a, v in zip(sig, values)}


@dataclass
class Context:
    scene: Scene
    cap: int = DEFAULT_CAP
    seed: int = 0


def _arg(args: dict, key: str, op: str):
    if key not in args:
        raise TaskInputError(f"{op}: missing argument {key!r}")
    return args[key]


def _decl(ctx: Context, name: str) -> dict:
    ctx.scene.get(name)
    return ctx.scene.declarations[name]


def _model_of_morphism(ctx: Context, name: str) -> tuple:
    d = _decl(ctx, name)
    return ctx.scene.get(d["source"], "model"), ctx.scene.get(d["target"], "model")


def _witness_points(ctx: Context, name: str | None, model: StdModel) -> WitnessSet | None:
    if name is None:
        return None
    w = ctx.scene.get(name, "witnesses")
    owner = ctx.scene.get(_decl(ctx, name)["model"], "model")
    if owner != model:
        raise TaskInputError(f"witness set {name!r} belongs to a different model")
    return w


# ops ------------------------------------------------------------------------------

def op_validate(ctx: Context, args: dict) -> dict:
    name = _arg(args, "entity", "validate")
    kind = ctx.scene.kind(name)
    obj = ctx.scene.get(name)
    if kind == "model":
        return {"ok": True, "kind": kind, "n": obj.n, "k": obj.k, "vdim": obj.vdim}
    if kind == "morphism":
        X, Y = _model_of_morphism(ctx, name)
        v = validate_one_mor(X, Y, obj)
        return {"ok": v.ok, "kind": kind, "certificate": v.certificate}
    if kind == "two_morphism":
        d = _decl(ctx, name)
        X, Y = _model_of_morphism(ctx, d["from"])
        to_src = _model_of_morphism(ctx, d["to"])
        if to_src != (X, Y):
            raise TaskInputError(f"{d['from']!r} and {d['to']!r} have different source or target")
        v = validate_two_mor(X, Y, ctx.scene.get(d["from"]), ctx.scene.get(d["to"]), obj)
        return {"ok": v.ok, "kind": kind, "certificate": v.certificate}
    if kind == "corner_map":
        if isinstance(obj, cn.Rejection):
            return {"ok": False, "kind": kind, **obj.to_json()}
        return {"ok": True, "kind": kind, "table": [e.to_json() for e in obj.table], "warnings": list(obj.warnings)}
    if kind == "atlas":
        return op_atlas(ctx, {"atlas": name})
    if kind == "witnesses":
        return {"ok": True, "kind": kind, "count": len(obj), "complete": obj.complete}
    return {"ok": True, "kind": kind}


def op_compose(ctx: Context, args: dict) -> dict:
    a, b = _arg(args, "first", "compose"), _arg(args, "second", "compose")
    ka, kb = ctx.scene.kind(a), ctx.scene.kind(b)
    if ka == kb == "morphism":
        X, Y = _model_of_morphism(ctx, a)
        Y2, Z = _model_of_morphism(ctx, b)
        if Y != Y2:
            raise TaskInputError(f"target of {a!r} is not the source of {b!r}")
        gf = compose_one(ctx.scene.get(b), ctx.scene.get(a))
        v = validate_one_mor(X, Z, gf)
        return {"ok": v.ok, "composite": gf.to_json(), "certificate": v.certificate}
    if ka == kb == "two_morphism":
        da, db = _decl(ctx, a), _decl(ctx, b)
        if da["to"] != db["from"]:
            raise TaskInputError(f"{a!r} ends at {da['to']!r} but {b!r} starts at {db['from']!r}")
        X, Y = _model_of_morphism(ctx, da["from"])
        t = vertical_compose(ctx.scene.get(b), ctx.scene.get(a))
        v = validate_two_mor(X, Y, ctx.scene.get(da["from"]), ctx.scene.get(db["to"]), t)
        return {"ok": v.ok, "lam": [[p.to_terms() for p in r] for r in t.lam.entries], "certificate": v.certificate}
    if ka == kb == "corner_map":
        f, g = ctx.scene.get(a), ctx.scene.get(b)
        gf = cn.compose_corner_maps(g, f)
        if isinstance(gf, cn.Rejection):
            return {"ok": False, **gf.to_json()}
        return {"ok": True, "composite": gf.to_json(), "flags": cn.classify_map(gf).as_dict()}
    raise TaskInputError(f"compose needs two morphisms, two 2-morphisms or two corner maps, got {ka} and {kb}")


def op_etale(ctx: Context, args: dict) -> dict:
    name = _arg(args, "morphism", "etale")
    m = ctx.scene.get(name, "morphism")
    X, Y = _model_of_morphism(ctx, name)
    wX = _witness_points(ctx, _arg(args, "witnesses", "etale"), X)
    if args.get("target_witnesses") is not None:
        wY = _witness_points(ctx, args["target_witnesses"], Y)
        try:
            v = is_equivalence_std(X, Y, m, wX, wY)
        except ValueError as e:
            raise TaskInputError(str(e)) from None
        return {"ok": v.ok, "etale": v.certificate["etale"], "bijective": v.certificate["bijective"],
                "certificate": {"points": v.certificate["points"]}}
    v = etale_at(X, Y, m, wX)
    return {"ok": v.ok, "etale": v.ok, "certificate": v.certificate}


def op_classify(ctx: Context, args: dict) -> dict:
    name = _arg(args, "entity", "classify")
    kind = ctx.scene.kind(name)
    if kind == "corner_map":
        return _corner_classify(ctx, name)
    if kind != "morphism":
        raise TaskInputError(f"classify needs a morphism or corner map, {name!r} is a {kind}")
    X, Y = _model_of_morphism(ctx, name)
    base = _witness_points(ctx, args.get("witnesses"), X)
    flags = classify_morphism(X, Y, ctx.scene.get(name), base)
    return {"ok": True, "flags": flags, "base": "witnesses" if base is not None else "artinian"}


def _pairs(ctx: Context, raw, nX: int, nY: int, where: str) -> list:
    out = []
    for i, p in enumerate(raw or []):
        if not isinstance(p, list) or len(p) != 2:
            raise TaskInputError(f"{where}[{i}]: a pair is [point, point]")
        v, w = p
        if len(v) != nX or len(w) != nY:
            raise TaskInputError(f"{where}[{i}]: points have the wrong dimensions")
        out.append((tuple(parse_rational(x, where) for x in v), tuple(parse_rational(x, where) for x in w)))
    return out


def op_fiber(ctx: Context, args: dict) -> dict:
    ln, rn = _arg(args, "left", "fiber"), _arg(args, "right", "fiber")
    gX, gY = ctx.scene.get(ln, "map"), ctx.scene.get(rn, "map")
    X = ctx.scene.get(_decl(ctx, ln)["source"], "model")
    Y = ctx.scene.get(_decl(ctx, rn)["source"], "model")
    if gX.target_vars != gY.target_vars:
        raise TaskInputError(f"{ln!r} maps to R^{gX.target_vars} but {rn!r} maps to R^{gY.target_vars}")
    sq = fibre_product_affine(X, gX, Y, gY)
    valid = validate_square(sq)
    out = {"ok": valid.ok and vdim_check(sq), "W": sq.W.to_json(), "vdim": sq.W.vdim,
           "vdim_additive": vdim_check(sq), "square_valid": valid.ok, "layout": sq.layout()}
    pairs = _pairs(ctx, args.get("witnesses") if isinstance(args.get("witnesses"), list) else None,
                   X.n, Y.n, "fiber.witnesses")
    if pairs:
        dt = d_transverse_at(X, Y, sq.Z, sq.g(), sq.h(), pairs)
        out["d_transverse"] = dt.ok
        out["certificate"] = dt.certificate
    signs = args.get("orientations")
    if signs is not None:
        oX = ctx.scene.get(signs[0], "orientation")
        oY = ctx.scene.get(signs[1], "orientation")
        if (oX.model, oY.model) != (X, Y):
            raise TaskInputError("orientations do not belong to the factors")
        out["orientation"] = orient_fibre_product(oX, oY, sq).sign
    return out


def op_count(ctx: Context, args: dict) -> dict:
    name = _arg(args, "entity", "count")
    kind = ctx.scene.kind(name)
    try:
        if kind == "polynomial":
            p = ctx.scene.get(name)
            if p.nvars != 1:
                raise TaskInputError("degree counts need a polynomial in one variable")
            window = args.get("window", _decl(ctx, name).get("window"))
            if not isinstance(window, list) or len(window) != 2:
                raise TaskInputError(f"count on {name!r} needs a window [a, b]")
            a, b = (parse_rational(x, f"{name}.window") for x in window)
            cert = degree_1d(p, a, b)
        elif kind in ("orientation", "model"):
            o = ctx.scene.get(name)
            o = o if isinstance(o, OrientedStdModel) else OrientedStdModel(o, 1)
            w = _witness_points(ctx, _arg(args, "witnesses", "count"), o.model)
            cert = signed_count(o, w)
        else:
            raise TaskInputError(f"count needs a polynomial, model or orientation, {name!r} is a {kind}")
    except TaskInputError:
        raise
    except ValueError as e:
        return {"ok": False, "error": str(e)}
    return {"ok": True, "value": cert.value, "method": cert.method, "certificate": cert.to_json()}


# corners -------------------------------------------------------------------------

def _corner_model(ctx: Context, name: str) -> cn.CornerModel:
    return ctx.scene.get(name, "corner_model")


def _corner_map(ctx: Context, name: str) -> cn.CornerMap:
    cm = ctx.scene.get(name, "corner_map")
    if isinstance(cm, cn.Rejection):
        raise TaskInputError(f"{name!r} is not a map of manifolds with corners: {cm.reason}")
    return cm


def _corner_classify(ctx: Context, name: str) -> dict:
    cm = ctx.scene.get(name, "corner_map")
    if isinstance(cm, cn.Rejection):
        return {"ok": False, **cm.to_json()}
    pts = [tuple(parse_rational(x, name) for x in p) for p in _decl(ctx, name).get("witnesses", [])]
    flags = cn.classify_map(cm, pts)
    return {"ok": True, "flags": flags.as_dict(), "description": flags.describe(),
            "table": [e.to_json() for e in cm.table], "witnesses": flags.witnesses,
            "warnings": list(cm.warnings)}


def op_corner(ctx: Context, args: dict) -> dict:
    action = _arg(args, "action", "corner")
    ent, other = args.get("entity"), args.get("other")
    if action == "depth":
        m = _corner_model(ctx, ent)
        pts = args.get("points", [])
        return {"ok": True, "depths": [{"point": [str(parse_rational(x, "point")) for x in p],
                                        "depth": cn.depth(m, [parse_rational(x, "point") for x in p])}
                                       for p in pts]}
    if action == "boundary":
        m = _corner_model(ctx, ent)
        b = cn.boundary(m)
        out = {"ok": True, "faces": len(b), "pieces": b.to_json()}
        if "point" in args:
            pt = [parse_rational(x, "point") for x in args["point"]]
            pre = cn.boundary_preimage(m, pt)
            out["preimage"] = [{"face": i, "point": [str(x) for x in q]} for i, q in pre]
            out["multiplicity"] = len(pre)
        return out
    if action == "corners":
        m = _corner_model(ctx, ent)
        c = cn.corners(m)
        return {"ok": True, "degree_counts": c.degree_counts(), "pieces": c.to_json()}
    if action == "product":
        a, b = _corner_model(ctx, ent), _corner_model(ctx, other)
        p = cn.product(a, b)
        return {"ok": cn.corner_counts_multiply(a, b), "product": p.to_json(),
                "degree_counts": cn.corners(p).degree_counts()}
    if action == "classify":
        return _corner_classify(ctx, ent)
    if action == "decompose":
        cm = _corner_map(ctx, ent)
        try:
            d = cn.boundary_decomposition(cm)
        except ValueError as e:
            return {"ok": False, "error": str(e)}
        return {"ok": d.squares_commute, **d.to_json()}
    if action == "functor":
        cm = _corner_map(ctx, ent)
        variant = args.get("variant", "C")
        if variant not in ("C", "Chat"):
            raise TaskInputError("variant is C or Chat")
        img = cn.corner_functor(cm, variant)
        out = {"ok": True, "variant": variant, "assignment": img.to_json()}
        if other is not None:
            g = _corner_map(ctx, other)
            out["functorial"] = cn.functorial_on_pieces(g, cm, variant)
            out["ok"] = out["functorial"]
        return out
    if action == "transverse":
        g, h = _corner_map(ctx, ent), _corner_map(ctx, other)
        if g.dst != h.dst:
            raise TaskInputError("transversality needs a common target")
        pairs = _pairs(ctx, args.get("pairs"), g.src.n, h.src.n, "corner.pairs")
        v = cn.transverse_check(g, h, pairs)
        return {"ok": v.transverse, **v.to_json()}
    if action == "fibre_terms":
        g, h = _corner_map(ctx, ent), _corner_map(ctx, other)
        if g.dst != h.dst:
            raise TaskInputError("fibre terms need a common target")
        fb = cn.fibre_boundary_terms(g, h, bool(args.get("oriented", False)))
        return {"ok": fb.audit_ok, **fb.to_json()}
    if action == "fixed_locus":
        act = ctx.scene.get(ent, "group_action")
        fl = cn.fixed_locus(act.model, act)
        return {"ok": fl.matching_ok, **fl.to_json()}
    raise TaskInputError(f"unknown corner action {action!r}")


def op_atlas(ctx: Context, args: dict) -> dict:
    a = ctx.scene.get(_arg(args, "atlas", "atlas-check"), "atlas")
    try:
        rep = atlas_report(a, cap=int(args.get("max_degree", ctx.cap)))
    except ValueError as e:
        raise TaskInputError(str(e)) from None
    return {"ok": rep.ok, **rep.to_json()}


def op_property(ctx: Context, args: dict) -> dict:
    name = _arg(args, "name", "property")
    seed = int(args.get("seed", ctx.seed))
    try:
        res = run_property(name, seed=seed, trials=args.get("trials"))
    except KeyError as e:
        raise TaskInputError(str(e.args[0])) from None
    return {"ok": res.ok, "seed": seed, **res.to_json()}


OPS = {
    "validate": op_validate,
    "compose": op_compose,
    "etale": op_etale,
    "classify": op_classify,
    "fiber": op_fiber,
    "count": op_count,
    "corner": op_corner,
    "atlas-check": op_atlas,
    "property": op_property,
}


# expectations ---------------------------------------------------------------------

def lookup(doc, path: str):
    cur = doc
    for part in path.split("."):
        if isinstance(cur, list):
            try:
                cur = cur[int(part)]
            except (ValueError, IndexError):
                raise KeyError(path) from None
        elif isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            raise KeyError(path)
    return cur


def matches(actual, expected) -> bool:
    """Dicts match when every expected key matches; everything else compares equal."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        return all(k in actual and matches(actual[k], v) for k, v in expected.items())
    return actual == expected


def check_expectations(result: dict, expect: dict) -> list:
    failures = []
    for path, want in sorted(expect.items()):
        try:
            got = lookup(result, path)
        except KeyError:
            failures.append({"path": path, "expected": want, "missing": True})
            continue
        if not matches(got, want):
            failures.append({"path": path, "expected": want, "actual": got})
    return failures


@dataclass
class TaskOutcome:
    name: str
    op: str
    status: str  # PASS, FAIL or ERROR
    result: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    error: str | None = None
    seconds: float | None = None

    def to_json(self, certificates: bool, timing: bool) -> dict:
        res = self.result if certificates else _strip(self.result)
        out = {"name": self.name, "op": self.op, "status": self.status, "result": res}
        if self.failures:
            out["failures"] = self.failures
        if self.error is not None:
            out["error"] = self.error
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def _strip(doc):
    if isinstance(doc, dict):
        return {k: _strip(v) for k, v in doc.items() if k != "certificate"}
    if isinstance(doc, list):
        return [_strip(v) for v in doc]
    return doc


def run_task(ctx: Context, task: dict) -> TaskOutcome:
    """Run one task.  Input errors raise; everything else lands in the outcome."""
    op, name = task["op"], task["name"]
    if op not in OPS:
        raise TaskInputError(f"task {name!r}: unknown op {op!r}")
    args = task.get("args", {})
    if isinstance(args, list):
        args = bind_positional(op, args)
    expect = task.get("expect")
    t0 = time.perf_counter()
    try:
        result = jsonable(OPS[op](ctx, args))
    except (SceneError, ValueError) as e:
        # library ValueErrors signal malformed input (shape, composability, witnesses off the zero set)
        raise TaskInputError(f"task {name!r}: {e}") from None
    dt = time.perf_counter() - t0
    if expect is None:
        return TaskOutcome(name, op, "PASS", result, seconds=dt)
    if not isinstance(expect, dict):
        raise TaskInputError(f"task {name!r}: 'expect' maps dotted paths to values")
    failures = check_expectations(result, expect)
    return TaskOutcome(name, op, "FAIL" if failures else "PASS", result, failures, seconds=dt)
