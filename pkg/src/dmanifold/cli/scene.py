"""Scene files: JSON declarations resolved into model objects, plus a task list.

Polynomials are sparse term lists [[num, den, [e1, ..., en]], ...] (the canonical
form; ["p/q", [e1, ..., en]] is also read) or strings such as "x1^2 - 3/2*x2",
parsed with sympy.  With at most four variables x, y, z, w alias x1..x4.
Other rationals are written as integers or "p/q" strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ..atlas import Atlas, Overlap
from ..corners import CornerModel, GroupAction, Rejection, validate_corner_map
from ..orientcount import OrientedStdModel
from ..polyalg import Mat, PolyMap, PolyRing, Polynomial
from ..stdmodel import StdOneMor, StdTwoMor, WitnessSet, new_std_model


class SceneError(ValueError):
    """Malformed scene: bad JSON, unknown names, cycles, or ill-typed data."""


ALIASES = ("x", "y", "z", "w")


def parse_rational(v, where: str) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise SceneError(f"{where}: write rationals as integers or \"p/q\" strings, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise SceneError(f"{where}: bad rational {v!r} ({e})") from None


def parse_poly(v, nvars: int, where: str) -> Polynomial:
    if isinstance(v, int) and not isinstance(v, bool):
        return Polynomial.const(v, nvars)
    if isinstance(v, list):
        terms = []
        for i, t in enumerate(v):
            tw = f"{where}[{i}]"
            if not isinstance(t, list) or len(t) not in (2, 3):
                raise SceneError(f"{tw}: a term is [num, den, exponents] or [\"p/q\", exponents]")
            if len(t) == 3:
                if any(not isinstance(x, int) or isinstance(x, bool) for x in t[:2]) or t[1] == 0:
                    raise SceneError(f"{tw}: numerator and nonzero denominator must be integers")
                c = Fraction(t[0], t[1])
            else:
                c = parse_rational(t[0], tw)
            e = t[-1]
            if not isinstance(e, list) or any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in e):
                raise SceneError(f"{tw}: exponents must be non-negative integers")
            terms.append([c.numerator, c.denominator, e])
        try:
            return Polynomial.from_terms(terms, nvars)
        except ValueError as e:
            raise SceneError(f"{where}: {e}") from None
    if isinstance(v, str):
        return _parse_poly_string(v, nvars, where)
    raise SceneError(f"{where}: expected a polynomial, got {v!r}")


def _parse_poly_string(text: str, nvars: int, where: str) -> Polynomial:
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    syms = [sympy.Symbol(f"x{i + 1}") for i in range(nvars)]
    local = {f"x{i + 1}": s for i, s in enumerate(syms)}
    if nvars <= len(ALIASES):
        local.update({a: s for a, s in zip(ALIASES, syms)})
    try:
        expr = parse_expr(text, local_dict=local, transformations=standard_transformations + (convert_xor,),
                          evaluate=True)
    except Exception as e:  # sympy raises a variety of errors on bad input
        raise SceneError(f"{where}: cannot parse {text!r} ({type(e).__name__}: {e})") from None
    extra = expr.free_symbols - set(syms)
    if extra:
        raise SceneError(f"{where}: unknown symbols {sorted(map(str, extra))} in {text!r}")
    if expr.has(sympy.Float):
        raise SceneError(f"{where}: floating point numbers are not allowed in {text!r}")
    try:
        p = sympy.Poly(expr, *syms) if syms else None
    except sympy.PolynomialError as e:
        raise SceneError(f"{where}: {text!r} is not a polynomial ({e})") from None
    if p is None:
        if not expr.is_Rational:
            raise SceneError(f"{where}: {text!r} is not a rational constant")
        return Polynomial.const(Fraction(int(expr.p), int(expr.q)), 0)
    terms = {}
    for mono, c in p.terms():
        if not c.is_Rational:
            raise SceneError(f"{where}: coefficient {c} of {text!r} is not rational")
        terms[tuple(int(e) for e in mono)] = Fraction(int(c.p), int(c.q))
    return Polynomial(terms, nvars)


def _rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def poly_json(p: Polynomial) -> list:
    return p.to_terms()


def _point(v, n: int, where: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise SceneError(f"{where}: expected a list of {n} rationals")
    return tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(v))


def _poly_matrix(v, rows: int, cols: int, nvars: int, where: str) -> Mat:
    if rows == 0 or cols == 0:
        v = v if v is not None else []
        if v not in ([], [[]] * rows):
            raise SceneError(f"{where}: expected an empty {rows}x{cols} matrix")
        return Mat.zeros(PolyRing(nvars), rows, cols)
    if not isinstance(v, list) or len(v) != rows or any(not isinstance(r, list) or len(r) != cols for r in v):
        raise SceneError(f"{where}: expected a {rows}x{cols} matrix")
    data = [[parse_poly(x, nvars, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(v)]
    return Mat.of(PolyRing(nvars), data, rows, cols)


def _polys(v, count: int, nvars: int, where: str) -> list:
    if not isinstance(v, list) or len(v) != count:
        raise SceneError(f"{where}: expected {count} polynomials")
    return [parse_poly(x, nvars, f"{where}[{i}]") for i, x in enumerate(v)]


@dataclass
class Scene:
    declarations: dict
    tasks: list
    objects: dict = field(default_factory=dict)
    _stack: list = field(default_factory=list)

    def get(self, name: str, kind: str | tuple | None = None):
        if not isinstance(name, str):
            raise SceneError(f"entity names are strings, got {name!r}")
        if name not in self.declarations:
            where = f"declarations.{self._stack[-1]}: " if self._stack else ""
            raise SceneError(f"{where}unresolved reference {name!r}")
        decl = self.declarations[name]
        if kind is not None:
            kinds = (kind,) if isinstance(kind, str) else kind
            if decl.get("type") not in kinds:
                where = f"declarations.{self._stack[-1]}: " if self._stack else ""
                raise SceneError(f"{where}{name!r} is a {decl.get('type')}, expected {' or '.join(kinds)}")
        if name in self.objects:
            return self.objects[name]
        if name in self._stack:
            raise SceneError(f"cyclic definition: {' -> '.join(self._stack + [name])}")
        build = _BUILDERS.get(decl.get("type"))
        if build is None:
            raise SceneError(f"declarations.{name}: unknown type {decl.get('type')!r}")
        self._stack.append(name)
        try:
            obj = build(self, name, decl)
        except SceneError:
            raise
        except (ValueError, TypeError) as e:
            # constructors of the library types validate shapes and arities
            raise SceneError(f"declarations.{name}: {e}") from None
        finally:
            self._stack.pop()
        self.objects[name] = obj
        return obj

    def kind(self, name: str) -> str:
        if name not in self.declarations:
            raise SceneError(f"unresolved reference {name!r}")
        return self.declarations[name].get("type")

    def resolve_all(self):
        for name in self.declarations:
            self.get(name)


def _need(decl: dict, key: str, where: str):
    if key not in decl:
        raise SceneError(f"{where}: missing field {key!r}")
    return decl[key]


def _int(decl: dict, key: str, where: str) -> int:
    v = _need(decl, key, where)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SceneError(f"{where}.{key}: expected an integer")
    return v


def _model(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    n, k = _int(d, "n", w), _int(d, "k", w)
    return new_std_model(n, k, _polys(d.get("s", []), k, n, f"{w}.s"))


def _morphism(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    X, Y = sc.get(_need(d, "source", w), "model"), sc.get(_need(d, "target", w), "model")
    f = PolyMap(X.n, Y.n, tuple(_polys(_need(d, "f", w), Y.n, X.n, f"{w}.f")))
    fhat = _poly_matrix(d.get("fhat"), Y.k, X.k, X.n, f"{w}.fhat")
    return StdOneMor(f, fhat)


def _two_morphism(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    src, dst = _need(d, "from", w), _need(d, "to", w)
    sc.get(src, "morphism")
    sc.get(dst, "morphism")
    X = sc.get(sc.declarations[src]["source"], "model")
    Y = sc.get(sc.declarations[src]["target"], "model")
    return StdTwoMor(_poly_matrix(d.get("lam"), Y.n, X.k, X.n, f"{w}.lam"))


def _witnesses(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    X = sc.get(_need(d, "model", w), "model")
    pts = [_point(p, X.n, f"{w}.points[{i}]") for i, p in enumerate(_need(d, "points", w))]
    for i, p in enumerate(pts):
        if not X.is_zero(p):
            raise SceneError(f"{w}.points[{i}]: not a zero of the section")
    return WitnessSet(pts, bool(d.get("complete", False)))


def _map(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    X = sc.get(_need(d, "source", w), "model")
    dim = _int(d, "d", w)
    return PolyMap(X.n, dim, tuple(_polys(_need(d, "components", w), dim, X.n, f"{w}.components")))


def _orientation(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    sign = d.get("sign", 1)
    if sign not in (1, -1):
        raise SceneError(f"{w}.sign: must be 1 or -1")
    return OrientedStdModel(sc.get(_need(d, "model", w), "model"), sign)


def _polynomial(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    return parse_poly(_need(d, "p", w), _int(d, "nvars", w), f"{w}.p")


def _corner_model(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    try:
        return CornerModel(_int(d, "k", w), _int(d, "n", w))
    except ValueError as e:
        raise SceneError(f"{w}: {e}") from None


def _corner_map(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    X, Y = sc.get(_need(d, "source", w), "corner_model"), sc.get(_need(d, "target", w), "corner_model")
    f = PolyMap(X.n, Y.n, tuple(_polys(_need(d, "f", w), Y.n, X.n, f"{w}.f")))
    pts = [_point(p, X.n, f"{w}.witnesses[{i}]") for i, p in enumerate(d.get("witnesses", []))]
    # a rejected map is still a value: tasks report the rejection
    return validate_corner_map(X, Y, f, pts)


def _group_action(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    m = sc.get(_need(d, "model", w), "corner_model")
    r = m.n - m.k
    els = []
    for i, e in enumerate(_need(d, "elements", w)):
        mat = e.get("matrix", [])
        if r and (len(mat) != r or any(len(row) != r for row in mat)):
            raise SceneError(f"{w}.elements[{i}].matrix: expected {r}x{r}")
        els.append((e.get("perm", list(range(1, m.k + 1))),
                    [[parse_rational(x, f"{w}.elements[{i}].matrix") for x in row] for row in mat]))
    try:
        return GroupAction.of(m, els)
    except ValueError as e:
        raise SceneError(f"{w}: {e}") from None


def _atlas(sc: Scene, name: str, d: dict):
    w = f"declarations.{name}"
    names = list(_need(d, "charts", w))
    charts = [sc.get(c, "model") for c in names]
    overlaps = {}
    for idx, o in enumerate(d.get("overlaps", [])):
        ow = f"{w}.overlaps[{idx}]"
        i, j = _int(o, "i", ow), _int(o, "j", ow)
        if not 0 <= i < j < len(charts):
            raise SceneError(f"{ow}: need 0 <= i < j < {len(charts)}")
        X, Y = charts[i], charts[j]
        e = PolyMap(X.n, Y.n, tuple(_polys(_need(o, "e", ow), Y.n, X.n, f"{ow}.e")))
        ehat = _poly_matrix(o.get("ehat"), Y.k, X.k, X.n, f"{ow}.ehat")
        p = None if o.get("domain") is None else parse_poly(o["domain"], X.n, f"{ow}.domain")
        pts = tuple(_point(v, X.n, f"{ow}.witnesses[{a}]") for a, v in enumerate(o.get("witnesses", [])))
        overlaps[(i, j)] = Overlap(e, ehat, p, pts)
    return Atlas(tuple(charts), _int(d, "vdim", w), overlaps, tuple(d.get("assertions", [])), tuple(names))


_BUILDERS = {
    "model": _model,
    "morphism": _morphism,
    "two_morphism": _two_morphism,
    "witnesses": _witnesses,
    "map": _map,
    "orientation": _orientation,
    "polynomial": _polynomial,
    "corner_model": _corner_model,
    "corner_map": _corner_map,
    "group_action": _group_action,
    "atlas": _atlas,
}


def load_scene_text(text: str, source: str = "<scene>") -> Scene:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    return scene_from_data(data, source)


def scene_from_data(data, source: str = "<scene>") -> Scene:
    if not isinstance(data, dict):
        raise SceneError(f"{source}: top level must be an object")
    decls = data.get("declarations", {})
    tasks = data.get("tasks", [])
    if not isinstance(decls, dict) or not isinstance(tasks, list):
        raise SceneError(f"{source}: 'declarations' must be an object and 'tasks' a list")
    for name, d in decls.items():
        if not isinstance(d, dict) or "type" not in d:
            raise SceneError(f"declarations.{name}: needs a 'type'")
    names = set()
    for i, t in enumerate(tasks):
        if not isinstance(t, dict) or "op" not in t:
            raise SceneError(f"tasks[{i}]: needs an 'op'")
        t.setdefault("name", f"{t['op']}#{i}")
        if t["name"] in names:
            raise SceneError(f"tasks[{i}]: duplicate task name {t['name']!r}")
        names.add(t["name"])
    return Scene(decls, tasks)


def load_scene(path: str) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SceneError(f"{path}: {e.strerror}") from None
    return load_scene_text(text, path)


# canonical form ------------------------------------------------------------------

def _canon_decl(sc: Scene, name: str) -> dict:
    d = dict(sc.declarations[name])
    obj = sc.get(name)
    t = d["type"]
    if t == "model":
        return {"type": t, "n": obj.n, "k": obj.k, "s": [poly_json(p) for p in obj.s]}
    if t == "morphism":
        return {"type": t, "source": d["source"], "target": d["target"],
                "f": [poly_json(p) for p in obj.f.components],
                "fhat": [[poly_json(p) for p in row] for row in obj.fhat.entries]}
    if t == "two_morphism":
        return {"type": t, "from": d["from"], "to": d["to"],
                "lam": [[poly_json(p) for p in row] for row in obj.lam.entries]}
    if t == "witnesses":
        return {"type": t, "model": d["model"], "points": [[_rat_str(x) for x in p] for p in obj.points],
                "complete": obj.complete}
    if t == "map":
        return {"type": t, "source": d["source"], "d": obj.target_vars,
                "components": [poly_json(p) for p in obj.components]}
    if t == "orientation":
        return {"type": t, "model": d["model"], "sign": obj.sign}
    if t == "polynomial":
        out = {"type": t, "nvars": obj.nvars, "p": poly_json(obj)}
        if "window" in d:
            out["window"] = [_rat_str(parse_rational(x, f"declarations.{name}.window")) for x in d["window"]]
        return out
    if t == "corner_model":
        return {"type": t, "k": obj.k, "n": obj.n}
    if t == "corner_map":
        X = sc.get(d["source"])
        f = PolyMap(X.n, sc.get(d["target"]).n,
                    tuple(_polys(d["f"], sc.get(d["target"]).n, X.n, name))) if isinstance(obj, Rejection) else obj.f
        return {"type": t, "source": d["source"], "target": d["target"],
                "f": [poly_json(p) for p in f.components],
                "witnesses": [[_rat_str(parse_rational(x, name)) for x in p] for p in d.get("witnesses", [])]}
    if t == "group_action":
        return {"type": t, "model": d["model"],
                "elements": [{"perm": list(g.perm), "matrix": [[_rat_str(x) for x in r] for r in g.matrix.entries]}
                             for g in obj.elements]}
    if t == "atlas":
        return {"type": t, "vdim": obj.vdim, "charts": list(obj.names),
                "overlaps": [{"i": i, "j": j, "e": [poly_json(p) for p in o.e.components],
                              "ehat": [[poly_json(p) for p in row] for row in o.ehat.entries],
                              "domain": None if o.p is None else poly_json(o.p),
                              "witnesses": [[_rat_str(x) for x in w] for w in o.witnesses]}
                             for (i, j), o in sorted(obj.overlaps.items())],
                "assertions": list(obj.assertions)}
    raise SceneError(f"declarations.{name}: unknown type {t!r}")


def canonical(sc: Scene) -> dict:
    """Fully parsed scene written back with term-list polynomials and "p/q" rationals."""
    decls = {name: _canon_decl(sc, name) for name in sorted(sc.declarations)}
    tasks = [{k: t[k] for k in sorted(t)} for t in sc.tasks]
    return {"declarations": decls, "tasks": tasks}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
