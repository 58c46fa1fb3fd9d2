"""JSON readers and writers for algebras, arc systems and objects.

Every reader rejects unknown keys, and every writer emits keys in a fixed
order so that ``dump(load(text)) == text`` for canonically written files.
Schemas are documented in ``docs/formats.md``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import Arrow, GentlePresentation, GradedQuiver, make_path, trivial
from .errors import InputError
from .homcalc import StringWord, TwistedComplex, word
from .surface import AngleFan, ArcSystemPresentation

SCHEMA = {
    "algebra": "gentlekit.algebra/1",
    "arc_system": "gentlekit.arc_system/1",
    "twisted": "gentlekit.twisted/1",
    "string": "gentlekit.string/1",
}


def _check_keys(obj, allowed: set, required: set, where: str):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise InputError(f"{where}: missing keys {sorted(missing)}")


def _check_schema(obj, kind):
    if "schema" in obj and obj["schema"] != SCHEMA[kind]:
        raise InputError(f"unsupported schema {obj['schema']!r}, expected {SCHEMA[kind]!r}")


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer")
    return x


def _str(x, where):
    if not isinstance(x, str) or not x:
        raise InputError(f"{where}: expected a nonempty string")
    return x


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"not valid JSON: {e}") from None


def read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_json(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


# -- algebras ----------------------------------------------------------------------

def algebra_from_dict(obj) -> GentlePresentation:
    _check_keys(obj, {"schema", "vertices", "arrows", "relations"}, {"vertices", "arrows"}, "algebra")
    _check_schema(obj, "algebra")
    if not isinstance(obj["vertices"], list) or not isinstance(obj["arrows"], list):
        raise InputError("algebra: vertices and arrows must be lists")
    vertices = [_str(v, "vertex") for v in obj["vertices"]]
    arrows = []
    for k, a in enumerate(obj["arrows"]):
        _check_keys(a, {"id", "src", "tgt", "deg"}, {"id", "src", "tgt"}, f"arrow {k}")
        arrows.append(Arrow(_str(a["id"], f"arrow {k} id"), _str(a["src"], f"arrow {k} src"),
                            _str(a["tgt"], f"arrow {k} tgt"), _int(a.get("deg", 0), f"arrow {k} deg")))
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise InputError("algebra: relations must be a list")
    pairs = []
    for r in rels:
        if not (isinstance(r, list) and len(r) == 2):
            raise InputError(f"relation {r!r}: expected [first, second]")
        pairs.append((_str(r[0], "relation"), _str(r[1], "relation")))
    return GentlePresentation(GradedQuiver(tuple(vertices), tuple(arrows)), frozenset(pairs))


def algebra_to_dict(p: GentlePresentation) -> dict:
    return {
        "schema": SCHEMA["algebra"],
        "vertices": list(p.vertices),
        "arrows": [{"id": a.id, "src": a.source, "tgt": a.target, "deg": a.degree}
                   for a in p.arrows],
        "relations": [list(r) for r in sorted(p.relations)],
    }


# -- arc systems -------------------------------------------------------------------

def arc_system_from_dict(obj) -> ArcSystemPresentation:
    _check_keys(obj, {"schema", "marked_points", "arcs", "angle_fans"},
                {"marked_points", "arcs", "angle_fans"}, "arc system")
    _check_schema(obj, "arc_system")
    points = []
    for k, m in enumerate(obj["marked_points"]):
        _check_keys(m, {"id", "boundary"}, {"id", "boundary"}, f"marked point {k}")
        points.append((_str(m["id"], "marked point id"), _str(m["boundary"], "boundary id")))
    arcs = []
    for k, a in enumerate(obj["arcs"]):
        _check_keys(a, {"id", "ends"}, {"id", "ends"}, f"arc {k}")
        if not (isinstance(a["ends"], list) and len(a["ends"]) == 2):
            raise InputError(f"arc {k}: ends must be [point, point]")
        arcs.append((_str(a["id"], "arc id"), _str(a["ends"][0], "arc end"),
                     _str(a["ends"][1], "arc end")))
    fans = []
    for k, f in enumerate(obj["angle_fans"]):
        _check_keys(f, {"point", "ends", "degrees", "names"}, {"point", "ends"}, f"angle fan {k}")
        ends = []
        for e in f["ends"]:
            if not (isinstance(e, list) and len(e) == 2 and e[1] in (0, 1)):
                raise InputError(f"angle fan {k}: each end must be [arc, 0|1]")
            ends.append((_str(e[0], "arc id"), e[1]))
        degs = tuple(_int(d, f"angle fan {k} degree") for d in f.get("degrees", []))
        names = f.get("names")
        fans.append(AngleFan(_str(f["point"], "fan point"), tuple(ends), degs,
                             None if names is None else tuple(_str(n, "angle name") for n in names)))
    return ArcSystemPresentation(tuple(points), tuple(arcs), tuple(fans))


def arc_system_to_dict(a: ArcSystemPresentation) -> dict:
    fans = []
    for f in a.fans:
        d = {"point": f.point, "ends": [[x, e] for x, e in f.ends], "degrees": list(f.degrees)}
        if f.names is not None:
            d["names"] = list(f.names)
        fans.append(d)
    return {
        "schema": SCHEMA["arc_system"],
        "marked_points": [{"id": p, "boundary": b} for p, b in a.marked_points],
        "arcs": [{"id": x, "ends": [s, t]} for x, s, t in a.arcs],
        "angle_fans": fans,
    }


# -- objects ----------------------------------------------------------------------

def _path_from_text(p: GentlePresentation, text: str):
    text = _str(text, "path")
    if text.startswith("e") and text[1:] in p.vertices:
        return trivial(text[1:])
    return make_path(p, text.split("."))


def _coeff_text(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def twisted_from_dict(p: GentlePresentation, obj) -> TwistedComplex:
    _check_keys(obj, {"schema", "summands", "differential"}, {"summands"}, "twisted complex")
    _check_schema(obj, "twisted")
    summands = []
    for k, s in enumerate(obj["summands"]):
        if not (isinstance(s, list) and len(s) == 2):
            raise InputError(f"summand {k}: expected [vertex, shift]")
        summands.append((_str(s[0], "summand vertex"), _int(s[1], "summand shift")))
    entries = {}
    for k, e in enumerate(obj.get("differential", [])):
        _check_keys(e, {"from", "to", "terms"}, {"from", "to", "terms"}, f"entry {k}")
        terms = {}
        for t in e["terms"]:
            _check_keys(t, {"path", "coeff"}, {"path", "coeff"}, f"entry {k} term")
            try:
                c = Fraction(str(t["coeff"]))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"entry {k}: bad coefficient {t['coeff']!r}") from None
            pth = _path_from_text(p, t["path"])
            terms[pth] = terms.get(pth, 0) + c
        key = (_int(e["from"], "entry from"), _int(e["to"], "entry to"))
        if key in entries:
            raise InputError(f"entry {key} listed twice")
        entries[key] = terms
    return TwistedComplex.build(p, summands, entries)


def twisted_to_dict(x: TwistedComplex) -> dict:
    return {
        "schema": SCHEMA["twisted"],
        "summands": [[v, s] for v, s in x.summands],
        "differential": [{"from": i, "to": j,
                          "terms": [{"path": str(q), "coeff": _coeff_text(c)} for q, c in terms]}
                         for i, j, terms in x.entries],
    }


def string_from_dict(p: GentlePresentation, obj) -> StringWord:
    _check_keys(obj, {"schema", "start", "letters", "shift"}, {"letters"}, "string")
    _check_schema(obj, "string")
    letters = obj["letters"]
    if not isinstance(letters, list):
        raise InputError("string: letters must be a list")
    start = obj.get("start")
    return word(p, " ".join(_str(x, "letter") for x in letters),
                start=None if start is None else _str(start, "start"),
                shift=_int(obj.get("shift", 0), "shift"))


def string_to_dict(w: StringWord) -> dict:
    return {
        "schema": SCHEMA["string"],
        "start": w.start,
        "letters": [("" if d > 0 else "-") + str(pth) for pth, d in w.letters],
        "shift": w.shift,
    }


def object_from_dict(p: GentlePresentation, obj):
    """A twisted complex or a string, told apart by their keys."""
    if isinstance(obj, dict) and "letters" in obj:
        return string_from_dict(p, obj)
    return twisted_from_dict(p, obj)
