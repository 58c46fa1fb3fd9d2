"""Command-line front end.

Exit codes: 0 success (or witnesses matching ``--expect``), 1 validation
failure or expectation mismatch, 2 input or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import algebras, io
from .core import enumerate_path_basis, validate_gentle
from .dercat import exceptional_search, orthogonal_constraint, silting_search
from .errors import ConstructionError, GentleKitError
from .fields import parse_field
from .homcalc import StringWord, hom_profile, string_hom_fast, string_to_twisted, word
from .scenarios import DEFAULT_BOUNDS, builtin_scenarios, scenario_by_name, verify
from .surface import (algebra_to_surface_invariants, arc_system_invariants,
                      arc_system_to_algebra, cycle_twist, grading_invariant,
                      validate_arc_system)

REPORT_SCHEMA = "gentlekit.report/1"

BUILTINS = {
    "Q": lambda: algebras.kronecker_chain(),
    "Q-nonstandard": lambda: algebras.kronecker_chain({"a1": 1, "a2": 1}),
    "Q'": lambda: algebras.torus_one_point(),
    "Q'-allzero": lambda: algebras.torus_one_point({"a": 0, "b": 0, "c": 0}),
}


class UsageError(GentleKitError):
    pass


@dataclass(frozen=True)
class CliConfig:
    inputs: tuple
    field: object
    bounds: dict
    fmt: str
    seed: int


def parse_bounds(text: str | None) -> dict:
    if not text:
        return {}
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--bounds expects L,W,depth")
    try:
        values = [int(x) for x in parts]
    except ValueError:
        raise UsageError("--bounds values must be integers") from None
    if values[0] < 0 or values[1] < 1 or values[2] < 0:
        raise UsageError("--bounds needs L >= 0, W >= 1, depth >= 0")
    return dict(zip(("L", "W", "depth"), values))


def load_input(source: str):
    """An algebra or arc system from a JSON file, or ``builtin:NAME``."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; known: {', '.join(BUILTINS)}")
        return BUILTINS[name]()
    obj = io.read(source)
    if isinstance(obj, dict) and "angle_fans" in obj:
        return io.arc_system_from_dict(obj)
    return io.algebra_from_dict(obj)


def load_algebra(source: str):
    x = load_input(source)
    return x if not hasattr(x, "fans") else arc_system_to_algebra(x)


def parse_object(p, text: str):
    """A string word ``"b1 a2"``/``"e1"`` with optional ``@shift``, or an object JSON file."""
    if os.path.exists(text):
        obj = io.object_from_dict(p, io.read(text))
        return obj
    shift = 0
    if "@" in text:
        text, _, s = text.rpartition("@")
        try:
            shift = int(s)
        except ValueError:
            raise UsageError(f"bad shift {s!r}") from None
    return word(p, text, shift=shift)


class Output:
    def __init__(self, cfg: CliConfig, command: str):
        self.cfg, self.command = cfg, command
        self.lines: list = []
        self.data: dict = {}

    def emit(self) -> None:
        if self.cfg.fmt == "machine":
            doc = {"schema": REPORT_SCHEMA, "command": self.command,
                   "field": self.cfg.field.name, "seed": self.cfg.seed}
            doc.update(self.data)
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            sys.stdout.write("".join(line + "\n" for line in self.lines))


# -- subcommands -----------------------------------------------------------------

def cmd_validate(cfg, args, out):
    x = load_input(args.input)
    if hasattr(x, "fans"):
        try:
            validate_arc_system(x)
        except ConstructionError as e:
            out.lines.append(f"FAIL {e}")
            out.data.update(kind="arc_system", ok=False, violations=[str(e)])
            return 1
        rep = validate_gentle(arc_system_to_algebra(x))
        kind = "arc_system"
    else:
        rep = validate_gentle(x)
        kind = "algebra"
    out.data.update(kind=kind, ok=rep.ok, violations=list(rep.violations))
    out.lines.append("PASS" if rep.ok else "FAIL")
    out.lines += [f"  {v}" for v in rep.violations]
    return 0 if rep.ok else 1


def cmd_basis(cfg, args, out):
    p = load_algebra(args.input)
    basis = enumerate_path_basis(p)
    rows = [{"from": q.start, "to": q.end, "path": str(q), "degree": q.degree} for q in basis]
    out.data.update(dimension=basis.dimension, paths=rows)
    out.lines.append(f"dimension: {basis.dimension}")
    out.lines += [f"  {r['from']} -> {r['to']}  {r['path']}  (deg {r['degree']})" for r in rows]
    return 0


def cmd_invariants(cfg, args, out):
    x = load_input(args.input)
    inv = arc_system_invariants(x) if hasattr(x, "fans") else algebra_to_surface_invariants(x)
    out.data.update(genus=inv.genus, boundary_components=inv.boundary_components,
                    marked_points_per_boundary=list(inv.marked_points_per_boundary),
                    euler_characteristic=inv.euler_characteristic)
    out.lines += [f"genus: {inv.genus}", f"boundary components: {inv.boundary_components}",
                  f"marked points per boundary: {list(inv.marked_points_per_boundary)}",
                  f"euler characteristic: {inv.euler_characteristic}"]
    return 0


def cmd_twist(cfg, args, out):
    p = load_algebra(args.input)
    cycles = [c.split() for c in args.cycle]
    twists = [cycle_twist(p, c) for c in cycles]
    n = grading_invariant(p, cycles)
    out.data.update(cycles=[" ".join(c) for c in cycles], twists=twists, invariant=n)
    out.lines += [f"twist({' '.join(c)}) = {t}" for c, t in zip(cycles, twists)]
    out.lines.append(f"grading invariant N = {n}" + ("  (standard grading)" if n == 0 else ""))
    return 0


def cmd_hom(cfg, args, out):
    p = load_algebra(args.input)
    x, y = parse_object(p, args.x), parse_object(p, args.y)
    if args.fast:
        if not (isinstance(x, StringWord) and isinstance(y, StringWord)):
            raise UsageError("--fast needs two string words")
        prof = string_hom_fast(x, y)
    else:
        tx = string_to_twisted(x) if isinstance(x, StringWord) else x
        ty = string_to_twisted(y) if isinstance(y, StringWord) else y
        prof = hom_profile(tx, ty, cfg.field)
    out.data.update(profile={str(d): n for d, n in sorted(prof.items())}, total=prof.total)
    out.lines.append(str(prof))
    return 0


def cmd_search(cfg, args, out):
    p = load_algebra(args.input)
    b = dict(DEFAULT_BOUNDS)
    b.update(cfg.bounds)
    if args.kind == "exceptional":
        constraint = None
        if args.orthogonal_to:
            constraint = orthogonal_constraint(parse_object(p, args.orthogonal_to), args.side)
        rep = exceptional_search(p, b["L"], b["W"], constraint)
    else:
        rep = silting_search(p, b["L"], b["W"], b["depth"], cfg.field)
    out.data.update(report=rep.to_dict())
    out.lines += rep.lines()
    if args.expect is None:
        return 0
    match = bool(rep.witnesses) == (args.expect == "some")
    out.data.update(expectation=args.expect, matches=match)
    out.lines.append(f"expectation {args.expect}: {'met' if match else 'NOT met'}")
    return 0 if match else 1


def cmd_verify(cfg, args, out):
    if args.all:
        chosen = builtin_scenarios()
    elif args.scenario:
        chosen = [scenario_by_name(n) for n in args.scenario]
    else:
        raise UsageError("verify needs --scenario NAME or --all")
    reports = [verify(s, cfg.field, cfg.bounds) for s in chosen]
    out.data.update(ok=all(r.ok for r in reports), scenarios=[
        {"name": r.scenario, "ok": r.ok,
         "facts": [{"op": x.fact.op, "args": json.loads(json.dumps(x.fact.args)),
                    "provenance": x.fact.provenance, "ok": x.ok, "line": x.line()}
                   for x in r.results]} for r in reports])
    for r in reports:
        out.lines.append(r.summary)
        out.lines += [f"  {x.line()}" for x in r.results]
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rationals",
                        help="coefficient field: rationals (default) or prime:P")
    common.add_argument("--bounds", help="search bounds L,W,depth (default 8,3,4)")
    common.add_argument("--format", choices=("table", "machine"), default="table")
    common.add_argument("--seed", type=int, default=0,
                        help="recorded in machine output; every computation is deterministic")

    ap = argparse.ArgumentParser(prog="gentlekit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    src = "algebra or arc-system JSON file, or builtin:NAME (" + ", ".join(BUILTINS) + ")"

    s = sub.add_parser("validate", parents=[common], help="check gentleness or full formality")
    s.add_argument("input", help=src)
    s = sub.add_parser("basis", parents=[common], help="list the path basis")
    s.add_argument("input", help=src)
    s = sub.add_parser("invariants", parents=[common], help="genus, boundary, marked points")
    s.add_argument("input", help=src)
    s = sub.add_parser("twist", parents=[common], help="cycle twists and the grading invariant")
    s.add_argument("input", help=src)
    s.add_argument("--cycle", action="append", required=True,
                   help='closed walk such as "a b" or "a1 -b1"; repeat for each cycle')
    s = sub.add_parser("hom", parents=[common], help="graded Hom dimensions")
    s.add_argument("input", help=src)
    s.add_argument("x", help='string word like "b1 a2@0", or an object JSON file')
    s.add_argument("y")
    s.add_argument("--fast", action="store_true", help="use the string fast path")
    s = sub.add_parser("search", parents=[common], help="bounded exceptional or silting search")
    s.add_argument("kind", choices=("exceptional", "silting"))
    s.add_argument("input", help=src)
    s.add_argument("--orthogonal-to", help="restrict to objects orthogonal to this word")
    s.add_argument("--side", choices=("left", "right", "either"), default="either")
    s.add_argument("--expect", choices=("none", "some"))
    s = sub.add_parser("verify", parents=[common], help="re-check the built-in scenarios")
    s.add_argument("--scenario", action="append")
    s.add_argument("--all", action="store_true")
    return ap


COMMANDS = {"validate": cmd_validate, "basis": cmd_basis, "invariants": cmd_invariants,
            "twist": cmd_twist, "hom": cmd_hom, "search": cmd_search, "verify": cmd_verify}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = CliConfig(tuple(getattr(args, "input", ()) or ()), parse_field(args.field),
                        parse_bounds(args.bounds), args.format, args.seed)
        out = Output(cfg, args.command)
        code = COMMANDS[args.command](cfg, args, out)
    except (GentleKitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
