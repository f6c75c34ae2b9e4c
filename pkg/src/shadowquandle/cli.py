"""Command-line front end.

Output is plain text followed by a machine-readable block of ``key=value``
lines; identical arguments and seeds produce byte-identical output.  Exit
codes: 0 success, 1 validation or precondition error, 2 fuzz counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra
from .algebra import (AbelianGroup, ValidationError, format_group_ring,
                      make_cocycle, make_quandle, make_xset)
from .catalog import catalog, catalog_names
from .cohomology import h3
from .coloring import coloring_number, enumerate_shadow_colorings
from .diagram import DiagramError, mirror, parse_diagram, product, serialize
from .invariant import cocycle_invariant, cocycle_invariant_multiset, crossing_bound
from .moves import fuzz_invariance


class CliError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise CliError(f"no such file: {path}")
    return p.read_text()


def _resolve_diagram(ref: str):
    if ref.startswith("@"):
        return parse_diagram(_read(ref[1:]))
    return catalog(ref)


def _resolve_quandle(ref: str):
    if ref.startswith("@"):
        return algebra.parse_quandle_text(_read(ref[1:]))
    return make_quandle(ref)


def _resolve_xset(ref: str, quandle):
    if ref.startswith("@"):
        return algebra.parse_xset_text(_read(ref[1:]), quandle)
    return make_xset(quandle, ref)


def _resolve_cocycle(ref: str, quandle=None, xset=None):
    if ref.startswith("@"):
        return algebra.parse_cocycle_text(_read(ref[1:]), quandle=quandle, xset=xset)
    return make_cocycle(ref)


def _parse_y0(text):
    if text is None:
        return None
    return frozenset(int(v) for v in text.split(","))


def _element_str(elt) -> str:
    return "(" + ",".join(str(v) for v in elt) + ")"


def _emit(lines, machine):
    out = list(lines)
    if machine:
        out.append("---")
        out.extend(f"{k}={v}" for k, v in machine)
    return "\n".join(out) + "\n"


def cmd_colorings(args) -> tuple[int, str]:
    d = _resolve_diagram(args.diagram)
    X = _resolve_quandle(args.quandle)
    y0 = _parse_y0(args.y0)
    lines = []
    machine = []
    if args.arc_only:
        n = coloring_number(d, X, arc_only=True)
        lines.append(f"quandle colorings of {args.diagram} over {X.name}: {n}")
    else:
        Y = _resolve_xset(args.xset, X)
        colorings = enumerate_shadow_colorings(d, X, Y, y0=y0)
        n = len(colorings)
        restriction = f" with outer color in {sorted(y0)}" if y0 else ""
        lines.append(f"shadow colorings of {args.diagram} over ({X.name}, {Y.name}){restriction}: {n}")
        if args.list:
            for c in colorings:
                arcs = " ".join(f"arc {i} = {v}" for i, v in enumerate(c.arc_colors))
                faces = " ".join(f"face {i} = {v}" for i, v in enumerate(c.face_colors))
                lines.append(f"  {arcs} | {faces}")
    machine.append(("count", n))
    return 0, _emit(lines, machine)


def cmd_invariant(args) -> tuple[int, str]:
    d = _resolve_diagram(args.diagram)
    X = _resolve_quandle(args.quandle) if args.quandle else None
    f = _resolve_cocycle(args.cocycle, quandle=X)
    y0 = _parse_y0(args.y0)
    inv = cocycle_invariant(f, d, y0=y0)
    multiset = cocycle_invariant_multiset(f, d, y0=y0)
    if f.group.rank == 1 and f.group.factors[0]:
        rendered = format_group_ring(inv, "cyclic-u")
        ms = "[" + ", ".join(
            format_group_ring(algebra.GroupRingElement(f.group, [w]), "cyclic-u")
            for w in multiset) + "]"
    else:
        rendered = format_group_ring(inv, "tuple")
        ms = "[" + ", ".join(_element_str(w) for w in multiset) + "]"
    lines = [f"phi' = {rendered}", f"weights = {ms}"]
    machine = [("phi", rendered), ("colorings", len(multiset))]
    return 0, _emit(lines, machine)


def cmd_bound(args) -> tuple[int, str]:
    d = _resolve_diagram(args.diagram)
    X = _resolve_quandle(args.quandle) if args.quandle else None
    f = _resolve_cocycle(args.cocycle, quandle=X)
    bound = crossing_bound(f, d)
    lines = []
    machine = [("bound", bound)]
    if bound == d.crossing_count():
        lines.append(f"bound={bound} crossing_number={bound} (exact)")
        machine.append(("crossing_number", bound))
        machine.append(("exact", "true"))
    else:
        lines.append(f"bound={bound}")
    return 0, _emit(lines, machine)


def cmd_cohomology(args) -> tuple[int, str]:
    X = _resolve_quandle(args.quandle)
    dim_ker, rank_im, dim_h3 = h3(X, args.p)
    lines = [f"dim_ker={dim_ker} dim_im={rank_im} dim_H3={dim_h3}"]
    machine = [("dim_ker", dim_ker), ("dim_im", rank_im), ("dim_H3", dim_h3)]
    return 0, _emit(lines, machine)


def cmd_fuzz(args) -> tuple[int, str]:
    d = _resolve_diagram(args.diagram)
    X = _resolve_quandle(args.quandle) if args.quandle else None
    f = _resolve_cocycle(args.cocycle, quandle=X)
    Y = f.xset if f.xset is not None else make_xset(f.quandle, "self")
    y0 = _parse_y0(args.y0)
    rep = fuzz_invariance(d, f.quandle, Y, f, trials=args.trials,
                          max_moves=args.max_moves, seed=args.seed, y0=y0)
    lines = []
    if rep.ok:
        lines.append(f"ok trials={rep.trials}")
    else:
        trial, script, why = rep.failures[0]
        lines.append(f"counterexample at trial {trial}: {why}")
        lines.extend(f"  {step}" for step in script)
    machine = [("ok", str(rep.ok).lower()), ("trials", rep.trials)]
    return (0 if rep.ok else 2), _emit(lines, machine)


def cmd_catalog(args) -> tuple[int, str]:
    if args.action != "list":
        raise CliError("supported catalog action: list")
    return 0, _emit(catalog_names(), [("count", len(catalog_names()))])


def cmd_mirror(args) -> tuple[int, str]:
    d = _resolve_diagram(args.diagram)
    return 0, serialize(mirror(d))


def cmd_product(args) -> tuple[int, str]:
    d1 = _resolve_diagram(args.first)
    d2 = _resolve_diagram(args.second)
    return 0, serialize(product(d1, d2))


def cmd_validate(args) -> tuple[int, str]:
    lines = []
    machine = []
    if args.diagram:
        d = _resolve_diagram(args.diagram)
        lines.append(f"diagram ok: {d.crossing_count()} crossings, "
                     f"{len(d.edges)} edges, {len(d.faces())} faces")
        machine += [("crossings", d.crossing_count()), ("edges", len(d.edges)),
                    ("faces", len(d.faces()))]
    if args.quandle:
        X = _resolve_quandle(args.quandle)
        lines.append(f"quandle ok: order {X.n}")
        machine.append(("quandle_order", X.n))
        if args.xset:
            Y = _resolve_xset(args.xset, X)
            lines.append(f"xset ok: size {Y.m}")
            machine.append(("xset_size", Y.m))
        if args.cocycle:
            f = _resolve_cocycle(args.cocycle, quandle=X)
            lines.append(f"cocycle ok: {f.validated}")
            machine.append(("cocycle", f.validated))
    elif args.cocycle:
        f = _resolve_cocycle(args.cocycle)
        lines.append(f"cocycle ok: {f.validated}")
        machine.append(("cocycle", f.validated))
    if not lines:
        raise CliError("nothing to validate; pass --diagram, --quandle, --xset, or --cocycle")
    return 0, _emit(lines, machine)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shadowquandle",
        description="Shadow quandle colorings and cocycle invariants of knotoids")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colorings", help="count (and list) shadow colorings")
    p.add_argument("--diagram", required=True)
    p.add_argument("--quandle", required=True)
    p.add_argument("--xset", default="self")
    p.add_argument("--y0", default=None, help="comma-separated outer-region colors")
    p.add_argument("--arc-only", action="store_true")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_colorings)

    p = sub.add_parser("invariant", help="group-ring cocycle invariant")
    p.add_argument("--diagram", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--quandle", default=None, help="needed for @file cocycles")
    p.add_argument("--y0", default=None)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("bound", help="crossing-number lower bound from a unit-valued cocycle")
    p.add_argument("--diagram", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--quandle", default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("cohomology", help="third quandle cohomology over a prime field")
    p.add_argument("--quandle", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("fuzz", help="random move walks checking invariance")
    p.add_argument("--diagram", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--quandle", default=None)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-moves", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--y0", default=None)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("catalog", help="catalog utilities")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("mirror", help="serialize the mirror image")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("product", help="concatenate two knotoid diagrams")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("validate", help="parse and validate inputs")
    p.add_argument("--diagram", default=None)
    p.add_argument("--quandle", default=None)
    p.add_argument("--xset", default=None)
    p.add_argument("--cocycle", default=None)
    p.set_defaults(func=cmd_validate)
    return ap


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, DiagramError, CliError, ValueError) as exc:
        return 1, f"error: {exc}\n"


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == 0 or code == 2 else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
