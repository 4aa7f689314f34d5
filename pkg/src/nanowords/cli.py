"""Command-line front end.

Exit status: 0 ok, 1 property violation, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fuzz
from .algebra import ParamExpr, format_rational, parse_rational
from .genus import surface
from .invariants import (ARNOLD_NAMES, DEGREE3, PRESETS, arnold, arnold_degree3, counts,
                         evaluate, get_preset)
from .moves import NEGATIVE, POSITIVE, apply_move, enumerate_sites, kinds_for
from .pairing import FLAVORS, PLAIN, cyclic_class, parse_pattern
from .words import CLOSED, FRONT, LONG, ParseError, WordError, base_curve, parse_word, \
    serialize_word

ARNOLD_PRESETS = {"J+": 0, "J-": 1, "St": 2}
PRESET_NAMES = tuple(PRESETS) + tuple(ARNOLD_PRESETS) + tuple(DEGREE3)


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


# -- parsing helpers -----------------------------------------------------------

def parse_assignments(text: str | None, what: str = "parameter") -> dict[str, Fraction]:
    """``s=-1/2,t=1`` -> {"s": -1/2, "t": 1}."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, val = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise InputError(f"bad {what} assignment {item!r}; expected name=p/q")
        try:
            out[name] = parse_rational(val)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad value for {name}: {e}") from None
    return out


def parse_ring(text: str | None) -> dict[str, Fraction] | None:
    vals = parse_assignments(text, "ring")
    if not vals:
        return None
    if set(vals) != {"a+", "a-"}:
        raise InputError("--ring needs exactly a+=... and a-=...")
    return vals


def parse_direction(text: str) -> int:
    if text in ("+", "pos", "positive"):
        return POSITIVE
    if text in ("-", "neg", "negative"):
        return NEGATIVE
    raise InputError(f"direction must be + or -, got {text!r}")


def read_word(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return parse_word(text)
    except ParseError as e:
        raise InputError(f"{path}:{e.line}:{e.column}: {e.message}") from None
    except WordError as e:
        raise InputError(f"{path}: {e}") from None


# -- rendering -------------------------------------------------------------------

def value_json(v):
    if isinstance(v, ParamExpr):
        if v.is_constant() and v.constant.is_constant():
            return format_rational(v.constant.constant())
        return v.to_json()
    return format_rational(v)


def value_text(v) -> str:
    """TSV cell: a rational as p/q, a symbolic value as compact JSON."""
    j = value_json(v)
    return j if isinstance(j, str) else json.dumps(j, sort_keys=True, separators=(",", ":"))


def emit_rows(args, rows: list[tuple[str, dict]], columns: list[str]):
    """rows: (path, {column: value}); one path prints bare values."""
    if args.format == "json":
        data = [dict({"file": p}, **{c: value_json(r[c]) for c in columns}) for p, r in rows]
        if len(data) == 1:
            data = {c: data[0][c] for c in columns} if len(columns) > 1 else data[0][columns[0]]
        print(json.dumps(data, sort_keys=True))
        return
    multi = len(rows) > 1
    for p, r in rows:
        cells = [value_text(r[c]) for c in columns]
        print("\t".join(([p] if multi else []) + cells))


# -- commands ----------------------------------------------------------------------

def compute_value(name: str, w, params: dict, ring):
    """Value of a named preset on ``w`` after the given assignments."""
    if name in ARNOLD_PRESETS:
        if params or ring:
            raise InputError(f"{name} takes no parameters")
        return arnold(w)[ARNOLD_PRESETS[name]]
    if name in DEGREE3:
        if w.curve_class != LONG:
            raise InputError(f"{name} needs a long word, got {w.curve_class}")
        value = arnold_degree3(w, name)
    else:
        preset = get_preset(name)
        if w.curve_class != preset.curve_class:
            raise InputError(f"{name} needs a {preset.curve_class} word, got {w.curve_class}")
        value = evaluate(preset, w)
    value = value.subs(params)
    if ring:
        value = value.eval_ring(ring["a+"], ring["a-"])
    return value


def _preset_params(name: str) -> set[str]:
    if name in ARNOLD_PRESETS:
        return set()
    if name in DEGREE3:
        return {k for e in DEGREE3[name].values() for k in e.params()}
    return set(PRESETS[name].params)


def cmd_compute(args) -> int:
    if args.preset not in PRESET_NAMES:
        raise InputError(f"unknown preset {args.preset!r}; known: {', '.join(PRESET_NAMES)}")
    params = parse_assignments(args.params)
    unknown = sorted(set(params) - _preset_params(args.preset))
    if unknown:
        raise InputError(f"unknown parameter(s) for {args.preset}: {', '.join(unknown)}")
    ring = parse_ring(args.ring)
    words = [(p, read_word(p)) for p in args.files]
    rows = [(p, {"value": compute_value(args.preset, w, params, ring)}) for p, w in words]
    emit_rows(args, rows, ["value"])
    return 0


def cmd_arnold(args) -> int:
    rows = []
    for p in args.files:
        w = read_word(p)
        rows.append((p, dict(zip(ARNOLD_NAMES, arnold(w)))))
    emit_rows(args, rows, list(ARNOLD_NAMES))
    return 0


def cmd_genus(args) -> int:
    w = read_word(args.file)
    if w.curve_class == LONG and not args.close_long:
        raise InputError(f"{args.file}: genus is defined for closed words (use --close-long)")
    rep = surface(w, allow_long=args.close_long)
    if args.json or args.format == "json":
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        print(rep.genus)
    return 0


def cmd_base(args) -> int:
    try:
        w = base_curve(args.family, args.index, args.cusps)
    except WordError as e:
        raise InputError(str(e)) from None
    print(serialize_word(w))
    return 0


def cmd_expand_class(args) -> int:
    try:
        c = cyclic_class(parse_pattern(args.pattern), args.flavor)
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.format == "json":
        print(json.dumps([[s, str(v)] for s, v in c.terms]))
    else:
        print(c)
    return 0


def _sites(w, kind, direction):
    kinds = [kind] if kind else list(kinds_for(w.curve_class))
    if kind and kind not in kinds_for(w.curve_class):
        raise InputError(f"move {kind} does not apply to {w.curve_class} words")
    out = []
    for k in kinds:
        out += enumerate_sites(w, k, direction)
    return out


def cmd_moves(args) -> int:
    w = read_word(args.file)
    direction = parse_direction(args.dir) if args.dir else None
    if args.action == "list":
        for n, s in enumerate(_sites(w, args.kind, direction)):
            print(f"{n}\t{s.describe()}")
        return 0
    if not args.kind or direction is None or args.site is None:
        raise InputError("moves apply needs --kind, --dir and --site")
    sites = _sites(w, args.kind, direction)
    if not 0 <= args.site < len(sites):
        raise InputError(f"site {args.site} out of range; {len(sites)} site(s) available")
    print(serialize_word(apply_move(w, sites[args.site])))
    return 0


def cmd_fuzz(args) -> int:
    try:
        summary, violation = fuzz.run(args.family, args.index, args.cusps, args.steps,
                                      args.trials, args.seed, args.check)
    except (ValueError, WordError) as e:
        raise InputError(str(e)) from None
    summary["status"] = "fail" if violation else "ok"
    if args.format == "json":
        out = dict(summary)
        if violation:
            out["counterexample"] = violation.render()
        print(json.dumps(out, sort_keys=True))
    else:
        print("\t".join(f"{k}={summary[k]}" for k in sorted(summary)))
        if violation:
            print(violation.render())
    return 1 if violation else 0


TABLE_COLUMNS = ("curve", "i", "mu", "n", "J+", "J-", "St", "deg3")


def table_rows(family: str, lo: int, hi: int, cusps: int | None = None):
    """(curve, i, mu, n, J+, J-, St, degree-3 symbolic) for i in lo..hi."""
    third = {CLOSED: "CI3", LONG: "LI3", FRONT: "FI3"}
    rows = []
    for i in range(lo, hi + 1):
        w = base_curve(family, i, cusps)
        cs = counts(w)
        label = f"{family}{i}" if cusps is None or family != "KF" else f"{family}{i},{cusps}"
        jp, jm, st = arnold(w)
        rows.append((label, cs.i, cs.mu, cs.n, jp, jm, st, evaluate(PRESETS[third[w.curve_class]], w)))
    return rows


def cmd_table(args) -> int:
    try:
        rows = table_rows(args.family, args.lo, args.hi, args.cusps)
    except WordError as e:
        raise InputError(str(e)) from None
    if args.format == "json":
        print(json.dumps([dict(zip(TABLE_COLUMNS, (r[0], *r[1:4], *map(value_json, r[4:]))))
                          for r in rows], sort_keys=True))
        return 0
    print("\t".join(TABLE_COLUMNS))
    for r in rows:
        print("\t".join([r[0], *map(str, r[1:4]), *map(value_text, r[4:])]))
    return 0


# -- argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--params", default=argparse.SUPPRESS, help="e.g. s=-1/2,t=1,u=-3")
    common.add_argument("--ring", default=argparse.SUPPRESS, help="e.g. a+=-1,a-=-1")

    ap = argparse.ArgumentParser(prog="nanowords", parents=[common],
                                 description="Invariants of curves and fronts encoded as words.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="evaluate a named invariant")
    p.add_argument("preset")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("arnold", parents=[common], help="J+, J-, St of each word")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_arnold)

    p = sub.add_parser("genus", parents=[common], help="genus of a closed word")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--close-long", action="store_true", help="treat a long word as closed")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("base", parents=[common], help="print a base curve")
    p.add_argument("family", choices=("K", "L", "KF"))
    p.add_argument("index", type=int)
    p.add_argument("--cusps", type=int)
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("expand-class", parents=[common], help="signed rotation class of a pattern")
    p.add_argument("pattern")
    p.add_argument("--flavor", choices=FLAVORS, default=PLAIN)
    p.set_defaults(func=cmd_expand_class)

    p = sub.add_parser("moves", parents=[common], help="list or apply elementary moves")
    p.add_argument("action", choices=("list", "apply"))
    p.add_argument("file")
    p.add_argument("--kind")
    p.add_argument("--dir")
    p.add_argument("--site", type=int)
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("fuzz", parents=[common], help="check invariance laws on random walks")
    p.add_argument("--family", choices=tuple(fuzz.FAMILY_CLASS), required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--cusps", type=int)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--check", choices=fuzz.CHECKS, default="deltas")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("table", parents=[common], help="invariants of a range of base curves")
    p.add_argument("family", choices=("K", "L", "KF"))
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--cusps", type=int)
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("format", "tsv"), ("seed", 0), ("params", None), ("ring", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    env_seed = os.environ.get("NANOWORD_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"error: NANOWORD_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
