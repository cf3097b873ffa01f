"""Command-line front end.

Exit status is 0 on success, 1 when the input is rejected or a check
fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .alexander import (
    alexander_polynomial,
    build_matrix_stencil,
    elementary_ideal,
    matrix_of,
    oracle_matrix,
    support_chords,
    theorem1_check,
)
from .catalog import CatalogError, catalog_get
from .chords import ChordDiagram, DiagramError, format_diagram, parse_diagram, to_dot, to_svg
from .ideal import IdealHandle, WorkLimitExceeded
from .knots import (
    TanglePresentation,
    chord_to_knot,
    cut_to_tangle,
    duplicate,
    format_knot,
    format_tangle,
    parse_knot,
    parse_tangle,
)
from .laurent import format_laurent
from .rational import RationalError, even_cf, parse_fraction, rational_diagram

log = logging.getLogger("matchedkit")


class CliError(Exception):
    pass


def _parse_text(text: str):
    for line in text.splitlines():
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "cd":
            return parse_diagram(text)
        break
    if any(line.split("#", 1)[0].split()[:1] == ["boundary"] for line in text.splitlines()):
        return parse_tangle(text)
    return parse_knot(text)


def _load(args) -> object:
    if getattr(args, "catalog", None):
        return catalog_get(args.catalog).payload
    if not getattr(args, "file", None):
        raise CliError("give an input with --file <path> or --catalog <name>")
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return _parse_text(text)


def _serialize(obj) -> str:
    if isinstance(obj, ChordDiagram):
        return format_diagram(obj)
    if isinstance(obj, TanglePresentation):
        return format_tangle(obj)
    return format_knot(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _ideal_text(ideal: IdealHandle) -> str:
    gens = ideal.minimal_generators()
    return "<" + ", ".join(format_laurent(g) for g in gens) + ">"


def _need_chords(obj) -> ChordDiagram:
    if not isinstance(obj, ChordDiagram):
        raise CliError("this command needs a chord diagram file")
    return obj


# subcommands

def cmd_ideal(args) -> int:
    obj = _load(args)
    ideal = elementary_ideal(matrix_of(obj), args.k, jobs=args.jobs)
    verdict = "TRIVIAL" if ideal.is_trivial() else ("ZERO" if ideal.is_zero else "NONTRIVIAL")
    print(f"E_{args.k} = {_ideal_text(ideal)} : {verdict}")
    if args.show_generators:
        for line in ideal.basis_text():
            print(f"  {line}")
    return 0


def cmd_alexander(args) -> int:
    obj = _load(args)
    q = matrix_of(obj)
    if args.matrix:
        sys.stdout.write(q.format_grid())
    print(f"Delta = {format_laurent(alexander_polynomial(q))}")
    return 0


def cmd_support(args) -> int:
    d = _need_chords(_load(args))
    ids = support_chords(d)
    print("support chords: " + (" ".join(str(i) for i in ids) if ids else "none"))
    return 0


def cmd_theorem1(args) -> int:
    obj = _load(args)
    if isinstance(obj, TanglePresentation):
        obj = obj.diagram
    rep = theorem1_check(obj, args.k, jobs=args.jobs)
    gens = ", ".join(format_laurent(g) for g in rep.generators)
    if rep.trivial:
        print(f"E_{args.k} = <{gens}> : TRIVIAL")
        return 0
    print(f"E_{args.k} = <{gens}> : NONTRIVIAL, t + 1 {'in' if rep.contains_t_plus_1 else 'not in'} E_{args.k}")
    if rep.contains_t_plus_1:
        print("FAIL: a proper elementary ideal of a matched diagram contains t + 1", file=sys.stderr)
        return 1
    return 0


def cmd_rational(args) -> int:
    p, q = parse_fraction(args.fraction)
    cf = even_cf(p, q)
    print(str(cf))
    d, cert = rational_diagram(cf)
    text = format_diagram(d)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} ({d.n} chords, support chord {cert})")
    else:
        sys.stdout.write(text)
    return 0


def cmd_duplicate(args) -> int:
    obj = _load(args)
    if isinstance(obj, ChordDiagram):
        obj = chord_to_knot(obj)
    if args.cuts:
        k = obj.diagram if isinstance(obj, TanglePresentation) else obj
        arcs = [_arc(a) for a in args.cuts.split(",")]
        obj = cut_to_tangle(k, arcs)
    if not isinstance(obj, TanglePresentation):
        raise CliError("give --cuts or a tangle file with a boundary line")
    params = [int(x) for x in args.params.split(",")] if args.params else []
    result = duplicate(obj, params)
    _emit(format_knot(result), args.out)
    return 0


def _arc(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def cmd_catalog(args) -> int:
    entry = catalog_get(args.name)
    _emit(f"# {entry.name}: {entry.provenance}\n" + _serialize(entry.payload), args.out)
    return 0


def cmd_graph(args) -> int:
    d = _need_chords(_load(args))
    _emit(to_dot(d), args.out)
    return 0


def cmd_render(args) -> int:
    d = _need_chords(_load(args))
    _emit(to_svg(d), args.out)
    return 0


def cmd_oracle_check(args) -> int:
    d = _need_chords(_load(args))
    stencil = build_matrix_stencil(d)
    oracle = oracle_matrix(d)
    ok = True
    for m in args.m:
        a = elementary_ideal(stencil, m, jobs=args.jobs)
        b = elementary_ideal(oracle, m, jobs=args.jobs)
        same = a == b
        ok &= same
        print(f"E_{m}: stencil {_ideal_text(a)}  wirtinger {_ideal_text(b)}  {'AGREE' if same else 'DIFFER'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchedkit",
        description="Elementary ideals of matched knot diagrams and chord diagrams.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--file", help="chord diagram, knot or tangle file")
        src.add_argument("--catalog", metavar="NAME", help="use a catalog entry instead of a file")
        return p

    def with_jobs(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes for minor enumeration")
        return p

    p = with_jobs(with_input(sub.add_parser("ideal", help="compute an elementary ideal")))
    p.add_argument("-k", type=int, required=True, help="ideal index")
    p.add_argument("--show-generators", action="store_true", help="also print the Groebner basis")
    p.set_defaults(func=cmd_ideal)

    p = with_input(sub.add_parser("alexander", help="Alexander polynomial"))
    p.add_argument("--matrix", action="store_true", help="print the presentation matrix first")
    p.set_defaults(func=cmd_alexander)

    p = with_input(sub.add_parser("support", help="list support chords of a chord diagram"))
    p.set_defaults(func=cmd_support)

    p = with_jobs(with_input(sub.add_parser("theorem1", help="check that a proper E_k avoids t + 1")))
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("rational", help="even continued fraction and chord diagram of p/q")
    p.add_argument("fraction", help="p/q with p even, q odd, |p/q| < 1")
    p.add_argument("--out", help="write the chord diagram here")
    p.set_defaults(func=cmd_rational)

    p = with_input(sub.add_parser("duplicate", help="union of a tangle with its mirror image"))
    p.add_argument("--cuts", help="comma-separated boundary arcs b0,b1,...")
    p.add_argument("--params", default="", help="comma-separated twist parameters n1,...")
    p.add_argument("--out")
    p.set_defaults(func=cmd_duplicate)

    p = sub.add_parser("catalog", help="emit a named diagram")
    p.add_argument("name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = with_input(sub.add_parser("graph", help="intersection graph"))
    p.add_argument("--dot", action="store_true", default=True, help="Graphviz output (the only format)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = with_input(sub.add_parser("render", help="draw a chord diagram"))
    p.add_argument("--svg", action="store_true", default=True, help="SVG output (the only format)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = with_jobs(with_input(sub.add_parser("oracle-check", help="compare stencil and Fox-calculus ideals")))
    p.add_argument("-m", type=int, nargs="+", default=[1, 2, 3], help="ideal indices to compare")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, DiagramError, RationalError, CatalogError, WorkLimitExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
