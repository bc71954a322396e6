"""Command line entry point.

Exit status: 0 success, 1 parse or validation error, 2 incompatible
filtrations, 3 internal consistency violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import report as rep
from .bundlefile import load_bundle
from .errors import InputError, ToricError
from .klyachko import ToricBundle
from .parliament import parliament, splittings
from .randgen import FANS, seeded_bundle
from .svg import render_svg

COMMANDS = ("validate", "report", "parliament", "sections", "positivity", "restrict",
            "cohomology")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "incompatible"
    def error(self, message: str):
        raise InputError(f"usage: {message}")


def _character(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _join_character_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-1,0" as an option string; glue it to its flag instead
    out = []
    it = iter(argv)
    for arg in it:
        if arg == "--character":
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toric-parliament",
                     description="Parliaments of polytopes and positivity of toric vector bundles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="bundle file (JSON)")
    source.add_argument("--random-fan", choices=FANS,
                        help="use a seeded random bundle on this fan instead of a file")
    common.add_argument("--seed", type=int, default=0, help="seed for --random-fan")
    common.add_argument("--max-rank", type=int, default=3, help="rank bound for --random-fan")
    common.add_argument("--output", default="-", help="output file, '-' for stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    sub.add_parser("validate", parents=[common], help="check the fan and compatibility")
    p = sub.add_parser("report", parents=[common], help="every analysis in one record")
    p.add_argument("--jets", type=int, default=1, help="largest k for k-jet separation")
    p.add_argument("--no-cohomology", action="store_true", help="skip the Čech computation")
    p.add_argument("--svg", help="also draw the parliament to this file (rank-2 lattice)")
    p.add_argument("--figures-dir", help="also draw the parliament into this directory")
    p = sub.add_parser("parliament", parents=[common], help="polytopes and cone splittings")
    p.add_argument("--svg", help="draw the parliament to this file (rank-2 lattice)")
    sub.add_parser("sections", parents=[common], help="global sections by character")
    p = sub.add_parser("positivity", parents=[common], help="generation, jets, ampleness")
    p.add_argument("--jets", type=int, default=1, help="largest k for k-jet separation")
    sub.add_parser("restrict", parents=[common], help="splitting type on each invariant curve")
    p = sub.add_parser("cohomology", parents=[common], help="Čech cohomology by character")
    p.add_argument("--character", type=_character, help="single character, e.g. '-1,0'")
    p.add_argument("--euler", action="store_true", help="print the Euler characteristic")
    return parser


def _bundle(args) -> ToricBundle:
    if args.input is not None:
        return load_bundle(args.input)
    return seeded_bundle(args.random_fan, args.seed, args.max_rank)


def _write_svg(bundle: ToricBundle, path: Path, highlights=()) -> None:
    bundle.fan.require_valid()
    if bundle.d != 2:
        raise InputError("SVG output needs a rank-2 lattice", lattice_rank=bundle.d)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(parliament(bundle), splittings(bundle), highlights),
                    encoding="utf-8")


def _figure_name(bundle: ToricBundle) -> str:
    stem = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in (bundle.name or "bundle"))
    return f"{stem}_parliament.svg"


def dispatch(args) -> dict:
    bundle = _bundle(args)
    if args.command == "validate":
        return rep.validate_record(bundle)
    bundle.fan.require_valid()
    if args.command == "report":
        record = rep.full_report(bundle, max_jet=args.jets,
                                 with_cohomology=not args.no_cohomology)
        targets = []
        if args.svg:
            targets.append(Path(args.svg))
        if args.figures_dir:
            targets.append(Path(args.figures_dir) / _figure_name(bundle))
        if targets:
            highlights = [] if args.no_cohomology else rep.higher_cohomology_characters(bundle)
            for target in targets:
                _write_svg(bundle, target, highlights)
            record["figures"] = [str(t) for t in targets]
        return record
    if args.command == "parliament":
        record = rep.parliament_record(bundle)
        if args.svg:
            _write_svg(bundle, Path(args.svg))
            record["figures"] = [args.svg]
        return record
    if args.command == "sections":
        return rep.sections_record(bundle)
    if args.command == "positivity":
        if args.jets < 0:
            raise InputError("--jets must be nonnegative")
        from .positivity import positivity_report
        return rep.positivity_record(positivity_report(bundle, args.jets))
    if args.command == "restrict":
        return {"walls": rep.restrictions_record(bundle)}
    if args.command == "cohomology":
        if args.character is not None:
            if len(args.character) != bundle.d:
                raise InputError(f"character needs {bundle.d} entries")
            return rep.character_record(bundle, args.character)
        if args.euler:
            from .cohomology import euler_characteristic
            poly = euler_characteristic(bundle)
            return {"euler_characteristic": str(poly),
                    "terms": [{"character": list(u), "coefficient": c} for u, c in poly.terms]}
        return rep.cohomology_record(bundle, euler=False)
    raise InputError(f"unknown command {args.command!r}")


def _emit(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def _render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2, ensure_ascii=False) + "\n"
    return rep.to_text(record)


def main(argv: Sequence[str] | None = None) -> int:
    fmt = "json"
    try:
        argv = sys.argv[1:] if argv is None else argv
        args = build_parser().parse_args(_join_character_values(argv))
        fmt = args.format
        record = dispatch(args)
        _emit(_render(record, fmt), args.output)
        return 0
    except ToricError as exc:
        if fmt == "json":
            sys.stdout.write(json.dumps({"error": exc.to_json()}, indent=2, ensure_ascii=False,
                                        default=str) + "\n")
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return exc.exit_status


if __name__ == "__main__":
    sys.exit(main())
