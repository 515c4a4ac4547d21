"""Command-line front end.

Subcommands: ``analyze`` (per-letter report for a morphic file),
``expand`` (print a prefix of the represented word), ``convert``
(translate between spec kinds, verifying by prefix comparison), and
``equal`` (compare two specs on a prefix).

Exit codes are a stable contract for scripting: 0 success, 1 semantic
inequality, 2 parse error, 3 precondition violation (including a missing
start letter), 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import (
    DepthMismatch,
    ExponentialGrowth,
    InternalConstructionError,
    NormalizationNotFound,
    PreconditionViolation,
    SpecFileError,
    StartLetterMissing,
    UnprintableLetter,
)
from .morphism import MorphicSpec, glyphs
from .specfiles import KINDS, SpecBody, kind_of, parse_spec_file, render_spec
from .transforms import (
    morphic_to_zigzag,
    multilinear_to_zigzag,
    periodic_to_zigzag,
    zigzag_to_morphic,
    zigzag_to_multilinear,
    zigzag_to_periodic,
)
from .verify import growth_report, prefix_equal, prefix_of
from .zigzag import ZigzagSpec

OK, UNEQUAL, PARSE_ERROR, PRECONDITION, INTERNAL = 0, 1, 2, 3, 4


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _load(path: str, kind: str | None) -> SpecBody:
    return parse_spec_file(path, kind).body


def cmd_analyze(args: argparse.Namespace) -> int:
    body = _load(args.file, args.kind or "morphic")
    assert isinstance(body, MorphicSpec)
    h = body.morphism
    table = h.rank_table
    print(f"alphabet size: {len(h.domain)}")
    print("letter  mortal  recursive  rank  level")
    for c in h.letters:
        rank = table.rank(c)
        level = table.level(c)
        print(
            f"{c.token:7s} {'yes' if c in table.mortal else 'no':7s}"
            f" {'yes' if c in table.recursive else 'no':10s}"
            f" {rank if rank is not None else '-':>4}"
            f" {level if level is not None else '-':>5}"
        )
    print(f"start letter: {body.start.token}")
    print(f"prolongable: {'yes' if h.is_prolongable(body.start) else 'no'}")
    try:
        print(f"normalization power: {h.normalize().power}")
    except NormalizationNotFound as exc:
        print(f"normalization power: not found ({exc})")
    report = growth_report(h, (body.start,))
    print(f"growth of start letter: {report}")
    return OK


def cmd_expand(args: argparse.Namespace) -> int:
    body = _load(args.file, args.kind)
    if args.length < 0:
        return _fail(PRECONDITION, "length must be nonnegative")
    text = glyphs(prefix_of(body, args.length))
    if text:
        sys.stdout.write(text + "\n")
    return OK


_TO_ZIGZAG = {
    "zigzag": lambda body: body,
    "morphic": morphic_to_zigzag,
    "periodic": periodic_to_zigzag,
    "multilinear": multilinear_to_zigzag,
}

_FROM_ZIGZAG = {
    "zigzag": lambda spec: spec,
    "morphic": zigzag_to_morphic,
    "periodic": zigzag_to_periodic,
    "multilinear": zigzag_to_multilinear,
}


def convert_body(body: SpecBody, target: str) -> SpecBody:
    """Route any conversion through the zigzag form."""
    source = kind_of(body)
    if source == target:
        return body
    as_zigzag: ZigzagSpec = _TO_ZIGZAG[source](body)
    return _FROM_ZIGZAG[target](as_zigzag)


def cmd_convert(args: argparse.Namespace) -> int:
    body = _load(args.file, args.kind)
    result = convert_body(body, args.to)
    comparison = prefix_equal(body, result, args.verify_n)
    if not comparison.equal:
        return _fail(INTERNAL, f"internal verification failure: {comparison}")
    sys.stdout.write(render_spec(result))
    return OK


def cmd_equal(args: argparse.Namespace) -> int:
    a = _load(args.file_a, args.kind_a)
    b = _load(args.file_b, args.kind_b)
    comparison = prefix_equal(a, b, args.length)
    if comparison.equal:
        return OK
    return _fail(UNEQUAL, f"prefix {comparison}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zigzagwords",
        description="Analyze, expand, and convert representations of "
        "infinite words with polynomial growth.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="per-letter report for a morphic file")
    analyze.add_argument("file")
    analyze.add_argument("--kind", choices=("morphic",), default=None)
    analyze.set_defaults(handler=cmd_analyze)

    expand = sub.add_parser("expand", help="print a prefix of the word")
    expand.add_argument("file")
    expand.add_argument("-n", "--length", type=int, required=True)
    expand.add_argument("--kind", choices=KINDS, default=None)
    expand.set_defaults(handler=cmd_expand)

    convert = sub.add_parser("convert", help="convert between spec kinds")
    convert.add_argument("file")
    convert.add_argument("--to", choices=KINDS, required=True)
    convert.add_argument("--kind", choices=KINDS, default=None)
    convert.add_argument("--verify-n", type=int, default=1000)
    convert.set_defaults(handler=cmd_convert)

    equal = sub.add_parser("equal", help="compare two specs on a prefix")
    equal.add_argument("file_a")
    equal.add_argument("file_b")
    equal.add_argument("-n", "--length", type=int, default=1000)
    equal.add_argument("--kind-a", choices=KINDS, default=None)
    equal.add_argument("--kind-b", choices=KINDS, default=None)
    equal.set_defaults(handler=cmd_equal)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except StartLetterMissing as exc:
        return _fail(PRECONDITION, str(exc))
    except SpecFileError as exc:
        return _fail(PARSE_ERROR, str(exc))
    except ExponentialGrowth as exc:
        return _fail(PRECONDITION, f"exponential growth: {exc}")
    except (DepthMismatch, PreconditionViolation, NormalizationNotFound) as exc:
        return _fail(PRECONDITION, str(exc))
    except UnprintableLetter as exc:
        return _fail(PRECONDITION, str(exc))
    except InternalConstructionError as exc:
        return _fail(INTERNAL, f"internal verification failure: {exc}")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
