"""Text file formats for the four spec kinds.

Morphic files are line based, ``#`` starts a comment anywhere:

    start <letter>
    rule <letter> -> <letter>*      # empty right side means the empty word
    code <letter> -> <letter>       # omitted letters code to themselves

Letters are single characters from [a-zA-Z0-9], or ``glyph_counter``
tokens as written by the converters, so converted output parses back in.

Periodic files: optional ``prefix <string>`` line, required
``period <string>`` line.  Multilinear files: optional ``prefix`` line,
then one ``term <body> <slope> <offset>`` line per factor.  Zigzag files
hold exactly one shorthand expression (comments allowed on their own
lines).

A file's kind is detected from its keywords (start/rule -> morphic,
period -> periodic, term -> multilinear, anything else -> zigzag) and can
always be forced explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    NotProlongable,
    ParseError,
    SpecFileError,
    StartLetterMissing,
    UnknownLetter,
    UnprintableLetter,
)
from .morphism import Coding, Letter, MorphicSpec, Morphism, Word, word
from .transforms import MultilinearSpec, MultilinearTerm, PeriodicSpec
from .zigzag import ZigzagSpec, parse_shorthand, print_shorthand

__all__ = [
    "SpecBody",
    "SpecFile",
    "KINDS",
    "detect_kind",
    "parse_spec_text",
    "parse_spec_file",
    "render_spec",
    "kind_of",
]

SpecBody = Union[MorphicSpec, ZigzagSpec, PeriodicSpec, MultilinearSpec]

KINDS = ("morphic", "zigzag", "multilinear", "periodic")

_LETTER_TOKEN = re.compile(r"^([a-zA-Z0-9])(?:_([0-9]+))?$")
_STRING_TOKEN = re.compile(r"^[a-zA-Z0-9]+$")


@dataclass(frozen=True)
class SpecFile:
    """A parsed spec plus where it came from, for diagnostics."""

    kind: str
    body: SpecBody
    path: str | None = None


def kind_of(body: SpecBody) -> str:
    if isinstance(body, MorphicSpec):
        return "morphic"
    if isinstance(body, ZigzagSpec):
        return "zigzag"
    if isinstance(body, MultilinearSpec):
        return "multilinear"
    if isinstance(body, PeriodicSpec):
        return "periodic"
    raise TypeError(f"not a spec body: {body!r}")


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(1-based line number, content) with comments and blanks dropped."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def detect_kind(text: str) -> str:
    for _, line in _content_lines(text):
        keyword = line.split(None, 1)[0]
        if keyword in ("start", "rule", "code"):
            return "morphic"
        if keyword == "period":
            return "periodic"
        if keyword == "term":
            return "multilinear"
    return "zigzag"


def _parse_letter(token: str, path: str | None, line: int) -> Letter:
    m = _LETTER_TOKEN.match(token)
    if not m:
        raise SpecFileError(f"bad letter token {token!r}", path, line)
    glyph, tag = m.group(1), m.group(2)
    return Letter(glyph, int(tag) if tag else 0)


def _parse_string(token: str, path: str | None, line: int) -> Word:
    if not _STRING_TOKEN.match(token):
        raise SpecFileError(f"bad string token {token!r}", path, line)
    return word(token)


def _parse_morphic(text: str, path: str | None) -> MorphicSpec:
    start: Letter | None = None
    start_line = 0
    rule_tokens: list[tuple[int, Letter, list[str]]] = []
    code_tokens: list[tuple[int, Letter, str]] = []
    for line_no, line in _content_lines(text):
        fields = line.split()
        keyword = fields[0]
        if keyword == "start":
            if len(fields) != 2:
                raise SpecFileError("start takes exactly one letter", path, line_no)
            if start is not None:
                raise SpecFileError("duplicate start line", path, line_no)
            start = _parse_letter(fields[1], path, line_no)
            start_line = line_no
        elif keyword == "rule":
            if len(fields) < 3 or fields[2] != "->":
                raise SpecFileError("expected: rule <letter> -> <letters>", path, line_no)
            source = _parse_letter(fields[1], path, line_no)
            if any(source == s for _, s, _ in rule_tokens):
                raise SpecFileError(f"duplicate rule for {fields[1]}", path, line_no)
            rule_tokens.append((line_no, source, fields[3:]))
        elif keyword == "code":
            if len(fields) != 4 or fields[2] != "->":
                raise SpecFileError("expected: code <letter> -> <letter>", path, line_no)
            source = _parse_letter(fields[1], path, line_no)
            if any(source == s for _, s, _ in code_tokens):
                raise SpecFileError(f"duplicate code for {fields[1]}", path, line_no)
            code_tokens.append((line_no, source, fields[3]))
        else:
            raise SpecFileError(f"unknown keyword {keyword!r}", path, line_no)
    if not rule_tokens:
        raise SpecFileError("a morphic file needs at least one rule", path, 1)
    domain = {source for _, source, _ in rule_tokens}
    images: dict[Letter, Word] = {}
    for line_no, source, tokens in rule_tokens:
        img = []
        for token in tokens:
            target = _parse_letter(token, path, line_no)
            if target not in domain:
                raise SpecFileError(
                    f"image letter {token!r} has no rule", path, line_no
                )
            img.append(target)
        images[source] = tuple(img)
    coding_images: dict[Letter, Word] = {c: (c,) for c in domain}
    for line_no, source, token in code_tokens:
        if source not in domain:
            raise SpecFileError(
                f"code source {source.token!r} has no rule", path, line_no
            )
        coding_images[source] = (_parse_letter(token, path, line_no),)
    for img in list(coding_images.values()):
        coding_images.setdefault(img[0], (img[0],))
    if start is None:
        raise StartLetterMissing("missing start line", path)
    if start not in domain:
        raise SpecFileError(f"start letter {start.token!r} has no rule", path, start_line)
    try:
        return MorphicSpec(Morphism(images), start, Coding(coding_images))
    except (NotProlongable, UnknownLetter, ValueError) as exc:
        raise SpecFileError(str(exc), path) from exc


def _parse_periodic(text: str, path: str | None) -> PeriodicSpec:
    prefix: Word = ()
    period: Word | None = None
    for line_no, line in _content_lines(text):
        fields = line.split()
        if fields[0] == "prefix" and len(fields) == 2:
            prefix = _parse_string(fields[1], path, line_no)
        elif fields[0] == "period" and len(fields) == 2:
            if period is not None:
                raise SpecFileError("duplicate period line", path, line_no)
            period = _parse_string(fields[1], path, line_no)
        else:
            raise SpecFileError(f"bad line in periodic file: {line!r}", path, line_no)
    if period is None:
        raise SpecFileError("a periodic file needs a period line", path, 1)
    return PeriodicSpec(prefix, period)


def _parse_multilinear(text: str, path: str | None) -> MultilinearSpec:
    prefix: Word = ()
    terms: list[MultilinearTerm] = []
    for line_no, line in _content_lines(text):
        fields = line.split()
        if fields[0] == "prefix" and len(fields) == 2:
            prefix = _parse_string(fields[1], path, line_no)
        elif fields[0] == "term":
            if len(fields) != 4:
                raise SpecFileError(
                    "expected: term <body> <slope> <offset>", path, line_no
                )
            body = _parse_string(fields[1], path, line_no)
            try:
                slope, offset = int(fields[2]), int(fields[3])
            except ValueError:
                raise SpecFileError("slope and offset must be integers", path, line_no)
            try:
                terms.append(MultilinearTerm(body, slope, offset))
            except ValueError as exc:
                raise SpecFileError(str(exc), path, line_no) from exc
        else:
            raise SpecFileError(
                f"bad line in multilinear file: {line!r}", path, line_no
            )
    if not terms:
        raise SpecFileError("a multilinear file needs at least one term", path, 1)
    return MultilinearSpec(prefix, tuple(terms))


def _parse_zigzag(text: str, path: str | None) -> ZigzagSpec:
    body = " ".join(line for _, line in _content_lines(text))
    try:
        return parse_shorthand(body)
    except ParseError as exc:
        raise SpecFileError(str(exc), path) from exc


def parse_spec_text(
    text: str, kind: str | None = None, path: str | None = None
) -> SpecFile:
    if kind is None:
        kind = detect_kind(text)
    if kind == "morphic":
        body: SpecBody = _parse_morphic(text, path)
    elif kind == "periodic":
        body = _parse_periodic(text, path)
    elif kind == "multilinear":
        body = _parse_multilinear(text, path)
    elif kind == "zigzag":
        body = _parse_zigzag(text, path)
    else:
        raise ValueError(f"unknown spec kind {kind!r}")
    return SpecFile(kind, body, path)


def parse_spec_file(path: str, kind: str | None = None) -> SpecFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecFileError(str(exc), path) from exc
    return parse_spec_text(text, kind, path)


def _render_morphic(spec: MorphicSpec) -> str:
    lines = [f"start {spec.start.token}"]
    for c, img in spec.morphism.rules():
        right = " ".join(d.token for d in img)
        lines.append(f"rule {c.token} ->{' ' + right if right else ''}")
    for c in sorted(spec.morphism.domain):
        target = spec.coding.of(c)
        if target != c:
            lines.append(f"code {c.token} -> {target.token}")
    return "\n".join(lines) + "\n"


def _plain_string(w: Word) -> str:
    # the string tokens of these formats can only express untagged letters
    for c in w:
        if c.tag != 0:
            raise UnprintableLetter(f"letter {c.token} cannot be written as a string")
    return "".join(c.glyph for c in w)


def _render_periodic(spec: PeriodicSpec) -> str:
    lines = []
    if spec.prefix:
        lines.append(f"prefix {_plain_string(spec.prefix)}")
    lines.append(f"period {_plain_string(spec.period)}")
    return "\n".join(lines) + "\n"


def _render_multilinear(spec: MultilinearSpec) -> str:
    lines = []
    if spec.prefix:
        lines.append(f"prefix {_plain_string(spec.prefix)}")
    for term in spec.terms:
        lines.append(f"term {_plain_string(term.body)} {term.slope} {term.offset}")
    return "\n".join(lines) + "\n"


def render_spec(body: SpecBody) -> str:
    """Canonical text for a spec; parsing it back gives the same word."""
    if isinstance(body, MorphicSpec):
        return _render_morphic(body)
    if isinstance(body, ZigzagSpec):
        return print_shorthand(body) + "\n"
    if isinstance(body, PeriodicSpec):
        return _render_periodic(body)
    if isinstance(body, MultilinearSpec):
        return _render_multilinear(body)
    raise TypeError(f"not a spec body: {body!r}")
