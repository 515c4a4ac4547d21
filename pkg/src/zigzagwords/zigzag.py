"""Zigzag representations: term lists, block evaluation, and shorthand text.

A zigzag spec is a (possibly empty) prefix followed by a nonempty list of
terms.  Block i of the represented word concatenates, per term: the payload
of a static term; blocks 1..i of a forward term's sublist; blocks i..1 of a
backward term's sublist.  The word is the prefix followed by block 1,
block 2, ...  Every block is nonempty, so the word is infinite.

The shorthand grammar (whitespace between items is ignored):

    spec   := [ prefix ":" ] items
    prefix := STRING
    items  := item+
    item   := STRING | "(" items ")" | "F(" items ")" | "B(" items ")"
    STRING := one or more of [a-zA-Z0-9]

"F" and "B" are ordinary letters except immediately before "(", where the
keyword reading wins.  A plain "(...)" group may contain only strings; it
is read as a forward term (at depth 1 forward and backward products agree
block for block, so nothing is lost).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, islice
from typing import Iterator, Union

from .errors import ParseError, UnprintableLetter
from .morphism import Letter, Word, glyphs, word

__all__ = [
    "Static",
    "Forward",
    "Backward",
    "ZigzagTerm",
    "ZigzagList",
    "ZigzagSpec",
    "term_depth",
    "depth",
    "block",
    "blocks",
    "expand_zigzag",
    "parse_shorthand",
    "print_shorthand",
]


@dataclass(frozen=True)
class Static:
    """A term that contributes the same nonempty string to every block."""

    payload: Word

    def __post_init__(self):
        if not self.payload:
            raise ValueError("static payload must be nonempty")


@dataclass(frozen=True)
class Forward:
    """A term contributing blocks 1..i of its sublist, in that order."""

    items: "ZigzagList"

    def __post_init__(self):
        if not self.items:
            raise ValueError("forward term needs a nonempty list")


@dataclass(frozen=True)
class Backward:
    """A term contributing blocks i..1 of its sublist, newest first."""

    items: "ZigzagList"

    def __post_init__(self):
        if not self.items:
            raise ValueError("backward term needs a nonempty list")


ZigzagTerm = Union[Static, Forward, Backward]
ZigzagList = tuple[ZigzagTerm, ...]


@dataclass(frozen=True)
class ZigzagSpec:
    """Prefix plus term list; represents an infinite word."""

    prefix: Word
    items: ZigzagList

    def __post_init__(self):
        if not self.items:
            raise ValueError("a zigzag spec needs at least one term")


def term_depth(term: ZigzagTerm) -> int:
    if isinstance(term, Static):
        return 1
    return depth(term.items) + 1


def depth(items: ZigzagList) -> int:
    return max(term_depth(t) for t in items)


def block(items: ZigzagList, i: int) -> Word:
    """The i-th (1-based) block of the product represented by ``items``."""
    if i < 1:
        raise ValueError("block index starts at 1")
    parts: list[Letter] = []
    for term in items:
        if isinstance(term, Static):
            parts.extend(term.payload)
        elif isinstance(term, Forward):
            for j in range(1, i + 1):
                parts.extend(block(term.items, j))
        else:
            for j in range(i, 0, -1):
                parts.extend(block(term.items, j))
    return tuple(parts)


def blocks(items: ZigzagList) -> Iterator[Word]:
    for i in count(1):
        yield block(items, i)


def expand_zigzag(spec: ZigzagSpec, n: int) -> Word:
    """First ``n`` letters; generates block by block, no further."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")

    def letters() -> Iterator[Letter]:
        yield from spec.prefix
        for blk in blocks(spec.items):
            yield from blk

    return tuple(islice(letters(), n))


# --- shorthand text ---------------------------------------------------------

_LETTERS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens are (kind, value, offset); kinds: str, colon, lparen(F/B/plain), rparen."""
    out: list[tuple[str, str, int]] = []
    buf: list[str] = []
    buf_start = 0

    def flush() -> None:
        if buf:
            out.append(("str", "".join(buf), buf_start))
            buf.clear()

    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "FB" and i + 1 < len(text) and text[i + 1] == "(":
            flush()
            out.append(("flparen" if ch == "F" else "blparen", ch + "(", i))
            i += 2
        elif ch in _LETTERS:
            if not buf:
                buf_start = i
            buf.append(ch)
            i += 1
        elif ch.isspace():
            flush()
            i += 1
        elif ch == ":":
            flush()
            out.append(("colon", ch, i))
            i += 1
        elif ch == "(":
            flush()
            out.append(("lparen", ch, i))
            i += 1
        elif ch == ")":
            flush()
            out.append(("rparen", ch, i))
            i += 1
        else:
            raise ParseError(f"illegal character {ch!r}", i)
    flush()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def parse_spec(self) -> ZigzagSpec:
        if not self.tokens:
            raise ParseError("empty input", 0)
        prefix: Word = ()
        if (
            len(self.tokens) >= 2
            and self.tokens[0][0] == "str"
            and self.tokens[1][0] == "colon"
        ):
            prefix = word(self.tokens[0][1])
            self.pos = 2
        items = self.parse_items(closing=None)
        return ZigzagSpec(prefix, items)

    def parse_items(self, closing: int | None) -> ZigzagList:
        """Parse item+; ``closing`` is the offset of the open paren, if any."""
        terms: list[ZigzagTerm] = []
        while True:
            tok = self.peek()
            if tok is None:
                if closing is not None:
                    raise ParseError(
                        "unbalanced parentheses: expected ')'", len(self.text)
                    )
                break
            if tok[0] == "rparen":
                if closing is None:
                    raise ParseError("unmatched ')'", tok[2])
                break
            terms.append(self.parse_item())
        if not terms:
            at = self.peek()[2] if self.peek() else len(self.text)
            if closing is not None:
                raise ParseError("empty group", closing)
            raise ParseError("expected at least one item", at)
        return tuple(terms)

    def parse_item(self) -> ZigzagTerm:
        kind, value, offset = self.take()
        if kind == "str":
            return Static(word(value))
        if kind == "colon":
            raise ParseError("unexpected ':'", offset)
        if kind == "rparen":
            raise ParseError("unmatched ')'", offset)
        inner = self.parse_items(closing=offset)
        self.take()  # the matching rparen, presence ensured by parse_items
        if kind == "lparen":
            if depth(inner) > 1:
                raise ParseError(
                    "a plain (...) group may contain only strings", offset
                )
            return Forward(inner)
        if kind == "flparen":
            return Forward(inner)
        return Backward(inner)


def parse_shorthand(text: str) -> ZigzagSpec:
    """Parse shorthand text into a spec; plain groups come out as forward."""
    parser = _Parser(text)
    spec = parser.parse_spec()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return spec


def _payload_text(payload: Word) -> str:
    for c in payload:
        if c.tag != 0:
            raise UnprintableLetter(
                f"letter {c.token} cannot be written in shorthand"
            )
    return glyphs(payload)


def _join(parts: list[str]) -> str:
    # "F(" and "B(" are keywords, so a separator is needed exactly when a
    # string part ends in F or B right before a plain "(".
    out: list[str] = []
    for part in parts:
        if out and out[-1][-1] in "FB" and part[0] == "(":
            out.append(" ")
        out.append(part)
    return "".join(out)


def _term_text(term: ZigzagTerm) -> str:
    if isinstance(term, Static):
        return _payload_text(term.payload)
    inner = _join([_term_text(t) for t in term.items])
    if depth(term.items) == 1:
        return f"({inner})"
    keyword = "F" if isinstance(term, Forward) else "B"
    return f"{keyword}({inner})"


def print_shorthand(spec: ZigzagSpec) -> str:
    """Canonical shorthand: depth-1 F/B terms print as plain parentheses."""
    body = _join([_term_text(t) for t in spec.items])
    if spec.prefix:
        return f"{_payload_text(spec.prefix)}:{body}"
    return body
