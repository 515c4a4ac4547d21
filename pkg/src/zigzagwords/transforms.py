"""Conversions between zigzag, morphic, periodic, and multilinear forms.

Each direction follows a constructive recipe and spot-checks itself as it
goes: the list-to-morphism construction compares coded iterates against
zigzag blocks, and the morphism-to-list construction compares blocks
against iterates, both for a configurable number of steps.  A failed
check raises :class:`InternalConstructionError`, which always means a bug
here rather than bad input.

Synthetic letters are minted from per-glyph counters local to each
conversion, so identical inputs produce identical outputs and the pieces
assembled from different terms can never collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DepthMismatch,
    ExponentialGrowth,
    InternalConstructionError,
    PreconditionViolation,
)
from .morphism import (
    Coding,
    Letter,
    MorphicSpec,
    Morphism,
    NormalizedMorphism,
    Word,
    glyphs,
)
from .zigzag import (
    Backward,
    Forward,
    Static,
    ZigzagList,
    ZigzagSpec,
    ZigzagTerm,
    block,
    depth,
)

__all__ = [
    "PeriodicSpec",
    "MultilinearTerm",
    "MultilinearSpec",
    "list_to_morphism",
    "zigzag_to_morphic",
    "morphism_to_list",
    "morphic_to_zigzag",
    "zigzag_to_periodic",
    "periodic_to_zigzag",
    "multilinear_to_zigzag",
    "zigzag_to_multilinear",
]

CHECK_STEPS = 8


@dataclass(frozen=True)
class PeriodicSpec:
    """An ultimately periodic word: prefix followed by the period forever."""

    prefix: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")


@dataclass(frozen=True)
class MultilinearTerm:
    """One factor: ``body`` repeated slope*n + offset times in block n."""

    body: Word
    slope: int
    offset: int

    def __post_init__(self):
        if not self.body:
            raise ValueError("term body must be nonempty")
        if self.slope < 0 or self.offset < 0:
            raise ValueError("slope and offset must be nonnegative")
        if self.slope + self.offset == 0:
            raise ValueError("slope and offset cannot both be zero")


@dataclass(frozen=True)
class MultilinearSpec:
    """Prefix plus per-block linear repetitions, blocks indexed n = 0, 1, ..."""

    prefix: Word
    terms: tuple[MultilinearTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a multilinear spec needs at least one term")


class _Allocator:
    """Deterministic fresh-letter source: one counter per glyph."""

    def __init__(self):
        self._counters: dict[str, int] = {}

    def fresh(self, glyph: str) -> Letter:
        nxt = self._counters.get(glyph, 0) + 1
        self._counters[glyph] = nxt
        return Letter(glyph, nxt)


def _build_from_list(
    items: ZigzagList, alloc: _Allocator
) -> tuple[Word, dict[Letter, Word], dict[Letter, Letter]]:
    """Recursive core of the list-to-morphism construction.

    Returns (w, images, code) where all letters of w and of the image
    words are freshly minted, images is their substitution map, and code
    sends each of them to the real letter it displays as.  Coded iterates
    of w reproduce the blocks of ``items``: code(h^n(w)) is block n+1.
    """
    w: list[Letter] = []
    images: dict[Letter, Word] = {}
    code: dict[Letter, Letter] = {}
    for term in items:
        if isinstance(term, Static):
            # frozen copy of the payload, one fresh letter per distinct real one
            copies: dict[Letter, Letter] = {}
            for real in term.payload:
                if real not in copies:
                    fresh = alloc.fresh(real.glyph)
                    copies[real] = fresh
                    images[fresh] = (fresh,)
                    code[fresh] = real
            w.extend(copies[real] for real in term.payload)
        else:
            sub_w, sub_images, sub_code = _build_from_list(term.items, alloc)
            images.update(sub_images)
            code.update(sub_code)
            if isinstance(term, Forward):
                anchor = sub_w[0]
                fresh = alloc.fresh(code[anchor].glyph)
                term_w = (fresh,) + sub_w[1:]
                images[fresh] = term_w + sub_images[anchor]
            else:
                anchor = sub_w[-1]
                fresh = alloc.fresh(code[anchor].glyph)
                term_w = sub_w[:-1] + (fresh,)
                images[fresh] = sub_images[anchor] + term_w
            code[fresh] = code[anchor]
            w.extend(term_w)
    return tuple(w), images, code


def _coding_from(code: dict[Letter, Letter]) -> Coding:
    images: dict[Letter, Word] = {c: (real,) for c, real in code.items()}
    for real in set(code.values()):
        images.setdefault(real, (real,))
    return Coding(images)


def list_to_morphism(
    items: ZigzagList, check_steps: int = CHECK_STEPS
) -> tuple[Word, Morphism, Coding]:
    """Realize a term list as coded morphism iterates.

    The returned (w, h, code) satisfy code(h^n(w)) = block n+1 for every
    n >= 0; the first ``check_steps`` instances are verified on the spot.
    """
    alloc = _Allocator()
    w, images, code = _build_from_list(items, alloc)
    h = Morphism(images)
    coding = _coding_from(code)
    current = w
    for n in range(check_steps + 1):
        if coding.apply(current) != block(items, n + 1):
            raise InternalConstructionError(
                f"coded iterate {n} does not match block {n + 1}"
            )
        current = h.apply(current)
    return w, h, coding


def zigzag_to_morphic(spec: ZigzagSpec, check_steps: int = CHECK_STEPS) -> MorphicSpec:
    """Morphic representation of a zigzag word; start rank equals the depth.

    Wraps the list construction with throwaway letters whose coded images
    spell the prefix and the list's first block, then ties the knot with a
    start letter that regenerates the whole seed every step.
    """
    alloc = _Allocator()
    w, images, code = _build_from_list(spec.items, alloc)

    seed: list[Letter] = []
    for real in spec.prefix:
        fresh = alloc.fresh(real.glyph)
        images[fresh] = ()
        code[fresh] = real
        seed.append(fresh)
    for c in w:
        fresh = alloc.fresh(code[c].glyph)
        images[fresh] = ()
        code[fresh] = code[c]
        seed.append(fresh)
    for c in w:
        seed.extend(images[c])
    # seed has length >= 2: w and its image are both nonempty
    start = alloc.fresh(code[seed[0]].glyph)
    second = alloc.fresh(code[seed[1]].glyph)
    images[start] = (start, second) + tuple(seed[2:])
    images[second] = images[seed[0]] + images[seed[1]]
    code[start] = code[seed[0]]
    code[second] = code[seed[1]]

    result = MorphicSpec(Morphism(images), start, _coding_from(code))
    # check the knot: for n >= 1 the coded iterate spells prefix + blocks 1..n+1
    h = result.morphism
    current: Word = h.apply((start,))
    expected = list(spec.prefix)
    expected.extend(block(spec.items, 1))
    for n in range(1, check_steps + 1):
        expected.extend(block(spec.items, n + 1))
        if result.coding.apply(current) != tuple(expected):
            raise InternalConstructionError(
                f"coded iterate {n} of the start letter is wrong"
            )
        current = h.apply(current)
    return result


def _list_for_string(
    g: Morphism, table, x: Word, v: int
) -> ZigzagList:
    """Per-letter recursion of the morphism-to-list construction.

    Mortal letters vanish (the morphism is normalized, so their image is
    already empty).  A non-recursive letter delegates to its image one
    level down.  A recursive letter splits its image around its unique
    self-occurrence into backward part, settled middle, forward part.
    """
    parts: list[ZigzagTerm] = []
    for c in x:
        if c in table.mortal:
            continue
        img = g.image(c)
        if c not in img:
            parts.extend(_list_for_string(g, table, img, v - 1))
            continue
        if img.count(c) != 1:
            raise InternalConstructionError(
                f"ranked recursive letter {c.token} occurs twice in its image"
            )
        cut = img.index(c)
        before, after = img[:cut], img[cut + 1 :]
        if not g.is_mortal_word(before):
            parts.append(Backward(_list_for_string(g, table, before, v - 1)))
        parts.append(Static(g.iterate((c,), v)))
        if not g.is_mortal_word(after):
            parts.append(Forward(_list_for_string(g, table, after, v - 1)))
    return tuple(parts)


def morphism_to_list(
    normalized: NormalizedMorphism,
    x: Word,
    v: int,
    check_steps: int = CHECK_STEPS,
) -> ZigzagList:
    """Term list whose block i is iterate v+i of ``x``; depth is rank(x)+1.

    Requires every letter of ``x`` ranked, ``x`` not mortal, and ``v`` at
    least the level of ``x`` under the normalized morphism.
    """
    g = normalized.morphism
    table = g.rank_table
    if not x:
        raise PreconditionViolation("x must be nonempty")
    unranked = sorted({c for c in x if table.rank(c) is None})
    if unranked:
        names = ", ".join(c.token for c in unranked)
        raise PreconditionViolation(f"unranked letters in x: {names}")
    level = table.level_of(x)
    if level == 0:
        raise PreconditionViolation("x is mortal: its blocks would all be empty")
    assert level is not None
    if v < level:
        raise PreconditionViolation(f"v={v} is below the level of x ({level})")

    items = _list_for_string(g, table, x, v)
    expected = g.iterate(x, v)
    for i in range(1, check_steps + 1):
        expected = g.apply(expected)
        if block(items, i) != expected:
            raise InternalConstructionError(
                f"block {i} does not match iterate {v + i}"
            )
    return items


def _reachable_spec(spec: MorphicSpec) -> MorphicSpec:
    """Drop domain letters unreachable from the start; the word is unchanged."""
    h = spec.morphism
    reached = {spec.start}
    frontier = [spec.start]
    while frontier:
        c = frontier.pop()
        for d in set(h.image(c)):
            if d not in reached:
                reached.add(d)
                frontier.append(d)
    if reached == h.domain:
        return spec
    sub = Morphism({c: h.image(c) for c in reached})
    code = {c: spec.coding.image(c) for c in reached}
    for c in reached:
        target = spec.coding.of(c)
        code.setdefault(target, (target,))
    return MorphicSpec(sub, spec.start, Coding(code))


def _code_payloads(items: ZigzagList, coding: Coding) -> ZigzagList:
    out: list[ZigzagTerm] = []
    for term in items:
        if isinstance(term, Static):
            out.append(Static(coding.apply(term.payload)))
        elif isinstance(term, Forward):
            out.append(Forward(_code_payloads(term.items, coding)))
        else:
            out.append(Backward(_code_payloads(term.items, coding)))
    return tuple(out)


def morphic_to_zigzag(
    spec: MorphicSpec,
    t_max: int | None = None,
    check_steps: int = CHECK_STEPS,
) -> ZigzagSpec:
    """Zigzag representation of a morphic word; depth equals the start rank.

    Normalizes the (reachable part of the) morphism, peels the start
    letter off its image, and converts the remainder with the offset set
    to its level.  Raises :class:`ExponentialGrowth` when the start letter
    has no rank.
    """
    trimmed = _reachable_spec(spec)
    h = trimmed.morphism
    if h.rank_table.rank(trimmed.start) is None:
        raise ExponentialGrowth(
            f"start letter {trimmed.start.token} is not polynomially bounded"
        )
    normalized = h.normalize(t_max)
    g = normalized.morphism
    start_img = g.image(trimmed.start)
    x = start_img[1:]
    table = g.rank_table
    v = table.level_of(x)
    assert v is not None and v > 0
    prefix = trimmed.coding.apply(g.iterate((trimmed.start,), v + 1))
    items = _code_payloads(
        morphism_to_list(normalized, x, v, check_steps), trimmed.coding
    )
    result = ZigzagSpec(prefix, items)
    start_rank = table.rank(trimmed.start)
    if depth(items) != start_rank:
        raise InternalConstructionError(
            f"depth {depth(items)} differs from start rank {start_rank}"
        )
    return result


def zigzag_to_periodic(spec: ZigzagSpec) -> PeriodicSpec:
    """Depth-1 specs repeat one block forever: read the period straight off."""
    if depth(spec.items) != 1:
        raise DepthMismatch(f"need depth 1, got {depth(spec.items)}")
    period: list[Letter] = []
    for term in spec.items:
        assert isinstance(term, Static)
        period.extend(term.payload)
    return PeriodicSpec(spec.prefix, tuple(period))


def periodic_to_zigzag(periodic: PeriodicSpec) -> ZigzagSpec:
    return ZigzagSpec(periodic.prefix, (Static(periodic.period),))


def multilinear_to_zigzag(spec: MultilinearSpec) -> ZigzagSpec:
    """Shift block indexing by one and absorb block 0 into the prefix.

    Block n >= 1 of the result must repeat each body slope*n + offset
    times; a static term supplies the offset copies and a forward term
    over body^slope supplies slope more per block.
    """
    prefix = list(spec.prefix)
    for term in spec.terms:
        prefix.extend(term.body * term.offset)
    items: list[ZigzagTerm] = []
    for term in spec.terms:
        if term.offset > 0:
            items.append(Static(term.body * term.offset))
        if term.slope > 0:
            items.append(Forward((Static(term.body * term.slope),)))
    return ZigzagSpec(tuple(prefix), tuple(items))


def zigzag_to_multilinear(spec: ZigzagSpec) -> MultilinearSpec:
    """Depth <= 2 specs are multilinear; block i maps to block index n = i-1.

    A static payload repeats once per block (slope 0, offset 1).  A depth-1
    forward or backward term contributes its flattened sublist i times in
    block i, which is slope 1, offset 1 after the index shift.
    """
    if depth(spec.items) > 2:
        raise DepthMismatch(f"need depth <= 2, got {depth(spec.items)}")
    terms: list[MultilinearTerm] = []
    for term in spec.items:
        if isinstance(term, Static):
            terms.append(MultilinearTerm(term.payload, 0, 1))
        else:
            body: list[Letter] = []
            for sub in term.items:
                assert isinstance(sub, Static)
                body.extend(sub.payload)
            terms.append(MultilinearTerm(tuple(body), 1, 1))
    return MultilinearSpec(spec.prefix, tuple(terms))
