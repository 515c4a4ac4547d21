"""Independent oracles: prefix expansion, prefix equality, brute-force
boundedness, and empirical growth-degree estimation.

Everything here works from first definitions (iterate strings, count
letters) precisely so it can cross-check the graph-based analysis in
:mod:`zigzagwords.morphism` and the constructions in
:mod:`zigzagwords.transforms` without sharing code paths with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count, islice
from typing import Iterator, Optional, Union

from .errors import EmptyString
from .morphism import Letter, MorphicSpec, Morphism, Word
from .transforms import MultilinearSpec, PeriodicSpec
from .zigzag import ZigzagSpec, blocks

__all__ = [
    "AnySpec",
    "word_stream",
    "prefix_of",
    "PrefixComparison",
    "prefix_equal",
    "brute_bounded",
    "GrowthReport",
    "growth_report",
]

AnySpec = Union[MorphicSpec, ZigzagSpec, PeriodicSpec, MultilinearSpec]


def word_stream(spec: AnySpec) -> Iterator[Letter]:
    """The represented infinite word, one letter at a time."""
    if isinstance(spec, MorphicSpec):
        h, coding = spec.morphism, spec.coding
        yield coding.of(spec.start)
        chunk = spec.tail
        while True:
            for c in chunk:
                yield coding.of(c)
            chunk = h.apply(chunk)
    elif isinstance(spec, ZigzagSpec):
        yield from spec.prefix
        for blk in blocks(spec.items):
            yield from blk
    elif isinstance(spec, PeriodicSpec):
        yield from spec.prefix
        while True:
            yield from spec.period
    elif isinstance(spec, MultilinearSpec):
        yield from spec.prefix
        for n in count(0):
            for term in spec.terms:
                repeats = term.slope * n + term.offset
                for _ in range(repeats):
                    yield from term.body
    else:
        raise TypeError(f"not a spec: {spec!r}")


def prefix_of(spec: AnySpec, n: int) -> Word:
    """First ``n`` letters, streaming; never materializes beyond need."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    return tuple(islice(word_stream(spec), n))


@dataclass(frozen=True)
class PrefixComparison:
    """Outcome of comparing two prefixes; index is 1-based on mismatch."""

    equal: bool
    index: Optional[int] = None
    left: Optional[Letter] = None
    right: Optional[Letter] = None

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        if self.equal:
            return "equal"
        assert self.left is not None and self.right is not None
        return (
            f"mismatch at index {self.index}: "
            f"{self.left.glyph!r} != {self.right.glyph!r}"
        )


def prefix_equal(a: AnySpec, b: AnySpec, n: int) -> PrefixComparison:
    """Compare the first ``n`` letters, stopping at the first difference."""
    left = word_stream(a)
    right = word_stream(b)
    for i in range(1, n + 1):
        x = next(left)
        y = next(right)
        if x != y:
            return PrefixComparison(False, i, x, y)
    return PrefixComparison(True)


def _encoded(h: Morphism) -> tuple[dict[Letter, str], dict[str, str]]:
    # private-use codepoints keep the orbit strings hashable and compact
    enc = {c: chr(0xE000 + i) for i, c in enumerate(h.letters)}
    images = {enc[c]: "".join(enc[d] for d in h.image(c)) for c in h.letters}
    return enc, images


def brute_bounded(h: Morphism, c: Letter, cap: Optional[int] = None) -> bool:
    """Boundedness by definition: iterate until a repeat or a length escape.

    A repeat of any iterate proves the orbit is a finite cycle; a length
    beyond ``cap`` is taken as divergence.  The default cap is far above
    the longest string a bounded letter of the given morphism can reach,
    so at desk scales the answer is exact.  This exists to duel the graph
    criterion in :meth:`Morphism.is_bounded`, not to replace it.
    """
    if cap is None:
        longest = max((len(img) for _, img in h.rules()), default=0)
        cap = len(h.domain) * max(longest, 1) ** len(h.domain) + 1
    if cap < 1:
        raise ValueError("cap must be positive")
    enc, images = _encoded(h)
    current = enc[c] if c in enc else None
    if current is None:
        h.image(c)  # raises UnknownLetter
    seen: set[str] = set()
    while True:
        if current in seen:
            return True
        if len(current) > cap:
            return False
        seen.add(current)
        current = "".join(images[ch] for ch in current)


@dataclass(frozen=True)
class GrowthReport:
    """Exact iterate lengths plus an empirical growth verdict.

    ``verdict`` is one of ``"degree"`` (with ``degree`` set),
    ``"exponential"``, or ``"inconclusive"``; ``witness`` is the inclusive
    range of iteration counts the verdict was read from.
    """

    lengths: tuple[int, ...]
    verdict: str
    degree: Optional[int]
    witness: tuple[int, int]

    def __str__(self) -> str:
        if self.verdict == "degree":
            return f"degree {self.degree}"
        return self.verdict


def _iterate_lengths(h: Morphism, x: Word, upto: int) -> tuple[int, ...]:
    # letter-count vectors make the lengths exact without materializing words
    counts: dict[Letter, int] = {}
    for c in x:
        h.image(c)  # domain check
        counts[c] = counts.get(c, 0) + 1
    occurrence: dict[Letter, dict[Letter, int]] = {}
    for c in h.letters:
        row: dict[Letter, int] = {}
        for d in h.image(c):
            row[d] = row.get(d, 0) + 1
        occurrence[c] = row
    lengths = [sum(counts.values())]
    for _ in range(upto):
        nxt: dict[Letter, int] = {}
        for c, k in counts.items():
            for d, times in occurrence[c].items():
                nxt[d] = nxt.get(d, 0) + k * times
        counts = nxt
        lengths.append(sum(counts.values()))
    return tuple(lengths)


def growth_report(
    h: Morphism,
    x: Word,
    upto: int = 64,
    *,
    epsilon: float = 0.05,
    band: float = 8.0,
    min_pairs: int = 3,
) -> GrowthReport:
    """Classify the growth of the iterate lengths of ``x`` from data alone.

    Four readings, in order: a zero length means the string dies (bounded,
    degree 0); an eventually periodic tail of lengths means the orbit
    settled (degree 0); per-step ratios persistently above 1 + epsilon
    with doubling ratios that themselves grow mean superpolynomial escape
    (exponential); otherwise the degree is read off doubling ratios of
    cumulative lengths, which smooth out phase oscillation, and confirmed
    by requiring the per-iterate lengths to stay within a bounded band of
    the fitted monomial.  Anything that fails all four is inconclusive.
    """
    if not x:
        raise EmptyString("growth is measured on nonempty strings only")
    if upto < 16:
        raise ValueError("need at least 16 iterations to classify growth")
    lengths = _iterate_lengths(h, x, upto)
    half = upto // 2

    if 0 in lengths:
        first_zero = lengths.index(0)
        assert all(v == 0 for v in lengths[first_zero:])
        return GrowthReport(lengths, "degree", 0, (first_zero, upto))

    # settled orbit: the tail of lengths repeats with some short period
    for period in range(1, upto // 4 + 1):
        tail = range(half, upto + 1 - period)
        if all(lengths[j] == lengths[j + period] for j in tail):
            return GrowthReport(lengths, "degree", 0, (half, upto))

    # exponential: persistent per-step growth and accelerating doubling ratios
    scale = 10**6
    steady = all(
        scale * lengths[n + 1] >= int(scale * (1 + epsilon)) * lengths[n]
        for n in range(half, upto)
    )
    quarter = upto // 4
    accelerating = (
        lengths[upto] * lengths[quarter] >= 2 * lengths[half] * lengths[half]
    )
    if steady and accelerating:
        return GrowthReport(lengths, "exponential", None, (half, upto))

    # polynomial: doubling ratios of transient-trimmed cumulative lengths
    base = upto // 8
    sums = [0] * (upto + 1)
    running = 0
    for j in range(base + 1, upto + 1):
        running += lengths[j]
        sums[j] = running
    estimates = []
    for n in range(quarter, half + 1):
        if sums[n] <= 0:
            continue
        estimates.append(round(math.log2(sums[2 * n] / sums[n])))
    if len(estimates) >= min_pairs and len(set(estimates)) == 1 and estimates[0] >= 1:
        degree = estimates[0] - 1
        ratios = [lengths[n] / n**degree for n in range(half, upto + 1)]
        if max(ratios) <= band * min(ratios):
            return GrowthReport(lengths, "degree", degree, (quarter, upto))

    return GrowthReport(lengths, "inconclusive", None, (half, upto))
