"""Alphabets, words, morphisms, and per-letter growth analysis.

A word is a plain tuple of :class:`Letter`.  A :class:`Morphism` maps each
domain letter to a word over the same domain and extends homomorphically to
words.  On top of iteration this module provides the analysis the rest of
the package is built on: mortality, recursiveness, boundedness of the
iterate language, the rank/level stratification, normalization to a power
with stabilized image alphabets, and the growth degree of a string.

Boundedness is decided by a graph criterion (see ``_unbounded_letters``)
rather than by expanding iterates; the brute-force oracle in
:mod:`zigzagwords.verify` exists to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    EmptyString,
    NormalizationNotFound,
    NotProlongable,
    UnknownLetter,
)

__all__ = [
    "Letter",
    "Word",
    "EMPTY_WORD",
    "word",
    "glyphs",
    "alphabet",
    "Morphism",
    "Coding",
    "MorphicSpec",
    "RankTable",
    "NormalizedMorphism",
    "Growth",
    "default_normalization_cap",
]


@dataclass(frozen=True, order=True)
class Letter:
    """One alphabet symbol.

    ``glyph`` is the single display character; ``tag`` distinguishes
    synthetic copies minted during conversions (tag 0 is a plain,
    user-written letter).  Equality and ordering are by (glyph, tag).
    """

    glyph: str
    tag: int = 0

    def __post_init__(self):
        if len(self.glyph) != 1:
            raise ValueError(f"glyph must be a single character, got {self.glyph!r}")
        if self.tag < 0:
            raise ValueError("tag must be nonnegative")

    @property
    def token(self) -> str:
        """File token: the glyph alone, or ``glyph_tag`` for synthetic copies."""
        return self.glyph if self.tag == 0 else f"{self.glyph}_{self.tag}"

    def __repr__(self) -> str:
        return f"Letter({self.token!r})"


Word = tuple[Letter, ...]

EMPTY_WORD: Word = ()


def word(text: str) -> Word:
    """Word of plain (tag 0) letters, one per character of ``text``."""
    return tuple(Letter(ch) for ch in text)


def glyphs(w: Word) -> str:
    """Display string of a word, one character per letter."""
    return "".join(c.glyph for c in w)


def alphabet(w: Word) -> frozenset[Letter]:
    return frozenset(w)


def _strongly_connected(
    nodes: Iterable[Letter], succ: Mapping[Letter, tuple[Letter, ...]]
) -> list[tuple[Letter, ...]]:
    """Tarjan's algorithm, iterative so deep chains cannot overflow."""
    index: dict[Letter, int] = {}
    low: dict[Letter, int] = {}
    on_stack: set[Letter] = set()
    stack: list[Letter] = []
    components: list[tuple[Letter, ...]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_i = work[-1]
            if child_i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            children = succ[node]
            while child_i < len(children):
                child = children[child_i]
                child_i += 1
                if child not in index:
                    work[-1] = (node, child_i)
                    work.append((child, 0))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member is node or member == node:
                        break
                components.append(tuple(comp))
            if work:
                parent, parent_i = work[-1]
                low[parent] = min(low[parent], low[node])
                work[-1] = (parent, parent_i)
    return components


class Morphism:
    """A total letter-to-word map over a finite alphabet.

    The domain is the key set of ``images``; every letter occurring in any
    image must itself be in the domain.  Instances are immutable and all
    analysis results are cached on first use.
    """

    def __init__(self, images: Mapping[Letter, Iterable[Letter]]):
        imgs = {c: tuple(img) for c, img in images.items()}
        domain = frozenset(imgs)
        for c, img in imgs.items():
            for d in img:
                if d not in domain:
                    raise UnknownLetter(
                        f"image of {c.token} contains {d.token}, which has no image"
                    )
        self._images = imgs
        self._domain = domain

    @property
    def domain(self) -> frozenset[Letter]:
        return self._domain

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        """Domain letters in (glyph, tag) order, for deterministic iteration."""
        return tuple(sorted(self._domain))

    def rules(self) -> Iterator[tuple[Letter, Word]]:
        for c in self.letters:
            yield c, self._images[c]

    def _require(self, c: Letter) -> None:
        if c not in self._domain:
            raise UnknownLetter(f"letter {c.token} is not in the domain")

    def image(self, c: Letter) -> Word:
        self._require(c)
        return self._images[c]

    def apply(self, w: Word) -> Word:
        out: list[Letter] = []
        for c in w:
            out.extend(self.image(c))
        return tuple(out)

    __call__ = apply

    def iterate(self, w: Word, n: int) -> Word:
        if n < 0:
            raise ValueError("iteration count must be nonnegative")
        for c in w:
            self._require(c)
        for _ in range(n):
            w = self.apply(w)
        return w

    def power(self, t: int) -> "Morphism":
        """The morphism whose images are the t-fold iterates, materialized."""
        if t < 1:
            raise ValueError("power must be positive")
        current: Mapping[Letter, Word] = self._images
        for _ in range(t - 1):
            current = {
                c: tuple(d for e in self._images[c] for d in current[e])
                for c in self._images
            }
        return Morphism(current)

    def is_prolongable(self, c: Letter) -> bool:
        img = self.image(c)
        return len(img) >= 1 and img[0] == c and not self.is_mortal_word(img[1:])

    @cached_property
    def mortal_letters(self) -> frozenset[Letter]:
        """Least fixpoint: mortal iff every image letter is mortal."""
        mortal = {c for c, img in self._images.items() if not img}
        changed = True
        while changed:
            changed = False
            for c, img in self._images.items():
                if c not in mortal and all(d in mortal for d in img):
                    mortal.add(c)
                    changed = True
        return frozenset(mortal)

    def is_mortal_word(self, w: Word) -> bool:
        return all(c in self.mortal_letters for c in w)

    @cached_property
    def _successors(self) -> dict[Letter, tuple[Letter, ...]]:
        """Occurrence graph: c -> the distinct letters of its image."""
        return {c: tuple(sorted(set(img))) for c, img in self._images.items()}

    @cached_property
    def recursive_letters(self) -> frozenset[Letter]:
        """Letters lying on a cycle of the occurrence graph."""
        succ = self._successors
        rec: set[Letter] = set()
        for comp in _strongly_connected(self.letters, succ):
            if len(comp) > 1 or comp[0] in succ[comp[0]]:
                rec.update(comp)
        return frozenset(rec)

    def is_recursive(self, c: Letter) -> bool:
        self._require(c)
        return c in self.recursive_letters

    @cached_property
    def _unbounded_letters(self) -> frozenset[Letter]:
        """Letters with infinitely many distinct iterates.

        Works on the restriction to non-mortal letters with images filtered
        to non-mortal letters (non-erasing there).  A letter is unbounded
        iff it reaches a strongly connected component that contains a cycle
        and in which some member's filtered image has two or more letters:
        each pass around the cycle then emits a surplus letter that never
        dies, so lengths grow without bound.  Otherwise every cycle letter
        maps to exactly one letter and lengths settle.
        """
        mortal = self.mortal_letters
        live = [c for c in self.letters if c not in mortal]
        live_img = {
            c: tuple(d for d in self._images[c] if d not in mortal) for c in live
        }
        succ = {c: tuple(sorted(set(live_img[c]))) for c in live}
        expanding: set[Letter] = set()
        for comp in _strongly_connected(live, succ):
            cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
            if cyclic and any(len(live_img[d]) >= 2 for d in comp):
                expanding.update(comp)
        # walk the graph backwards from the expanding components
        preds: dict[Letter, set[Letter]] = {c: set() for c in live}
        for c in live:
            for d in succ[c]:
                preds[d].add(c)
        unbounded = set(expanding)
        frontier = list(expanding)
        while frontier:
            d = frontier.pop()
            for c in preds[d]:
                if c not in unbounded:
                    unbounded.add(c)
                    frontier.append(c)
        return frozenset(unbounded)

    def is_bounded(self, c: Letter) -> bool:
        """Whether the set of iterates of ``c`` is finite."""
        self._require(c)
        return c not in self._unbounded_letters

    def erase_except(self, keep: Iterable[Letter]) -> "Morphism":
        """Same domain, images filtered to the letters of ``keep``."""
        kept = frozenset(keep)
        if not kept <= self._domain:
            extra = sorted(kept - self._domain)
            raise UnknownLetter(f"letters {extra} are not in the domain")
        return Morphism(
            {c: tuple(d for d in img if d in kept) for c, img in self._images.items()}
        )

    @cached_property
    def rank_table(self) -> "RankTable":
        """Stage-wise rank assignment with levels filled in.

        Stage 0 gives rank 0 to letters bounded under the morphism itself;
        stage n erases all letters of rank < n and gives rank n to the
        survivors bounded under the erased morphism.  Letters left over
        when a stage assigns nothing have no rank (superpolynomial growth).
        """
        ranks: dict[Letter, int] = {}
        stage = 0
        while True:
            remaining = self._domain - ranks.keys()
            stage_m = self if stage == 0 else self.erase_except(remaining)
            newly = [c for c in remaining if stage_m.is_bounded(c)]
            if not newly:
                break
            for c in newly:
                ranks[c] = stage
            stage += 1
        levels: dict[Letter, int] = {}
        for c, r in ranks.items():
            if c in self.mortal_letters:
                levels[c] = 0
            elif c in self.recursive_letters:
                levels[c] = 2 * r + 1
            else:
                levels[c] = 2 * r + 2
        return RankTable(
            domain=self._domain,
            mortal=self.mortal_letters,
            recursive=self.recursive_letters,
            ranks=ranks,
            levels=levels,
        )

    def _is_normalized(self) -> bool:
        for c, img in self._images.items():
            if alphabet(img) != alphabet(self.apply(img)):
                return False
        for c in self._domain:
            if self.is_bounded(c) and self.image(c) != self.apply(self.image(c)):
                return False
        return True

    def normalize(self, t_max: Optional[int] = None) -> "NormalizedMorphism":
        """Smallest power with stabilized image alphabets.

        Searches t = 1, 2, ... materializing the power's images each time.
        Existence is guaranteed, so hitting ``t_max`` means the cap was set
        too low for this morphism.
        """
        if t_max is None:
            t_max = default_normalization_cap(len(self._domain))
        current: Mapping[Letter, Word] = self._images
        for t in range(1, t_max + 1):
            candidate = self if t == 1 else Morphism(current)
            if candidate._is_normalized():
                return NormalizedMorphism(morphism=candidate, power=t, base=self)
            current = {
                c: tuple(d for e in self._images[c] for d in current[e])
                for c in self._images
            }
        raise NormalizationNotFound(
            f"no normalized power of exponent <= {t_max}; raise the cap"
        )

    def growth(self, w: Word) -> "Growth":
        """Growth class of the iterate lengths of ``w``.

        The degree is the rank of ``w`` when defined (for mortal ``w`` that
        is 0, flagged) and ``None`` when growth is not polynomially bounded.
        """
        if not w:
            raise EmptyString("growth is defined for nonempty strings only")
        r = self.rank_table.rank_of(w)
        if r is None:
            return Growth(degree=None, mortal=False)
        return Growth(degree=r, mortal=self.is_mortal_word(w))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self._images == other._images

    def __repr__(self) -> str:
        rules = ", ".join(
            f"{c.token}->{glyphs(img) or 'λ'}" for c, img in self.rules()
        )
        return f"{type(self).__name__}({rules})"


def default_normalization_cap(alphabet_size: int) -> int:
    if alphabet_size <= 0:
        return 1
    return math.lcm(*range(1, alphabet_size + 1)) * 2**alphabet_size


class Coding(Morphism):
    """A morphism whose images are single letters."""

    def __init__(self, images: Mapping[Letter, Iterable[Letter]]):
        super().__init__(images)
        for c, img in self._images.items():
            if len(img) != 1:
                raise ValueError(
                    f"coding image of {c.token} has length {len(img)}, expected 1"
                )

    def of(self, c: Letter) -> Letter:
        return self.image(c)[0]

    @staticmethod
    def identity(letters: Iterable[Letter]) -> "Coding":
        return Coding({c: (c,) for c in letters})


@dataclass(frozen=True)
class Growth:
    """Result of a growth query: a polynomial degree or nothing polynomial."""

    degree: Optional[int]
    mortal: bool = False

    def __str__(self) -> str:
        if self.degree is None:
            return "exponential"
        if self.mortal:
            return "degree 0 (mortal)"
        return f"degree {self.degree}"


@dataclass(frozen=True)
class RankTable:
    """Per-letter mortal/recursive flags plus rank and level values.

    Letters absent from ``ranks`` have no rank (equivalently no level):
    their iterate lengths exceed every polynomial.
    """

    domain: frozenset[Letter]
    mortal: frozenset[Letter]
    recursive: frozenset[Letter]
    ranks: Mapping[Letter, int]
    levels: Mapping[Letter, int]

    def __post_init__(self):
        for c in self.mortal:
            if self.ranks.get(c) != 0 or self.levels.get(c) != 0:
                raise ValueError(f"mortal letter {c.token} must have rank 0, level 0")
        for c, r in self.ranks.items():
            expected = (
                0
                if c in self.mortal
                else 2 * r + 1
                if c in self.recursive
                else 2 * r + 2
            )
            if self.levels.get(c) != expected:
                raise ValueError(f"level of {c.token} must be {expected}")
        if set(self.ranks) != set(self.levels):
            raise ValueError("rank and level must be defined for the same letters")

    def _require(self, c: Letter) -> None:
        if c not in self.domain:
            raise UnknownLetter(f"letter {c.token} is not in the table's domain")

    def rank(self, c: Letter) -> Optional[int]:
        self._require(c)
        return self.ranks.get(c)

    def level(self, c: Letter) -> Optional[int]:
        self._require(c)
        return self.levels.get(c)

    def rank_of(self, w: Word) -> Optional[int]:
        """Max letter rank of a nonempty string, or None if any is unranked."""
        if not w:
            raise EmptyString("rank is defined for nonempty strings only")
        values = [self.rank(c) for c in set(w)]
        if any(v is None for v in values):
            return None
        return max(values)  # type: ignore[type-var]

    def level_of(self, w: Word) -> Optional[int]:
        """Max letter level of a nonempty string, or None if any is unranked."""
        if not w:
            raise EmptyString("level is defined for nonempty strings only")
        values = [self.level(c) for c in set(w)]
        if any(v is None for v in values):
            return None
        return max(values)  # type: ignore[type-var]


@dataclass(frozen=True)
class NormalizedMorphism:
    """A power ``morphism = base**power`` satisfying the normalization laws.

    Checked at construction: image alphabets are stable under one more
    application, images of bounded letters are idempotent, mortal letters
    map straight to the empty word, and recursive letters occur in their
    own image.
    """

    morphism: Morphism
    power: int
    base: Morphism

    def __post_init__(self):
        g = self.morphism
        if self.power < 1:
            raise ValueError("power must be positive")
        if not g._is_normalized():
            raise ValueError("morphism does not satisfy the normalization laws")
        for c in g.domain:
            img = g.image(c)
            if c in g.mortal_letters and img != ():
                raise ValueError(f"mortal letter {c.token} must map to the empty word")
            if c in g.recursive_letters and c not in img:
                raise ValueError(f"recursive letter {c.token} must occur in its image")


@dataclass(frozen=True)
class MorphicSpec:
    """A morphic representation: start letter, morphism, coding.

    The morphism must be prolongable on the start letter; the coding must
    cover the whole domain of the morphism.  The represented infinite word
    is the coding applied to the limit of iterating from the start letter.
    """

    morphism: Morphism
    start: Letter
    coding: Coding

    def __post_init__(self):
        img = self.morphism.image(self.start)
        if not img or img[0] != self.start or self.morphism.is_mortal_word(img[1:]):
            raise NotProlongable(
                f"morphism is not prolongable on {self.start.token}"
            )
        missing = self.morphism.domain - self.coding.domain
        if missing:
            names = ", ".join(c.token for c in sorted(missing))
            raise UnknownLetter(f"coding is undefined on: {names}")

    @property
    def tail(self) -> Word:
        """The ``x`` with ``h(start) = start · x``; never mortal."""
        return self.morphism.image(self.start)[1:]
