"""Increasing labelings, binary content words, deflation and patterns."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    ArityMismatchError,
    InvariantError,
    NotAFenceError,
    WrongPosetError,
)
from .poset import Poset, zigzag


@dataclass(frozen=True)
class IncLabeling:
    """A labeling ``P -> [q]`` that strictly increases along every cover."""

    poset: Poset
    q: int
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        p = self.poset
        if self.q < 1:
            raise InvariantError(f"label bound q={self.q} must be positive")
        if len(labels) != p.n:
            raise InvariantError(f"expected {p.n} labels, got {len(labels)}")
        for x, v in enumerate(labels):
            if not 1 <= v <= self.q:
                raise InvariantError(f"label {v} at element {x} outside [1, {self.q}]")
        for a, b in p.covers:
            if labels[a] >= labels[b]:
                raise InvariantError(
                    f"cover {a}⋖{b} violated: labels {labels[a]} >= {labels[b]}"
                )

    @classmethod
    def _trusted(cls, poset: Poset, q: int, labels: tuple[int, ...]) -> "IncLabeling":
        # skips validation; only for labels produced by invariant-preserving maps
        obj = object.__new__(cls)
        object.__setattr__(obj, "poset", poset)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "labels", labels)
        return obj

    @property
    def sort_key(self) -> tuple[int, ...]:
        return self.labels

    def __getitem__(self, x: int) -> int:
        return self.labels[x]

    def __repr__(self):
        return f"IncLabeling({self.labels}, q={self.q})"

    def __str__(self):
        return ",".join(map(str, self.labels)) + f"@q={self.q}"

    def with_q(self, q: int) -> "IncLabeling":
        return IncLabeling(self.poset, q, self.labels)

    def to_dict(self) -> dict:
        return {"poset": self.poset.to_dict(), "q": self.q, "labels": list(self.labels)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "IncLabeling":
        return cls(Poset.from_dict(data["poset"]), int(data["q"]), tuple(data["labels"]))

    @classmethod
    def from_json(cls, text: str) -> "IncLabeling":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ContentWord:
    """Binary word marking which labels in ``1..q`` are used."""

    bits: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.bits)

    @cached_property
    def ones_count(self) -> int:
        return sum(self.bits)

    @cached_property
    def period(self) -> int:
        q = len(self.bits)
        for d in range(1, q + 1):
            if q % d == 0 and self.bits[d:] + self.bits[:d] == self.bits:
                return d
        return q

    @cached_property
    def gap_profile(self) -> tuple[int, ...]:
        """Zero-run lengths before each 1, read cyclically after an anchor 1.

        The anchor is the last position when it holds a 1, otherwise the last
        1 in the word.
        """
        if not self.ones_count:
            return ()
        anchor = max(i for i, b in enumerate(self.bits) if b)
        word = self.rotate(anchor + 1).bits
        gaps, run = [], 0
        for b in word:
            if b:
                gaps.append(run)
                run = 0
            else:
                run += 1
        return tuple(gaps)

    def rotate(self, k: int = 1) -> "ContentWord":
        """Cyclic left shift by ``k``: ``(v1..vq) -> (v2..vq, v1)`` for k=1."""
        q = len(self.bits)
        if q == 0:
            return self
        k %= q
        return ContentWord(self.bits[k:] + self.bits[:k])

    def reverse(self) -> "ContentWord":
        return ContentWord(self.bits[::-1])

    def ones_positions(self) -> list[int]:
        """1-based positions of the ones."""
        return [i + 1 for i, b in enumerate(self.bits) if b]

    def __str__(self):
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> "ContentWord":
        if any(c not in "01" for c in text):
            raise ValueError(f"content word must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))


# -- enumeration -------------------------------------------------------------


def iter_inc(p: Poset, q: int) -> Iterator[tuple[int, ...]]:
    """Label tuples of all increasing labelings, in lexicographic order.

    Backtracks over elements in index order.  Each element's range is cut
    down by its longest chains below and above, plus already-placed covers.
    """
    n = p.n
    if q < 1 or p.longest_chain > q:
        return
    lo0 = p.depth
    hi0 = tuple(q + 1 - h for h in p.height_above)
    # covers pointing to smaller indices are the constraints known on arrival
    earlier_dn = [tuple(y for y in p.lower_covers[x] if y < x) for x in range(n)]
    earlier_up = [tuple(y for y in p.upper_covers[x] if y < x) for x in range(n)]
    labels = [0] * n

    def rec(x: int):
        if x == n:
            yield tuple(labels)
            return
        lo, hi = lo0[x], hi0[x]
        for y in earlier_dn[x]:
            if labels[y] + 1 > lo:
                lo = labels[y] + 1
        for y in earlier_up[x]:
            if labels[y] - 1 < hi:
                hi = labels[y] - 1
        for v in range(lo, hi + 1):
            labels[x] = v
            yield from rec(x + 1)

    yield from rec(0)


def enumerate_inc(p: Poset, q: int) -> list[IncLabeling]:
    """All of ``Inc^q(p)``, lexicographic in the label sequence."""
    return [IncLabeling._trusted(p, q, t) for t in iter_inc(p, q)]


def count_inc(p: Poset, q: int) -> int:
    return sum(1 for _ in iter_inc(p, q))


def random_inc(p: Poset, q: int, rng: random.Random) -> IncLabeling:
    """A random (not uniform) increasing labeling, built along a linear extension."""
    if p.longest_chain > q:
        raise ValueError(f"no increasing labeling of {p!r} fits in [1, {q}]")
    labels = [0] * p.n
    for x in p.topological_order:
        lo = max((labels[y] + 1 for y in p.lower_covers[x]), default=1)
        hi = q + 1 - p.height_above[x]
        labels[x] = rng.randint(lo, hi)
    return IncLabeling(p, q, tuple(labels))


# -- content, deflation, inflation -------------------------------------------


def content(f: IncLabeling) -> ContentWord:
    bits = [0] * f.q
    for v in f.labels:
        bits[v - 1] = 1
    return ContentWord(tuple(bits))


def _deflate_labels(labels: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    used = sorted(set(labels))
    rank = {v: i + 1 for i, v in enumerate(used)}
    return tuple(rank[v] for v in labels), len(used)


def deflate(f: IncLabeling) -> IncLabeling:
    """Order-preserving relabeling onto ``1..r`` with ``r`` distinct labels."""
    labels, r = _deflate_labels(f.labels)
    return IncLabeling._trusted(f.poset, r, labels)


def is_packed(f: IncLabeling) -> bool:
    return set(f.labels) == set(range(1, max(f.labels, default=0) + 1))


def inflate(w: IncLabeling, c: ContentWord) -> IncLabeling:
    """The labeling with deflation ``w`` and content ``c``."""
    r = len(set(w.labels))
    if not is_packed(w):
        raise ValueError(f"{w!r} is not packed")
    if c.ones_count != r:
        raise ArityMismatchError(f"content word has {c.ones_count} ones, packed labeling uses {r} labels")
    pos = c.ones_positions()
    return IncLabeling._trusted(w.poset, c.q, tuple(pos[v - 1] for v in w.labels))


def enumerate_packed(p: Poset) -> list[IncLabeling]:
    """Packed labelings for every feasible ``r``, grouped by ``r`` then lexicographic."""
    out = []
    for r in range(p.longest_chain, p.n + 1):
        full = set(range(1, r + 1))
        out += [IncLabeling._trusted(p, r, t) for t in iter_inc(p, r) if set(t) == full]
    return out


# -- fences: reading words and patterns ---------------------------------------


def reading_word(f: IncLabeling) -> tuple[int, ...]:
    if not f.poset.is_fence:
        raise NotAFenceError("reading words are only defined on fence posets")
    return f.labels


def _cmp(a: int, b: int) -> int:
    return (a > b) - (a < b)


def contains_pattern(f: IncLabeling, pat: Sequence[int]) -> bool:
    """Whether some subsequence of the reading word is order-isomorphic to ``pat``.

    Ties must match ties and strict comparisons must match strict ones.
    """
    word = reading_word(f)
    return word_contains_pattern(word, pat)


def word_contains_pattern(word: Sequence[int], pat: Sequence[int]) -> bool:
    k, n = len(pat), len(word)
    if k == 0:
        return True
    chosen: list[int] = []

    def rec(start: int) -> bool:
        j = len(chosen)
        if j == k:
            return True
        for i in range(start, n - (k - j) + 1):
            v = word[i]
            if all(_cmp(word[c], v) == _cmp(pat[t], pat[j]) for t, c in enumerate(chosen)):
                chosen.append(i)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return rec(0)


_Z4 = zigzag(4)


def _require_z4(p: Poset) -> None:
    if p.n != 4 or p.covers != _Z4.covers:
        raise WrongPosetError(f"expected the four-element zig-zag, got {p!r}")


def is_balanced(f: IncLabeling) -> bool:
    _require_z4(f.poset)
    w, x, y, z = sorted(f.labels)
    return x - w == z - y or w - z + f.q == y - x


def is_linear_extension(f: IncLabeling) -> bool:
    return sorted(f.labels) == list(range(1, f.poset.n + 1))


def parse_word(text: str) -> tuple[int, ...]:
    """``"1326"`` or ``"1,3,2,6"`` to a tuple of ints."""
    text = text.strip()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(c) for c in text)


__all__ = [
    "IncLabeling",
    "ContentWord",
    "iter_inc",
    "enumerate_inc",
    "count_inc",
    "random_inc",
    "content",
    "deflate",
    "is_packed",
    "inflate",
    "enumerate_packed",
    "reading_word",
    "contains_pattern",
    "word_contains_pattern",
    "is_balanced",
    "is_linear_extension",
    "parse_word",
]
