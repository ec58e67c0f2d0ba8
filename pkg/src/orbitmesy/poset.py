"""Finite posets given by cover relations, order ideals and rowmotion.

Elements are the dense indices ``0..n-1``.  Fences keep their left-to-right
order as index order, which is what reading words rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    CycleError,
    NotAnIdealError,
    NotIrreducibleError,
    NotSelfDualError,
)

UP = "u"
DOWN = "d"

_WORD_ALIASES = {"u": UP, "up": UP, "d": DOWN, "down": DOWN}


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset stored as its Hasse diagram.

    ``covers`` holds pairs ``(a, b)`` meaning ``a`` is covered by ``b``.
    Build instances with :func:`build_fence` or :func:`build_from_covers`;
    the raw constructor does not validate.
    """

    n: int
    covers: tuple[tuple[int, int], ...]
    fence_word: Optional[str] = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return (self.n, self.covers, self.fence_word) == (other.n, other.covers, other.fence_word)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.n, self.covers, self.fence_word))

    def __repr__(self):
        if self.fence_word is not None:
            return f"Poset(fence={self.fence_word!r})"
        return f"Poset(n={self.n}, covers={list(self.covers)})"

    # -- derived structure -------------------------------------------------

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            ups[a].append(b)
        return tuple(tuple(sorted(u)) for u in ups)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        dns: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.covers:
            dns[b].append(a)
        return tuple(tuple(sorted(d)) for d in dns)

    @cached_property
    def cover_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.covers)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        order = _toposort(self.n, self.covers)
        assert order is not None
        return tuple(order)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Bitmask of the principal ideal below each element (inclusive)."""
        masks = [0] * self.n
        for x in self.topological_order:
            m = 1 << x
            for y in self.lower_covers[x]:
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for x in reversed(self.topological_order):
            m = 1 << x
            for y in self.upper_covers[x]:
                m |= masks[y]
            masks[x] = m
        return tuple(masks)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        """Number of elements in the longest chain ending at each element."""
        d = [1] * self.n
        for x in self.topological_order:
            for y in self.lower_covers[x]:
                d[x] = max(d[x], d[y] + 1)
        return tuple(d)

    @cached_property
    def height_above(self) -> tuple[int, ...]:
        """Number of elements in the longest chain starting at each element."""
        h = [1] * self.n
        for x in reversed(self.topological_order):
            for y in self.upper_covers[x]:
                h[x] = max(h[x], h[y] + 1)
        return tuple(h)

    @cached_property
    def longest_chain(self) -> int:
        return max(self.depth, default=0)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def less_than(self, a: int, b: int) -> bool:
        return a != b and bool(self.down_masks[b] >> a & 1)

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self.lower_covers[x]]

    def maximal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self.upper_covers[x]]

    @property
    def is_fence(self) -> bool:
        return self.fence_word is not None

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "covers": [list(c) for c in sorted(self.covers)],
            "fence_word": self.fence_word,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Poset":
        word = data.get("fence_word")
        p = build_from_covers(data["n"], [tuple(c) for c in data["covers"]])
        if word is not None:
            fence = build_fence(word)
            if fence.n != p.n or fence.covers != p.covers:
                raise ValueError(f"fence_word {word!r} does not reproduce the stored covers")
            return fence
        return p

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        return cls.from_dict(json.loads(text))


def _toposort(n: int, covers: Iterable[tuple[int, int]]) -> Optional[list[int]]:
    indeg = [0] * n
    ups: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        ups[a].append(b)
        indeg[b] += 1
    ready = [x for x in range(n) if indeg[x] == 0]
    order = []
    while ready:
        x = ready.pop()
        order.append(x)
        for y in ups[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    return order if len(order) == n else None


def _normalize_word(word) -> str:
    if isinstance(word, str):
        tokens = list(word)
    else:
        tokens = list(word)
    try:
        return "".join(_WORD_ALIASES[str(t).lower()] for t in tokens)
    except KeyError as exc:
        raise ValueError(f"fence word letters must be up/down, got {exc.args[0]!r}") from None


def build_fence(word: str | Sequence[str] = "") -> Poset:
    """Fence on ``len(word) + 1`` elements.

    Letter ``i`` of the word relates elements ``i`` and ``i + 1``: ``"u"``
    means ``i`` is covered by ``i + 1``, ``"d"`` the reverse.
    """
    w = _normalize_word(word)
    covers = []
    for i, c in enumerate(w):
        covers.append((i, i + 1) if c == UP else (i + 1, i))
    return Poset(len(w) + 1, tuple(sorted(covers)), w)


def zigzag(n: int) -> Poset:
    """The zig-zag fence with ``n`` elements, starting with an up step."""
    if n < 1:
        raise ValueError("zig-zag needs at least one element")
    return build_fence("".join(UP if i % 2 == 0 else DOWN for i in range(n - 1)))


def chain(n: int) -> Poset:
    if n < 1:
        raise ValueError("chain needs at least one element")
    return build_fence(UP * (n - 1))


def antichain(n: int) -> Poset:
    return Poset(n, ())


def build_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> Poset:
    """Validated poset from an explicit cover list.

    Raises CycleError on a cyclic digraph and NotIrreducibleError when a
    listed pair is already implied by a longer path.
    """
    pairs = sorted(set((int(a), int(b)) for a, b in covers))
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"cover {(a, b)} out of range for n={n}")
        if a == b:
            raise CycleError(f"self-loop at {a}")
    if _toposort(n, pairs) is None:
        raise CycleError("cover digraph contains a cycle")
    p = Poset(n, tuple(pairs))
    # b is reachable from a through a path of length >= 2 iff some other
    # upper cover c of a lies below b
    for a, b in pairs:
        for c in p.upper_covers[a]:
            if c != b and p.down_masks[b] >> c & 1:
                raise NotIrreducibleError(f"cover {(a, b)} is implied via {c}")
    return p


# -- involutions -------------------------------------------------------------


@dataclass(frozen=True)
class Involution:
    """Order-reversing involution of a self-dual poset, as an index map."""

    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __len__(self):
        return len(self.map)

    def is_valid_for(self, p: Poset) -> bool:
        m = self.map
        if sorted(m) != list(range(p.n)):
            return False
        if any(m[m[x]] != x for x in range(p.n)):
            return False
        cs = p.cover_set
        return all((m[b], m[a]) in cs for a, b in p.covers)


def canonical_involution(p: Poset) -> Involution:
    """Pick a fixed order-reversing involution of ``p``.

    Even fences use the left-right reflection when it reverses order.  Other
    posets get the lexicographically smallest involution found by search.
    """
    if p.is_fence and p.n % 2 == 0:
        k = Involution(tuple(range(p.n - 1, -1, -1)))
        if k.is_valid_for(p):
            return k
    found = _search_involution(p)
    if found is None:
        raise NotSelfDualError(f"{p!r} has no order-reversing involution")
    return found


def _search_involution(p: Poset) -> Optional[Involution]:
    n = p.n
    ups, dns = p.upper_covers, p.lower_covers
    cs = p.cover_set
    m = [-1] * n

    def consistent(x: int) -> bool:
        # every cover touching x whose other end is already mapped
        y = m[x]
        for b in ups[x]:
            if m[b] >= 0 and (m[b], y) not in cs:
                return False
        for a in dns[x]:
            if m[a] >= 0 and (y, m[a]) not in cs:
                return False
        return True

    def assign(x: int) -> bool:
        if x == n:
            return True
        if m[x] >= 0:
            return assign(x + 1)
        for y in range(x, n):
            if m[y] >= 0:
                continue
            if len(ups[x]) != len(dns[y]) or len(dns[x]) != len(ups[y]):
                continue
            m[x], m[y] = y, x
            if consistent(x) and consistent(y) and assign(x + 1):
                return True
            m[x] = m[y] = -1
        return False

    if not assign(0):
        return None
    k = Involution(tuple(m))
    return k if k.is_valid_for(p) else None


# -- order ideals ------------------------------------------------------------


@dataclass(frozen=True)
class OrderIdeal:
    """A down-closed subset, stored as a bitmask over element indices."""

    poset: Poset
    mask: int

    def __post_init__(self):
        if not is_ideal_mask(self.poset, self.mask):
            raise NotAnIdealError(f"members {sorted(_bits(self.mask))} are not down-closed")

    @property
    def members(self) -> frozenset[int]:
        return frozenset(_bits(self.mask))

    @property
    def sort_key(self) -> int:
        return self.mask

    def __len__(self):
        return bin(self.mask).count("1")

    def __repr__(self):
        return f"OrderIdeal({sorted(self.members)})"

    def to_dict(self) -> dict:
        return {"members": sorted(self.members)}

    @classmethod
    def from_members(cls, p: Poset, members: Iterable[int]) -> "OrderIdeal":
        mask = 0
        for x in members:
            mask |= 1 << x
        return cls(p, mask)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def is_ideal_mask(p: Poset, mask: int) -> bool:
    if mask < 0 or mask > p.full_mask:
        return False
    dm = p.down_masks
    return all(dm[x] & ~mask == 0 for x in _bits(mask))


def _ideal_unchecked(p: Poset, mask: int) -> OrderIdeal:
    obj = object.__new__(OrderIdeal)
    object.__setattr__(obj, "poset", p)
    object.__setattr__(obj, "mask", mask)
    return obj


def enumerate_order_ideals(p: Poset) -> list[OrderIdeal]:
    """All order ideals of ``p``, sorted by bitmask."""
    masks = [0]
    # extend ideals one element at a time in a linear extension order
    for x in p.topological_order:
        below = p.down_masks[x] & ~(1 << x)
        masks += [m | (1 << x) for m in masks if m & below == below]
    return [_ideal_unchecked(p, m) for m in sorted(masks)]


def _check_ideal(p: Poset, i: OrderIdeal) -> None:
    if i.poset != p or not is_ideal_mask(p, i.mask):
        raise NotAnIdealError(f"{i!r} is not an order ideal of {p!r}")


def rowmotion(p: Poset, i: OrderIdeal) -> OrderIdeal:
    """Ideal generated by the minimal elements of the complement."""
    _check_ideal(p, i)
    comp = p.full_mask & ~i.mask
    out = 0
    for x in _bits(comp):
        if all(not (comp >> y & 1) for y in p.lower_covers[x]):
            out |= p.down_masks[x]
    return _ideal_unchecked(p, out)


def dual_ideal(p: Poset, k: Involution, i: OrderIdeal) -> OrderIdeal:
    """Image of the complement of ``i`` under ``k``."""
    _check_ideal(p, i)
    comp = p.full_mask & ~i.mask
    out = 0
    for x in _bits(comp):
        out |= 1 << k.map[x]
    return _ideal_unchecked(p, out)
