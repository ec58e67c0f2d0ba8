"""Promotion, its inverse, swap, orbits and orbit-size formulas."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .errors import ClosureError, NonReturnError
from .labeling import IncLabeling, content, deflate, enumerate_inc, enumerate_packed, iter_inc
from .poset import Involution, OrderIdeal, Poset, dual_ideal, rowmotion

DEFAULT_STEP_CAP = 10**7
BOX = 0  # labels are >= 1, so 0 is free to mark an empty cell


def step_cap_from_env() -> int:
    raw = os.environ.get("ORBITMESY_STEP_CAP")
    return int(raw) if raw else DEFAULT_STEP_CAP


# -- jeu de taquin -------------------------------------------------------------


def _slide_up(p: Poset, labels: Sequence[int], q: int) -> tuple[tuple[int, ...], frozenset[int]]:
    """Forward promotion on raw labels; also returns the elements that held a box."""
    g = list(labels)
    boxes = {x for x in range(p.n) if g[x] == 1}
    if not boxes:
        return tuple(v - 1 for v in g), frozenset()
    ups, dns = p.upper_covers, p.lower_covers
    visited = set(boxes)
    for x in boxes:
        g[x] = BOX
    for i in sorted({v for v in g if v >= 2}):
        # sigma_i reads the state before the step; both halves update at once
        filled = [x for x in boxes if any(g[y] == i for y in ups[x])]
        emptied = [y for y in range(p.n) if g[y] == i and any(g[z] == BOX for z in dns[y])]
        for x in filled:
            g[x] = i
            boxes.discard(x)
        for y in emptied:
            g[y] = BOX
            boxes.add(y)
        visited.update(emptied)
    for x in boxes:
        g[x] = q + 1
    return tuple(v - 1 for v in g), frozenset(visited)


def _slide_down(p: Poset, labels: Sequence[int], q: int) -> tuple[tuple[int, ...], frozenset[int]]:
    """Inverse promotion: the mirror image of :func:`_slide_up`."""
    g = [v + 1 for v in labels]
    top = q + 1
    boxes = {x for x in range(p.n) if g[x] == top}
    if not boxes:
        return tuple(g), frozenset()
    ups, dns = p.upper_covers, p.lower_covers
    visited = set(boxes)
    for x in boxes:
        g[x] = BOX
    for i in sorted({v for v in g if v != BOX and v <= q}, reverse=True):
        filled = [x for x in boxes if any(g[y] == i for y in dns[x])]
        emptied = [y for y in range(p.n) if g[y] == i and any(g[z] == BOX for z in ups[y])]
        for x in filled:
            g[x] = i
            boxes.discard(x)
        for y in emptied:
            g[y] = BOX
            boxes.add(y)
        visited.update(emptied)
    for x in boxes:
        g[x] = 1
    return tuple(g), frozenset(visited)


def promote(f: IncLabeling) -> IncLabeling:
    """Jeu de taquin promotion.

    Ones become boxes, the boxes slide up through the labels 2..q in turn,
    remaining boxes become q+1, and every label drops by one.  A labeling
    without ones therefore just decrements.
    """
    labels, _ = _slide_up(f.poset, f.labels, f.q)
    return IncLabeling._trusted(f.poset, f.q, labels)


def promote_inverse(f: IncLabeling) -> IncLabeling:
    labels, _ = _slide_down(f.poset, f.labels, f.q)
    return IncLabeling._trusted(f.poset, f.q, labels)


def slid_elements(f: IncLabeling, direction: str = "forward") -> frozenset[int]:
    """Elements that carry a box at some point while actually sliding."""
    if direction == "forward":
        return _slide_up(f.poset, f.labels, f.q)[1]
    if direction == "inverse":
        return _slide_down(f.poset, f.labels, f.q)[1]
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def sliding_layers(f: IncLabeling, direction: str = "forward") -> list[frozenset[int]]:
    """Layered description of the sliding subposet.

    Forward: the 1-labeled elements, then repeatedly every upper cover that
    attains the minimum label among the covers of an element already
    reached.  Inverse: the dual construction from the q-labeled elements.
    Each layer only lists elements new to it.
    """
    p, lab = f.poset, f.labels
    if direction == "forward":
        start = [x for x in range(p.n) if lab[x] == 1]
        nbrs, pick = p.upper_covers, min
    elif direction == "inverse":
        start = [x for x in range(p.n) if lab[x] == f.q]
        nbrs, pick = p.lower_covers, max
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    seen = set(start)
    layers = [frozenset(start)] if start else []
    frontier = start
    while frontier:
        nxt = set()
        for y in frontier:
            if not nbrs[y]:
                continue
            best = pick(lab[z] for z in nbrs[y])
            nxt.update(z for z in nbrs[y] if lab[z] == best and z not in seen)
        if not nxt:
            break
        layers.append(frozenset(nxt))
        seen |= nxt
        frontier = sorted(nxt)
    return layers


def sliding_subposet(f: IncLabeling, direction: str = "forward") -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for layer in sliding_layers(f, direction):
        out |= layer
    return out


def swap(f: IncLabeling, k: Involution) -> IncLabeling:
    """``x -> q + 1 - f(k(x))``."""
    q, lab, m = f.q, f.labels, k.map
    return IncLabeling._trusted(f.poset, q, tuple(q + 1 - lab[m[x]] for x in range(len(lab))))


# -- actions and orbits ------------------------------------------------------


@dataclass(frozen=True)
class Action:
    """A named bijection on states."""

    name: str
    fn: Callable

    def __call__(self, state):
        return self.fn(state)


PROMOTION = Action("promotion", promote)
PROMOTION_INVERSE = Action("promotion_inverse", promote_inverse)


def swap_action(k: Involution) -> Action:
    return Action("swap", lambda f: swap(f, k))


def rowmotion_action(p: Poset) -> Action:
    return Action("rowmotion", lambda i: rowmotion(p, i))


def dual_ideal_action(p: Poset, k: Involution) -> Action:
    return Action("dual_ideal", lambda i: dual_ideal(p, k, i))


IDENTITY = Action("identity", lambda s: s)


def _key(state) -> Hashable:
    # plain hashable states (custom actions) order by themselves
    return getattr(state, "sort_key", state)


@dataclass(frozen=True)
class Orbit:
    """States of one cycle, starting at the smallest and following the action."""

    action_name: str
    states: tuple

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, state):
        return state in self.state_set

    @property
    def rep(self):
        return self.states[0]

    @cached_property
    def state_set(self) -> frozenset:
        return frozenset(self.states)

    def to_dict(self) -> dict:
        return {"action": self.action_name, "states": [_state_dict(s) for s in self.states]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _state_dict(s):
    if isinstance(s, IncLabeling):
        return s.to_dict()
    if isinstance(s, OrderIdeal):
        return s.to_dict()
    return repr(s)


def _canonical(action_name: str, cycle: list) -> Orbit:
    i = min(range(len(cycle)), key=lambda j: _key(cycle[j]))
    return Orbit(action_name, tuple(cycle[i:] + cycle[:i]))


def compute_orbit(action: Action, start, step_cap: Optional[int] = None) -> Orbit:
    """Iterate ``action`` from ``start`` until it returns."""
    cap = step_cap_from_env() if step_cap is None else step_cap
    cycle = [start]
    s = action(start)
    while s != start:
        if len(cycle) >= cap:
            raise NonReturnError(f"{action.name} did not return to the start within {cap} steps")
        cycle.append(s)
        s = action(s)
    return _canonical(action.name, cycle)


def all_orbits(action: Action, states: Iterable, step_cap: Optional[int] = None) -> list[Orbit]:
    """Partition ``states`` into orbits, sorted by canonical representative."""
    cap = step_cap_from_env() if step_cap is None else step_cap
    states = list(states)
    universe = set(states)
    done: set = set()
    orbits = []
    for s0 in states:
        if s0 in done:
            continue
        cycle = [s0]
        done.add(s0)
        s = action(s0)
        while s != s0:
            if s not in universe:
                raise ClosureError(f"{action.name} maps {cycle[-1]!r} outside the state set")
            if s in done or len(cycle) >= cap:
                raise NonReturnError(f"{action.name} is not a bijection on the states near {s!r}")
            cycle.append(s)
            done.add(s)
            s = action(s)
        orbits.append(_canonical(action.name, cycle))
    orbits.sort(key=lambda o: _key(o.rep))
    return orbits


def promotion_orbits(p: Poset, q: int) -> list[Orbit]:
    return all_orbits(PROMOTION, enumerate_inc(p, q))


# -- orbit sizes from deflation ------------------------------------------------


@lru_cache(maxsize=None)
def _packed_orbit_size(w: IncLabeling) -> int:
    return len(compute_orbit(PROMOTION, w))


def deflation_data(f: IncLabeling) -> tuple[int, int, int]:
    """``(r, period, tau)``: packed label count, content period, packed orbit size."""
    w = deflate(f)
    return w.q, content(f).period, _packed_orbit_size(w)


def orbit_size_formula(q: int, r: int, ell: int, tau: int) -> int:
    m = r * ell // q
    return tau * ell // gcd(m, tau)


def orbit_size_via_deflation(f: IncLabeling) -> int:
    r, ell, tau = deflation_data(f)
    return orbit_size_formula(f.q, r, ell, tau)


def packed_orbit_types(p: Poset) -> list[tuple[int, int]]:
    """Distinct ``(r, tau)`` over all promotion orbits of packed labelings."""
    types = set()
    for f in enumerate_packed(p):
        types.add((f.q, _packed_orbit_size(f)))
    return sorted(types)


def _period_admissible(q: int, r: int, ell: int) -> bool:
    # a length-q word with r ones and exact period ell exists iff
    # ell | q, the repeating block holds r*ell/q ones, and that block can be
    # primitive (impossible for a constant block unless ell == 1)
    if q % ell or (r * ell) % q:
        return False
    m = r * ell // q
    return ell == 1 or 0 < m < ell


def promotion_order(p: Poset, q: int, mode: str = "brute") -> int:
    """Order of promotion on ``Inc^q(p)``.

    ``brute`` takes the lcm of all orbit sizes.  ``formula`` combines every
    packed orbit type with every period a content word can have.
    """
    if mode == "brute":
        return lcm(*(len(o) for o in promotion_orbits(p, q)))
    if mode == "formula":
        out = 1
        for r, tau in packed_orbit_types(p):
            if r > q:
                continue
            for ell in range(1, q + 1):
                if _period_admissible(q, r, ell):
                    out = lcm(out, orbit_size_formula(q, r, ell, tau))
        return out
    raise ValueError(f"mode must be 'brute' or 'formula', got {mode!r}")


# -- symbolic tables ----------------------------------------------------------


@dataclass(frozen=True)
class OrbitSizeTable:
    """Orbit sizes as multiples of q, one row per period q/d, one column per (r, tau)."""

    columns: tuple[tuple[int, int], ...]
    divisors: tuple[int, ...]
    cells: tuple[tuple[Optional[Fraction], ...], ...]

    def row(self, d: int) -> tuple[Optional[Fraction], ...]:
        return self.cells[self.divisors.index(d)]

    def to_rows(self) -> list[list[str]]:
        rows = [["r"] + [str(r) for r, _ in self.columns], ["tau"] + [str(t) for _, t in self.columns]]
        for d, cells in zip(self.divisors, self.cells):
            rows.append([format_q_multiple(Fraction(1, d))] + ["" if c is None else format_q_multiple(c) for c in cells])
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.to_rows())
        return buf.getvalue()


def format_q_multiple(c: Fraction) -> str:
    """``Fraction(5, 3)`` -> ``"5q/3"``; ``Fraction(1, 2)`` -> ``"q/2"``."""
    head = "q" if c.numerator == 1 else f"{c.numerator}q"
    return head if c.denominator == 1 else f"{head}/{c.denominator}"


def orbit_size_table(p: Poset) -> OrbitSizeTable:
    """Symbolic orbit sizes for generic large q.

    A content word with r ones can have period q/d exactly when d divides r;
    the size is then ``tau (q/d) / gcd(r/d, tau)``.
    """
    cols = tuple(packed_orbit_types(p))
    ds = sorted({d for r, _ in cols for d in range(1, r + 1) if r % d == 0})
    cells = []
    for d in ds:
        row = []
        for r, tau in cols:
            row.append(Fraction(tau, d * gcd(r // d, tau)) if r % d == 0 else None)
        cells.append(tuple(row))
    return OrbitSizeTable(cols, tuple(ds), tuple(cells))


# -- swap and promotion orbits ------------------------------------------------


def orbit_of(f: IncLabeling) -> Orbit:
    return compute_orbit(PROMOTION, f)


def swap_image_orbit(o: Orbit, k: Involution) -> Orbit:
    """The promotion orbit containing the swap of every state of ``o``."""
    image = compute_orbit(PROMOTION, swap(o.states[0], k))
    if len(o) > 1:
        other = swap(o.states[len(o) // 2], k)
        if other not in image:
            raise AssertionError("swap of a promotion orbit is split across orbits")
    return image


def is_swap_closed(o: Orbit, k: Involution) -> bool:
    return swap_image_orbit(o, k).rep == o.rep


__all__ = [
    "BOX",
    "DEFAULT_STEP_CAP",
    "Action",
    "PROMOTION",
    "PROMOTION_INVERSE",
    "IDENTITY",
    "Orbit",
    "OrbitSizeTable",
    "promote",
    "promote_inverse",
    "slid_elements",
    "sliding_layers",
    "sliding_subposet",
    "swap",
    "swap_action",
    "rowmotion_action",
    "dual_ideal_action",
    "compute_orbit",
    "all_orbits",
    "promotion_orbits",
    "deflation_data",
    "orbit_size_formula",
    "orbit_size_via_deflation",
    "packed_orbit_types",
    "promotion_order",
    "orbit_size_table",
    "format_q_multiple",
    "orbit_of",
    "swap_image_orbit",
    "is_swap_closed",
    "iter_inc",
]
