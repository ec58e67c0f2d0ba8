"""Named verification suites that cross-check closed-form results by brute force.

Each suite returns a list of :class:`Check`; the CLI exits nonzero if any
check fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .dynamics import (
    PROMOTION,
    dual_ideal_action,
    orbit_size_via_deflation,
    promote,
    promote_inverse,
    promotion_order,
    promotion_orbits,
    rowmotion_action,
    slid_elements,
    sliding_subposet,
    swap,
    swap_action,
)
from .errors import OrbitmesyError
from .labeling import content, deflate, enumerate_inc, random_inc
from .mesy import (
    CARDINALITY,
    TOTAL_SUM,
    antipodal_sum,
    classify_z4_orbit,
    covered_orbitmesy_check,
    exterior_sum,
    global_average,
    interior_sum,
    is_homomesic,
)
from .poset import Poset, build_from_covers, canonical_involution, enumerate_order_ideals, zigzag


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f"  {self.detail}" if self.detail else "")


def ten_element_poset() -> Poset:
    """A self-dual poset on ten elements with three ranks (a..j -> 0..9)."""
    a, b, c, d, e, f, g, h, i, j = range(10)
    return build_from_covers(10, [
        (a, d), (a, f), (b, d), (b, e), (b, f), (b, g), (c, e), (c, g),
        (d, h), (e, h), (f, j), (g, j), (d, i), (e, i), (f, i), (g, i),
    ])


def _guard(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except (OrbitmesyError, AssertionError) as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, ok, detail)


# -- suites -------------------------------------------------------------------


def orbit_size_formula_suite(q_range: Optional[range] = None) -> list[Check]:
    q_range = q_range or range(1, 9)
    out = []
    for n in (3, 4):
        p = zigzag(n)
        for q in q_range:
            def run(p=p, q=q):
                bad = 0
                total = 0
                for o in promotion_orbits(p, q):
                    for f in o.states:
                        total += 1
                        bad += orbit_size_via_deflation(f) != len(o)
                return bad == 0, f"{total} labelings, {bad} mismatches"
            out.append(_guard(f"orbit size formula Z{n} q={q}", run))
    return out


def _order_suite(n: int, factor: int, default: range) -> Callable[[Optional[range]], list[Check]]:
    def suite(q_range: Optional[range] = None) -> list[Check]:
        out = []
        for q in q_range or default:
            def run(q=q):
                p = zigzag(n)
                brute = promotion_order(p, q, "brute")
                formula = promotion_order(p, q, "formula")
                ok = brute == formula == factor * q
                return ok, f"brute={brute} formula={formula} expected={factor * q}"
            out.append(_guard(f"promotion order Z{n} q={q}", run))
        return out
    return suite


order_z3_suite = _order_suite(3, 2, range(4, 8))
order_z4_suite = _order_suite(4, 15, range(5, 8))
order_z5_suite = _order_suite(5, 120, range(6, 8))


def _swap_identities(f, k) -> list[str]:
    """Names of the swap identities that fail for ``f``."""
    failed = []
    sf = swap(f, k)
    if content(sf) != content(f).reverse():
        failed.append("content reversal")
    if deflate(sf) != swap(deflate(f), k):
        failed.append("deflation commutes")
    if sliding_subposet(sf) != frozenset(k.map[x] for x in sliding_subposet(f, "inverse")):
        failed.append("sliding duality")
    if swap(promote_inverse(f), k) != promote(sf):
        failed.append("anticommutation")
    if promote_inverse(promote(f)) != f or promote(promote_inverse(f)) != f:
        failed.append("inverse round trip")
    if slid_elements(f) != sliding_subposet(f) or slid_elements(f, "inverse") != sliding_subposet(f, "inverse"):
        failed.append("layered sliding subposet")
    return failed


def swap_suite(q_range: Optional[range] = None, samples: int = 500, seed: int = 0) -> list[Check]:
    out = []
    z4 = zigzag(4)
    k4 = canonical_involution(z4)
    for q in q_range or range(1, 7):
        def run(q=q):
            labs = enumerate_inc(z4, q)
            bad = [(f, _swap_identities(f, k4)) for f in labs]
            bad = [b for b in bad if b[1]]
            return not bad, f"{len(labs)} labelings, {len(bad)} failures" + (f" first={bad[0]}" if bad else "")
        out.append(_guard(f"swap identities Z4 q={q}", run))

    def run_random():
        p = ten_element_poset()
        k = canonical_involution(p)
        rng = random.Random(seed)
        bad = []
        for _ in range(samples):
            f = random_inc(p, rng.randint(p.longest_chain, 12), rng)
            fails = _swap_identities(f, k)
            if fails:
                bad.append((f, fails))
        return not bad, f"{samples} random labelings, {len(bad)} failures"
    out.append(_guard("swap identities ten-element poset", run_random))
    return out


def swap_closed_suite(q_range: Optional[range] = None) -> list[Check]:
    out = []
    p = zigzag(4)
    k = canonical_involution(p)
    stats = (exterior_sum(k), interior_sum(k), TOTAL_SUM)
    for q in q_range or range(1, 9):
        def run(q=q):
            states = enumerate_inc(p, q)
            if not states:
                return True, "empty"
            closed = 0
            for s in stats:
                rep = covered_orbitmesy_check(swap_action(k), PROMOTION, states, s)
                closed = rep.closed_count
            return True, f"{closed} swap-closed orbits, all orbitmesic"
        out.append(_guard(f"swap-closed orbits orbitmesic Z4 q={q}", run))

    def run_rowmotion():
        z = zigzag(4)
        kz = canonical_involution(z)
        ideals = enumerate_order_ideals(z)
        rep = covered_orbitmesy_check(dual_ideal_action(z, kz), rowmotion_action(z), ideals, CARDINALITY)
        return True, f"{rep.closed_count} of {len(rep.orbits)} rowmotion orbits dual-closed"
    out.append(_guard("dual-closed rowmotion orbits J(Z4)", run_rowmotion))
    return out


def global_average_suite(q_range: Optional[range] = None) -> list[Check]:
    out = []
    for p, qs in ((zigzag(4), q_range or range(2, 9)), (zigzag(6), q_range or range(2, 7)),
                  (ten_element_poset(), range(3, 6))):
        k = canonical_involution(p)
        for q in qs:
            def run(p=p, k=k, q=q):
                states = enumerate_inc(p, q)
                if not states:
                    return True, "empty"
                for x in range(p.n):
                    if global_average(states, antipodal_sum(x, k)) != q + 1:
                        return False, f"A_{x} average differs from q+1"
                tot = global_average(states, TOTAL_SUM)
                return tot == Fraction(p.n * (q + 1), 2), f"Tot average {tot}"
            out.append(_guard(f"global averages n={p.n} q={q}", run))
    return out


def z4_classification_suite(q_range: Optional[range] = None) -> list[Check]:
    out = []
    for q in q_range or range(4, 9):
        def run(q=q):
            orbits = promotion_orbits(zigzag(4), q)
            results = [classify_z4_orbit(o) for o in orbits]
            failing = sum(not c.predicted_orbitmesic for c in results)
            return True, f"{len(orbits)} orbits, {failing} not orbitmesic, predictions agree"
        out.append(_guard(f"Z4 classification q={q}", run))
    return out


def z4_total_sum_suite(q_range: Optional[range] = None) -> list[Check]:
    out = []
    for q in q_range or range(1, 9):
        def run(q=q):
            states = enumerate_inc(zigzag(4), q)
            if not states:
                return True, "empty"
            avg = is_homomesic(PROMOTION, states, TOTAL_SUM)
            return avg == 2 * (q + 1), f"common average {avg}"
        out.append(_guard(f"Z4 total sum homomesy q={q}", run))
    return out


def swap_homomesy_suite(q_range: Optional[range] = None) -> list[Check]:
    out = []
    p = zigzag(4)
    k = canonical_involution(p)
    for q in q_range or range(1, 9):
        def run(q=q):
            states = enumerate_inc(p, q)
            if not states:
                return True, "empty"
            avgs = [is_homomesic(swap_action(k), states, s) for s in (exterior_sum(k), interior_sum(k))]
            return all(a == q + 1 for a in avgs), f"averages {avgs}"
        out.append(_guard(f"swap antipodal homomesy Z4 q={q}", run))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "orbit-size-formula": orbit_size_formula_suite,
    "order-z3": order_z3_suite,
    "order-z4": order_z4_suite,
    "order-z5": order_z5_suite,
    "swap-anticommutation": swap_suite,
    "swap-homomesy": swap_homomesy_suite,
    "swap-closed-orbitmesy": swap_closed_suite,
    "global-averages": global_average_suite,
    "z4-classification": z4_classification_suite,
    "z4-total-sum": z4_total_sum_suite,
}

# result labels used in the literature, accepted as synonyms on the command line
ALIASES = {
    "thm-3.13": "orbit-size-formula",
    "cor-4.1": "order-z3",
    "cor-4.2": "order-z4",
    "cor-4.3": "order-z5",
    "prop-5.5": "swap-anticommutation",
    "prop-5.10": "swap-homomesy",
    "thm-5.12": "swap-closed-orbitmesy",
    "lem-6.1": "global-averages",
    "thm-7.6": "z4-classification",
    "cor-7.10": "z4-total-sum",
}


def run_suite(name: str, q_range: Optional[range] = None) -> list[Check]:
    if name == "all":
        return [c for n in SUITES for c in run_suite(n, q_range)]
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise KeyError(name)
    return SUITES[key](q_range)
