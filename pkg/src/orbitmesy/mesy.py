"""Statistics, exact orbit averages, and orbitmesy deciders and certificates.

Every average is a :class:`fractions.Fraction`; equality is exact.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .dynamics import (
    PROMOTION,
    Action,
    Orbit,
    all_orbits,
    compute_orbit,
    deflation_data,
    is_swap_closed,
)
from .errors import (
    ArityError,
    CounterexampleError,
    EmptySetError,
    NotHomomesicError,
    NotSelfDualError,
    SymmetryError,
    TypeMismatchError,
)
from .labeling import (
    ContentWord,
    IncLabeling,
    _require_z4,
    content,
    contains_pattern,
    deflate,
    enumerate_inc,
    is_balanced,
    is_linear_extension,
)
from .poset import Involution, OrderIdeal, Poset, canonical_involution

# -- statistics --------------------------------------------------------------


@dataclass(frozen=True)
class Statistic:
    """An integer statistic on labelings or order ideals.

    ``kind`` is ``"antipodal_sum"``, ``"total_sum"`` or ``"cardinality"``.
    """

    kind: str
    name: str
    x: Optional[int] = None
    involution: Optional[Involution] = None

    def __post_init__(self):
        if self.kind == "antipodal_sum":
            if self.x is None or self.involution is None:
                raise ValueError("antipodal sums need an element and an involution")
            if not 0 <= self.x < len(self.involution):
                raise IndexError(f"element {self.x} out of range")
        elif self.kind not in ("total_sum", "cardinality"):
            raise ValueError(f"unknown statistic kind {self.kind!r}")

    def __call__(self, state) -> int:
        return eval_statistic(self, state)


def antipodal_sum(x: int, k: Involution, name: Optional[str] = None) -> Statistic:
    return Statistic("antipodal_sum", name or f"A_{x}", x, k)


def exterior_sum(k: Involution) -> Statistic:
    """Antipodal sum at the leftmost element of a fence."""
    return antipodal_sum(0, k, "A_e")


def interior_sum(k: Involution) -> Statistic:
    """Antipodal sum at the second element; on Z4 this is the middle pair."""
    return antipodal_sum(1, k, "A_i")


TOTAL_SUM = Statistic("total_sum", "Tot")
CARDINALITY = Statistic("cardinality", "card")


def eval_statistic(s: Statistic, state) -> int:
    if s.kind == "cardinality":
        if not isinstance(state, OrderIdeal):
            raise TypeMismatchError(f"cardinality needs an order ideal, got {type(state).__name__}")
        return len(state)
    if not isinstance(state, IncLabeling):
        raise TypeMismatchError(f"{s.name} needs an increasing labeling, got {type(state).__name__}")
    if s.kind == "total_sum":
        return sum(state.labels)
    return state.labels[s.x] + state.labels[s.involution.map[s.x]]


def orbit_average(o: Orbit | Sequence, s: Statistic) -> Fraction:
    states = o.states if isinstance(o, Orbit) else list(o)
    return Fraction(sum(eval_statistic(s, f) for f in states), len(states))


def global_average(states: Iterable, s: Statistic) -> Fraction:
    states = list(states)
    if not states:
        raise EmptySetError("global average over an empty set")
    return orbit_average(states, s)


def is_orbitmesic(o: Orbit, s: Statistic, global_avg: Fraction) -> bool:
    return orbit_average(o, s) == global_avg


def is_homomesic(action: Action, states: Sequence, s: Statistic) -> Optional[Fraction]:
    """Common orbit average if every orbit has the same one, else ``None``."""
    orbits = all_orbits(action, states)
    avgs = {orbit_average(o, s) for o in orbits}
    return avgs.pop() if len(avgs) == 1 else None


# -- homomesy of one action gives orbitmesy of another -------------------------


@dataclass(frozen=True)
class CoveredOrbit:
    orbit: Orbit
    phi_closed: bool
    average: Fraction
    orbitmesic: bool


@dataclass(frozen=True)
class CoveredReport:
    global_average: Fraction
    orbits: tuple[CoveredOrbit, ...]

    @property
    def closed_count(self) -> int:
        return sum(c.phi_closed for c in self.orbits)


def covered_orbitmesy_check(phi: Action, psi: Action, states: Sequence, s: Statistic) -> CoveredReport:
    """Check that every phi-closed psi-orbit is orbitmesic, given phi homomesic.

    Raises NotHomomesicError if phi is not homomesic for ``s`` and
    CounterexampleError if a phi-closed orbit misses the global average.
    """
    states = list(states)
    if is_homomesic(phi, states, s) is None:
        raise NotHomomesicError(f"{phi.name} is not homomesic for {s.name}")
    g = global_average(states, s)
    rows = []
    for o in all_orbits(psi, states):
        closed = all(phi(x) in o for x in o.states)
        avg = orbit_average(o, s)
        rows.append(CoveredOrbit(o, closed, avg, avg == g))
        if closed and avg != g:
            raise CounterexampleError(f"{phi.name}-closed {psi.name} orbit at {o.rep!r} has average {avg} != {g}")
    return CoveredReport(g, tuple(rows))


# -- sufficient conditions ---------------------------------------------------


def is_x_stable(o: Orbit, x: int, k: Involution) -> bool:
    """Whether the values at ``x`` and ``k(x)`` across the orbit are symmetric under ``m -> r+1-m``."""
    r = o.states[0].q
    y = k.map[x]
    counts = Counter()
    for f in o.states:
        counts[f.labels[x]] += 1
        counts[f.labels[y]] += 1
    return all(counts[m] == counts[r + 1 - m] for m in range(1, r + 1))


def _antipodal_reps(k: Involution) -> list[int]:
    return [x for x in range(len(k)) if x <= k.map[x]]


@dataclass(frozen=True)
class Certificate:
    name: str
    fired: bool
    statistics: tuple[str, ...]
    detail: str = ""


@dataclass(frozen=True)
class CertificateReport:
    labeling: IncLabeling
    r: int
    period: int
    tau: int
    orbit_size: int
    certificates: tuple[Certificate, ...]
    orbitmesic: dict

    def fired(self) -> list[Certificate]:
        return [c for c in self.certificates if c.fired]

    @property
    def certified(self) -> set[str]:
        return {s for c in self.certificates if c.fired for s in c.statistics}


def _stat_table(k: Involution) -> list[Statistic]:
    return [TOTAL_SUM] + [antipodal_sum(x, k) for x in _antipodal_reps(k)]


def orbitmesy_certificates(
    f: IncLabeling,
    k: Involution,
    global_averages: Optional[dict[str, Fraction]] = None,
    orbit: Optional[Orbit] = None,
) -> CertificateReport:
    """Evaluate the three deflation-based sufficient conditions on the orbit of ``f``.

    ``linear_extension``: the deflation is a linear extension and
    ``gcd(r*period/q, tau) == 1``; certifies the total sum.
    ``x_stable``: the same gcd condition and the deflated orbit is x-stable;
    certifies ``A_x``, once per antipodal pair.
    ``content_reversal``: some rotation of the content word equals its
    reverse, the orbit has ``tau * period`` elements and the deflated orbit
    is swap-closed; certifies every statistic.

    Fired certificates are checked against the brute-force verdict and a
    disagreement raises CounterexampleError.
    """
    p, q = f.poset, f.q
    o = orbit if orbit is not None else compute_orbit(PROMOTION, f)
    r, ell, tau = deflation_data(f)
    w = deflate(f)
    wo = compute_orbit(PROMOTION, w)
    m = gcd(r * ell // q, tau)
    stats = _stat_table(k)
    if global_averages is None:
        universe = enumerate_inc(p, q)
        global_averages = {s.name: global_average(universe, s) for s in stats}
    verdict = {s.name: orbit_average(o, s) == global_averages[s.name] for s in stats}

    certs = []
    lin = is_linear_extension(w) and m == 1
    certs.append(Certificate("linear_extension", lin, ("Tot",), f"gcd={m}"))
    for x in _antipodal_reps(k):
        stable = m == 1 and is_x_stable(wo, x, k)
        certs.append(Certificate("x_stable", stable, (f"A_{x}",), f"x={x} gcd={m}"))
    c = content(f)
    rev = c.reverse()
    rotates = any(c.rotate(i) == rev for i in range(1, q + 1))
    full = len(o) == tau * ell
    closed = is_swap_closed(wo, k)
    cr = rotates and full and closed
    certs.append(Certificate("content_reversal", cr, tuple(s.name for s in stats),
                             f"rotation={rotates} size={full} swap_closed={closed}"))

    for cert in certs:
        if cert.fired:
            for name in cert.statistics:
                if not verdict[name]:
                    raise CounterexampleError(f"certificate {cert.name} fired for {f!r} but {name} is not orbitmesic")
    return CertificateReport(f, r, ell, tau, len(o), tuple(certs), verdict)


# -- the four-element zig-zag ------------------------------------------------


@dataclass(frozen=True)
class Z4GapProfile:
    alpha: int
    beta: int
    gamma: int
    delta: int

    @property
    def q(self) -> int:
        return self.alpha + self.beta + self.gamma + self.delta + 4

    @property
    def symmetric(self) -> bool:
        return self.alpha == self.gamma and self.beta == self.delta

    @property
    def balanced(self) -> bool:
        return self.alpha == self.gamma or self.beta == self.delta


def z4_gap_profile(c: ContentWord) -> Z4GapProfile:
    """Gaps between the four ones after rotating the word to end in a 1.

    The smallest left rotation that puts a 1 in the last position is used.
    """
    if c.ones_count != 4:
        raise ArityError(f"need exactly four ones, got {c.ones_count}")
    q = c.q
    shift = next(i for i in range(q) if c.rotate(i).bits[-1] == 1)
    pos = c.rotate(shift).ones_positions()
    a = pos[0] - 1
    b = pos[1] - pos[0] - 1
    g = pos[2] - pos[1] - 1
    return Z4GapProfile(a, b, g, q - 4 - a - b - g)


def _symmetric_sum(g: Z4GapProfile) -> int:
    return (2 * g.alpha + 2 * g.beta + 5) * (g.alpha + g.beta + 2)


def z4_exterior_sum_closed_form(g: Z4GapProfile) -> int:
    """Sum of the exterior antipodal sum over the orbit of a labeling deflating to 1324.

    Raises SymmetryError for 2- or 4-fold symmetric content; the error's
    ``value`` carries the sum for that case.
    """
    if g.symmetric:
        raise SymmetryError("content word has rotational symmetry", _symmetric_sum(g))
    q = g.q
    return q * (q + 1) + (g.alpha - g.gamma) * (g.delta - g.beta)


def z4_interior_sum_closed_form(g: Z4GapProfile) -> int:
    if g.symmetric:
        raise SymmetryError("content word has rotational symmetry", _symmetric_sum(g))
    q = g.q
    return q * (q + 1) + (g.beta - g.delta) * (g.alpha - g.gamma)


PATTERN_1324 = (1, 3, 2, 4)


def z4_frame(o: Orbit) -> Optional[IncLabeling]:
    """First state along the orbit that deflates to 1324 and uses label q."""
    for f in o.states:
        if deflate(f).labels == PATTERN_1324 and f.q in f.labels:
            return f
    return None


@dataclass(frozen=True)
class Z4Classification:
    avoids_1324: bool
    balanced: bool
    predicted_orbitmesic: bool
    orbitmesic: dict
    averages: dict
    profile: Optional[Z4GapProfile] = None
    closed_form_sums: dict = field(default_factory=dict)


def classify_z4_orbit(o: Orbit, global_averages: Optional[dict[str, Fraction]] = None) -> Z4Classification:
    """Predict antipodal-sum orbitmesy on Z4 from pattern avoidance and balance.

    The prediction is compared with the brute-force verdict for both
    antipodal sums; for orbits containing 1324 the orbit sums are also
    compared with the closed forms in the gap profile.  Any mismatch raises
    CounterexampleError.
    """
    f0 = o.states[0]
    p, q = f0.poset, f0.q
    _require_z4(p)
    k = canonical_involution(p)
    ae, ai = exterior_sum(k), interior_sum(k)
    if global_averages is None:
        universe = enumerate_inc(p, q)
        global_averages = {s.name: global_average(universe, s) for s in (ae, ai)}

    flags = [is_balanced(f) for f in o.states]
    # constancy along the orbit only holds when all four labels differ
    if len(set(f0.labels)) == 4 and len(set(flags)) != 1:
        raise CounterexampleError(f"balance is not constant on the orbit of {f0!r}")
    # an orbit is imbalanced when every state is
    balanced = any(flags)
    avoids = not any(contains_pattern(f, PATTERN_1324) for f in o.states)
    predicted = avoids or balanced
    averages = {s.name: orbit_average(o, s) for s in (ae, ai)}
    verdict = {name: averages[name] == global_averages[name] for name in averages}
    for name, ok in verdict.items():
        if ok != predicted:
            raise CounterexampleError(f"orbit of {f0!r}: predicted {predicted}, {name} orbitmesic={ok}")

    profile, sums = None, {}
    if not avoids:
        frame = z4_frame(o)
        profile = z4_gap_profile(content(frame))
        if profile.balanced != balanced:
            raise CounterexampleError(f"gap profile {profile} disagrees with the balance flag")
        for s, closed in ((ae, z4_exterior_sum_closed_form), (ai, z4_interior_sum_closed_form)):
            try:
                expected = closed(profile)
            except SymmetryError as exc:
                expected = exc.value
            actual = sum(eval_statistic(s, f) for f in o.states)
            if actual != expected:
                raise CounterexampleError(f"{s.name} orbit sum {actual} != closed form {expected}")
            sums[s.name] = actual
    return Z4Classification(avoids, balanced, predicted, verdict, averages, profile, sums)


# -- census ------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    orbit: Orbit
    averages: dict
    orbitmesic: dict
    certificates: tuple[str, ...] = ()

    @property
    def rep(self) -> IncLabeling:
        return self.orbit.rep

    @property
    def size(self) -> int:
        return len(self.orbit)

    def to_dict(self) -> dict:
        return {
            "rep": list(self.rep.labels),
            "size": self.size,
            "averages": {k: fraction_str(v) for k, v in self.averages.items()},
            "orbitmesic": dict(self.orbitmesic),
            "certificates": list(self.certificates),
        }


@dataclass(frozen=True)
class Census:
    poset: Poset
    q: int
    stat_names: tuple[str, ...]
    state_count: int
    global_averages: dict
    reports: tuple[OrbitReport, ...]

    @property
    def summary(self) -> dict:
        out = {
            "states": self.state_count,
            "orbits": len(self.reports),
            "global_averages": {k: fraction_str(v) for k, v in self.global_averages.items()},
            "orbitmesic": {n: sum(r.orbitmesic[n] for r in self.reports) for n in self.stat_names},
        }
        out["uncovered_orbitmesic"] = sum(
            1 for r in self.reports
            if any(r.orbitmesic[n] for n in self.stat_names) and not r.certificates
        )
        return out

    def summary_line(self) -> str:
        s = self.summary
        parts = [f"orbits={s['orbits']}"] + [f"orbitmesic({n})={c}" for n, c in s["orbitmesic"].items()]
        return " ".join(parts)

    def exceptional(self, name: str) -> list[OrbitReport]:
        return [r for r in self.reports if not r.orbitmesic[name]]

    def to_json(self) -> str:
        return json.dumps({"orbits": [r.to_dict() for r in self.reports], "summary": self.summary}, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rep", "size"] + [f"avg({n})" for n in self.stat_names]
                   + [f"orbitmesic({n})" for n in self.stat_names] + ["certificates"])
        for r in self.reports:
            w.writerow([" ".join(map(str, r.rep.labels)), r.size]
                       + [fraction_str(r.averages[n]) for n in self.stat_names]
                       + [int(r.orbitmesic[n]) for n in self.stat_names]
                       + [";".join(r.certificates)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for r in self.reports:
            avgs = " ".join(f"{n}={fraction_str(r.averages[n])}" for n in self.stat_names)
            cert = ",".join(r.certificates) or "-"
            lines.append(f"{','.join(map(str, r.rep.labels))} size={r.size} {avgs} certs={cert}")
        g = " ".join(f"{n}={fraction_str(v)}" for n, v in self.global_averages.items())
        lines.append(f"global {g}")
        lines.append(self.summary_line())
        return "\n".join(lines) + "\n"


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _report(args) -> OrbitReport:
    o, stats, globals_, k = args
    avgs = {s.name: orbit_average(o, s) for s in stats}
    flags = {n: avgs[n] == globals_[n] for n in avgs}
    certs: tuple[str, ...] = ()
    if k is not None:
        needed = {s.name: global_average_closed(s, o.rep.poset, o.rep.q) for s in _stat_table(k)}
        rep = orbitmesy_certificates(o.rep, k, needed, orbit=o)
        certs = tuple(sorted({f"{c.name}:{','.join(c.statistics)}" for c in rep.fired()}))
    return OrbitReport(o, avgs, flags, certs)


def global_average_closed(s: Statistic, p: Poset, q: int) -> Fraction:
    """Global averages on a self-dual poset: ``q+1`` for antipodal sums, ``n(q+1)/2`` for the total."""
    if s.kind == "antipodal_sum":
        return Fraction(q + 1)
    if s.kind == "total_sum":
        return Fraction(p.n * (q + 1), 2)
    raise TypeMismatchError(f"no closed form for {s.name}")


def census(
    p: Poset,
    q: int,
    stats: Sequence[Statistic],
    jobs: int = 1,
    certificates: bool = True,
) -> Census:
    """One report per promotion orbit of ``Inc^q(p)``.

    Certificates are evaluated when ``p`` is self-dual.  With ``jobs > 1``
    orbit reports are computed in worker processes; output order is
    unchanged.
    """
    states = enumerate_inc(p, q)
    if not states:
        raise EmptySetError(f"Inc^{q} is empty for {p!r}")
    globals_ = {s.name: global_average(states, s) for s in stats}
    k = None
    if certificates:
        try:
            k = canonical_involution(p)
        except NotSelfDualError:
            k = None
    orbits = all_orbits(PROMOTION, states)
    work = [(o, tuple(stats), globals_, k) for o in orbits]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_report, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        reports = [_report(w) for w in work]
    return Census(p, q, tuple(s.name for s in stats), len(states), globals_, tuple(reports))


__all__ = [
    "Statistic",
    "antipodal_sum",
    "exterior_sum",
    "interior_sum",
    "TOTAL_SUM",
    "CARDINALITY",
    "eval_statistic",
    "orbit_average",
    "global_average",
    "global_average_closed",
    "is_orbitmesic",
    "is_homomesic",
    "covered_orbitmesy_check",
    "CoveredReport",
    "is_x_stable",
    "Certificate",
    "CertificateReport",
    "orbitmesy_certificates",
    "Z4GapProfile",
    "z4_gap_profile",
    "z4_exterior_sum_closed_form",
    "z4_interior_sum_closed_form",
    "z4_frame",
    "classify_z4_orbit",
    "Z4Classification",
    "OrbitReport",
    "Census",
    "census",
    "fraction_str",
]
