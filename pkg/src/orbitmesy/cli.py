"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import verify
from .dynamics import compute_orbit, PROMOTION, orbit_size_table, promote, promote_inverse, promotion_order
from .errors import CounterexampleError, NotSelfDualError, OrbitmesyError, ParseError
from .labeling import IncLabeling, count_inc, iter_inc
from .mesy import TOTAL_SUM, Statistic, antipodal_sum, census, exterior_sum, interior_sum
from .poset import Poset, antichain, build_fence, canonical_involution, chain, zigzag

FORMATS = ("text", "json", "csv")


# -- input parsing --------------------------------------------------------------


def parse_poset(spec: str) -> Poset:
    """``zigzag:N``, ``chain:N``, ``antichain:N``, ``fence:WORD`` or ``file:PATH`` (poset JSON)."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise ParseError(f"poset spec {spec!r} must look like kind:argument")
    try:
        if kind in ("zigzag", "chain", "antichain"):
            n = int(arg)
            if n < 0:
                raise ValueError
            return {"zigzag": zigzag, "chain": chain, "antichain": antichain}[kind](n)
        if kind == "fence":
            return build_fence(arg)
        if kind == "file":
            return Poset.from_json(Path(arg).read_text())
    except (ValueError, KeyError, OSError) as exc:
        raise ParseError(f"bad poset spec {spec!r}: {exc}") from exc
    raise ParseError(f"unknown poset kind {kind!r}")


def parse_q_range(text: str) -> range:
    """Inclusive ``"4..8"``, or a single value."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise ParseError(f"q range {text!r} must look like 4..8")
    lo = int(m[1])
    hi = int(m[2]) if m[2] else lo
    if lo < 1 or hi < lo:
        raise ParseError(f"empty or nonpositive q range {text!r}")
    return range(lo, hi + 1)


_SHORTHAND = re.compile(r"\s*([\d\s,]+?)\s*(?:@\s*q\s*=\s*(\d+))?\s*")


def parse_labeling_input(text: str, poset: Optional[Poset] = None, q: Optional[int] = None) -> IncLabeling:
    """A labeling from JSON, a JSON file, or shorthand like ``1,6,2,4@q=6``.

    Shorthand needs ``poset``; the bound comes from ``@q=`` or from ``q``.
    Raises ParseError for malformed text and InvariantError for labels
    that break a cover.
    """
    text = text.strip()
    if not text.startswith("{") and not _SHORTHAND.fullmatch(text):
        path = Path(text)
        if path.is_file():
            text = path.read_text().strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            f_poset = Poset.from_dict(data["poset"]) if "poset" in data else poset
            if f_poset is None:
                raise ParseError("labeling JSON has no poset and no --poset was given")
            if poset is not None and f_poset != poset:
                raise ParseError("labeling JSON poset differs from --poset")
            return IncLabeling(f_poset, int(data["q"]), tuple(int(v) for v in data["labels"]))
        except (ValueError, KeyError, TypeError) as exc:
            if isinstance(exc, OrbitmesyError):
                raise
            raise ParseError(f"bad labeling JSON: {exc}") from exc
    m = _SHORTHAND.fullmatch(text)
    if not m:
        raise ParseError(f"cannot parse labeling {text!r}")
    if poset is None:
        raise ParseError("shorthand labelings need --poset")
    labels = tuple(int(t) for t in re.split(r"[\s,]+", m[1].strip()) if t)
    bound = int(m[2]) if m[2] else q
    if bound is None:
        raise ParseError("label bound missing: add @q=N or --q")
    return IncLabeling(poset, bound, labels)


def parse_stats(text: str, p: Poset) -> list[Statistic]:
    """Comma list of ``ae``, ``ai``, ``tot`` and ``a<x>`` (antipodal sum at element x)."""
    out = []
    k = None
    for tok in (t.strip().lower() for t in text.split(",") if t.strip()):
        if tok == "tot":
            out.append(TOTAL_SUM)
            continue
        if k is None:
            try:
                k = canonical_involution(p)
            except NotSelfDualError as exc:
                raise ParseError(f"statistic {tok!r} needs a self-dual poset") from exc
        if tok == "ae":
            out.append(exterior_sum(k))
        elif tok == "ai":
            out.append(interior_sum(k))
        elif re.fullmatch(r"a\d+", tok) and int(tok[1:]) < p.n:
            out.append(antipodal_sum(int(tok[1:]), k))
        else:
            raise ParseError(f"unknown statistic {tok!r}")
    if not out:
        raise ParseError("no statistics selected")
    return out


# -- verbs --------------------------------------------------------------------


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _labeling_out(f: IncLabeling, fmt: str) -> str:
    if fmt == "json":
        return f.to_json() + "\n"
    if fmt == "csv":
        return _csv([f.labels])
    return f"{f}\n"


def cmd_enumerate(args, out) -> int:
    p = parse_poset(args.poset)
    if not args.list:
        n = count_inc(p, args.q)
        out.write(json.dumps({"count": n}) + "\n" if args.format == "json" else f"{n}\n")
        return 0
    if args.format == "json":
        labs = [list(t) for t in iter_inc(p, args.q)]
        out.write(json.dumps({"count": len(labs), "labelings": labs}) + "\n")
        return 0
    n = 0
    w = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
    for t in iter_inc(p, args.q):
        n += 1
        if w:
            w.writerow(t)
        else:
            out.write(",".join(map(str, t)) + "\n")
    if not w:
        out.write(f"count={n}\n")
    return 0


def _read_labeling(args) -> IncLabeling:
    text = sys.stdin.read() if args.labeling == "-" else args.labeling
    p = parse_poset(args.poset) if args.poset else None
    return parse_labeling_input(text, p, args.q)


def cmd_promote(args, out) -> int:
    f = _read_labeling(args)
    step = promote_inverse if args.inverse else promote
    for _ in range(args.times):
        f = step(f)
    out.write(_labeling_out(f, args.format))
    return 0


def cmd_orbit(args, out) -> int:
    o = compute_orbit(PROMOTION, _read_labeling(args), args.step_cap)
    if args.format == "json":
        out.write(o.to_json() + "\n")
    elif args.format == "csv":
        out.write(_csv(f.labels for f in o.states))
    else:
        for f in o.states:
            out.write(f"{f}\n")
        out.write(f"size={len(o)}\n")
    return 0


def cmd_order(args, out) -> int:
    p = parse_poset(args.poset)
    modes = ("brute", "formula") if args.mode == "both" else (args.mode,)
    values = {m: promotion_order(p, args.q, m) for m in modes}
    agree = len(set(values.values())) == 1
    if args.format == "json":
        out.write(json.dumps({**values, "agree": agree}) + "\n")
    elif args.format == "csv":
        out.write(_csv([list(values), list(values.values())]))
    else:
        out.write((" = " if agree else " != ").join(f"{v} ({m})" for m, v in values.items()) + "\n")
    return 0 if agree else 1


def cmd_table(args, out) -> int:
    t = orbit_size_table(parse_poset(args.poset))
    if args.format == "json":
        rows = t.to_rows()
        out.write(json.dumps({"header": rows[:2], "rows": rows[2:]}) + "\n")
    else:
        out.write(t.to_csv())
    return 0


def cmd_census(args, out) -> int:
    p = parse_poset(args.poset)
    stats = parse_stats(args.stats, p)
    c = census(p, args.q, stats, jobs=max(1, args.jobs), certificates=not args.no_certificates)
    out.write({"json": lambda: c.to_json() + "\n", "csv": c.to_csv, "text": c.to_text}[args.format]())
    return 0


def cmd_verify(args, out) -> int:
    q_range = parse_q_range(args.q_range) if args.q_range else None
    try:
        checks = verify.run_suite(args.name, q_range)
    except KeyError:
        names = ", ".join(["all", *verify.SUITES, *verify.ALIASES])
        raise ParseError(f"unknown suite {args.name!r}; choose from {names}") from None
    failed = [c for c in checks if not c.ok]
    if args.format == "json":
        out.write(json.dumps([{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks], indent=2) + "\n")
    elif args.format == "csv":
        out.write(_csv([("name", "ok", "detail")] + [(c.name, int(c.ok), c.detail) for c in checks]))
    else:
        for c in checks:
            out.write(c.line() + "\n")
        out.write(f"{len(checks)} checks, {len(failed)} failed\n")
    return 1 if failed else 0


# -- argument parsing -----------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--step-cap", type=_positive, default=None,
                        help="orbit walk cap (default: $ORBITMESY_STEP_CAP or 10^7)")

    ap = argparse.ArgumentParser(prog="orbitmesy", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, poset=True, q=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        if poset:
            sp.add_argument("--poset", required=poset == "required",
                            help="zigzag:N | chain:N | antichain:N | fence:WORD | file:PATH")
        if q:
            sp.add_argument("--q", type=_positive, required=q == "required")
        return sp

    sp = verb("enumerate", cmd_enumerate, "count (and optionally list) Inc^q(P)", "required", "required")
    sp.add_argument("--list", action="store_true", help="also print every labeling")

    for name, fn, help_ in (("promote", cmd_promote, "apply promotion to a labeling"),
                            ("orbit", cmd_orbit, "print the promotion orbit of a labeling")):
        sp = verb(name, fn, help_)
        sp.add_argument("--labeling", required=True,
                        help='JSON, a JSON file, "-" for stdin, or shorthand like 1,6,2,4@q=6')
        if name == "promote":
            sp.add_argument("--times", "-k", type=int, default=1)
            sp.add_argument("--inverse", action="store_true")

    sp = verb("order", cmd_order, "order of promotion on Inc^q(P)", "required", "required")
    sp.add_argument("--mode", choices=("both", "brute", "formula"), default="both")

    verb("table", cmd_table, "symbolic orbit-size table as CSV", "required", False)

    sp = verb("census", cmd_census, "orbit-by-orbit statistic averages", "required", "required")
    sp.add_argument("--stats", default="ae,ai,tot", help="comma list of ae, ai, tot, a<x>")
    sp.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    sp.add_argument("--no-certificates", action="store_true")

    sp = verb("verify", cmd_verify, "run a named verification suite", False, False)
    sp.add_argument("name", help="suite name or 'all'")
    sp.add_argument("--q-range", help="inclusive range such as 4..8")
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    saved_cap = os.environ.get("ORBITMESY_STEP_CAP")
    if args.step_cap is not None:
        # worker processes read the cap from the environment
        os.environ["ORBITMESY_STEP_CAP"] = str(args.step_cap)
    try:
        return args.fn(args, out)
    except CounterexampleError as exc:
        print(f"orbitmesy: verification failed: {exc}", file=sys.stderr)
        return 1
    except (OrbitmesyError, RuntimeError) as exc:
        print(f"orbitmesy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved_cap is None:
            os.environ.pop("ORBITMESY_STEP_CAP", None)
        else:
            os.environ["ORBITMESY_STEP_CAP"] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
