"""Command-line front end.

Exit codes: 0 success, 1 a verification verdict failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass, field

from . import __version__, _backend
from .arith import DEFAULT_BOUNDS, SearchBounds
from .dickson import (
    bateman_horn_constant,
    count_prime_aps,
    gap_pair_counts,
    is_admissible,
    parse_system,
    predicted_count,
    sieve_report,
)
from .equations import (
    DESCRIPTIONS,
    EXPONENTIAL_CLAIMS,
    LEMMAS,
    EmptySearchSpace,
    EquationSolution,
    FamilyId,
    FIELDS,
    Verdict,
    expected_in_range,
    solve_family,
    verify_lemma,
    verify_theorem1,
)
from .k4 import K4Verdict, enumerate_k4_candidates, link_candidate_to_family

SCHEMA = "k4dioph.report"
SCHEMA_VERSION = 1
THREADS_ENV = "K4DIOPH_THREADS"


@dataclass
class RunReport:
    command: str
    bounds: SearchBounds
    results: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    wall_time: float = 0.0
    version: str = __version__
    columns: tuple = ()

    def result_section(self):
        """The deterministic part of the report (everything but timing)."""
        return json.dumps(
            {"bounds": self.bounds.to_dict(), "results": self.results, "verdicts": self.verdicts},
            sort_keys=True,
            indent=2,
        )

    def to_json(self):
        doc = {
            "schema": SCHEMA,
            "version": SCHEMA_VERSION,
            "package_version": self.version,
            "command": self.command,
            "bounds": self.bounds.to_dict(),
            "results": self.results,
            "verdicts": self.verdicts,
            "wall_time": round(self.wall_time, 6),
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA:
            raise ValueError("not a k4dioph report")
        if doc.get("version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report version {doc.get('version')}")
        return cls(
            command=doc["command"],
            bounds=SearchBounds(**doc["bounds"]),
            results=doc["results"],
            verdicts=doc["verdicts"],
            wall_time=doc["wall_time"],
            version=doc["package_version"],
        )

    @property
    def failed(self):
        return any(v["status"] == "fail" for v in self.verdicts)


def solutions_from_report(report: RunReport):
    return [EquationSolution.from_record(r, report.bounds) for r in report.results if "family" in r]


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "-" if v is None else str(v)


def render(report: RunReport, fmt):
    if fmt == "report":
        return report.to_json() + "\n"
    lines = []
    cols = report.columns or (tuple(report.results[0].keys()) if report.results else ())
    if fmt == "lines":
        for rec in report.results:
            lines.append(" ".join(_cell(rec.get(c)) for c in cols))
        for v in report.verdicts:
            lines.append(f"{v['status'].upper()} {v['name']}: {v['detail']}")
        return "".join(line + "\n" for line in lines)
    rows = [[_cell(rec.get(c)) for c in cols] for rec in report.results]
    if cols:
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for r in rows:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        if not rows:
            lines.append("(no results)")
    for v in report.verdicts:
        lines.append(f"[{v['status'].upper():4}] {v['name']}: {v['detail']}")
    lines.append(f"# {report.command}; bounds {_cell(report.bounds.to_dict())}")
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _solution_rows(sols):
    return [s.as_record() for s in sols]


def cmd_solve(args, bounds):
    family = args.family
    min_exp = max(args.min_c or 1, args.min_n or 1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", EmptySearchSpace)
        sols = solve_family(family, bounds, min_exp=min_exp)
    report = RunReport(f"solve {family.value}", bounds, _solution_rows(sols), columns=FIELDS[family])
    for w in caught:
        report.verdicts.append(Verdict("search space", "warn", str(w.message)).as_record())
    return report


def cmd_verify_lemma(args, bounds):
    lemma = args.lemma
    sols = verify_lemma(lemma, bounds)
    expected = expected_in_range(lemma, bounds)
    ok = [s.values() for s in sols] == [s.values() for s in expected]
    report = RunReport(f"verify-lemma {lemma.value}", bounds, _solution_rows(sols), columns=FIELDS[lemma])
    report.verdicts.append(_lemma_verdict(lemma, sols, expected, ok))
    return report


def _lemma_verdict(lemma, sols, expected, ok):
    shown = ", ".join("(" + ",".join(map(str, s.values())) + ")" for s in sols) or "none"
    return Verdict(
        f"{lemma.value} [{DESCRIPTIONS[lemma]}]",
        "pass" if ok else "fail",
        f"bounded check: found {shown}; expected {len(expected)} in range",
    ).as_record()


def cmd_verify_paper(args, bounds):
    extra = ()
    if args.inject_bad_tuple:
        extra = (EquationSolution(FamilyId.F1, p=101, q=5, a=2, b=1, c=2),)
    rep = verify_theorem1(bounds, extra_solutions=extra)
    report = RunReport("verify-paper", bounds, columns=("family",) + FIELDS[FamilyId.F1] + ("case",))
    report.results.extend(_solution_rows(rep.structured))
    report.verdicts.extend(v.as_record() for v in rep.verdicts)
    for lemma in LEMMAS:
        sols = verify_lemma(lemma, bounds)
        expected = expected_in_range(lemma, bounds)
        ok = [s.values() for s in sols] == [s.values() for s in expected]
        report.verdicts.append(_lemma_verdict(lemma, sols, expected, ok))
    for fam, claimed in EXPONENTIAL_CLAIMS.items():
        sols = solve_family(fam, bounds, min_exp=2)
        expected = [s for s in claimed if s.m <= bounds.max_m and s.n <= bounds.max_exp]
        ok = [s.values() for s in sols] == [s.values() for s in expected]
        shown = ", ".join("(" + ",".join(map(str, s.values())) + ")" for s in sols) or "none"
        report.verdicts.append(Verdict(
            f"{fam.value} with n >= 2 [{DESCRIPTIONS[fam]}]", "pass" if ok else "fail",
            f"bounded check: found {shown}").as_record())
    return report


def cmd_k4(args, bounds):
    cands = enumerate_k4_candidates(args.max_q, bounds, include_rejected=args.all)
    rows = []
    for c in cands:
        rec = {
            "q": c.q,
            "order": c.order,
            "primes": list(c.distinct_primes),
            "verdict": c.verdict.value,
            "families": [f.value for f in link_candidate_to_family(c)] if c.verdict is K4Verdict.ACCEPTED else [],
        }
        rows.append(rec)
    return RunReport(f"k4 max_q={args.max_q}", bounds, rows, columns=("q", "order", "primes", "verdict", "families"))


def cmd_sieve(args, bounds):
    rep = sieve_report(args.system, args.h, args.prime_bound, threads=args.threads)
    rec = rep.as_record()
    rec["system"] = str(args.system)
    cols = ("system", "h", "empirical_count", "constant_CF", "predicted_count", "predicted_closed_form", "ratio")
    return RunReport(f"sieve {args.system.name} h={args.h}", bounds, [rec], columns=cols)


def cmd_admissible(args, bounds):
    v = is_admissible(args.system, args.prime_bound)
    rec = {"system": str(args.system), **v.as_record()}
    cols = ("system", "admissible", "blocking_prime", "positive_point", "tested_prime_bound")
    return RunReport(f"admissible {args.system.name}", bounds, [rec], columns=cols)


def cmd_constant(args, bounds):
    cf, delta = bateman_horn_constant(args.system, args.prime_bound)
    rec = {"system": str(args.system), "constant_CF": round(cf, 12), "last_factor_delta": delta,
           "euler_prime_bound": args.prime_bound}
    return RunReport(f"constant {args.system.name}", bounds, [rec],
                     columns=("system", "constant_CF", "last_factor_delta", "euler_prime_bound"))


def cmd_predict(args, bounds):
    cf = args.cf
    if cf is None:
        cf, _ = bateman_horn_constant(args.system, args.prime_bound)
    pred = predicted_count(args.system, args.h, cf)
    rec = {"system": str(args.system), "h": args.h, "constant_CF": round(cf, 12),
           "closed_form": round(pred.closed_form, 6),
           "integral": None if pred.integral is None else round(pred.integral, 6), "used": pred.used}
    return RunReport(f"predict {args.system.name} h={args.h}", bounds, [rec],
                     columns=("system", "h", "constant_CF", "closed_form", "integral", "used"))


def cmd_aps(args, bounds):
    rec = {"length": args.length, "h": args.h, "count": count_prime_aps(args.length, args.h)}
    return RunReport(f"aps m={args.length} h={args.h}", bounds, [rec], columns=("length", "h", "count"))


def cmd_gaps(args, bounds):
    counts = gap_pair_counts(args.max_gap, args.n)
    rows = [{"gap": g, "count": c} for g, c in counts.items()]
    return RunReport(f"gaps max_gap={args.max_gap} N={args.n}", bounds, rows, columns=("gap", "count"))


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive(text):
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _family(text):
    try:
        return FamilyId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _lemma(text):
    fam = _family(text)
    if fam not in LEMMAS:
        raise argparse.ArgumentTypeError(f"{text!r} is not a lemma tag ({', '.join(l.value for l in LEMMAS)})")
    return fam


def _system(text):
    try:
        return parse_system(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bounds_parent(max_q=None):
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("search bounds")
    d = DEFAULT_BOUNDS
    g.add_argument("--max-p", type=_positive, default=d.max_p)
    g.add_argument("--max-q", type=_positive, default=max_q or d.max_q)
    g.add_argument("--max-m", type=_positive, default=d.max_m)
    g.add_argument("--max-exp", type=_positive, default=d.max_exp)
    g.add_argument("--max-base", type=_positive, default=d.max_base)
    g.add_argument("--trial-bound", type=_positive, default=d.trial_division_bound)
    g.add_argument("--mr-rounds", type=_positive, default=d.mr_rounds)
    p.add_argument("--format", choices=("table", "lines", "report"), default="table")
    p.add_argument("--backend", choices=("auto", "cython", "python"), default="auto")
    return p


def build_parser():
    parent = _bounds_parent()
    parser = argparse.ArgumentParser(prog="k4dioph", description="Bounded solvers for the simple-K4 Diophantine families.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[parent], help="solve one equation family within bounds")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--min-c", type=_positive, default=None, help="lower limit on c (F1)")
    s.add_argument("--min-n", type=_positive, default=None, help="lower limit on n (F2-F4)")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify-paper", parents=[parent], help="F1 classification, lemma checks and F2-F4 with n >= 2 in one run")
    s.add_argument("--inject-bad-tuple", action="store_true", help="negative control: must exit 1")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("verify-lemma", parents=[parent], help="bounded check of one lemma")
    s.add_argument("--lemma", type=_lemma, required=True)
    s.set_defaults(func=cmd_verify_lemma)

    # here --max-q is the enumeration limit, so it gets a desk-scale default
    s = sub.add_parser("k4", parents=[_bounds_parent(max_q=100)], help="prime powers q with a K4-shaped order")
    s.add_argument("--all", action="store_true", help="include rejected and unresolved q")
    s.set_defaults(func=cmd_k4)

    def system_args(sp, need_h=False):
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--system", type=_system, help='alias such as "(26)", "twin" or a form list')
        grp.add_argument("--forms", dest="system", type=_system, help='forms like "1,0;1,2" for {x, x+2}')
        if need_h:
            sp.add_argument("--h", type=_positive, required=True)
        sp.add_argument("--prime-bound", type=_positive, default=None)

    s = sub.add_parser("sieve", parents=[parent], help="count simultaneous prime values")
    system_args(s, need_h=True)
    s.add_argument("--threads", type=_positive, default=int(os.environ.get(THREADS_ENV, "1") or 1))
    s.set_defaults(func=cmd_sieve, default_prime_bound=10**6)

    s = sub.add_parser("admissible", parents=[parent], help="admissibility with certificate")
    system_args(s)
    s.set_defaults(func=cmd_admissible, default_prime_bound=100)

    s = sub.add_parser("constant", parents=[parent], help="truncated Bateman-Horn constant")
    system_args(s)
    s.set_defaults(func=cmd_constant, default_prime_bound=10**6)

    s = sub.add_parser("predict", parents=[parent], help="predicted count of prime points")
    system_args(s, need_h=True)
    s.add_argument("--cf", type=float, default=None)
    s.set_defaults(func=cmd_predict, default_prime_bound=10**6)

    s = sub.add_parser("aps", parents=[parent], help="count prime arithmetic progressions")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--h", type=_positive, required=True)
    s.set_defaults(func=cmd_aps)

    s = sub.add_parser("gaps", parents=[parent], help="prime pairs at each even gap")
    s.add_argument("--max-gap", type=_positive, required=True)
    s.add_argument("--n", "--N", dest="n", type=_positive, required=True)
    s.set_defaults(func=cmd_gaps)
    return parser


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "prime_bound", "unset") is None:
        args.prime_bound = args.default_prime_bound
    try:
        bounds = SearchBounds(
            max_p=args.max_p, max_q=args.max_q, max_m=args.max_m, max_exp=args.max_exp,
            max_base=args.max_base, trial_division_bound=args.trial_bound, mr_rounds=args.mr_rounds,
        )
    except ValueError as exc:
        parser.error(str(exc))
    previous = _backend.set_backend(args.backend)
    start = time.perf_counter()
    try:
        report = args.func(args, bounds)
    except ValueError as exc:
        parser.error(str(exc))
    finally:
        _backend.set_backend(previous)
    report.wall_time = time.perf_counter() - start
    stdout.write(render(report, args.format))
    return 1 if report.failed else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
