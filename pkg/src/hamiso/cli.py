"""Command-line interface: ``hamiso verify|search|construct|bounds ...``.

Every command prints a JSON run report (schema 1) to stdout, or writes it
to ``--out``. Exit status is 0 when every check passes, 1 when a check
fails and 2 for usage or precondition errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from . import bounds as bnd
from . import constructions as cons
from . import search
from .analysis import appendix, quadratics
from .boundary import padded_boundary_bounds
from .errors import HamisoError, PreconditionError, VerificationError
from .exactmath import check_ratio_monotone, check_slice_lower_bound
from .families import family_size, family_to_dict
from .serialize import jsonable

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_HELP = """\
CSV output (--csv PATH) has one row per (n, r or R, size) with these columns:
  verify local-expansion   n, r, size, families, min_boundary, min_slack
  verify nm                n, r, size, families, min_lower, lower_bound,
                           min_upper, upper_bound
  verify prop9             n, r, ratio, ratio_float
  search sample            n, R, size, boundary_lower, boundary_upper, bound, holds
Floats are written with 15 significant digits and exact rationals as "p/q".
"""


# -- report plumbing ---------------------------------------------------------


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int | None = None
    verdicts: dict = field(default_factory=dict)
    statistics: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    version: str = __version__
    schema: int = SCHEMA_VERSION

    def __post_init__(self):
        self.parameters = jsonable(self.parameters)
        self.verdicts = jsonable(self.verdicts)
        self.statistics = jsonable(self.statistics)
        self.timing = jsonable(self.timing)

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "seed": self.seed,
            "verdicts": self.verdicts,
            "statistics": self.statistics,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            command=d["command"],
            parameters=d["parameters"],
            seed=d.get("seed"),
            verdicts=d.get("verdicts", {}),
            statistics=d.get("statistics", {}),
            timing=d.get("timing", {}),
            version=d.get("version", __version__),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".15g")
    # Fractions fall through: str() gives "p/q", or just "p" when integral
    return str(value)


def write_csv(path: str, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(c, "")) for c in columns])


# -- verify ---------------------------------------------------------------------


def _verify_lemma6(args):
    failures = []
    checked = 0
    for n in range(1, args.n_max + 1):
        report = check_ratio_monotone(n)
        checked += len(report.steps)
        failures += [("ratio", n, s.r) for s in report.steps if not s.holds]
        if n >= 3:
            for r in range(n // 2 + 1):
                checked += 1
                if not check_slice_lower_bound(n, r).holds:
                    failures.append(("slice", n, r))
    return (
        {"ratio_monotone": not any(f[0] == "ratio" for f in failures),
         "slice_lower_bound": not any(f[0] == "slice" for f in failures)},
        {"comparisons": checked, "failures": failures[:20]},
        None,
    )


def _verify_nm(args):
    rep = search.exhaustive_verify_nm(args.n, args.r, workers=args.workers)
    rows = [dict(row, n=args.n, r=args.r) for row in rep.extra["by_size"]]
    cols = ["n", "r", "size", "families", "min_lower", "lower_bound", "min_upper", "upper_bound"]
    return {"nm": rep.passed}, rep.to_dict(), (cols, rows)


def _verify_local_expansion(args):
    rep = search.exhaustive_verify_local_expansion(args.n, args.r, workers=args.workers)
    rows = [dict(row, n=args.n, r=args.r) for row in rep.extra["by_size"]]
    cols = ["n", "r", "size", "families", "min_boundary", "min_slack"]
    return {"local_expansion": rep.passed}, rep.to_dict(), (cols, rows)


def _verify_interlace(args):
    if args.sweep:
        stats = quadratics.sweep_claims(args.r_max)
        eq8 = quadratics.sweep_eq8(args.eq8_limit)
        verdicts = {
            "interlace": stats["failures"] == 0,
            "no_inconclusive": stats["inconclusive"] == 0,
            "criterion_agrees": stats["criterion_agrees"] == stats["preconditions_met"],
            "eq8": eq8["violations"] == 0,
        }
        return verdicts, {"claims": stats, "eq8": eq8}, None
    params = quadratics.ExpansionParams(args.r, args.s, Fraction(args.alpha))
    roots = quadratics.claim_roots(params)
    alpha = quadratics.claim_alpha(params)
    verdicts = {"claim_alpha": alpha["holds"]}
    if roots.status == "ok":
        verdicts["interlace"] = roots.holds
        verdicts["criterion_agrees"] = roots.interlace.consistent
        verdicts["conclusive"] = not roots.inconclusive
    stats = {"Q": params.Q, "xstar": params.xstar, "roots": roots.to_dict(), "claim_alpha": alpha}
    return verdicts, stats, None


def _verify_appendix(args):
    a, b = appendix.verify_ineq17(), appendix.verify_ineq18()
    verdicts = {
        "ineq17_matched": a.matched,
        "ineq17_certified": a.certified,
        "ineq18_matched": b.matched,
        "ineq18_certified": b.certified,
    }
    return verdicts, {"ineq17": a.to_dict(), "ineq18": b.to_dict()}, None


def _verify_prop9(args):
    rows = []
    worst = Fraction(0)
    for n in range(2, args.n_max + 1):
        for r in range(1, n):
            ratio = bnd.hypergeometric_max_ratio(r, n)
            worst = max(worst, ratio)
            rows.append({"n": n, "r": r, "ratio": ratio, "ratio_float": float(ratio)})
    verdicts = {"ratio_at_most_one": worst <= 1}
    stats = {"checked": len(rows), "max_ratio": worst, "max_ratio_float": float(worst)}
    return verdicts, stats, (["n", "r", "ratio", "ratio_float"], rows)


VERIFY = {
    "lemma6": _verify_lemma6,
    "nm": _verify_nm,
    "local-expansion": _verify_local_expansion,
    "interlace": _verify_interlace,
    "appendix": _verify_appendix,
    "prop9": _verify_prop9,
}


# -- search ----------------------------------------------------------------------


def _search_min_boundary(args):
    rep = search.exhaustive_min_boundary(args.n, args.size, R=args.R, budget=args.budget)
    return {"completed": True}, rep.to_dict(), None


def _search_sample(args):
    rep = search.sampled_verify(
        args.generator,
        args.bound,
        args.samples,
        seed=args.seed,
        n=args.n,
        R=args.R,
        rho=Fraction(args.rho),
        assume_n0=args.assume_n0,
        record=bool(args.csv),
    )
    rows = [dict(row, n=args.n, R=args.R) for row in rep.extra.pop("rows", [])]
    cols = ["n", "R", "size", "boundary_lower", "boundary_upper", "bound", "holds"]
    return {"bound": rep.passed}, rep.to_dict(), (cols, rows)


def _search_local(args):
    rep = search.local_search_minimizer(args.n, args.R, args.size, seed=args.seed, steps=args.steps)
    return {"completed": True}, rep.to_dict(), None


SEARCH = {
    "min-boundary": _search_min_boundary,
    "sample": _search_sample,
    "local": _search_local,
}


# -- construct and bounds ---------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise PreconditionError(f"missing required flag(s): {', '.join(missing)}")


def _construct(args):
    name = args.name
    if name in ("star", "costar"):
        _need(args, "n", "r")
        fam = getattr(cons, name)(args.n, args.r, element=args.element)
    elif name == "ball-halfspace":
        _need(args, "n", "R", "k")
        fam = cons.ball_halfspace(args.n, args.R, args.k, args.m)
    elif name == "slice-halfspace":
        _need(args, "n", "r", "k")
        fam = cons.slice_halfspace(args.n, args.r, args.k, args.m)
    elif name == "cplus":
        _need(args, "n", "r", "k")
        fam = cons.cplus(args.n, args.r, args.k, args.m)
    elif name == "sized-ball-halfspace":
        _need(args, "n", "R", "size")
        fam = cons.sized_ball_halfspace(args.n, args.R, args.size, args.m)
    elif name == "sized-slice-halfspace":
        _need(args, "n", "r", "size")
        fam = cons.sized_slice_halfspace(args.n, args.r, args.size, args.m)
    else:  # argparse restricts the choices
        raise PreconditionError(f"unknown construction {name!r}")
    stats = {"size": family_size(fam), "family": family_to_dict(fam)}
    if args.with_boundary and not hasattr(fam, "members"):
        b = padded_boundary_bounds(fam, args.R)
        stats["boundary"] = {"lower": b.lower, "upper": b.upper, "exact": b.exact}
    return {"constructed": True}, stats, None


def _bounds_eval(args):
    which = args.which
    if which == "nm":
        _need(args, "n", "r", "size")
        lower, upper = bnd.nm_bounds(args.n, args.r, args.size)
        return {"evaluated": True}, {"lower_shadow_min": lower, "upper_shadow_min": upper}, None
    if which == "eq4":
        _need(args, "n", "r", "size", "boundary")
        v = bnd.local_expansion_check(args.n, args.r, args.size, args.boundary)
        stats = {"excess": v.excess, "bonus": v.bonus, "rhs": v.rhs_value(), "slack": v.slack()}
        return {"holds": v.holds}, stats, None
    if which == "thm1":
        _need(args, "n", "R", "rho", "size", "boundary")
        v = bnd.thm1_bound_check(
            args.n, args.R, Fraction(args.rho), args.size, args.boundary,
            strict=False, assume_n0=args.assume_n0,
        )
        stats = {
            "bound": v.bound,
            "preconditions_met": v.preconditions_met,
            "exploratory": v.exploratory,
        }
        return {"holds": v.holds}, stats, None
    if which == "lemma7":
        _need(args, "n", "R", "size", "boundary")
        res = bnd.lemma7_check(args.n, args.R, args.size, args.boundary)
        p = res["params"]
        stats = {
            "epsilon": p.epsilon,
            "r0": p.r0,
            "c": p.c,
            "bound": res["bound"],
            "hypotheses_met": res["hypotheses_met"],
        }
        return {"holds": res["holds"]}, stats, None
    if which == "pmf":
        _need(args, "n", "r", "k")
        m = args.n // 2 if args.m is None else args.m
        value = bnd.hypergeometric_pmf(args.r, m, args.n, args.k)
        return {"evaluated": True}, {"pmf": value, "pmf_float": float(value)}, None
    if which == "prop9":
        _need(args, "n", "r")
        value = bnd.hypergeometric_max_ratio(args.r, args.n)
        return {"at_most_one": value <= 1}, {"ratio": value, "ratio_float": float(value)}, None
    raise PreconditionError(f"unknown bound {which!r}")


# -- parser -------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="also write tabular rows to this CSV file")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET,
                   help="maximum candidate sets for exhaustive search")
    p.add_argument("--assume-n0", type=int, default=None,
                   help="treat n >= this as past the asymptotic threshold")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamiso",
        description="Exact checks of vertex-isoperimetric bounds on hypercubes and Hamming balls.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"hamiso {__version__}")
    top = parser.add_subparsers(dest="group", required=True)

    verify = top.add_parser("verify", help="exact and exhaustive verification")
    vsub = verify.add_subparsers(dest="sub", required=True)
    p = vsub.add_parser("lemma6", help="binomial ratio and slice lower bound")
    p.add_argument("--n-max", type=int, default=64)
    for name in ("nm", "local-expansion"):
        p = vsub.add_parser(name, help=f"exhaustive {name} check over all subfamilies of S_n(r)")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, required=True)
    p = vsub.add_parser("interlace", help="quadratic root interlacing")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int, default=4)
    p.add_argument("--alpha", default="2/5")
    p.add_argument("--sweep", action="store_true", help="run the grid sweep instead")
    p.add_argument("--r-max", type=int, default=50)
    p.add_argument("--eq8-limit", type=int, default=500)
    vsub.add_parser("appendix", help="polynomial identities and positivity certificates")
    p = vsub.add_parser("prop9", help="hypergeometric peak ratio calibration")
    p.add_argument("--n-max", type=int, default=200)
    for p in vsub.choices.values():
        _common(p)

    srch = top.add_parser("search", help="exhaustive, sampled and local search")
    ssub = srch.add_subparsers(dest="sub", required=True)
    p = ssub.add_parser("min-boundary", help="exhaustive minimum vertex boundary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--R", type=int, default=None)
    p = ssub.add_parser("sample", help="sampled check of a ball bound")
    p.add_argument("--generator", choices=search.GENERATORS, default="random-profile")
    p.add_argument("--bound", choices=search.BOUNDS, default="thm1")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--R", type=int, default=50)
    p.add_argument("--rho", default="1/4")
    p.add_argument("--samples", type=int, default=100)
    p = ssub.add_parser("local", help="swap descent on the boundary size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--steps", type=int, default=1000)
    for p in ssub.choices.values():
        _common(p)

    p = top.add_parser("construct", help="build an extremal family")
    p.add_argument("name", choices=[
        "star", "costar", "ball-halfspace", "sized-ball-halfspace",
        "slice-halfspace", "sized-slice-halfspace", "cplus",
    ])
    for flag in ("--n", "--r", "--R", "--k", "--m", "--size"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--element", type=int, default=1)
    p.add_argument("--with-boundary", action="store_true",
                   help="also report boundary bounds (profile families)")
    _common(p)

    bounds = top.add_parser("bounds", help="evaluate bound formulas")
    bsub = bounds.add_subparsers(dest="sub", required=True)
    p = bsub.add_parser("eval", help="evaluate one bound")
    p.add_argument("--which", required=True, choices=["nm", "eq4", "thm1", "lemma7", "pmf", "prop9"])
    for flag in ("--n", "--r", "--R", "--k", "--m", "--size", "--boundary"):
        p.add_argument(flag, type=int, default=None)
    p.add_argument("--rho", default=None)
    _common(p)
    return parser


def run(args: argparse.Namespace) -> RunReport:
    start = time.perf_counter()
    if args.group == "verify":
        handler, command = VERIFY[args.sub], f"verify {args.sub}"
    elif args.group == "search":
        handler, command = SEARCH[args.sub], f"search {args.sub}"
    elif args.group == "construct":
        handler, command = _construct, f"construct {args.name}"
    else:
        handler, command = _bounds_eval, f"bounds {args.sub} {args.which}"
    if args.workers < 1:
        raise PreconditionError("--workers must be at least 1")
    verdicts, stats, table = handler(args)
    params = {k: v for k, v in vars(args).items() if k not in ("group", "sub", "out", "csv")}
    report = RunReport(
        command=command,
        parameters=params,
        seed=args.seed,
        verdicts=verdicts,
        statistics=stats,
        timing={"wall_seconds": time.perf_counter() - start},
    )
    if args.csv:
        if table is None:
            raise PreconditionError(f"{command} has no tabular output for --csv")
        write_csv(args.csv, *table)
    return report


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        report = run(args)
    except (PreconditionError, ValueError, ZeroDivisionError) as exc:
        print(f"hamiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"hamiso: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HamisoError as exc:
        print(f"hamiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
