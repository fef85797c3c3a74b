"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical consistency check fails
(the witness is printed), 2 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import matroid as mt
from .acceptance import run_all
from .errors import MatrigidError
from .gf import field_new
from .laman import RationalSlope, is_laman_independent, laman_complex, slope_complex, verify_exchange
from .matroid import LinearMatroid, elements
from .partition import equivalence_report, is_edmonds_decomposition, is_recski_independent, matroid_partition
from .photospace import photo_count_brute
from .rigidity import generic_complex, nesting_check
from .tutte import photo_count_formula, tutte_recursive

COMMANDS = ("tutte", "laman", "slope", "edmonds", "recski", "rigidity", "photos", "nesting")
EXAMPLES = ("u23", "u24", "fano", "k4", "grid", "counterexample")


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """Raised after printing a report whose mathematical check failed."""


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def matroid_from_json(doc: dict) -> LinearMatroid:
    """Parse a column list ``{"field": {"p", "s"}, "columns": [...]}`` or a graph ``{"vertices", "edges"}``."""
    fdoc = doc.get("field", {"p": 2, "s": 1} if "vertices" in doc else None)
    if fdoc is None:
        raise UsageError("input needs a 'field' entry")
    F = field_new(int(fdoc["p"]), int(fdoc.get("s", 1)))
    if "vertices" in doc:
        edges = [tuple(e) for e in doc.get("edges", [])]
        if any(len(e) != 2 for e in edges):
            raise UsageError("every edge needs exactly two endpoints")
        return mt.graphic(int(doc["vertices"]), edges, F, doc.get("name", "graph"))
    cols = doc.get("columns")
    if cols is None:
        raise UsageError("input needs 'columns' or 'vertices'/'edges'")
    if F.s == 1:
        parsed = [tuple(F.from_int(int(x)) for x in c) for c in cols]
    else:
        parsed = [tuple(F.from_coeffs(x) if isinstance(x, list) else int(x) for x in c) for c in cols]
    r = doc.get("r_ambient", len(parsed[0]) if parsed else 0)
    return LinearMatroid(F, tuple(parsed), int(r), doc.get("name", "input"))


def load_matroid(path: str) -> LinearMatroid:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    return matroid_from_json(doc)


def example_matroid(name: str, m: RationalSlope | None) -> LinearMatroid:
    if name == "u23":
        return mt.uniform(2, 3, field_new(2))
    if name == "u24":
        return mt.uniform(2, 4)
    if name == "fano":
        return mt.fano()
    if name == "k4":
        return mt.k4()
    if name == "grid":
        return mt.grid_examples()[0]
    if name == "counterexample":
        return mt.laman_counterexample((m or RationalSlope(3, 2)).as_fraction())
    raise UsageError(f"unknown example {name!r}")


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _require(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


def _set_str(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def _emit(args, report: dict[str, Any], lines: list[str]) -> None:
    report = {"command": args.command, "seed": args.seed, **report}
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"# {args.command} seed={args.seed}")
        for line in lines:
            print(line)


def _slope(args) -> RationalSlope:
    if args.m is None:
        raise UsageError("--m is required")
    return args.m


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_tutte(M: LinearMatroid, args) -> None:
    T = tutte_recursive(M)
    _emit(args, {"n": M.n, "rank": M.rank, "tutte": T.to_lines()}, T.to_lines())


def cmd_laman(M: LinearMatroid, args) -> None:
    m = _slope(args)
    rep = is_laman_independent(M, m)
    C = laman_complex(M, m)
    facets = C.facets()
    exch = verify_exchange(C)
    lines = [
        f"slope {m}: E is {'independent' if rep.independent else 'dependent'}",
        f"witness {_set_str(rep.witness)}" if not rep.independent else "witness {}",
        f"facets {' '.join(map(str, facets))}",
        f"matroid complex: {'yes' if exch else 'no, pair ' + str(exch.pair)}",
    ]
    lines += C.to_lines({"m_num": m.num, "m_den": m.den})
    _emit(args, {
        "m": str(m), "independent": rep.independent, "witness": rep.witness,
        "facets": facets, "matroid_complex": exch.passed,
        "exchange_pair": list(exch.pair) if exch.pair else None,
    }, lines)


def cmd_slope(M: LinearMatroid, args) -> None:
    _require(args, "k", "d")
    C = slope_complex(M, args.k, args.d)
    m = RationalSlope.of(Fraction(args.d, args.d - args.k))
    facets = C.facets()
    lines = [f"slope complex k={args.k} d={args.d} (m={m})", f"facets {' '.join(map(str, facets))}"]
    lines += C.to_lines({"m_num": m.num, "m_den": m.den})
    _emit(args, {"k": args.k, "d": args.d, "m": str(m), "facets": facets,
                 "full": M.ground in C}, lines)


def cmd_edmonds(M: LinearMatroid, args) -> None:
    _require(args, "d")
    cert = matroid_partition(M, args.d)
    if not cert.partitionable:
        A = cert.violator
        _emit(args, {"d": args.d, "partitionable": False, "violator": A},
              [f"no split into {args.d} independent sets", f"violator {A} {_set_str(A)}: "
               f"{args.d}*r = {args.d * M.rank_of(A)} < |A| = {len(elements(A))}"])
        return
    parts = list(cert.decomposition.parts)
    rep = equivalence_report(M, args.d)
    check = is_edmonds_decomposition(M, parts) if not M.loops else None
    lines = [str(P) for P in parts]
    stamp = "valid" if check else "not-edmonds"
    lines.append(f"stamp {stamp}; edmonds={rep.edmonds} laman={rep.laman} recski={rep.recski}")
    _emit(args, {"d": args.d, "partitionable": True, "parts": parts,
                 "edmonds_first": bool(check), "edmonds": rep.edmonds, "laman": rep.laman,
                 "recski": rep.recski, "agree": rep.agree}, lines)
    if not rep.agree:
        raise CheckFailed("Edmonds, Laman and Recski predicates disagree")


def cmd_recski(M: LinearMatroid, args) -> None:
    _require(args, "d")
    rep = is_recski_independent(M, args.d)
    lines = [f"recski independent (d={args.d}): {rep.independent}"]
    if not rep.independent:
        lines.append(f"cloning element {rep.element} fails; violator {rep.violator}")
    _emit(args, {"d": args.d, "independent": rep.independent, "element": rep.element,
                 "violator": rep.violator}, lines)


def cmd_rigidity(M: LinearMatroid, args) -> None:
    _require(args, "d")
    rep = generic_complex(M, args.d, args.kind, args.trials, args.seed)
    facets = rep.facets()
    sizes = sorted({len(elements(f)) for f in facets})
    lines = [
        f"{rep.kind}^{rep.d}: {len(facets)} facets, sizes {sizes}",
        f"facets {' '.join(map(str, facets))}",
        f"field order {rep.field_order}, trials {rep.trials}, failure bound {rep.failure_bound}",
    ]
    _emit(args, {"d": rep.d, "kind": rep.kind, "facets": facets, "facet_sizes": sizes,
                 "field_order": str(rep.field_order), "trials": rep.trials,
                 "failure_bound": str(rep.failure_bound)}, lines)


def cmd_photos(M: LinearMatroid, args) -> None:
    _require(args, "k", "d")
    q = args.q if args.q is not None else M.field.q
    formula = photo_count_formula(M, args.k, args.d, q)
    report: dict[str, Any] = {"k": args.k, "d": args.d, "q": q, "formula": str(formula)}
    lines = [f"formula total {formula}"]
    equal = True
    if args.brute:
        if q != M.field.q:
            raise UsageError("--brute counts over the matroid's own field; drop --q or match it")
        census = photo_count_brute(M, args.k, args.d)
        equal = census.total == formula
        report["brute"] = json.loads(census.to_json())
        report["equal"] = equal
        lines.append(f"brute total {census.total}")
        lines.append("EQUAL" if equal else "DIFFERENT")
        lines.append(census.to_json())
    _emit(args, report, lines)
    if not equal:
        raise CheckFailed("formula and enumeration disagree")


def cmd_nesting(M: LinearMatroid, args) -> None:
    _require(args, "d")
    rep = nesting_check(M, args.d, args.trials, args.seed)
    lines = [f"{name}: {len(C.facets())} facets" for name, C in rep.complexes.items()]
    lines.append("nesting holds" if rep.ok else "VIOLATION: " + "; ".join(rep.failures))
    _emit(args, {"d": args.d, "ok": rep.ok, "failures": rep.failures,
                 "facets": {k: C.facets() for k, C in rep.complexes.items()}}, lines)
    if not rep.ok:
        raise CheckFailed("nesting chain violated")


HANDLERS = {
    "tutte": cmd_tutte, "laman": cmd_laman, "slope": cmd_slope, "edmonds": cmd_edmonds,
    "recski": cmd_recski, "rigidity": cmd_rigidity, "photos": cmd_photos, "nesting": cmd_nesting,
}


def cmd_suite(args) -> None:
    results = run_all()
    for r in results:
        print(r.line())
    if not all(r.passed for r in results):
        raise CheckFailed("acceptance battery failed")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _slope_arg(text: str) -> RationalSlope:
    try:
        return RationalSlope.of(text)
    except MatrigidError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matroid or graph JSON file")
    common.add_argument("--m", type=_slope_arg, help="slope NUM/DEN (or an integer, or inf)")
    common.add_argument("--k", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--q", type=int, help="field order for photo counts")
    common.add_argument("--kind", choices=("R", "H", "P"), default="R")
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--brute", action="store_true", help="also enumerate photos directly")
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    parser = argparse.ArgumentParser(prog="matrigid", description="Exact matroid rigidity computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    ex = sub.add_parser("examples", parents=[common], help="run a command on a built-in matroid")
    ex.add_argument("name", choices=EXAMPLES)
    ex.add_argument("--command", dest="example_command", choices=COMMANDS, default="tutte")
    sub.add_parser("suite", help="run the acceptance battery")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "suite":
            args.seed = 0
            cmd_suite(args)
            return 0
        if args.command == "examples":
            M = example_matroid(args.name, args.m)
            args.command = args.example_command
        else:
            if args.input is None:
                raise UsageError(f"{args.command} needs --input (or use 'examples')")
            M = load_matroid(args.input)
        HANDLERS[args.command](M, args)
        return 0
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, MatrigidError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
