"""The acceptance battery: twelve end-to-end checks shared by the tests and the CLI."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable

from . import matroid as mt
from .gf import field_new
from .laman import check_exchange_pair, is_laman_independent, laman_complex, verify_exchange
from .matroid import Complex, LinearMatroid, mask_of, popcount
from .partition import equivalence_report
from .photospace import BRUTE_LIMIT, photo_count_brute
from .rigidity import (
    generic_complex,
    graphic_boolean_check,
    nesting_check,
    stabilization_check,
)
from .tutte import (
    dual_symmetry_check,
    laman_via_tutte,
    photo_count_formula,
    tutte_corank_nullity,
    tutte_recursive,
)
from .laman import polymatroid_rank

BIG_PRIME = (1 << 61) - 1


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} [{status}] {self.title}: {self.detail} ({self.seconds:.2f}s)"


def suite() -> list[LinearMatroid]:
    """The standard collection of small represented matroids."""
    M, Mp = mt.grid_examples()
    return [
        mt.isthmus(),
        mt.uniform(1, 2),
        mt.uniform(2, 3),
        mt.uniform(2, 4),
        mt.uniform(3, 5),
        mt.k3(),
        mt.k4(),
        mt.k4_minus_edge(),
        mt.fano(),
        M,
        Mp,
    ]


def _timed(number: int, title: str, body: Callable[[], tuple[bool, str]], limit: float | None = None):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        ok = False
        detail += f"; exceeded {limit:.0f}s budget"
    return CriterionResult(number, title, ok, detail, elapsed)


# 1 -------------------------------------------------------------------------

def criterion_1() -> CriterionResult:
    def body():
        cases = [mt.uniform(r, n) for r in range(5) for n in range(max(r, 1), 9)]
        M, Mp = mt.grid_examples()
        cases += [mt.k4(), mt.k4_minus_edge(), mt.fano(), M, Mp]
        bad = [C.name for C in cases if tutte_recursive(C) != tutte_corank_nullity(C)]
        return not bad, f"{len(cases)} matroids, mismatches: {bad or 'none'}"

    return _timed(1, "Tutte: deletion-contraction equals corank-nullity", body, 10)


# 2, 3 ----------------------------------------------------------------------

def photo_grid() -> list[tuple[LinearMatroid, int, int]]:
    """``(M, k, d)`` over GF(2) and GF(3) with ``q^(dr) <= 2^24``."""
    out = []
    for q in (2, 3):
        F = field_new(q)
        mats = [
            mt.loop(F), mt.isthmus(F), mt.uniform(1, 2, F), mt.uniform(2, 3, F),
            mt.k3(F), mt.k4(F),
        ]
        if q == 2:
            mats.append(mt.fano())
        for M in mats:
            for d in (2, 3):
                if q ** (d * M.r_ambient) > BRUTE_LIMIT:
                    continue
                for k in range(1, d):
                    out.append((M, k, d))
    return out


def criterion_2() -> CriterionResult:
    def body():
        grid = photo_grid()
        bad = []
        for M, k, d in grid:
            if photo_count_formula(M, k, d) != photo_count_brute(M, k, d).total:
                bad.append(f"{M.name}/GF({M.field.q}) k={k} d={d}")
        return not bad, f"{len(grid)} instances, mismatches: {bad or 'none'}"

    return _timed(2, "photo-count formula equals brute-force census", body, 60)


def criterion_3() -> CriterionResult:
    def body():
        grid = photo_grid()
        bad = [f"{M.name}/GF({M.field.q}) k={k} d={d}" for M, k, d in grid
               if not dual_symmetry_check(M, k, d)]
        return not bad, f"{len(grid)} instances, failures: {bad or 'none'}"

    return _timed(3, "duality of photo counts", body)


# 4 -------------------------------------------------------------------------

def graph_classes(max_vertices: int = 5) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """One representative simple graph per isomorphism class, 1..max_vertices vertices."""
    out = []
    for v in range(1, max_vertices + 1):
        all_edges = list(itertools.combinations(range(v), 2))
        perms = list(itertools.permutations(range(v)))
        seen = set()
        for r in range(len(all_edges) + 1):
            for edges in itertools.combinations(all_edges, r):
                canon = min(
                    tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges)) for p in perms
                )
                if canon not in seen:
                    seen.add(canon)
                    out.append((v, canon))
    return out


def laman_count_complex(n_vertices: int, edges) -> Complex:
    """Edge sets all of whose nonempty subsets satisfy ``|A'| <= 2|V(A')| - 3``."""
    m = len(edges)

    def ok(A: int) -> bool:
        for B in mt.submasks(A):
            if B:
                verts = {x for i in mt.elements(B) for x in edges[i]}
                if popcount(B) > 2 * len(verts) - 3:
                    return False
        return True

    return Complex(m, frozenset(A for A in range(1 << m) if ok(A)))


def criterion_4() -> CriterionResult:
    def body():
        F = field_new(BIG_PRIME)
        graphs = graph_classes(5)
        bad = []
        worst = Fraction(0)
        for v, edges in graphs + [(4, tuple(mt.complete_graph_edges(4)))]:
            if not edges:
                continue
            M = mt.graphic(v, edges, F)
            rep = nesting_check(M, 2, trials=3, seed=0)
            classical = laman_count_complex(v, edges)
            if not rep.ok:
                bad.append(f"{edges}: {rep.failures[0]}")
            elif rep.complexes["L"] != classical:
                bad.append(f"{edges}: Laman count differs")
            for kind in ("R", "H", "P"):
                fb = generic_complex(M, 2, kind, 3, 0).failure_bound
                worst = max(worst, fb)
        bound_ok = worst < Fraction(1, 2 ** 80)
        if not bound_ok:
            bad.append(f"failure bound {float(worst):.3g} not below 2^-80")
        return not bad, (f"{len(graphs)} graph classes, worst failure bound 2^{worst.numerator.bit_length() - worst.denominator.bit_length()}, "
                         f"problems: {bad or 'none'}")

    return _timed(4, "planar trinity on small graphs", body)


# 5 -------------------------------------------------------------------------

def _grid_r3_ok(G: LinearMatroid) -> bool:
    lines = mt.lines_of_size(G, 2, 3)
    if len(lines) != 8:
        return False
    bases = {f for f in generic_complex(G, 3).complex.faces if popcount(f) == 6}
    expect = {mask_of(c) for c in itertools.combinations(range(9), 6)} - {G.ground & ~l for l in lines}
    return bases == expect


def criterion_5() -> CriterionResult:
    def body():
        F2 = field_new(2)
        u23, u24, fano = mt.uniform(2, 3, F2), mt.uniform(2, 4), mt.fano()
        M, Mp = mt.grid_examples()
        checks = {
            "R2(U23)=U33": generic_complex(u23, 2).complex == Complex.uniform(3, 3),
            "R2(U24)=U34": generic_complex(u24, 2).complex == Complex.uniform(3, 4),
            "R3(U24)=U34": generic_complex(u24, 3).complex == Complex.uniform(3, 4),
            "R2(F)=U57": generic_complex(fano, 2).complex == Complex.uniform(5, 7),
            "R3(F)=U67": generic_complex(fano, 3).complex == Complex.uniform(6, 7),
            "R2(grid)=U59": generic_complex(M, 2).complex == Complex.uniform(5, 9),
            "R2(grid')=U59": generic_complex(Mp, 2).complex == Complex.uniform(5, 9),
            "R3(grid) bases": _grid_r3_ok(M),
            "R3(grid') bases": _grid_r3_ok(Mp),
        }
        bad = [k for k, v in checks.items() if not v]
        return not bad, f"{len(checks)} facts, failures: {bad or 'none'}"

    return _timed(5, "rigidity facts for U(2,3), U(2,4), Fano, grids", body, 300)


# 6 -------------------------------------------------------------------------

def criterion_6() -> CriterionResult:
    def body():
        bad = []
        runs = 0
        for M in suite():
            if M.n > 9:
                continue
            for d in (2, 3, 4):
                rep = nesting_check(M, d, trials=3, seed=0)
                runs += 1
                if not rep.ok:
                    bad.append(f"{M.name} d={d}: {rep.failures[0]}")
        return not bad, f"{runs} runs, failures: {bad or 'none'}"

    return _timed(6, "nesting S <= R <= L = H", body)


# 7 -------------------------------------------------------------------------

def criterion_7() -> CriterionResult:
    def body():
        bad = []
        for M in suite():
            for d in (2, 3):
                if not verify_exchange(laman_complex(M, d)):
                    bad.append(f"{M.name} d={d}")
        X = mt.laman_counterexample(Fraction(3, 2))
        C = laman_complex(X, Fraction(3, 2))
        rep = verify_exchange(C)
        counter_ok = not rep.passed and rep.pair is not None and check_exchange_pair(C, rep.pair)
        if not counter_ok:
            bad.append("counterexample at m=3/2 shows no violation")
        pair = rep.pair if rep.pair else None
        return not bad, f"integer slopes exchange on suite; m=3/2 violating pair {pair}; problems: {bad or 'none'}"

    return _timed(7, "Laman complexes are matroids exactly at integer slopes", body)


# 8 -------------------------------------------------------------------------

def criterion_8() -> CriterionResult:
    def body():
        bad = []
        for M in suite():
            for d in (1, 2, 3):
                rep = equivalence_report(M, d)
                if not rep.agree:
                    bad.append(f"{M.name} d={d}: {rep.edmonds}/{rep.laman}/{rep.recski}")
        k4 = equivalence_report(mt.k4(), 2)
        k4e = equivalence_report(mt.k4_minus_edge(), 2)
        if (k4.edmonds, k4.laman, k4.recski) != (False, False, False):
            bad.append("M(K4) d=2 not all false")
        if (k4e.edmonds, k4e.laman, k4e.recski) != (True, True, True):
            bad.append("M(K4)-e d=2 not all true")
        return not bad, f"Edmonds/Laman/Recski agreement; problems: {bad or 'none'}"

    return _timed(8, "Edmonds, Laman and Recski independence agree", body)


# 9 -------------------------------------------------------------------------

def criterion_9() -> CriterionResult:
    def body():
        bad = []
        count = 0
        for r in range(1, 4):
            for n in range(r, 8):
                U = mt.uniform(r, n)
                for m in (Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3)):
                    s = min(ceil(m * r - 1), n)
                    count += 1
                    if laman_complex(U, m) != Complex.uniform(s, n):
                        bad.append(f"U({r},{n}) m={m}")
        return not bad, f"{count} cases, failures: {bad or 'none'}"

    return _timed(9, "Laman complexes of uniform matroids", body)


# 10 ------------------------------------------------------------------------

def criterion_10() -> CriterionResult:
    def body():
        bad = []
        for M in suite():
            if not stabilization_check(M).equal:
                bad.append(f"stabilization {M.name}")
            if generic_complex(M, 1).complex != M.independence_complex():
                bad.append(f"R1 {M.name}")
        if not graphic_boolean_check(4, mt.complete_graph_edges(4)):
            bad.append("R4(M(K4)) not full")
        if not generic_complex(mt.k4(), 4).complex.is_full():
            bad.append("R4(M(K4)) over GF(2) not full")
        return not bad, f"failures: {bad or 'none'}"

    return _timed(10, "stabilization, Boolean collapse, R^1 = M", body)


# 11 ------------------------------------------------------------------------

def criterion_11() -> CriterionResult:
    def body():
        bad = []
        for M in suite():
            for d in (2, 3):
                if laman_via_tutte(M, d) != is_laman_independent(M, d).independent:
                    bad.append(f"{M.name} d={d}")
        fano = mt.fano()
        if not laman_complex(fano, 3).is_full():
            bad.append("L^3(Fano) not Boolean")
        if laman_complex(fano, Fraction(7, 3)).is_full():
            bad.append("L^(7/3)(Fano) unexpectedly Boolean")
        return not bad, f"failures: {bad or 'none'}"

    return _timed(11, "Tutte criterion for Laman independence", body)


# 12 ------------------------------------------------------------------------

def criterion_12() -> CriterionResult:
    def body():
        mats = [M for M in suite() if M.n <= 8 and not M.loops]
        mats.append(mt.laman_counterexample(Fraction(3, 2)))
        bad = []
        checked = 0
        for M in mats:
            for m in (Fraction(3, 2), Fraction(2)):
                C = laman_complex(M, m)
                for A in range(1 << M.n):
                    checked += 1
                    if (polymatroid_rank(M, m, A) == popcount(A)) != (A in C):
                        bad.append(f"{M.name} m={m} A={A}")
                        break
        return not bad, f"{len(mats)} matroids, {checked} subsets, failures: {bad or 'none'}"

    return _timed(12, "polymatroid rank detects Laman independence", body)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_all(numbers=None) -> list[CriterionResult]:
    return [CRITERIA[i]() for i in (numbers or sorted(CRITERIA))]
