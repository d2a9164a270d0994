"""Acceptance suites: each criterion returns a structured, reproducible result."""

from __future__ import annotations

import functools
import inspect
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import oracles
from .constructions import (
    bebutov, build_hierarchy, delta_indicator, hierarchy_sequence, squares_indicator)
from .induced import (
    GroupElement, act, convergence_probe, diagonal, linear_case_check, omega, theorem_b_bridge)
from .largeness import (
    block_starts_2d, check_ps_witness, piecewise_syndetic_witness, run_starts,
    syndetic2d_gap, syndetic_gap, thickly_syndetic_profile)
from .poly import PolyFamily
from .polyret import TSGenerator, required_window, theorem_b_harness, ts_generate
from .symdyn import SeqWindow, Word, language, multiple_recurrence_scan, occurrences
from .window import Box, Window1D, Window2D

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CriterionResult:
    criterion: int
    name: str
    parameters: dict
    measured: dict
    verdict: str
    seconds: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        # runtime is left out so identical configs give identical reports
        return {"criterion": self.criterion, "name": self.name,
                "parameters": self.parameters, "measured": self.measured,
                "verdict": self.verdict}

    def line(self) -> str:
        return f"[{self.verdict.upper():>12}] criterion {self.criterion}: {self.name} ({self.seconds:.2f}s)"


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    return wrapper


FAMILIES = ("n", "n,2n", "n^2", "n,n^2")


@_timed
def bridge_exactness(seed: int = 0, configs: int = 5, s_override: Optional[str] = None,
                     max_box: tuple[int, int] = (4000, 120)) -> CriterionResult:
    """Criterion 1: dynamical hitting set equals the arithmetic return set."""
    rng = np.random.default_rng(seed)
    runs = []
    total_diff = 0
    for c in range(configs):
        fam = FAMILIES[c] if c < len(FAMILIES) else FAMILIES[int(rng.integers(len(FAMILIES)))]
        A = PolyFamily.parse(fam)
        nmax = int(rng.integers(2, 4))
        width = int(rng.integers(max_box[0] // 2, max_box[0] + 1))
        height = int(rng.integers(max_box[1] // 2, max_box[1] + 1))
        mlo = int(rng.integers(-width, 1))
        nlo = int(rng.integers(-height, 1))
        box = Box(mlo, mlo + width - 1, nlo, nlo + height - 1)
        lo, hi = required_window(A, box)
        gen = TSGenerator(nmax, offset=int(rng.integers(0, 4 ** nmax)))
        if s_override == "empty":
            S = Window1D.empty(lo, hi)
        elif s_override == "full":
            S = Window1D.full(lo, hi)
        else:
            S = ts_generate(gen, lo, hi)
        res = theorem_b_bridge(S, A, box)
        diff = res.differing_cells
        total_diff += diff
        runs.append({"polys": fam, "nmax": nmax, "offset": gen.offset, "box": list(box),
                     "cells": res.lhs.count(), "differing_cells": diff})
    return CriterionResult(1, "hitting set equals return set", {"seed": seed, "configs": configs,
                           "s_override": s_override}, {"runs": runs, "differing_cells": total_diff},
                           PASS if total_diff == 0 else FAIL)


@_timed
def theorem_b_profile(box=(-5000, 5000, -60, 60), block_max=(3, 3),
                      gen: Optional[TSGenerator] = None) -> CriterionResult:
    """Criterion 2: finite Z^2 gaps of block starts for A = {n, n^2}."""
    gen = gen or TSGenerator()
    rep = theorem_b_harness(gen, PolyFamily.parse("n,n^2"), box, block_max)
    verdict = {"PASS": PASS, "FAIL": FAIL}.get(rep.verdict, INCONCLUSIVE)
    return CriterionResult(2, "return set of {n, n^2} thickly syndetic at scale",
                           {"box": list(box), "block_max": list(block_max),
                            "schedule": gen.to_json()}, rep.to_json(), verdict)


@_timed
def example35_pattern(kmax_pattern: int = 300, kmax_conv: int = 100) -> CriterionResult:
    """Criterion 3: local pattern around k^2 and convergence of sigma^k omega to z^(inf)."""
    W = 2 * kmax_conv + 2
    x = squares_indicator(-W - 1, (kmax_pattern + 1) ** 2 + W + 1)
    bad_pattern = []
    for k in range(2, kmax_pattern + 1):
        expect = np.concatenate([np.zeros(2 * k - 2, np.uint8), [1], np.zeros(2 * k, np.uint8)])
        got = x.block(k * k - (2 * k - 2), 4 * k - 1)
        if not np.array_equal(got, expect):
            bad_pattern.append(k)
    A = PolyFamily.parse("n^2")
    w = omega(x, A, K=0, W=W)
    z = diagonal(delta_indicator(-W, W), 1, K=0, W=W)
    points = [act(GroupElement(0, k), w) for k in range(2, kmax_conv + 1)]
    steps = convergence_probe(points, z, r=W)
    radii = {k: st.per_coordinate[0] for k, st in zip(range(2, kmax_conv + 1), steps)}
    bad_conv = [k for k, rad in radii.items() if rad < 2 * k - 2]
    ok = not bad_pattern and not bad_conv
    return CriterionResult(
        3, "squares pattern and convergence to z^(inf)",
        {"kmax_pattern": kmax_pattern, "kmax_conv": kmax_conv},
        {"pattern_failures": bad_pattern, "convergence_failures": bad_conv,
         "radius_minus_bound_min": min(rad - (2 * k - 2) for k, rad in radii.items())},
        PASS if ok else FAIL)


@_timed
def hierarchy_occurrence(depth: int = 7, m_range=(2, 200)) -> CriterionResult:
    """Criterion 4: A_2 0^m A_2 occurs in the prefix for every m in range."""
    if depth < 3:
        return CriterionResult(4, "A_2 0^m A_2 occurs", {"depth": depth},
                               {"reason": "depth < 3 has no A_2 pairs"}, INCONCLUSIVE)
    h = build_hierarchy(depth)
    x = hierarchy_sequence(h)
    A2 = h.word(2)
    found, missing = [], []
    for m in range(m_range[0], m_range[1] + 1):
        w = A2 + Word.zeros(m) + A2
        hit = len(w) <= x.span and occurrences(w, x).count() > 0
        (found if hit else missing).append(m)
    return CriterionResult(4, "A_2 0^m A_2 occurs for every m",
                           {"depth": depth, "m_range": list(m_range)},
                           {"found": found, "missing_count": len(missing),
                            "missing_first": missing[:10], "prefix_length": x.span},
                           PASS if not missing else FAIL)


@_timed
def multiple_recurrence_failure(depth: int = 7, r: int = 20, nmax: int = 10_000,
                                places: int = 50) -> CriterionResult:
    """Criterion 5: no (n, 2n)-return at radius r from A_2 places; all-zeros returns always."""
    params = {"depth": depth, "r": r, "nmax": nmax, "places": places}
    h = build_hierarchy(depth)
    x = hierarchy_sequence(h)
    need = 2 * nmax + r
    if depth < 2 or x.span <= need:
        return CriterionResult(5, "no T x T^2 return", params,
                               {"prefix_length": x.span, "required_length": need + 1},
                               INCONCLUSIVE)
    occ = occurrences(h.word(2), x).members()
    eligible = [int(j) for j in occ if j + need <= x.hi]
    if len(eligible) < places:
        return CriterionResult(5, "no T x T^2 return", params,
                               {"eligible_places": len(eligible)}, INCONCLUSIVE)
    nonempty = {}
    for j in eligible:
        found = multiple_recurrence_scan(x, j, r, nmax)
        if found:
            nonempty[j] = found[:5]
    zeros = SeqWindow.constant(0, need, 0, two_sided=False)
    zero_hits = multiple_recurrence_scan(zeros, 0, r, nmax)
    ok = not nonempty and len(zero_hits) == nmax
    return CriterionResult(5, "no T x T^2 return from A_2 places", params,
                           {"places_scanned": len(eligible), "places_with_returns": len(nonempty),
                            "examples": {str(k): v for k, v in list(nonempty.items())[:5]},
                            "zero_point_returns": len(zero_hits)},
                           PASS if ok else FAIL)


def _random_window(rng, max_span: int) -> Window1D:
    span = int(rng.integers(1, max_span + 1))
    lo = int(rng.integers(-500, 500))
    density = float(rng.uniform(0.1, 0.95))
    return Window1D(lo, lo + span - 1, rng.random(span) < density)


def _random_core(rng, lo: int, hi: int) -> tuple[int, int]:
    a = int(rng.integers(lo, hi + 1))
    b = int(rng.integers(lo, hi + 1))
    return (min(a, b), max(a, b))


@_timed
def largeness_oracles(seed: int = 0, cases: int = 200, max_span: int = 1000) -> CriterionResult:
    """Criterion 6: every detector matches its brute-force oracle."""
    rng = np.random.default_rng(seed)
    mismatches = []
    checks = 0
    for case in range(cases):
        S = _random_window(rng, max_span)
        core = _random_core(rng, S.lo, S.hi)
        checks += 1
        if syndetic_gap(S, core) != oracles.syndetic_gap(S, core):
            mismatches.append((case, "syndetic_gap"))
        N = int(rng.integers(1, min(S.span, 12) + 1))
        checks += 1
        if set(run_starts(S, N).members().tolist()) != oracles.run_starts(S, N):
            mismatches.append((case, "run_starts"))
        g = int(rng.integers(1, 6))
        L = int(rng.integers(g, g + 40))
        if L <= core[1] - core[0] + 1:
            checks += 1
            p = piecewise_syndetic_witness(S, g, L, core)
            if p != oracles.ps_witness(S, g, L, core) or (
                    p is not None and not check_ps_witness(S, p, g, L)):
                mismatches.append((case, "ps_witness"))
        rows, cols = int(rng.integers(1, 17)), int(rng.integers(1, 17))
        mlo, nlo = int(rng.integers(-20, 20)), int(rng.integers(-20, 20))
        box = Box(mlo, mlo + rows - 1, nlo, nlo + cols - 1)
        S2 = Window2D(box, rng.random((rows, cols)) < rng.uniform(0.15, 0.95))
        cm = _random_core(rng, box.mlo, box.mhi)
        cn = _random_core(rng, box.nlo, box.nhi)
        core2 = Box(cm[0], cm[1], cn[0], cn[1])
        checks += 1
        if syndetic2d_gap(S2, core2) != oracles.syndetic2d_gap(S2, core2):
            mismatches.append((case, "syndetic2d_gap"))
        M, N2 = int(rng.integers(1, rows + 1)), int(rng.integers(1, cols + 1))
        checks += 1
        got = {tuple(c) for c in block_starts_2d(S2, M, N2).members().tolist()}
        if got != oracles.block_starts_2d(S2, M, N2):
            mismatches.append((case, "block_starts_2d"))
    return CriterionResult(6, "largeness detectors match brute force",
                           {"seed": seed, "cases": cases, "max_span": max_span},
                           {"checks": checks, "mismatches": mismatches[:20],
                            "mismatch_count": len(mismatches)},
                           PASS if not mismatches else FAIL)


COPRIME_BASES = ((2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (4, 5), (4, 7), (5, 7))


@_timed
def filter_and_duality(seed: int = 0, cases: int = 50) -> CriterionResult:
    """Criterion 7: ts-filter closure at scale and the ps/ts duality probe."""
    rng = np.random.default_rng(seed)
    nmax = 3
    filter_fail, filter_runs = [], 0
    lo, hi = -60_000, 60_000
    for case in range(cases):
        b1, b2 = COPRIME_BASES[int(rng.integers(len(COPRIME_BASES)))]
        g1 = TSGenerator.geometric(b1, int(rng.integers(nmax, 6)), int(rng.integers(0, 1000)))
        g2 = TSGenerator.geometric(b2, int(rng.integers(nmax, 6)), int(rng.integers(0, 1000)))
        S1, S2 = ts_generate(g1, lo, hi), ts_generate(g2, lo, hi)
        p1 = thickly_syndetic_profile(S1, nmax)
        p2 = thickly_syndetic_profile(S2, nmax, p1.core)
        if not (p1.finite() and p2.finite()):
            continue
        filter_runs += 1
        p12 = thickly_syndetic_profile(S1 & S2, nmax, p1.core)
        if not p12.finite():
            filter_fail.append(case)
    duality_fail, duality_runs = [], 0
    for case in range(cases):
        base = int(rng.integers(2, 5))
        g = int(rng.integers(2, 6))
        gen = TSGenerator.geometric(base, 6, int(rng.integers(0, 1000)))
        lo2, hi2 = 0, 30_000
        S = ts_generate(gen, lo2, hi2)
        # certificate at run length g + 1; a stretch of length G + g holds a full run
        prof = thickly_syndetic_profile(S, g + 1)
        G = prof.gaps[g + 1]
        if G is None:
            continue
        L = G + g + int(rng.integers(0, 50))
        # T: sparse noise plus one planted stretch with gaps <= g
        T = rng.random(hi2 - lo2 + 1) < 0.01
        start = int(rng.integers(prof.core[0], prof.core[1] - L - g))
        pos = start
        while pos <= start + L + g:
            T[pos - lo2] = True
            pos += int(rng.integers(1, g + 1))
        Tw = Window1D(lo2, hi2, T)
        p = piecewise_syndetic_witness(Tw, g, L, prof.core)
        if p is None:
            continue
        duality_runs += 1
        if not check_ps_witness(Tw, p, g, L) or not (S & Tw).slice(p, p + L - 1).any():
            duality_fail.append(case)
    ok = not filter_fail and not duality_fail and filter_runs == cases and duality_runs == cases
    return CriterionResult(7, "filter closure and ps/ts duality at scale",
                           {"seed": seed, "cases": cases},
                           {"filter_runs": filter_runs, "filter_failures": filter_fail,
                            "duality_runs": duality_runs, "duality_failures": duality_fail},
                           PASS if ok else FAIL)


INDUCED_FAMILIES = ("n", "n,2n", "n^2", "n,n^2", "2n,-n", "n^3-n")


@_timed
def induced_algebra(seed: int = 0, points: int = 10, grid: int = 10) -> CriterionResult:
    """Criterion 8: commutation and group law on a grid, plus the linear-case identity."""
    rng = np.random.default_rng(seed)
    K, W = grid, grid
    failures = []
    checks = 0
    for idx in range(points):
        fam = INDUCED_FAMILIES[idx % len(INDUCED_FAMILIES)]
        A = PolyFamily.parse(fam)
        m0, k0 = (int(v) for v in rng.integers(-5, 6, size=2))
        # the composed element g + g2 reaches sigma-powers up to 2 grid away
        reach = K + 2 * grid + abs(k0) + 1
        span = max(abs(v) for n in range(-reach, reach + 1) for v in A.values(n))
        span += abs(m0) + 2 * grid + W + 2
        x = SeqWindow(-span, rng.integers(0, 2, 2 * span + 1), two_sided=True)
        p = act(GroupElement(m0, k0), omega(x, A, K, W))
        q = p.strip()
        g2 = GroupElement(*(int(v) for v in rng.integers(-grid, grid + 1, size=2)))
        for m in range(-grid, grid + 1):
            for k in range(-grid, grid + 1):
                checks += 1
                a = act(GroupElement(m, 0), act(GroupElement(0, k), p))
                b = act(GroupElement(0, k), act(GroupElement(m, 0), p))
                full = act(GroupElement(m, k), p)
                if not (a.same_cells(b) and a.same_cells(full)):
                    failures.append((idx, m, k, "provenance commutation"))
                lhs = act(GroupElement(m, k) + g2, p)
                rhs = act(GroupElement(m, k), act(g2, p))
                if not lhs.same_cells(rhs):
                    failures.append((idx, m, k, "group law"))
                # cells-only path: shrinks, must agree with the provenance result
                ca = act(GroupElement(m, 0), act(GroupElement(0, k), q))
                cb = act(GroupElement(0, k), act(GroupElement(m, 0), q))
                if not ca.same_cells(cb) or not ca.same_cells(full.restrict(ca.K, ca.obs)):
                    failures.append((idx, m, k, "cells-only"))
    linear = {}
    xs = squares_indicator(-400, 400)
    for a in ((1,), (2, 3), (1, -1)):
        res = linear_case_check(xs, a, K=8, W=20)
        linear[str(a)] = res.ok
    ok = not failures and all(linear.values())
    return CriterionResult(8, "induced action algebra and linear-case identity",
                           {"seed": seed, "points": points, "grid": 2 * grid + 1},
                           {"checks": checks, "failures": failures[:10],
                            "failure_count": len(failures), "linear_case": linear},
                           PASS if ok else FAIL)


@_timed
def bebutov_minimal_support(seed: int = 0, sets: int = 5, kmax: int = 12) -> CriterionResult:
    """Criterion 9: zero words of every length up to kmax occur, syndetically."""
    rng = np.random.default_rng(seed)
    runs = []
    ok = True
    for _ in range(sets):
        slope = int(rng.integers(2, 5))
        shift = int(rng.integers(0, 6))
        gen = TSGenerator(kmax, tuple(slope * N + shift for N in range(1, kmax + 1)),
                          int(rng.integers(0, 100)))
        S = ts_generate(gen, -5000, 5000)
        x = bebutov(S)
        missing = [k for k in range(1, kmax + 1) if Word.zeros(k) not in language(x, k)]
        gap = syndetic_gap(occurrences(Word.zeros(kmax), x))
        runs.append({"periods": list(gen.periods), "offset": gen.offset,
                     "missing_zero_words": missing, "zero_word_gap": gap})
        ok = ok and not missing and gap is not None
    return CriterionResult(9, "0^k occurs syndetically in the Bebutov sequence",
                           {"seed": seed, "sets": sets, "kmax": kmax}, {"runs": runs},
                           PASS if ok else FAIL)


SUITES = {
    "theoremB": (bridge_exactness, theorem_b_profile),
    "example35": (example35_pattern,),
    "theoremC": (hierarchy_occurrence, multiple_recurrence_failure),
    "largeness": (largeness_oracles,),
    "duality": (filter_and_duality,),
    "induced": (induced_algebra,),
    "bebutov": (bebutov_minimal_support,),
}
SUITES["all"] = tuple(fn for name in ("theoremB", "example35", "theoremC", "largeness",
                                      "duality", "induced", "bebutov") for fn in SUITES[name])


def run_suite(name: str, **options) -> list[CriterionResult]:
    """Run a suite; each option goes to the criteria whose signature accepts it."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for fn in SUITES[name]:
        accepted = inspect.signature(fn).parameters
        out.append(fn(**{k: v for k, v in options.items() if k in accepted and v is not None}))
    return out
