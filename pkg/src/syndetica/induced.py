"""Truncated simulation of the induced Z^2-system generated by T^inf
(apply T in every coordinate) and sigma (shift the coordinate index).

A point is stored by provenance: a base sequence x, a polynomial family
(or ``None`` for a diagonal point ``x^(inf)``) and the group element
(m, k) applied so far. Coordinate n, component i of ``(T^inf)^m sigma^k
omega_x`` is ``T^{m + p_i(n + k)} x``; the materialized cells hold that
sequence on a finite observation range of indices t. Acting by a group
element re-materializes from the base, so deep orbit points lose nothing
while the base covers them. Points without a base ("cells-only") shrink
instead: sigma^k eats |k| coordinates, T^m eats |m| observation indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CoverageError, WindowError
from .poly import PolyFamily, check_int64
from .symdyn import SeqWindow
from .window import Box, Window2D


@dataclass(frozen=True)
class GroupElement:
    """``(T^inf)^m sigma^k``. The two generators commute."""

    m: int = 0
    k: int = 0

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.m + other.m, self.k + other.k)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.m, -self.k)

    def is_identity(self) -> bool:
        return self.m == 0 and self.k == 0


def _as_group(g) -> GroupElement:
    return g if isinstance(g, GroupElement) else GroupElement(*g)


def _offsets(family: Optional[PolyFamily], d: int, K: int, g: GroupElement) -> np.ndarray:
    """Shift powers s[n + K, i] = m + p_i(n + k) for |n| <= K."""
    out = np.empty((2 * K + 1, d), dtype=np.int64)
    for row, n in enumerate(range(-K, K + 1)):
        if family is None:
            out[row, :] = g.m
        else:
            for i, p in enumerate(family.polys):
                out[row, i] = check_int64(g.m + p(n + g.k), "shift power")
    return out


class TruncPoint:
    """Finite truncation of a point of (X^d)^Z.

    ``cells[n + K, i, t - tlo]`` is symbol t of component i at coordinate n.
    """

    __slots__ = ("base", "family", "d", "K", "obs", "g", "cells")

    def __init__(self, cells, K: int, obs: tuple[int, int], base: Optional[SeqWindow] = None,
                 family: Optional[PolyFamily] = None, g: GroupElement = GroupElement()):
        cells = np.array(cells, dtype=np.uint8, copy=True)
        tlo, thi = int(obs[0]), int(obs[1])
        if K < 0 or tlo > thi:
            raise WindowError(f"bad truncation K={K}, obs={obs}")
        if cells.ndim != 3 or cells.shape[0] != 2 * K + 1 or cells.shape[2] != thi - tlo + 1:
            raise WindowError(f"cells shape {cells.shape} does not match K={K}, obs={obs}")
        cells.flags.writeable = False
        for name, value in (("base", base), ("family", family), ("d", cells.shape[1]),
                            ("K", int(K)), ("obs", (tlo, thi)), ("g", _as_group(g)),
                            ("cells", cells)):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("TruncPoint is immutable")

    @classmethod
    def materialize(cls, base: SeqWindow, family: Optional[PolyFamily], d: int, K: int,
                    obs: tuple[int, int], g: GroupElement = GroupElement()) -> "TruncPoint":
        g = _as_group(g)
        tlo, thi = obs
        if not base.two_sided and tlo < 0:
            raise WindowError("one-sided sequences have no negative indices")
        s = _offsets(family, d, K, g)
        lo = s + tlo
        hi = s + thi
        bad = np.argwhere((lo < base.lo) | (hi > base.hi)
                          | ((s < 0) if not base.two_sided else False))
        if bad.size:
            offending = [(int(r) - K, int(i)) for r, i in bad]
            shown = ", ".join(f"(n={n}, i={i + 1})" for n, i in offending[:6])
            need = (int(lo.min()), int(hi.max()))
            raise CoverageError(
                f"base known on {base.interval} does not cover coordinates {shown}"
                f"{' ...' if len(offending) > 6 else ''}; need {list(need)}", offending)
        t = np.arange(tlo, thi + 1, dtype=np.int64)
        idx = s[:, :, None] + t[None, None, :] - base.lo
        return cls(base.symbols[idx], K, (tlo, thi), base, family, g)

    @property
    def has_provenance(self) -> bool:
        return self.base is not None

    def coordinate(self, n: int, i: int = 0) -> SeqWindow:
        """Component i at coordinate n as a sequence window on the observation range."""
        if not -self.K <= n <= self.K:
            raise WindowError(f"coordinate {n} outside [-{self.K}, {self.K}]")
        one_sided = self.obs[0] == 0 and self.base is not None and not self.base.two_sided
        two_sided = not one_sided
        return SeqWindow(self.obs[0], self.cells[n + self.K, i], two_sided)

    def restrict(self, K: int, obs: tuple[int, int]) -> "TruncPoint":
        tlo, thi = obs
        if K > self.K or tlo < self.obs[0] or thi > self.obs[1]:
            raise WindowError(f"cannot restrict K={self.K}, obs={self.obs} to K={K}, obs={obs}")
        c = self.cells[self.K - K: self.K + K + 1, :, tlo - self.obs[0]: thi - self.obs[0] + 1]
        return TruncPoint(c, K, (tlo, thi), self.base, self.family, self.g)

    def strip(self) -> "TruncPoint":
        """Same cells, no provenance: later actions shrink instead of recomputing."""
        return TruncPoint(self.cells, self.K, self.obs)

    def same_cells(self, other: "TruncPoint") -> bool:
        return (self.K == other.K and self.obs == other.obs and self.d == other.d
                and np.array_equal(self.cells, other.cells))

    def __repr__(self) -> str:
        prov = "cells-only" if self.base is None else f"g=({self.g.m}, {self.g.k})"
        return f"TruncPoint(d={self.d}, K={self.K}, obs={self.obs}, {prov})"


def omega(x: SeqWindow, A: PolyFamily, K: int, W: int,
          obs: Optional[tuple[int, int]] = None) -> TruncPoint:
    """``omega_x^A`` truncated to coordinates |n| <= K.

    Observation range defaults to [-W, W] for two-sided x and [0, W] otherwise.
    """
    if obs is None:
        obs = (-W, W) if x.two_sided else (0, W)
    return TruncPoint.materialize(x, A, A.d, K, obs)


def diagonal(x: SeqWindow, d: int, K: int, W: int,
             obs: Optional[tuple[int, int]] = None) -> TruncPoint:
    """``x^(inf)``: every coordinate equal to ``(x, ..., x)``."""
    if obs is None:
        obs = (-W, W) if x.two_sided else (0, W)
    return TruncPoint.materialize(x, None, d, K, obs)


def act(g, p: TruncPoint) -> TruncPoint:
    """Apply ``(T^inf)^m sigma^k`` to p."""
    g = _as_group(g)
    if p.base is not None:
        return TruncPoint.materialize(p.base, p.family, p.d, p.K, p.obs, p.g + g)
    return _act_cells(g, p)


def _act_cells(g: GroupElement, p: TruncPoint) -> TruncPoint:
    K2 = p.K - abs(g.k)
    tlo, thi = p.obs
    if K2 < 0:
        raise CoverageError(f"sigma^{g.k} leaves no coordinates of a K={p.K} truncation")
    # (T^m y)_t = y_{t+m}: new range is the old one moved by -m, intersected with itself
    ntlo, nthi = max(tlo, tlo - g.m), min(thi, thi - g.m)
    if ntlo > nthi:
        raise CoverageError(f"T^{g.m} leaves no observed symbols of range {p.obs}")
    rows = slice(p.K - K2 + g.k, p.K + K2 + g.k + 1)
    cols = slice(ntlo + g.m - tlo, nthi + g.m - tlo + 1)
    return TruncPoint(p.cells[rows, :, cols], K2, (ntlo, nthi))


def tau_inf(p: TruncPoint, powers: Sequence[int]) -> TruncPoint:
    """Apply ``T^{a_1} x ... x T^{a_d}`` at every coordinate, on the observed cells.

    Works on cells only, so the observation range shrinks by max |a_i|.
    """
    if len(powers) != p.d:
        raise WindowError(f"need {p.d} powers, got {len(powers)}")
    tlo, thi = p.obs
    ntlo = max(tlo, *(tlo - a for a in powers))
    nthi = min(thi, *(thi - a for a in powers))
    if ntlo > nthi:
        raise CoverageError("powers exceed the observation range")
    width = nthi - ntlo + 1
    cells = np.empty((p.cells.shape[0], p.d, width), dtype=np.uint8)
    for i, a in enumerate(powers):
        start = ntlo + a - tlo
        cells[:, i, :] = p.cells[:, i, start:start + width]
    return TruncPoint(cells, p.K, (ntlo, nthi))


# ------------------------------------------------------------------ probes


def agreement_radius(a: np.ndarray, b: np.ndarray, obs: tuple[int, int], r: int) -> int:
    """Largest r' <= r with a_t == b_t for all observed |t| <= r' (t >= 0 one-sided).

    Returns -1 when the symbols at t = 0 differ.
    """
    tlo, thi = obs
    if not (tlo <= 0 <= thi):
        raise WindowError(f"observation range {obs} does not contain 0")
    limit = min(r, thi, -tlo) if tlo < 0 else min(r, thi)
    for rad in range(0, limit + 1):
        for t in ((rad, -rad) if tlo < 0 else (rad,)):
            if a[t - tlo] != b[t - tlo]:
                return rad - 1
    return limit


@dataclass
class ConvergenceStep:
    radius: int
    per_coordinate: dict


def convergence_probe(points: Iterable[TruncPoint], target: TruncPoint,
                      r: int) -> list[ConvergenceStep]:
    """Agreement radius of each point with ``target`` on every coordinate and component."""
    steps = []
    for p in points:
        if p.obs != target.obs or p.d != target.d:
            raise WindowError("points must share the target's observation range and arity")
        K = min(p.K, target.K)
        per = {}
        for n in range(-K, K + 1):
            per[n] = min(agreement_radius(p.cells[n + p.K, i], target.cells[n + target.K, i],
                                          p.obs, r) for i in range(p.d))
        steps.append(ConvergenceStep(min(per.values()), per))
    return steps


U_TILDE_DOC = "coordinate 0, every component, symbol 0 equal to 0"


def in_u_tilde(p: TruncPoint) -> bool:
    """Membership in the cylinder around 0^(inf): all components at coordinate 0
    read 0 at index 0."""
    tlo, thi = p.obs
    if not tlo <= 0 <= thi:
        raise WindowError("observation range must contain index 0")
    return bool((p.cells[p.K, :, -tlo] == 0).all())


@dataclass
class BridgeResult:
    lhs: Window2D
    rhs: Window2D

    @property
    def diff(self) -> Window2D:
        return self.lhs ^ self.rhs

    @property
    def differing_cells(self) -> int:
        return self.diff.count()

    def to_json(self) -> dict:
        return {"lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "diff": self.diff.to_json(), "differing_cells": self.differing_cells}


def hitting_set(x: SeqWindow, A: PolyFamily, box) -> Window2D:
    """``{(m, k) in box : (T^inf)^m sigma^k omega_x in U~}`` by orbit scanning.

    For each k the point ``sigma^k omega_x`` is materialized at coordinate 0
    with observation range [mlo, mhi]; ``(T^inf)^m`` then reads index m,
    since ``(T^m y)_0 = y_m``.
    """
    box = Box(*box)
    base = omega(x, A, K=0, W=0, obs=(box.mlo, box.mhi))
    rows, cols = box.shape
    out = np.empty((rows, cols), dtype=bool)
    for col, k in enumerate(range(box.nlo, box.nhi + 1)):
        pk = act(GroupElement(0, k), base)
        zero = pk.cells[0] == 0                     # shape (d, rows)
        out[:, col] = zero.all(axis=0)
    return Window2D(box, out)


def theorem_b_bridge(S, A: PolyFamily, box) -> BridgeResult:
    """Both sides of the hitting-set identity for x = 1_{Z \\ S}.

    The left side scans the orbit of omega_x for visits to U~; the right
    side is the arithmetic return set. They must agree cell for cell.
    """
    from .constructions import bebutov
    from .polyret import return_set

    return BridgeResult(hitting_set(bebutov(S), A, box), return_set(S, A, box))


@dataclass
class LinearCaseResult:
    ok: bool
    mismatches: int
    obs: tuple[int, int]


def linear_case_check(x: SeqWindow, a: Sequence[int], K: int, W: int) -> LinearCaseResult:
    """Compare ``sigma omega_x`` with ``tau_a^inf omega_x`` for A = {a_1 n, ..., a_d n}.

    The left side re-materializes from the base at sigma-power 1; the right
    side shifts the observed cells of omega_x component by component.
    """
    A = PolyFamily.linear(a)
    w = omega(x, A, K, W)
    rhs = tau_inf(w, a)
    lhs = act(GroupElement(0, 1), w).restrict(K, rhs.obs)
    mismatches = int(np.count_nonzero(lhs.cells != rhs.cells))
    return LinearCaseResult(mismatches == 0, mismatches, rhs.obs)


@dataclass
class ProbeResult:
    verdict: str                      # recurrent | not-recurrent | inconclusive
    witness: Optional[tuple[int, int]] = None
    returns: int = 0
    detail: str = ""
    all_returns: list = field(default_factory=list)


def _offset_range(p: TruncPoint, H: int) -> tuple[int, int]:
    lo = hi = None
    ks = range(p.g.k - H, p.g.k + H + 1)
    for n in range(-p.K, p.K + 1):
        for k in ks:
            vals = [0] * p.d if p.family is None else [q(n + k) for q in p.family.polys]
            for v in vals:
                lo = v if lo is None else min(lo, v)
                hi = v if hi is None else max(hi, v)
    return p.g.m - H + lo + p.obs[0], p.g.m + H + hi + p.obs[1]


def minimal_probe(points: Iterable[TruncPoint], r: int, H: int,
                  keep_returns: int = 0) -> list[ProbeResult]:
    """Exhaustive (r, H) joint-recurrence scan.

    A point is (r, H)-recurrent when some (m, k) != (0, 0) with |m|, |k| <= H
    moves it to a point agreeing with it on every coordinate |n| <= K and
    every observed index |t| <= r. Points whose base cannot cover the whole
    horizon are reported inconclusive.
    """
    results = []
    for p in points:
        if p.base is None:
            results.append(ProbeResult("inconclusive", detail="cells-only point has no provenance"))
            continue
        tlo = max(p.obs[0], -r) if p.obs[0] < 0 else 0
        thi = min(p.obs[1], r)
        lo, hi = _offset_range(p, H)
        lo += tlo - p.obs[0]
        hi += thi - p.obs[1]
        if not p.base.covers(lo, hi):
            results.append(ProbeResult(
                "inconclusive", detail=f"base {p.base.interval} must cover [{lo}, {hi}]"))
            continue
        results.append(_scan_point(p, r, H, tlo, thi, keep_returns))
    return results


def _scan_point(p: TruncPoint, r: int, H: int, tlo: int, thi: int,
                keep_returns: int) -> ProbeResult:
    base = p.base
    sym = base.symbols
    ms = np.arange(-H, H + 1, dtype=np.int64)
    ts = list(range(tlo, thi + 1))
    # check the centre first: it rejects most candidates
    ts.sort(key=abs)
    coords = sorted(range(-p.K, p.K + 1), key=abs)
    target = {(n, i, t): int(p.cells[n + p.K, i, t - p.obs[0]])
              for n in coords for i in range(p.d) for t in ts}
    returns = 0
    witness = None
    kept = []
    diagonal_point = p.family is None
    first_mask = None
    for k in range(-H, H + 1):
        if diagonal_point and k != -H:
            # diagonal points ignore sigma: every k repeats the first scan
            mask = first_mask
        else:
            mask = np.ones(ms.size, dtype=bool)
            for n in coords:
                for i in range(p.d):
                    s = p.g.m + (0 if diagonal_point else p.family.polys[i](n + p.g.k + k))
                    for t in ts:
                        mask &= sym[s + t + ms - base.lo] == target[(n, i, t)]
                        if not mask.any():
                            break
                    if not mask.any():
                        break
                if not mask.any():
                    break
            if diagonal_point:
                first_mask = mask
        hits = ms[mask]
        if k == 0:
            hits = hits[hits != 0]
        if hits.size:
            returns += int(hits.size)
            if witness is None:
                witness = (int(hits[0]), k)
            if len(kept) < keep_returns:
                kept.extend((int(m), k) for m in hits[: keep_returns - len(kept)])
    verdict = "recurrent" if returns else "not-recurrent"
    return ProbeResult(verdict, witness, returns, all_returns=kept)
