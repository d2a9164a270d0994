"""Window-scale detectors for syndetic, thick, piecewise syndetic and thickly
syndetic sets in Z and Z^2.

Every measurement is a statement about a declared *core* interval (or box).
Gap conventions:

* 1D: the gap of S on a core is the least g such that every run of g
  consecutive integers inside the core meets S. Equivalently one plus the
  longest stretch of non-members inside the core. ``None`` means S misses
  the core entirely.
* 2D: the least g such that every box of size min(g, rows) x min(g, cols)
  inside the core meets S. When g exceeds the short side of the core the
  measurement is *saturated*: it only says thin strips across the core hit S.

Run starts and block starts must fit wholly inside the analysis window, so a
core that reaches past the region where they are known is reported as
inconclusive rather than silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InconclusiveError, OutOfWindowError, WindowError
from .window import Box, Window1D, Window2D

KINDS = ("syndetic", "thick", "piecewise-syndetic", "thickly-syndetic")


def _sliding_sum(bits: np.ndarray, length: int) -> np.ndarray:
    csum = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    return csum[length:] - csum[:-length]


def _box_sums(bits: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Count of members in every rows x cols box, indexed by the box corner."""
    p = np.zeros((bits.shape[0] + 1, bits.shape[1] + 1), dtype=np.int64)
    p[1:, 1:] = bits.cumsum(0, dtype=np.int64).cumsum(1)
    return p[rows:, cols:] - p[:-rows, cols:] - p[rows:, :-cols] + p[:-rows, :-cols]


def _resolve_core(S: Window1D, core) -> tuple[int, int]:
    if core is None:
        return S.interval
    lo, hi = int(core[0]), int(core[1])
    if lo > hi:
        raise WindowError(f"empty core [{lo}, {hi}]")
    if not S.covers(lo, hi):
        raise OutOfWindowError(f"core [{lo}, {hi}] outside window {S.interval}")
    return lo, hi


def longest_gap_run(bits: np.ndarray) -> int:
    """Length of the longest run of False in a 1D mask."""
    if bits.all():
        return 0
    padded = np.concatenate(([True], bits, [True]))
    idx = np.flatnonzero(padded)
    return int(np.max(np.diff(idx)) - 1)


def longest_run(S: Window1D, core=None) -> int:
    lo, hi = _resolve_core(S, core)
    return longest_gap_run(~S.slice(lo, hi))


def syndetic_gap(S: Window1D, core=None) -> Optional[int]:
    """Least g such that every g consecutive integers inside the core meet S."""
    lo, hi = _resolve_core(S, core)
    bits = S.slice(lo, hi)
    if not bits.any():
        return None
    return longest_gap_run(bits) + 1


def run_starts(S: Window1D, N: int) -> Window1D:
    """``B_N(S)``: positions n with [n, n + N - 1] inside S.

    Known on [lo, hi - N + 1], the positions where a run of length N fits.
    """
    if N < 1:
        raise WindowError(f"run length must be >= 1, got {N}")
    if N > S.span:
        raise InconclusiveError(
            f"window {S.interval} is shorter than run length {N}", required=N)
    return Window1D(S.lo, S.hi - N + 1, _sliding_sum(S.bits, N) == N)


@dataclass
class LargenessProfile1D:
    kind: str
    params: dict
    gaps: dict
    core: tuple[int, int]
    witness: Optional[Window1D] = None

    def finite(self) -> bool:
        return all(g is not None for g in self.gaps.values())

    def certified(self, bound: Optional[int] = None) -> bool:
        if not self.finite():
            return False
        return bound is None or all(g <= bound for g in self.gaps.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "gaps": {str(k): v for k, v in self.gaps.items()},
            "core": list(self.core),
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LargenessProfile1D":
        witness = obj.get("witness")
        return cls(
            kind=obj["kind"],
            params=dict(obj["params"]),
            gaps={int(k): v for k, v in obj["gaps"].items()},
            core=tuple(obj["core"]),
            witness=None if witness is None else Window1D.from_json(witness),
        )


def default_ts_core(S: Window1D, nmax: int) -> tuple[int, int]:
    return (S.lo, S.hi - nmax + 1)


def thickly_syndetic_profile(S: Window1D, nmax: int, core=None) -> LargenessProfile1D:
    """Gap of ``run_starts(S, N)`` on the core for every N in [1, nmax].

    The default core is the largest interval on which every B_N, N <= nmax,
    is known. A core reaching further right than ``hi - nmax + 1`` cannot be
    decided and raises InconclusiveError.
    """
    if nmax < 1:
        raise WindowError(f"nmax must be >= 1, got {nmax}")
    if nmax > S.span:
        raise InconclusiveError(
            f"window {S.interval} is shorter than run length {nmax}", required=nmax)
    if core is None:
        core = default_ts_core(S, nmax)
    lo, hi = int(core[0]), int(core[1])
    if lo < S.lo or hi > S.hi - nmax + 1:
        raise InconclusiveError(
            f"core [{lo}, {hi}] needs S known on [{lo}, {hi + nmax - 1}], "
            f"window is {S.interval}",
            required=(min(lo, S.lo), max(hi + nmax - 1, S.hi)))
    gaps = {}
    starts = None
    for N in range(1, nmax + 1):
        starts = run_starts(S, N)
        gaps[N] = syndetic_gap(starts, (lo, hi))
    return LargenessProfile1D(
        kind="thickly-syndetic", params={"nmax": nmax}, gaps=gaps,
        core=(lo, hi), witness=starts.restrict(lo, hi))


def syndetic_profile(S: Window1D, core=None) -> LargenessProfile1D:
    lo, hi = _resolve_core(S, core)
    return LargenessProfile1D(
        kind="syndetic", params={}, gaps={1: syndetic_gap(S, (lo, hi))},
        core=(lo, hi), witness=S.restrict(lo, hi))


def piecewise_syndetic_witness(S: Window1D, g: int, L: int, core=None) -> Optional[int]:
    """Leftmost p with [p, p + L - 1] inside the core on which S has gap <= g.

    "Gap <= g on the stretch" means every g consecutive integers of the
    stretch meet S.
    """
    lo, hi = _resolve_core(S, core)
    if g < 1 or L < g:
        raise WindowError(f"need 1 <= g <= L, got g={g}, L={L}")
    if L > hi - lo + 1:
        raise WindowError(f"stretch length {L} exceeds core length {hi - lo + 1}")
    hits = _sliding_sum(S.slice(lo, hi), g) > 0   # hits[t - lo]: [t, t+g-1] meets S
    need = L - g + 1
    good = _sliding_sum(hits, need) == need
    found = np.flatnonzero(good)
    if found.size == 0:
        return None
    return int(found[0]) + lo


def check_ps_witness(S: Window1D, p: int, g: int, L: int) -> bool:
    """Re-check a witness by direct scan."""
    bits = S.slice(p, p + L - 1)
    return all(bits[t:t + g].any() for t in range(L - g + 1))


# ---------------------------------------------------------------- Z^2


def _resolve_box(S: Window2D, core) -> Box:
    if core is None:
        return S.box
    core = Box(*(int(v) for v in core))
    if core.mlo > core.mhi or core.nlo > core.nhi:
        raise WindowError(f"empty core box {tuple(core)}")
    if not S.box.contains_box(core):
        raise OutOfWindowError(f"core {tuple(core)} outside box {tuple(S.box)}")
    return core


def syndetic2d_gap(S: Window2D, core=None) -> Optional[int]:
    """Least g such that every g x g box inside the core meets S.

    Box sides are clipped to the core dimensions, so the answer exists
    whenever S meets the core. Monotone in g, found by bisection over
    box-sum tables.
    """
    core = _resolve_box(S, core)
    bits = S.restrict(core).bits
    if not bits.any():
        return None
    rows, cols = bits.shape

    def covers(g: int) -> bool:
        return bool((_box_sums(bits, min(g, rows), min(g, cols)) > 0).all())

    lo, hi = 1, max(rows, cols)
    while lo < hi:
        mid = (lo + hi) // 2
        if covers(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def is_saturated(g: Optional[int], core: Box) -> bool:
    return g is not None and g > min(core.shape)


def block_starts_2d(S: Window2D, M: int, N: int) -> Window2D:
    """Positions (m, n) where the M x N block [m, m+M-1] x [n, n+N-1] lies in S."""
    if M < 1 or N < 1:
        raise WindowError(f"block dimensions must be >= 1, got {(M, N)}")
    rows, cols = S.shape
    if M > rows or N > cols:
        raise InconclusiveError(
            f"box {tuple(S.box)} is smaller than block {M}x{N}", required=(M, N))
    b = S.box
    return Window2D(Box(b.mlo, b.mhi - M + 1, b.nlo, b.nhi - N + 1),
                    _box_sums(S.bits, M, N) == M * N)


def leftmost_member_2d(S: Window2D) -> Optional[tuple[int, int]]:
    idx = np.argwhere(S.bits)
    if idx.size == 0:
        return None
    m, n = idx[0]   # argwhere is row-major over (m, n): lexicographic order
    return (int(m) + S.mlo, int(n) + S.nlo)


@dataclass
class LargenessProfile2D:
    kind: str
    params: dict
    gaps: dict
    core: Box
    saturated: dict = field(default_factory=dict)
    witness: Optional[tuple[int, int]] = None

    def finite(self) -> bool:
        return all(g is not None for g in self.gaps.values())

    def certified(self, bound: Optional[int] = None) -> bool:
        if not self.finite():
            return False
        return bound is None or all(g <= bound for g in self.gaps.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "gaps": {f"{M}x{N}": g for (M, N), g in self.gaps.items()},
            "saturated": {f"{M}x{N}": s for (M, N), s in self.saturated.items()},
            "core": list(self.core),
            "witness": None if self.witness is None else list(self.witness),
        }


def default_ts2d_core(S: Window2D, block_max: tuple[int, int]) -> Box:
    b = S.box
    return Box(b.mlo, b.mhi - block_max[0] + 1, b.nlo, b.nhi - block_max[1] + 1)


def thickly_syndetic_profile_2d(S: Window2D, block_max: tuple[int, int],
                                core=None) -> LargenessProfile2D:
    """Gap of ``block_starts_2d(S, M, N)`` on the core for all M, N up to block_max."""
    Mmax, Nmax = block_max
    if Mmax < 1 or Nmax < 1:
        raise WindowError(f"block bound must be >= 1, got {block_max}")
    limit = default_ts2d_core(S, block_max)
    if limit.mlo > limit.mhi or limit.nlo > limit.nhi:
        raise InconclusiveError(f"box {tuple(S.box)} smaller than block {block_max}",
                                required=block_max)
    core = limit if core is None else Box(*core)
    if not limit.contains_box(core):
        raise InconclusiveError(
            f"core {tuple(core)} reaches beyond {tuple(limit)}, where "
            f"{Mmax}x{Nmax} block starts are known", required=tuple(core))
    gaps, saturated = {}, {}
    witness = None
    for M in range(1, Mmax + 1):
        for N in range(1, Nmax + 1):
            starts = block_starts_2d(S, M, N)
            g = syndetic2d_gap(starts, core)
            gaps[(M, N)] = g
            saturated[(M, N)] = is_saturated(g, core)
            if (M, N) == (Mmax, Nmax):
                witness = leftmost_member_2d(starts.restrict(core))
    return LargenessProfile2D(kind="thickly-syndetic", params={"block_max": [Mmax, Nmax]},
                              gaps=gaps, core=core, saturated=saturated, witness=witness)
