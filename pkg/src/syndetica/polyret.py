"""Polynomial return sets {(m, n) : m + p_i(n) in S for all i} and the
thick-syndeticity harness built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import CoverageError, InconclusiveError, WindowError
from .largeness import LargenessProfile2D, thickly_syndetic_profile_2d
from .poly import PolyFamily, check_int64
from .window import Box, Window1D, Window2D

DEFAULT_NMAX = 4


@dataclass(frozen=True)
class TSGenerator:
    """Union over N <= nmax of ``periods[N-1] * Z + offset + [0, N)``.

    Runs of length N start on ``periods[N-1] * Z + offset``, so the set is
    thickly syndetic by construction for run lengths up to nmax.
    """

    nmax: int = DEFAULT_NMAX
    periods: Optional[tuple[int, ...]] = None
    offset: int = 0

    def __post_init__(self):
        if self.nmax < 1:
            raise WindowError(f"nmax must be >= 1, got {self.nmax}")
        periods = self.periods
        if periods is None:
            periods = tuple(check_int64(4 ** N, f"g({N})") for N in range(1, self.nmax + 1))
        periods = tuple(int(g) for g in periods)
        if len(periods) != self.nmax:
            raise WindowError(f"need {self.nmax} periods, got {len(periods)}")
        for N, g in enumerate(periods, start=1):
            check_int64(g, f"g({N})")
            if g < N:
                raise WindowError(f"g({N}) = {g} < {N}")
        if any(b <= a for a, b in zip(periods, periods[1:])):
            raise WindowError(f"periods must be strictly increasing: {periods}")
        object.__setattr__(self, "periods", periods)

    @classmethod
    def geometric(cls, base: int, nmax: int, offset: int = 0) -> "TSGenerator":
        return cls(nmax, tuple(check_int64(base ** N, f"{base}^{N}")
                               for N in range(1, nmax + 1)), offset)

    def period(self, N: int) -> int:
        return self.periods[N - 1]

    def to_json(self) -> dict:
        return {"nmax": self.nmax, "periods": list(self.periods), "offset": self.offset}


def ts_generate(gen: TSGenerator, lo: int, hi: int) -> Window1D:
    def mask(ns):
        out = np.zeros(ns.size, dtype=bool)
        shifted = ns - gen.offset
        for N, g in enumerate(gen.periods, start=1):
            out |= np.mod(shifted, g) < N
        return out
    return Window1D.from_mask_fn(lo, hi, mask)


def required_window(A: PolyFamily, box) -> tuple[int, int]:
    """Smallest interval S must be known on for ``return_set(S, A, box)``."""
    box = Box(*box)
    table = A.table(box.nlo, box.nhi)
    lo = check_int64(box.mlo + int(table.min()), "window lo")
    hi = check_int64(box.mhi + int(table.max()), "window hi")
    return lo, hi


def _validate_coverage(S: Window1D, A: PolyFamily, box: Box) -> np.ndarray:
    table = A.table(box.nlo, box.nhi)
    offending = []
    for i in range(A.d):
        for col, n in enumerate(range(box.nlo, box.nhi + 1)):
            v = int(table[i, col])
            if box.mlo + v < S.lo or box.mhi + v > S.hi:
                offending.append((n, i))
    if offending:
        shown = ", ".join(f"(n={n}, p_{i + 1})" for n, i in offending[:6])
        more = f" and {len(offending) - 6} more" if len(offending) > 6 else ""
        need = required_window(A, box)
        raise CoverageError(
            f"S window {S.interval} does not cover m + p_i(n) for {shown}{more}; "
            f"need {list(need)}", offending)
    return table


def return_set(S: Window1D, A: PolyFamily, box) -> Window2D:
    """``{(m, n) in box : m + p_i(n) in S for every i}``, computed exactly."""
    box = Box(*box)
    if box.mlo > box.mhi or box.nlo > box.nhi:
        raise WindowError(f"empty box {tuple(box)}")
    table = _validate_coverage(S, A, box)
    rows, cols = box.shape
    out = np.empty((rows, cols), dtype=bool)
    for col in range(cols):
        acc = np.ones(rows, dtype=bool)
        for i in range(A.d):
            start = box.mlo + int(table[i, col]) - S.lo
            acc &= S.bits[start:start + rows]
        out[:, col] = acc
    return Window2D(box, out)


@dataclass
class HarnessReport:
    polys: str
    schedule: dict
    box: Box
    s_window: tuple[int, int]
    profile: LargenessProfile2D
    verdict: str
    notes: list = field(default_factory=list)

    @property
    def gaps(self) -> dict:
        return self.profile.gaps

    def to_json(self) -> dict:
        prof = self.profile.to_json()
        return {
            "polys": self.polys,
            "schedule": self.schedule,
            "box": list(self.box),
            "s_window": list(self.s_window),
            "core": prof["core"],
            "gaps": prof["gaps"],
            "saturated": prof["saturated"],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


def theorem_b_harness(gen: TSGenerator, A: PolyFamily, box, block_max: Sequence[int],
                      core=None, S: Optional[Window1D] = None) -> HarnessReport:
    """Generate S, form its return set over ``box`` and measure the Z^2
    thickly-syndetic profile for every block up to ``block_max``.

    Verdict is PASS when every measured gap is finite, FAIL otherwise, and
    INCONCLUSIVE when the box cannot host the requested blocks or core.
    Passing an explicit ``S`` overrides the generator.
    """
    box = Box(*box)
    lo, hi = required_window(A, box)
    if S is None:
        S = ts_generate(gen, lo, hi)
    R = return_set(S, A, box)
    block_max = (int(block_max[0]), int(block_max[1]))
    schedule = gen.to_json()
    try:
        profile = thickly_syndetic_profile_2d(R, block_max, core)
    except InconclusiveError as exc:
        empty = LargenessProfile2D("thickly-syndetic", {"block_max": list(block_max)},
                                   {}, Box(*(core or box)))
        return HarnessReport(str(A), schedule, box, S.interval, empty,
                             "INCONCLUSIVE", [str(exc)])
    verdict = "PASS" if profile.finite() else "FAIL"
    notes = []
    sat = [k for k, v in profile.saturated.items() if v]
    if sat:
        notes.append("gaps exceed the short side of the core for blocks "
                     + ", ".join(f"{M}x{N}" for M, N in sat))
    return HarnessReport(str(A), schedule, box, S.interval, profile, verdict, notes)

