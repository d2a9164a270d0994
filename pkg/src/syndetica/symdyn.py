"""Words, finitely known sequences, cylinders and occurrence scans.

Indexing follows the shift convention ``(T x)_i = x_{i+1}``: shifting a
sequence by k relabels index i + k as i. One-sided sequences are known on
``[0, hi]`` and lose their first k symbols under ``T^k``; two-sided ones
keep every symbol and move their known interval to ``[lo - k, hi - k]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import InconclusiveError, OutOfWindowError, WindowError
from .window import Window1D


@dataclass(frozen=True)
class Word:
    """A finite block ``b_0 ... b_{k-1}``; symbols are small nonnegative ints."""

    symbols: bytes = b""

    @classmethod
    def from_str(cls, text: str) -> "Word":
        return cls(bytes(int(ch) for ch in text))

    @classmethod
    def from_array(cls, arr) -> "Word":
        return cls(np.asarray(arr, dtype=np.uint8).tobytes())

    @classmethod
    def zeros(cls, k: int) -> "Word":
        return cls(bytes(k))

    @property
    def array(self) -> np.ndarray:
        return np.frombuffer(self.symbols, dtype=np.uint8)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i])
        return self.symbols[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols)

    def __mul__(self, k: int) -> "Word":
        return Word(self.symbols * k)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def __repr__(self) -> str:
        text = str(self)
        return f"Word({text[:40]!r}{'...' if len(text) > 40 else ''})"


class SeqWindow:
    """A sequence over a finite alphabet known exactly on ``[lo, hi]``."""

    __slots__ = ("lo", "symbols", "two_sided")

    def __init__(self, lo: int, symbols, two_sided: bool = True):
        arr = np.array(symbols, dtype=np.uint8, copy=True).ravel()
        if arr.size == 0:
            raise WindowError("a sequence window needs at least one known symbol")
        if not two_sided and lo != 0:
            raise WindowError(f"one-sided sequences start at index 0, got lo={lo}")
        arr.flags.writeable = False
        object.__setattr__(self, "lo", int(lo))
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "two_sided", bool(two_sided))

    def __setattr__(self, name, value):
        raise AttributeError("SeqWindow is immutable")

    @classmethod
    def from_str(cls, text: str, lo: int = 0, two_sided: bool = False) -> "SeqWindow":
        return cls(lo, [int(ch) for ch in text], two_sided)

    @classmethod
    def from_word(cls, word: Word, lo: int = 0, two_sided: bool = False) -> "SeqWindow":
        return cls(lo, word.array, two_sided)

    @classmethod
    def constant(cls, lo: int, hi: int, symbol: int = 0, two_sided: bool = True) -> "SeqWindow":
        return cls(lo, np.full(hi - lo + 1, symbol, dtype=np.uint8), two_sided)

    @property
    def hi(self) -> int:
        return self.lo + self.symbols.size - 1

    @property
    def span(self) -> int:
        return self.symbols.size

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def sidedness(self) -> str:
        return "two" if self.two_sided else "one"

    def covers(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    def __getitem__(self, i: int) -> int:
        if not self.lo <= i <= self.hi:
            raise OutOfWindowError(f"index {i} outside known interval {self.interval}")
        return int(self.symbols[i - self.lo])

    def block(self, j: int, length: int) -> np.ndarray:
        """Raw symbols ``x[j; j + length - 1]``."""
        if length < 0 or not self.covers(j, j + length - 1):
            raise OutOfWindowError(
                f"block [{j}, {j + length - 1}] outside known interval {self.interval}")
        return self.symbols[j - self.lo: j - self.lo + length]

    def word(self, j: int, length: int) -> Word:
        return Word.from_array(self.block(j, length))

    def shift(self, k: int = 1) -> "SeqWindow":
        """``T^k x`` with ``(T x)_i = x_{i+1}``."""
        if self.two_sided:
            return SeqWindow(self.lo - k, self.symbols, True)
        if k < 0:
            raise WindowError("one-sided shift is not invertible")
        if k > self.hi:
            raise OutOfWindowError(f"T^{k} leaves nothing of a sequence known on {self.interval}")
        return SeqWindow(0, self.symbols[k:], False)

    def restrict(self, lo: int, hi: int) -> "SeqWindow":
        return SeqWindow(lo, self.block(lo, hi - lo + 1), self.two_sided)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeqWindow):
            return NotImplemented
        return (self.lo == other.lo and self.two_sided == other.two_sided
                and np.array_equal(self.symbols, other.symbols))

    __hash__ = None

    def __repr__(self) -> str:
        text = "".join(map(str, self.symbols[:40]))
        tail = "..." if self.span > 40 else ""
        return f"SeqWindow({self.sidedness}-sided, [{self.lo}, {self.hi}], {text}{tail})"

    # ascii format: raw 0/1 text plus a JSON sidecar {sidedness, lo}

    def to_ascii(self) -> str:
        return "".join(map(str, self.symbols.tolist()))

    def sidecar(self) -> dict:
        return {"sidedness": self.sidedness, "lo": self.lo}

    @classmethod
    def from_ascii(cls, text: str, sidecar: dict) -> "SeqWindow":
        return cls(int(sidecar["lo"]), [int(ch) for ch in text.strip()],
                   sidecar["sidedness"] == "two")

    def save(self, path) -> None:
        path = Path(path)
        path.write_text(self.to_ascii() + "\n")
        sidecar_path(path).write_text(json.dumps(self.sidecar(), sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> "SeqWindow":
        path = Path(path)
        return cls.from_ascii(path.read_text(), json.loads(sidecar_path(path).read_text()))


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


@dataclass(frozen=True)
class Cylinder:
    """``C_j[b]``: sequences in which ``b`` occurs at place ``j``."""

    word: Word
    place: int

    def contains(self, s: SeqWindow) -> bool:
        return bytes(s.block(self.place, len(self.word))) == self.word.symbols


def occurrences(b: Word, s: SeqWindow) -> Window1D:
    """Places j with ``s[j; j + |b| - 1] = b``, over the places where b fits."""
    k = len(b)
    if k < 1:
        raise WindowError("occurrence search needs a nonempty word")
    if k > s.span:
        raise WindowError(f"word of length {k} does not fit in {s.interval}")
    places = s.span - k + 1
    sym = s.symbols
    mask = np.ones(places, dtype=bool)
    for t, ch in enumerate(b.symbols):
        mask &= sym[t:t + places] == ch
        if not mask.any():
            break
    return Window1D(s.lo, s.lo + places - 1, mask)


@dataclass(frozen=True)
class MetricValue:
    """A distance that is either exact or only an upper bound."""

    value: Fraction
    exact: bool
    first_difference: Optional[int] = None

    def __float__(self) -> float:
        return float(self.value)


def metric(x: SeqWindow, y: SeqWindow) -> MetricValue:
    """``rho(x, y) = 1 / (1 + min{|n| : x_n != y_n})``, as far as the windows tell.

    If a disagreement is found before the agreement radius runs out of known
    data the value is exact; otherwise it is the upper bound ``1 / (1 + R)``
    where every index with ``|n| < R`` is known to agree.
    """
    if x.two_sided != y.two_sided:
        raise WindowError("cannot compare one-sided and two-sided sequences")
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo > hi:
        raise WindowError(f"known intervals {x.interval} and {y.interval} are disjoint")
    if not lo <= 0 <= hi:
        return MetricValue(Fraction(1), False)
    # largest R with every |n| < R inside the overlap
    R = min(hi, -lo) + 1 if x.two_sided else hi + 1
    diff = x.block(lo, hi - lo + 1) != y.block(lo, hi - lo + 1)
    idx = np.flatnonzero(diff) + lo
    if idx.size:
        d = int(np.min(np.abs(idx)))
        if d <= R:
            return MetricValue(Fraction(1, 1 + d), True, d)
    return MetricValue(Fraction(1, 1 + R), False)


def hitting_offsets(u: Word, v: Word, s: SeqWindow) -> Window1D:
    """``{n : u occurs at some j and v occurs at j + n}`` within ``s``."""
    ou = occurrences(u, s)
    ov = occurrences(v, s)
    U, V = ou.bits, ov.bits
    lo_off = ov.lo - ou.hi
    hi_off = ov.hi - ou.lo
    nu, nv = int(U.sum()), int(V.sum())
    size = hi_off - lo_off + 1
    out = np.zeros(size, dtype=bool)
    if nu == 0 or nv == 0:
        return Window1D(lo_off, hi_off, out)
    if min(nu, nv) <= 256:
        # OR together shifted copies of the denser mask
        if nu <= nv:
            for a in np.flatnonzero(U):
                start = (ov.lo - (ou.lo + int(a))) - lo_off
                out[start:start + V.size] |= V
        else:
            for b in np.flatnonzero(V):
                # offsets (ov.lo + b) - (ou.lo + a) for a in U, a descending
                first = (ov.lo + int(b)) - ou.hi - lo_off
                out[first:first + U.size] |= U[::-1]
        return Window1D(lo_off, hi_off, out)
    n = 1 << (U.size + V.size - 1).bit_length()
    corr = np.fft.irfft(np.fft.rfft(V.astype(float), n) * np.fft.rfft(U[::-1].astype(float), n), n)
    out = corr[:size] > 0.5
    return Window1D(lo_off, hi_off, out)


def language(s: SeqWindow, k: int) -> frozenset:
    """Distinct words of length k occurring in the known part of ``s``."""
    if k < 1:
        raise WindowError(f"factor length must be >= 1, got {k}")
    if k > s.span:
        raise WindowError(f"factor length {k} exceeds known span {s.span}")
    views = np.lib.stride_tricks.sliding_window_view(s.symbols, k)
    rows = np.unique(views, axis=0)
    return frozenset(Word(row.tobytes()) for row in rows)


def multiple_recurrence_scan(s: SeqWindow, j: int, r: int, nmax: int) -> list[int]:
    """All n in [1, nmax] with ``T^n y`` and ``T^{2n} y`` agreeing with y on [0, r],
    where ``y = T^j s``.

    Raises InconclusiveError if ``s`` is not known on ``[j, j + 2 nmax + r]``.
    """
    if r < 0 or nmax < 1:
        raise WindowError(f"need r >= 0 and nmax >= 1, got r={r}, nmax={nmax}")
    need = j + 2 * nmax + r
    if not s.covers(j, need):
        raise InconclusiveError(
            f"scan needs symbols on [{j}, {need}], known interval is {s.interval}",
            required=need - j + 1)
    y = s.block(j, 2 * nmax + r + 1)
    ns = np.arange(1, nmax + 1)
    ok = np.ones(nmax, dtype=bool)
    for t in range(r + 1):
        ok &= (y[ns + t] == y[t]) & (y[2 * ns + t] == y[t])
        if not ok.any():
            break
    return [int(n) for n in ns[ok]]
