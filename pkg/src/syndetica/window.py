"""Dense membership masks of integer sets on finite intervals and boxes.

A :class:`Window1D` knows membership exactly on ``[lo, hi]`` and nothing
outside it; asking about an index outside the window raises
:class:`~syndetica.errors.OutOfWindowError` instead of answering ``False``.
:class:`Window2D` is the same idea on a box ``[mlo, mhi] x [nlo, nhi]``,
stored with axis 0 running over ``m`` and axis 1 over ``n``.
"""

from __future__ import annotations

import base64
import io
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .errors import OutOfWindowError, WindowError

__all__ = [
    "Box",
    "Window1D",
    "Window2D",
    "set_algebra",
]


class Box(NamedTuple):
    mlo: int
    mhi: int
    nlo: int
    nhi: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.mhi - self.mlo + 1, self.nhi - self.nlo + 1)

    def contains_box(self, other: "Box") -> bool:
        return (self.mlo <= other.mlo and other.mhi <= self.mhi
                and self.nlo <= other.nlo and other.nhi <= self.nhi)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=bool, copy=True)
    arr.flags.writeable = False
    return arr


def _pack(bits: np.ndarray) -> str:
    return base64.b64encode(np.packbits(bits.ravel()).tobytes()).decode("ascii")


def _unpack(data: str, count: int) -> np.ndarray:
    raw = np.frombuffer(base64.b64decode(data), dtype=np.uint8)
    return np.unpackbits(raw, count=count).astype(bool)


class Window1D:
    """Exact membership of an integer set on the interval ``[lo, hi]``."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo: int, hi: int, bits):
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise WindowError(f"empty window: lo={lo} > hi={hi}")
        bits = _frozen(bits)
        if bits.shape != (hi - lo + 1,):
            raise WindowError(
                f"mask length {bits.shape} does not match [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Window1D is immutable")

    # construction

    @classmethod
    def from_predicate(cls, lo: int, hi: int, pred: Callable[[int], bool]) -> "Window1D":
        if lo > hi:
            raise WindowError(f"empty window: lo={lo} > hi={hi}")
        return cls(lo, hi, [bool(pred(n)) for n in range(lo, hi + 1)])

    @classmethod
    def from_mask_fn(cls, lo: int, hi: int, fn) -> "Window1D":
        """Vectorized variant: ``fn`` maps an int64 array of indices to a mask."""
        if lo > hi:
            raise WindowError(f"empty window: lo={lo} > hi={hi}")
        return cls(lo, hi, fn(np.arange(lo, hi + 1, dtype=np.int64)))

    @classmethod
    def from_members(cls, lo: int, hi: int, members: Iterable[int]) -> "Window1D":
        bits = np.zeros(hi - lo + 1 if hi >= lo else 0, dtype=bool)
        for n in members:
            if not lo <= n <= hi:
                raise OutOfWindowError(f"member {n} outside [{lo}, {hi}]")
            bits[n - lo] = True
        return cls(lo, hi, bits)

    @classmethod
    def full(cls, lo: int, hi: int) -> "Window1D":
        return cls(lo, hi, np.ones(hi - lo + 1, dtype=bool))

    @classmethod
    def empty(cls, lo: int, hi: int) -> "Window1D":
        return cls(lo, hi, np.zeros(hi - lo + 1, dtype=bool))

    # queries

    @property
    def span(self) -> int:
        return self.hi - self.lo + 1

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __len__(self) -> int:
        return self.span

    def __contains__(self, n: int) -> bool:
        if not self.lo <= n <= self.hi:
            raise OutOfWindowError(f"{n} outside window [{self.lo}, {self.hi}]")
        return bool(self.bits[n - self.lo])

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bits).astype(np.int64) + self.lo

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_empty(self) -> bool:
        return not self.bits.any()

    def covers(self, lo: int, hi: int) -> bool:
        return self.lo <= lo and hi <= self.hi

    def slice(self, lo: int, hi: int) -> np.ndarray:
        """Raw mask on ``[lo, hi]``, which must lie inside the window."""
        if not self.covers(lo, hi):
            raise OutOfWindowError(
                f"[{lo}, {hi}] not inside window [{self.lo}, {self.hi}]")
        return self.bits[lo - self.lo: hi - self.lo + 1]

    def restrict(self, lo: int, hi: int) -> "Window1D":
        return Window1D(lo, hi, self.slice(lo, hi))

    # algebra

    def _check_same(self, other: "Window1D") -> None:
        if self.interval != other.interval:
            raise WindowError(
                f"mismatched windows {self.interval} and {other.interval}")

    def __or__(self, other: "Window1D") -> "Window1D":
        self._check_same(other)
        return Window1D(self.lo, self.hi, self.bits | other.bits)

    def __and__(self, other: "Window1D") -> "Window1D":
        self._check_same(other)
        return Window1D(self.lo, self.hi, self.bits & other.bits)

    def __sub__(self, other: "Window1D") -> "Window1D":
        self._check_same(other)
        return Window1D(self.lo, self.hi, self.bits & ~other.bits)

    def __xor__(self, other: "Window1D") -> "Window1D":
        self._check_same(other)
        return Window1D(self.lo, self.hi, self.bits ^ other.bits)

    def __invert__(self) -> "Window1D":
        return Window1D(self.lo, self.hi, ~self.bits)

    def __le__(self, other: "Window1D") -> bool:
        self._check_same(other)
        return not (self.bits & ~other.bits).any()

    def shift(self, k: int) -> "Window1D":
        """The set ``{n + k : n in self}``, known on ``[lo + k, hi + k]``."""
        return Window1D(self.lo + k, self.hi + k, self.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window1D):
            return NotImplemented
        return self.interval == other.interval and np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self) -> str:
        members = self.members()
        shown = ", ".join(map(str, members[:8]))
        more = ", ..." if members.size > 8 else ""
        return f"Window1D([{self.lo}, {self.hi}], {{{shown}{more}}})"

    # serialization

    def to_json(self) -> dict:
        return {"type": "window1d", "lo": self.lo, "hi": self.hi, "bits": _pack(self.bits)}

    @classmethod
    def from_json(cls, obj: dict) -> "Window1D":
        lo, hi = int(obj["lo"]), int(obj["hi"])
        return cls(lo, hi, _unpack(obj["bits"], hi - lo + 1))

    def to_csv(self) -> str:
        return "n\n" + "".join(f"{n}\n" for n in self.members())

    @classmethod
    def from_csv(cls, text: str, lo: int, hi: int) -> "Window1D":
        rows = [line.strip() for line in text.splitlines()[1:] if line.strip()]
        return cls.from_members(lo, hi, (int(r) for r in rows))


class Window2D:
    """Exact membership of a subset of Z^2 on the box ``[mlo, mhi] x [nlo, nhi]``.

    ``bits[m - mlo, n - nlo]`` is the membership of ``(m, n)``.
    """

    __slots__ = ("box", "bits")

    def __init__(self, box, bits):
        box = Box(*(int(v) for v in box))
        if box.mlo > box.mhi or box.nlo > box.nhi:
            raise WindowError(f"empty box {tuple(box)}")
        bits = _frozen(bits)
        if bits.shape != box.shape:
            raise WindowError(f"mask shape {bits.shape} does not match box {tuple(box)}")
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Window2D is immutable")

    mlo = property(lambda self: self.box.mlo)
    mhi = property(lambda self: self.box.mhi)
    nlo = property(lambda self: self.box.nlo)
    nhi = property(lambda self: self.box.nhi)

    @classmethod
    def from_predicate(cls, box, pred: Callable[[int, int], bool]) -> "Window2D":
        box = Box(*box)
        bits = np.zeros(box.shape, dtype=bool)
        for i, m in enumerate(range(box.mlo, box.mhi + 1)):
            for j, n in enumerate(range(box.nlo, box.nhi + 1)):
                bits[i, j] = bool(pred(m, n))
        return cls(box, bits)

    @classmethod
    def from_members(cls, box, members: Iterable[tuple[int, int]]) -> "Window2D":
        box = Box(*box)
        bits = np.zeros(box.shape, dtype=bool)
        for m, n in members:
            if not (box.mlo <= m <= box.mhi and box.nlo <= n <= box.nhi):
                raise OutOfWindowError(f"member {(m, n)} outside box {tuple(box)}")
            bits[m - box.mlo, n - box.nlo] = True
        return cls(box, bits)

    @classmethod
    def full(cls, box) -> "Window2D":
        return cls(box, np.ones(Box(*box).shape, dtype=bool))

    @classmethod
    def empty(cls, box) -> "Window2D":
        return cls(box, np.zeros(Box(*box).shape, dtype=bool))

    @property
    def shape(self) -> tuple[int, int]:
        return self.box.shape

    def __contains__(self, mn: tuple[int, int]) -> bool:
        m, n = mn
        b = self.box
        if not (b.mlo <= m <= b.mhi and b.nlo <= n <= b.nhi):
            raise OutOfWindowError(f"{(m, n)} outside box {tuple(b)}")
        return bool(self.bits[m - b.mlo, n - b.nlo])

    def members(self) -> np.ndarray:
        idx = np.argwhere(self.bits).astype(np.int64)
        idx[:, 0] += self.box.mlo
        idx[:, 1] += self.box.nlo
        return idx

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_empty(self) -> bool:
        return not self.bits.any()

    def row(self, n: int) -> Window1D:
        """The slice at fixed ``n`` as a 1D window over ``m``."""
        if not self.nlo <= n <= self.nhi:
            raise OutOfWindowError(f"n={n} outside [{self.nlo}, {self.nhi}]")
        return Window1D(self.mlo, self.mhi, self.bits[:, n - self.nlo])

    def restrict(self, box) -> "Window2D":
        box = Box(*box)
        if not self.box.contains_box(box):
            raise OutOfWindowError(f"box {tuple(box)} not inside {tuple(self.box)}")
        b = self.box
        return Window2D(box, self.bits[box.mlo - b.mlo: box.mhi - b.mlo + 1,
                                       box.nlo - b.nlo: box.nhi - b.nlo + 1])

    def _check_same(self, other: "Window2D") -> None:
        if self.box != other.box:
            raise WindowError(f"mismatched boxes {tuple(self.box)} and {tuple(other.box)}")

    def __or__(self, other):
        self._check_same(other)
        return Window2D(self.box, self.bits | other.bits)

    def __and__(self, other):
        self._check_same(other)
        return Window2D(self.box, self.bits & other.bits)

    def __sub__(self, other):
        self._check_same(other)
        return Window2D(self.box, self.bits & ~other.bits)

    def __xor__(self, other):
        self._check_same(other)
        return Window2D(self.box, self.bits ^ other.bits)

    def __invert__(self):
        return Window2D(self.box, ~self.bits)

    def __le__(self, other) -> bool:
        self._check_same(other)
        return not (self.bits & ~other.bits).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window2D):
            return NotImplemented
        return self.box == other.box and np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Window2D({tuple(self.box)}, {self.count()} cells)"

    def to_json(self) -> dict:
        b = self.box
        return {"type": "window2d", "lo": b.mlo, "hi": b.mhi, "nlo": b.nlo,
                "nhi": b.nhi, "bits": _pack(self.bits)}

    @classmethod
    def from_json(cls, obj: dict) -> "Window2D":
        box = Box(int(obj["lo"]), int(obj["hi"]), int(obj["nlo"]), int(obj["nhi"]))
        rows, cols = box.shape
        return cls(box, _unpack(obj["bits"], rows * cols).reshape(rows, cols))

    def to_csv(self) -> str:
        return "m,n\n" + "".join(f"{m},{n}\n" for m, n in self.members())

    @classmethod
    def from_csv(cls, text: str, box) -> "Window2D":
        rows = [line.split(",") for line in text.splitlines()[1:] if line.strip()]
        return cls.from_members(box, ((int(m), int(n)) for m, n in rows))

    def to_pbm(self) -> bytes:
        """Binary P4 bitmap: columns are m ascending, rows are n descending."""
        width, height = self.shape
        image = self.bits.T[::-1]
        out = io.BytesIO()
        out.write(f"P4\n{width} {height}\n".encode("ascii"))
        out.write(np.packbits(image, axis=1).tobytes())
        return out.getvalue()

    @classmethod
    def from_pbm(cls, data: bytes, mlo: int, nlo: int) -> "Window2D":
        header, rest = _split_pbm(data)
        width, height = header
        row_bytes = (width + 7) // 8
        raw = np.frombuffer(rest[: row_bytes * height], dtype=np.uint8).reshape(height, row_bytes)
        image = np.unpackbits(raw, axis=1, count=width).astype(bool)
        return cls(Box(mlo, mlo + width - 1, nlo, nlo + height - 1), image[::-1].T)


def _split_pbm(data: bytes):
    tokens = []
    pos = 0
    while len(tokens) < 3:
        while data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        start = pos
        while not data[pos:pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    if tokens[0] != b"P4":
        raise ValueError("not a binary PBM (P4) image")
    return (int(tokens[1]), int(tokens[2])), data[pos + 1:]


def set_algebra(a, b=None, op: str = "union", k: int = 0):
    """Dispatch a named set operation.

    ``op`` is one of union, intersect, minus, xor, complement, shift. Unary
    operations ignore ``b``; ``shift`` relabels by ``k``.
    """
    if op == "complement":
        return ~a
    if op == "shift":
        if not isinstance(a, Window1D):
            raise WindowError("shift is defined for 1D windows")
        return a.shift(k)
    if b is None:
        raise WindowError(f"{op} needs two operands")
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    if op == "minus":
        return a - b
    if op == "xor":
        return a ^ b
    raise ValueError(f"unknown set operation {op!r}")
