"""Concrete systems: Bebutov indicators of sets, the squares indicator and
the block hierarchy behind the non-minimal mixing example."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import OutOfWindowError, WindowError
from .symdyn import SeqWindow, Word
from .window import Window1D

DEFAULT_DEPTH = 7


def bebutov(S: Window1D) -> SeqWindow:
    """Two-sided ``x = 1_{Z \\ S}``: symbol 0 exactly on S."""
    return SeqWindow(S.lo, (~S.bits).astype(np.uint8), two_sided=True)


def squares_mask(ns: np.ndarray) -> np.ndarray:
    ns = np.asarray(ns, dtype=np.int64)
    out = np.zeros(ns.shape, dtype=bool)
    nonneg = ns >= 0
    roots = np.array([math.isqrt(int(v)) for v in ns[nonneg]], dtype=np.int64)
    out[nonneg] = roots * roots == ns[nonneg]
    return out


def squares_window(lo: int, hi: int) -> Window1D:
    return Window1D.from_mask_fn(lo, hi, squares_mask)


def squares_indicator(lo: int, hi: int) -> SeqWindow:
    """Two-sided ``x(n) = 1`` iff n is a perfect square."""
    if lo > hi:
        raise WindowError(f"empty interval [{lo}, {hi}]")
    return SeqWindow(lo, squares_window(lo, hi).bits.astype(np.uint8), two_sided=True)


def delta_indicator(lo: int, hi: int, at: int = 0) -> SeqWindow:
    """``z = 1_{{at}}`` on ``[lo, hi]``."""
    arr = np.zeros(hi - lo + 1, dtype=np.uint8)
    if lo <= at <= hi:
        arr[at - lo] = 1
    return SeqWindow(lo, arr, two_sided=True)


def default_b_rule(n: int, lengths: list[int]) -> int:
    """Smallest admissible gap: ``15 a_{n-1} + 1`` with ``a_0 = 1``."""
    return 15 * lengths[n - 1] + 1


@dataclass(frozen=True)
class BlockHierarchy:
    """``A_1 = 1``, ``A_{n+1} = A_n 0^{b_n} A_n 0^{n} A_n``.

    ``words[n-1]`` is ``A_n``; ``b[n-1]`` is ``b_n``; ``lengths[n]`` is
    ``a_n`` with ``lengths[0] = a_0 = 1`` by convention.
    """

    words: tuple[np.ndarray, ...]
    b: tuple[int, ...]
    lengths: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.words)

    def word(self, n: int) -> Word:
        return Word.from_array(self.words[n - 1])

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "a": list(self.lengths[1:]),
            "b": list(self.b),
            "a0": self.lengths[0],
        }


def build_hierarchy(depth: int = DEFAULT_DEPTH,
                    b_rule: Optional[Callable[[int, list[int]], int]] = None) -> BlockHierarchy:
    """Build ``A_1 .. A_depth``.

    ``b_rule(n, lengths)`` returns ``b_n`` given ``lengths = [a_0, ..., a_n]``;
    every value must exceed ``15 a_{n-1}``.
    """
    if depth < 1:
        raise WindowError(f"depth must be >= 1, got {depth}")
    rule = b_rule or default_b_rule
    words = [np.array([1], dtype=np.uint8)]
    lengths = [1, 1]
    bs = []
    for n in range(1, depth):
        b_n = int(rule(n, list(lengths)))
        if b_n <= 15 * lengths[n - 1]:
            raise WindowError(
                f"b_{n} = {b_n} violates b_n > 15 a_{n - 1} = {15 * lengths[n - 1]}")
        prev = words[-1]
        nxt = np.concatenate([prev, np.zeros(b_n, np.uint8), prev, np.zeros(n, np.uint8), prev])
        if not np.array_equal(nxt[:prev.size], prev):
            raise AssertionError(f"A_{n} is not a prefix of A_{n + 1}")
        assert nxt.size == 3 * lengths[n] + b_n + n
        nxt.flags.writeable = False
        words.append(nxt)
        bs.append(b_n)
        lengths.append(int(nxt.size))
    words[0].flags.writeable = False
    return BlockHierarchy(tuple(words), tuple(bs), tuple(lengths))


def hierarchy_prefix(h: BlockHierarchy, length: int) -> SeqWindow:
    """First ``length`` symbols of ``x = lim A_n^infinity`` (one-sided)."""
    top = h.words[-1]
    if length < 1:
        raise WindowError(f"prefix length must be >= 1, got {length}")
    if length > top.size:
        raise OutOfWindowError(
            f"prefix of length {length} needs more than depth {h.depth} "
            f"(|A_{h.depth}| = {top.size})")
    return SeqWindow(0, top[:length], two_sided=False)


def hierarchy_sequence(h: BlockHierarchy) -> SeqWindow:
    return hierarchy_prefix(h, h.words[-1].size)
