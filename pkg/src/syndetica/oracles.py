"""Brute-force reference implementations.

Plain loops over Python sets and lists, sharing no code with the
vectorized paths they check. Slow on purpose; use on small windows.
"""

from __future__ import annotations


def members(S) -> set[int]:
    return {n for n in range(S.lo, S.hi + 1) if S.bits[n - S.lo]}


def syndetic_gap(S, core) -> int | None:
    """1 + the longest stretch of the core containing no member."""
    lo, hi = core
    elems = members(S)
    if not any(lo <= n <= hi for n in elems):
        return None
    longest = 0
    for t in range(lo, hi + 1):
        length = 0
        while t + length <= hi and t + length not in elems:
            length += 1
        longest = max(longest, length)
    return longest + 1


def run_starts(S, N) -> set[int]:
    elems = members(S)
    return {n for n in range(S.lo, S.hi - N + 2)
            if all(n + s in elems for s in range(N))}


def ps_witness(S, g, L, core) -> int | None:
    lo, hi = core
    elems = members(S)
    for p in range(lo, hi - L + 2):
        if all(any(t + s in elems for s in range(g)) for t in range(p, p + L - g + 1)):
            return p
    return None


def members_2d(S) -> set[tuple[int, int]]:
    b = S.box
    return {(m, n) for m in range(b.mlo, b.mhi + 1) for n in range(b.nlo, b.nhi + 1)
            if S.bits[m - b.mlo, n - b.nlo]}


def syndetic2d_gap(S, core) -> int | None:
    mlo, mhi, nlo, nhi = core
    elems = {c for c in members_2d(S) if mlo <= c[0] <= mhi and nlo <= c[1] <= nhi}
    if not elems:
        return None
    rows, cols = mhi - mlo + 1, nhi - nlo + 1
    for g in range(1, max(rows, cols) + 1):
        gm, gn = min(g, rows), min(g, cols)
        ok = True
        for m in range(mlo, mhi - gm + 2):
            for n in range(nlo, nhi - gn + 2):
                if not any((m + i, n + j) in elems for i in range(gm) for j in range(gn)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return g
    raise AssertionError("unreachable")


def block_starts_2d(S, M, N) -> set[tuple[int, int]]:
    b = S.box
    elems = members_2d(S)
    return {(m, n) for m in range(b.mlo, b.mhi - M + 2) for n in range(b.nlo, b.nhi - N + 2)
            if all((m + i, n + j) in elems for i in range(M) for j in range(N))}


def return_set(S, polys, box) -> set[tuple[int, int]]:
    """Double loop over the box, evaluating each polynomial by naive powers."""
    mlo, mhi, nlo, nhi = box
    elems = members(S)
    out = set()
    for n in range(nlo, nhi + 1):
        vals = [sum(c * n ** k for k, c in enumerate(p.coeffs, start=1)) for p in polys]
        for m in range(mlo, mhi + 1):
            if all(m + v in elems for v in vals):
                out.add((m, n))
    return out


def occurrences(word: str, seq: str, lo: int = 0) -> set[int]:
    k = len(word)
    return {lo + j for j in range(len(seq) - k + 1) if seq[j:j + k] == word}


def language(seq: str, k: int) -> set[str]:
    return {seq[j:j + k] for j in range(len(seq) - k + 1)}


def hitting_offsets(u: str, v: str, seq: str) -> set[int]:
    ou = occurrences(u, seq)
    ov = occurrences(v, seq)
    return {b - a for a in ou for b in ov}


def mrec_scan(seq: str, j: int, r: int, nmax: int) -> list[int]:
    y = seq[j:]
    head = y[:r + 1]
    return [n for n in range(1, nmax + 1)
            if y[n:n + r + 1] == head and y[2 * n:2 * n + r + 1] == head]
