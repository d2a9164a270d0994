"""(n, 2n) multiple-recurrence scan over the block hierarchy, plus the
table of zero-run lengths between consecutive A_2 copies.

    python3 scripts/theorem_c_scan.py --depth 7 --r 20 --nmax 10000
"""

import argparse
from collections import Counter

import numpy as np

from syndetica.constructions import build_hierarchy, hierarchy_sequence
from syndetica.symdyn import SeqWindow, multiple_recurrence_scan, occurrences


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=7)
    ap.add_argument("--r", type=int, default=20)
    ap.add_argument("--nmax", type=int, default=10_000)
    args = ap.parse_args()

    h = build_hierarchy(args.depth)
    x = hierarchy_sequence(h)
    print(f"depth {h.depth}: a = {list(h.lengths[1:])}, b = {list(h.b)}")
    places = occurrences(h.word(2), x).members()
    a2 = h.lengths[2]
    gaps = Counter(int(g) for g in np.diff(places) - a2)
    print(f"A_2 occurs {places.size} times; zero runs between consecutive copies: "
          + ", ".join(f"{m} (x{c})" for m, c in sorted(gaps.items())))

    need = 2 * args.nmax + args.r
    eligible = [int(j) for j in places if j + need <= x.hi]
    hits = {j: multiple_recurrence_scan(x, j, args.r, args.nmax) for j in eligible}
    nonempty = {j: v for j, v in hits.items() if v}
    print(f"scanned {len(eligible)} A_2 places (r={args.r}, nmax={args.nmax}); "
          f"places with an (n, 2n) return: {len(nonempty)}")
    for j, v in list(nonempty.items())[:10]:
        print(f"  j={j}: n in {v[:10]}")
    zeros = SeqWindow.constant(0, need, 0, two_sided=False)
    print(f"all-zeros point: {len(multiple_recurrence_scan(zeros, 0, args.r, args.nmax))} returns")


if __name__ == "__main__":
    main()
