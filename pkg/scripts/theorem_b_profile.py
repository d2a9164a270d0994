"""Measure the Z^2 thickly-syndetic profile of polynomial return sets.

    python3 scripts/theorem_b_profile.py --polys "n,n^2" --nmax 3 4 5
"""

import argparse
import json
import time

from syndetica.poly import PolyFamily
from syndetica.polyret import TSGenerator, theorem_b_harness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--polys", default="n,n^2")
    ap.add_argument("--box", type=int, nargs=4, default=[-5000, 5000, -60, 60])
    ap.add_argument("--block-max", type=int, nargs=2, default=[3, 3])
    ap.add_argument("--nmax", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    A = PolyFamily.parse(args.polys)
    rows = []
    for nmax in args.nmax:
        t0 = time.perf_counter()
        rep = theorem_b_harness(TSGenerator(nmax), A, args.box, args.block_max)
        rows.append({"nmax": nmax, "seconds": round(time.perf_counter() - t0, 2), **rep.to_json()})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for row in rows:
        gaps = "  ".join(f"{k}:{'inf' if v is None else v}" for k, v in row["gaps"].items())
        print(f"nmax={row['nmax']}  {row['verdict']:<12} {gaps}  ({row['seconds']}s)")
        for note in row["notes"]:
            print(f"    {note}")


if __name__ == "__main__":
    main()
