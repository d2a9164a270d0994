"""Agreement radius of sigma^k omega (squares, A = {n^2}) with z^(inf) and
with 0^(inf), at coordinate 0.

    python3 scripts/example35_convergence.py --kmax 40
"""

import argparse

from syndetica.constructions import delta_indicator, squares_indicator
from syndetica.induced import act, convergence_probe, diagonal, omega
from syndetica.poly import PolyFamily
from syndetica.symdyn import SeqWindow


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=40)
    ap.add_argument("--W", type=int, default=None, help="observation radius (default 2 kmax + 2)")
    args = ap.parse_args()

    W = args.W or 2 * args.kmax + 2
    x = squares_indicator(-W - 1, (args.kmax + 1) ** 2 + W + 1)
    w = omega(x, PolyFamily.parse("n^2"), K=0, W=W)
    z = diagonal(delta_indicator(-W, W), 1, K=0, W=W)
    zero = diagonal(SeqWindow.constant(-W, W, 0), 1, K=0, W=W)
    ks = range(2, args.kmax + 1)
    points = [act((0, k), w) for k in ks]
    to_z = convergence_probe(points, z, W)
    to_zero = convergence_probe(points, zero, W)
    print(f"{'k':>4} {'2k-2':>6} {'radius to z':>12} {'radius to 0':>12}")
    for k, a, b in zip(ks, to_z, to_zero):
        print(f"{k:>4} {2 * k - 2:>6} {a.per_coordinate[0]:>12} {b.per_coordinate[0]:>12}")


if __name__ == "__main__":
    main()
