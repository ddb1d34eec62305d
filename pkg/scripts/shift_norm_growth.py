#!/usr/bin/env python3
"""Tabulate how the two length functions grow on powers of the basic shift.

For each n the table shows the crossing norm of the strip shift by n, the
witness word cost for it, and the homology norm of the block shift by n.
Both norms grow linearly, which is the point: a group with these length
functions cannot be boundedly generated by elements of bounded size.
"""

import argparse

from bigmcg import gf2hom, shark


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--block-dim", type=int, default=2)
    args = parser.parse_args()

    d = args.block_dim
    print(f"{'n':>4}  {'crossing':>8}  {'witness':>7}  {'homology (d=' + str(d) + ')':>14}")
    for n in range(0, args.max_n + 1):
        strip = shark.shift_power(n)
        crossing = shark.crossing_norm(strip)
        cost = shark.witness_factorization(strip).cost
        hom = gf2hom.homology_norm(gf2hom.graded_shift(n, d))
        print(f"{n:>4}  {crossing:>8}  {cost:>7}  {hom:>14}")


if __name__ == "__main__":
    main()
