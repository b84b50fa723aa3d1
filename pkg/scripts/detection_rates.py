#!/usr/bin/env python3
"""Detection-rate table for the two witness graphs.

Prints, for a grid of phase probabilities, the exact acceptance probability
(exhaustive enumeration), the closed form, a seeded Monte-Carlo estimate, and
the oversize-acceptance ratio that shrinks linearly with tau.
"""

import argparse
from fractions import Fraction

from streamscope.detectors import GOOD
from streamscope.enumeration import enumerate_outcomes, montecarlo_outcomes
from streamscope.graphs import Graph, edge

TRIANGLE = Graph(3, [edge(1, 2), edge(1, 3), edge(2, 3)])
P4 = Graph(4, [edge(1, 2), edge(2, 3), edge(3, 4)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'tau':>6} {'graph':>9} {'exact':>12} {'closed form':>12} "
          f"{'monte carlo':>12} {'oversize/γ':>11}")
    for num, den in ((1, 20), (1, 10), (1, 5), (3, 10), (2, 5)):
        tau = Fraction(num, den)
        closed_tri = tau ** 2 / 2 - tau ** 3 / 6
        closed_p4 = tau ** 3 / 3
        for g, name, closed in ((TRIANGLE, "triangle", closed_tri),
                                (P4, "4-path", closed_p4)):
            exact = enumerate_outcomes(g, 1, 3, None, tau).probability(GOOD)
            mc = montecarlo_outcomes(g, 1, 3, None, float(tau), args.trials,
                                     args.seed).probability_float(GOOD)
            ratio = exact / (tau ** 2 / 2)
            print(f"{float(tau):>6.3f} {name:>9} {float(exact):>12.6f} "
                  f"{float(closed):>12.6f} {mc:>12.6f} {float(ratio):>11.4f}")
        print()


if __name__ == "__main__":
    main()
