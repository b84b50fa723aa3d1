#!/usr/bin/env python3
"""Per-edge update cost and peak detector memory across stream lengths.

Runs one component-count pass over padded triangle corpora of growing edge
count with fixed (samples, k_max) and reports that peak tree-slot usage stays
put while amortized per-edge time does not grow.
"""

import argparse
import time

from streamscope.corpus import padded_triangles
from streamscope.estimators import EstimatorParams, NumCCRun
from streamscope.streams import CountingStream, shuffle_stream, split_seed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--kmax", type=int, default=4)
    ap.add_argument("--tau", type=float, default=0.1)
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[1_000, 10_000, 100_000])
    args = ap.parse_args()

    print(f"{'m':>8} {'n':>8} {'pass (s)':>9} {'per edge':>10} "
          f"{'peak slots':>10} {'total':>10}")
    for m_target in args.sizes:
        g = padded_triangles(m_target)
        stream = shuffle_stream(g, split_seed(m_target, "permutation"))
        run = NumCCRun(g.n, EstimatorParams(
            tau=args.tau, s=args.samples, k_max=args.kmax,
            seed=split_seed(m_target, "estimator")))
        counting = CountingStream(stream)
        t0 = time.perf_counter()
        for e, _t in counting:
            run.feed(e.u, e.v)
        elapsed = time.perf_counter() - t0
        rep = run.finalize()
        print(f"{g.m:>8} {g.n:>8} {elapsed:>9.3f} "
              f"{elapsed / g.m * 1e6:>8.2f}us {rep.peak_tree_slots:>10} "
              f"{rep.total:>10.1f}")


if __name__ == "__main__":
    main()
