"""Exact outcome distributions by brute-force enumeration, and their seeded
Monte-Carlo counterparts.

The enumerator walks every permutation of the edge set and every phase
threshold value weighted by its binomial point mass, replaying the detector
exactly; probabilities are accumulated as rationals, so derived values are
exact for the given (binary) tau. The threshold is treated as independent of
the permutation, which matches generating the order by iid priorities.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .canonical import DiscType
from .detectors import (BAD_LARGE, BAD_LATE, BAD_SMALL, BAD_VIOLATING, GOOD,
                        DiscDetector, TreeDetector)
from .errors import TooManyEdgesError
from .graphs import Graph
from .streams import _count_heads, _fisher_yates, split_seed

OutcomeKey = Union[str, DiscType]

ENUMERATION_EDGE_CAP = 8


class OutcomeDistribution:
    """Distribution over detector outcomes; exact rationals that sum to one.

    Empirical (Monte-Carlo) instances carry the trial count and hold the
    observed frequencies as rationals as well.
    """

    def __init__(self, exact: Dict[OutcomeKey, Fraction],
                 trials: Optional[int] = None):
        total = sum(exact.values())
        assert total == 1, f"probabilities sum to {total}"
        self.exact = dict(exact)
        self.trials = trials

    def probability(self, key: OutcomeKey) -> Fraction:
        return self.exact.get(key, Fraction(0))

    def probability_float(self, key: OutcomeKey) -> float:
        return float(self.probability(key))

    def as_floats(self) -> Dict[OutcomeKey, float]:
        return {k: float(v) for k, v in self.exact.items()}

    def keys(self):
        return self.exact.keys()

    def __repr__(self):
        kind = "empirical" if self.trials else "exact"
        body = ", ".join(f"{k}: {float(v):.6g}" for k, v in sorted(
            self.exact.items(), key=lambda kv: str(kv[0])))
        return f"OutcomeDistribution({kind}, {{{body}}})"


def binomial_tails(m: int, tau: Fraction) -> List[Fraction]:
    """tails[t] = Pr[Bi(m, tau) >= t] for t in 0..m, exact."""
    pmf = [Fraction(math.comb(m, j)) * tau ** j * (1 - tau) ** (m - j)
           for j in range(m + 1)]
    tails = [Fraction(0)] * (m + 2)
    for t in range(m, -1, -1):
        tails[t] = tails[t + 1] + pmf[t]
    return tails[:m + 1]


def _as_fraction(tau) -> Fraction:
    # Fraction(float) is exact for the binary value actually supplied, so
    # closed forms evaluated over the same Fraction agree to all digits.
    return tau if isinstance(tau, Fraction) else Fraction(tau)


def tree_replay_profile(order, root: int) -> Tuple[List[int], Optional[int]]:
    """One capacity-free replay that determines every k at once.

    Returns (accept time steps in order, first violation time step or None).
    A detector with target size k behaves identically until it accepts its
    k-th vertex-adding edge and dies of overgrowth, so its outcome is a pure
    function of this profile:

      len(accepts) >= k            -> large component
      violation observed           -> violating edge
      len(accepts) + 1 < k         -> small component
      otherwise                    -> Good iff last accept <= threshold
    """
    from . import canonical

    gap = canonical.DEPTH_GAP
    dep = {root: 0}
    children_max: Dict[int, int] = {}
    maxdep = 0
    accepts: List[int] = []
    t = 0
    for a, b in order:
        t += 1
        da = dep.get(a)
        db = dep.get(b)
        if da is None and db is None:
            continue
        if da is not None and db is not None:
            if da == db:
                continue
            if da > db:
                a, b, da, db = b, a, db, da
            if db - da >= gap or children_max.get(a, 0) > b:
                return accepts, t
            continue
        if da is None:
            a, b, da = b, a, db
        if maxdep - da >= gap or children_max.get(a, 0) > b:
            return accepts, t
        d = da + 1
        dep[b] = d
        if d > maxdep:
            maxdep = d
        if b > children_max.get(a, 0):
            children_max[a] = b
        accepts.append(t)
    return accepts, None


def profile_outcome(accepts: List[int], t_violate: Optional[int],
                    k: int) -> Tuple[str, int]:
    """(category, t_last) for one k; category "pending" means the finalize
    outcome still depends on the threshold via t_last."""
    # Accept times always precede any recorded violation, so overgrowth at
    # the k-th accept decides first.
    if len(accepts) >= k:
        return BAD_LARGE, 0
    if t_violate is not None:
        return BAD_VIOLATING, 0
    if len(accepts) + 1 < k:
        return BAD_SMALL, 0
    return "pending", accepts[-1] if accepts else 0


def _edge_pairs(g: Graph) -> List[Tuple[int, int]]:
    return [(e.u, e.v) for e in g.edges]


def enumerate_outcomes(g: Graph, root: int, k: int, d: Optional[int],
                       tau) -> OutcomeDistribution:
    """Exact outcome distribution over (uniform permutation, binomial
    threshold) for one detector. d=None runs the tree detector, otherwise the
    disc detector with that budget.
    """
    m = g.m
    if m > ENUMERATION_EDGE_CAP:
        raise TooManyEdgesError(f"m={m} exceeds enumeration cap")
    tau_f = _as_fraction(tau)
    tails = binomial_tails(m, tau_f)
    per_perm = Fraction(1, math.factorial(m))
    dist: Dict[OutcomeKey, Fraction] = {}

    def add(key: OutcomeKey, p: Fraction) -> None:
        if p:
            dist[key] = dist.get(key, Fraction(0)) + p

    for order in itertools.permutations(_edge_pairs(g)):
        if d is None:
            accepts, t_violate = tree_replay_profile(order, root)
            category, t_last = profile_outcome(accepts, t_violate, k)
            if category != "pending":
                add(category, per_perm)
                continue
            good_p = tails[t_last]
            add(GOOD, per_perm * good_p)
            add(BAD_LATE, per_perm * (1 - good_p))
        else:
            det = DiscDetector(root, k, d)
            t = 0
            for a, b in order:
                t += 1
                det.update(a, b, t)
            if det.status != 0:
                add(det.reason, per_perm)
                continue
            code = det.finalize(m)
            good_p = tails[det.t_last]
            add(code, per_perm * good_p)
            add(BAD_LATE, per_perm * (1 - good_p))
    return OutcomeDistribution(dist)


def montecarlo_outcomes(g: Graph, root: int, k: int, d: Optional[int], tau,
                        trials: int, seed: int) -> OutcomeDistribution:
    """Seeded empirical twin of enumerate_outcomes.

    Each trial shuffles the edges and counts phase coins exactly as the
    stream generator does, from two independent child generators split off
    the given seed, then replays the real detector.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    perm_rng = random.Random(split_seed(seed, "permutation"))
    coin_rng = random.Random(split_seed(seed, "coins"))
    edges = _edge_pairs(g)
    m = len(edges)
    counts: Dict[OutcomeKey, int] = {}
    for _ in range(trials):
        _fisher_yates(edges, perm_rng)
        lam = _count_heads(m, tau, coin_rng)
        if d is None:
            det = TreeDetector(root, k)
        else:
            det = DiscDetector(root, k, d)
        t = 0
        for a, b in edges:
            t += 1
            det.update(a, b, t)
            if det.status != 0:
                break
        key = det.finalize(lam)
        counts[key] = counts.get(key, 0) + 1
    dist = {key: Fraction(c, trials) for key, c in counts.items()}
    return OutcomeDistribution(dist, trials=trials)


def within_three_sigma(empirical: OutcomeDistribution,
                       exact: OutcomeDistribution,
                       key: OutcomeKey) -> bool:
    """Binomial three-sigma agreement for one outcome's probability."""
    p = float(exact.probability(key))
    p_hat = float(empirical.probability(key))
    sigma = math.sqrt(p * (1 - p) / empirical.trials)
    return abs(p_hat - p) <= 3 * sigma if sigma > 0 else p_hat == p
