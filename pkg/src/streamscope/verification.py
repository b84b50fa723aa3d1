"""Named verification checks: every probability and identity the library can
verify at desk scale, each as one pass/fail line.

The Monte-Carlo sweep shares one replay per (trial, root) across all target
sizes k: a size-k collector behaves exactly like the unbounded replay until
it accepts its k-th edge and dies of overgrowth, so the profile of accept
times plus the first violation time determines every k at once. A property
test cross-checks this reduction against the real detectors.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from . import canonical
from .canonical import (bounded_disc_code, cano_disc,
                        cano_disc_edge_order, cbfs_edge_order,
                        cbfs_tree, project_extended_disc)
from .corpus import all_graphs_up_to, random_connected_weighted, random_graph
from .detectors import (BAD_SMALL, GOOD, run_disc_detector, run_tree_detector)
from .enumeration import (binomial_tails, enumerate_outcomes,
                          montecarlo_outcomes, profile_outcome,
                          tree_replay_profile, _as_fraction)
from .graphs import Graph, connected_components
from .oracles import kruskal_mst, mst_identity_value
from .streams import _count_heads, _fisher_yates, split_seed


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.details}"


@contextmanager
def mutated_depth_gap(gap: int):
    """Perturb the violating-edge depth test (meta-testing only): the exact
    probability checks must notice."""
    old = canonical.DEPTH_GAP
    canonical.DEPTH_GAP = gap
    try:
        yield
    finally:
        canonical.DEPTH_GAP = old


# ---------------------------------------------------------------------------
# Exact detection probabilities (triangle and 4-path witnesses)


def check_exact_probabilities(trials: int = 1_000_000,
                              seed: int = 20_240_601) -> CheckResult:
    from .graphs import edge

    tau = Fraction(3, 10)
    tri = Graph(3, [edge(1, 2), edge(1, 3), edge(2, 3)])
    p4 = Graph(4, [edge(1, 2), edge(2, 3), edge(3, 4)])
    enum_tri = enumerate_outcomes(tri, 1, 3, None, tau).probability(GOOD)
    enum_p4 = enumerate_outcomes(p4, 1, 3, None, tau).probability(GOOD)
    closed_tri = tau ** 2 / 2 - tau ** 3 / 6
    closed_p4 = tau ** 3 / 3
    problems = []
    if enum_tri != closed_tri:
        problems.append(f"triangle {enum_tri} != {closed_tri}")
    if float(enum_tri) != 0.0405:
        problems.append(f"triangle float {float(enum_tri)} != 0.0405")
    if enum_p4 != closed_p4:
        problems.append(f"4-path {enum_p4} != {closed_p4}")
    if float(enum_p4) != 0.009:
        problems.append(f"4-path float {float(enum_p4)} != 0.009")
    for g, name, p in ((tri, "triangle", float(closed_tri)),
                       (p4, "4-path", float(closed_p4))):
        mc = montecarlo_outcomes(g, 1, 3, None, 0.3, trials,
                                 split_seed(seed, name))
        sigma = math.sqrt(p * (1 - p) / trials)
        diff = abs(mc.probability_float(GOOD) - p)
        if diff > 3 * sigma:
            problems.append(f"{name} monte-carlo off by {diff:.2e} > 3s={3*sigma:.2e}")
    if problems:
        return CheckResult("exact-probabilities", False, "; ".join(problems))
    return CheckResult(
        "exact-probabilities", True,
        f"triangle=0.0405, 4-path=0.009 exact; monte-carlo within 3 sigma "
        f"({trials} trials)")


# ---------------------------------------------------------------------------
# Enumerator vs Monte-Carlo sweep over all tiny graphs


def _tree_good_profiles(g: Graph, k_max: int):
    """Per (root, k): list of (kind, value) permutation outcomes, where kind
    "pending" carries t_last and everything else is threshold-independent."""
    import itertools

    edges = [(e.u, e.v) for e in g.edges]
    counts: Dict[Tuple[int, int], Counter] = {
        (v, k): Counter() for v in range(1, g.n + 1) for k in range(1, k_max + 1)}
    n_perms = 0
    for order in itertools.permutations(edges):
        n_perms += 1
        for v in range(1, g.n + 1):
            accepts, t_violate = tree_replay_profile(order, v)
            for k in range(1, k_max + 1):
                category, t_last = profile_outcome(accepts, t_violate, k)
                if category == "pending":
                    counts[(v, k)][("pending", t_last)] += 1
                else:
                    counts[(v, k)][("fixed", category)] += 1
    return counts, n_perms


def exact_good_probability(counts: Counter, n_perms: int, m: int,
                           tau: Fraction) -> Fraction:
    tails = binomial_tails(m, tau)
    total = Fraction(0)
    for (kind, value), c in counts.items():
        if kind == "pending":
            total += c * tails[value]
    return total / n_perms


def montecarlo_good_counts(g: Graph, tau: float, trials: int, seed: int,
                           k_max: int) -> Dict[Tuple[int, int], int]:
    """Shared-trial empirical Good counts for every (root, k) cell."""
    perm_rng = random.Random(split_seed(seed, "permutation"))
    coin_rng = random.Random(split_seed(seed, "coins"))
    edges = [(e.u, e.v) for e in g.edges]
    m = len(edges)
    roots = range(1, g.n + 1)
    good: Dict[Tuple[int, int], int] = {(v, k): 0 for v in roots
                                        for k in range(1, k_max + 1)}
    for _ in range(trials):
        _fisher_yates(edges, perm_rng)
        lam = _count_heads(m, tau, coin_rng)
        for v in roots:
            accepts, t_violate = tree_replay_profile(edges, v)
            if t_violate is not None:
                continue
            # Good can only land on the k matching the final tree size;
            # smaller k overflow and larger k starve.
            k = len(accepts) + 1
            if k <= k_max:
                t_last = accepts[-1] if accepts else 0
                if t_last <= lam:
                    good[(v, k)] += 1
    return good


def _sweep_cell_violations(g: Graph, tau: float, trials: int, seed: int,
                           k_max: int) -> Tuple[int, int, List[str]]:
    counts, n_perms = _tree_good_profiles(g, k_max)
    good = montecarlo_good_counts(g, tau, trials, seed, k_max)
    tau_f = _as_fraction(tau)
    cells = violations = 0
    messages: List[str] = []
    for v in range(1, g.n + 1):
        for k in range(1, k_max + 1):
            cells += 1
            p = float(exact_good_probability(counts[(v, k)], n_perms, g.m, tau_f))
            p_hat = good[(v, k)] / trials
            sigma = math.sqrt(p * (1 - p) / trials)
            ok = abs(p_hat - p) <= 3 * sigma if sigma > 0 else p_hat == p
            if not ok:
                violations += 1
                if len(messages) < 5:
                    messages.append(
                        f"m={g.m} root={v} k={k} tau={tau}: {p_hat:.5f} vs {p:.5f}")
    return cells, violations, messages


def _sweep_worker(args):
    edges, n, tau, trials, seed, k_max = args
    from .graphs import edge as mk

    g = Graph(n, [mk(u, v) for u, v in edges])
    return _sweep_cell_violations(g, tau, trials, seed, k_max)


def check_enumerator_montecarlo(trials: int = 100_000, k_max: int = 5,
                                taus=(0.1, 0.3), seed: int = 77,
                                jobs: int = 1, max_n: int = 5,
                                max_m: int = 6) -> CheckResult:
    graphs = all_graphs_up_to(max_n, max_m)
    tasks = []
    for gi, g in enumerate(graphs):
        for ti, tau in enumerate(taus):
            tasks.append(([(e.u, e.v) for e in g.edges], g.n, tau, trials,
                          split_seed(seed, f"sweep-{gi}-{ti}"), k_max))
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_sweep_worker, tasks)
    else:
        results = [_sweep_worker(t) for t in tasks]
    cells = sum(r[0] for r in results)
    violations = sum(r[1] for r in results)
    budget = max(1, int(0.005 * cells))
    messages = [m for r in results for m in r[2]][:5]
    passed = violations <= budget
    detail = (f"{len(graphs)} graphs, {cells} cells x {trials} trials: "
              f"{violations} three-sigma violations (budget {budget})")
    if messages and not passed:
        detail += " | " + "; ".join(messages)
    return CheckResult("enumerator-montecarlo", passed, detail)


# ---------------------------------------------------------------------------
# Canonical replay


def check_canonical_replay(n_graphs: int = 500, seed: int = 31,
                           tree_k: int = 5, disc_k: int = 3,
                           disc_d: int = 3) -> CheckResult:
    rng = random.Random(seed)
    tree_cases = disc_cases = 0
    for _ in range(n_graphs):
        n = rng.randint(1, 30)
        m = rng.randint(0, min(n * (n - 1) // 2, 60))
        g = random_graph(n, m, rng.randrange(2 ** 32))
        for v in range(1, n + 1):
            for k in range(1, tree_k + 1):
                tree_cases += 1
                ct = cbfs_tree(g, v, k)
                order = cbfs_edge_order(ct)
                out, det = run_tree_detector(order, v, k, len(order))
                same = (det.tree.dep == ct.dep
                        and det.tree.edge_order == ct.edge_order)
                want = GOOD if ct.size == k else BAD_SMALL
                if out != want or not same:
                    return CheckResult(
                        "canonical-replay", False,
                        f"tree replay mismatch: n={n} m={m} root={v} k={k}")
            for k in range(0, disc_k + 1):
                for d in range(1, disc_d + 1):
                    disc_cases += 1
                    cd = cano_disc(g, v, k, d)
                    order = cano_disc_edge_order(g, v, k, d)
                    out, det = run_disc_detector(order, v, k, d, len(order))
                    if (isinstance(out, str) or det.disc.edges != cd.edges
                            or det.disc.dep != cd.dep):
                        return CheckResult(
                            "canonical-replay", False,
                            f"disc replay mismatch: n={n} m={m} root={v} "
                            f"k={k} d={d}")
    return CheckResult(
        "canonical-replay", True,
        f"{n_graphs} graphs: {tree_cases} tree + {disc_cases} disc replays exact")


# ---------------------------------------------------------------------------
# Spanning-weight identity


def check_mst_identity(n_graphs: int = 200, seed: int = 41) -> CheckResult:
    rng = random.Random(seed)
    for i in range(n_graphs):
        n = rng.randint(2, 50)
        W = rng.randint(1, 5)
        g = random_connected_weighted(n, W, rng.randrange(2 ** 32))
        lhs = mst_identity_value(g)
        rhs = kruskal_mst(g)
        if lhs != rhs:
            return CheckResult(
                "mst-identity", False,
                f"graph {i} (n={n}, W={W}): identity {lhs} != kruskal {rhs}")
    return CheckResult("mst-identity", True,
                       f"{n_graphs} connected weighted graphs: identity exact")


# ---------------------------------------------------------------------------
# Disc projection equivalence


def check_disc_projection(n_graphs: int = 200, seed: int = 53,
                          k_max: int = 2, d_max: int = 3) -> CheckResult:
    rng = random.Random(seed)
    cases = 0
    for _ in range(n_graphs):
        n = rng.randint(1, 40)
        m = rng.randint(0, min(n * (n - 1) // 2, 80))
        g = random_graph(n, m, rng.randrange(2 ** 32))
        for v in range(1, n + 1):
            for k in range(1, k_max + 1):
                for d in range(1, d_max + 1):
                    cases += 1
                    got = project_extended_disc(cano_disc(g, v, k + 1, d), k, d)
                    want = bounded_disc_code(g, v, k, d)
                    if got != want:
                        return CheckResult(
                            "disc-projection", False,
                            f"n={n} m={m} v={v} k={k} d={d}: "
                            f"{got.hex} != {want.hex}")
    return CheckResult("disc-projection", True,
                       f"{n_graphs} graphs, {cases} projections exact")


# ---------------------------------------------------------------------------
# Detection-rate window and false-positive suppression


def check_detection_window(seed: int = 67) -> CheckResult:
    rng = random.Random(seed)
    graphs = [g for g in all_graphs_up_to(5, 6)]
    checked = 0
    for g in graphs:
        comps = {v: len(c) for c in connected_components(g) for v in c}
        for tau in (Fraction(1, 10), Fraction(3, 10)):
            for v in range(1, g.n + 1):
                k = comps[v]
                if k > 5:
                    continue
                checked += 1
                p = enumerate_outcomes(g, v, k, None, tau).probability(GOOD)
                gk = tau ** (k - 1) / math.factorial(k - 1)
                bound = Fraction(k ** (2 * k)) * tau * gk
                if abs(p - gk) > bound:
                    return CheckResult(
                        "detection-window", False,
                        f"m={g.m} root={v} k={k} tau={tau}: |{p}-{gk}| > {bound}")
    return CheckResult(
        "detection-window", True,
        f"{checked} size-matched roots inside the first-order window")


def check_false_positive_ratio() -> CheckResult:
    from .graphs import edge

    p4 = Graph(4, [edge(1, 2), edge(2, 3), edge(3, 4)])
    ratios = []
    for tau in (Fraction(3, 10), Fraction(1, 10), Fraction(1, 20)):
        p = enumerate_outcomes(p4, 1, 3, None, tau).probability(GOOD)
        gk = tau ** 2 / 2
        ratio = p / gk
        if ratio != Fraction(2, 3) * tau:
            return CheckResult(
                "false-positive-ratio", False,
                f"tau={tau}: ratio {ratio} != (2/3)tau")
        ratios.append(ratio)
    if not all(ratios[i] > ratios[i + 1] for i in range(len(ratios) - 1)):
        return CheckResult("false-positive-ratio", False,
                           "ratio not decreasing in tau")
    return CheckResult(
        "false-positive-ratio", True,
        "oversize-component acceptance is exactly (2/3)tau of the in-size rate "
        "on the 4-path witness and vanishes with tau")


# ---------------------------------------------------------------------------
# Suite driver


def run_checks(only: Optional[str] = None, jobs: int = 1, fast: bool = False,
               mutate: Optional[str] = None) -> List[CheckResult]:
    """Run the named checks (all by default). fast=True shrinks the randomized
    case counts for a quick smoke pass; mutate injects a deliberate defect so
    the caller can confirm the suite notices.
    """
    mc_trials = 20_000 if fast else 100_000
    exact_trials = 100_000 if fast else 1_000_000
    plan = {
        "exact-probabilities": lambda: check_exact_probabilities(exact_trials),
        "enumerator-montecarlo": lambda: check_enumerator_montecarlo(
            mc_trials, jobs=jobs),
        "canonical-replay": lambda: check_canonical_replay(
            100 if fast else 500),
        "mst-identity": lambda: check_mst_identity(50 if fast else 200),
        "disc-projection": lambda: check_disc_projection(50 if fast else 200),
        "detection-window": check_detection_window,
        "false-positive-ratio": check_false_positive_ratio,
    }
    if only is not None:
        if only not in plan:
            raise KeyError(f"unknown check {only!r}; have {sorted(plan)}")
        plan = {only: plan[only]}
    if mutate is None:
        return [fn() for fn in plan.values()]
    if mutate != "depth-gap":
        raise KeyError(f"unknown mutation {mutate!r}")
    with mutated_depth_gap(canonical.DEPTH_GAP + 1):
        return [fn() for fn in plan.values()]
