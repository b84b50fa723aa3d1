"""End-to-end estimators over a single random-order pass.

All estimators follow the same shape: sample roots once, run a detector per
(root, target) pair over one shared pass through the stream, flip one phase
coin per edge, and only at the end compare each detector's last-accept time
against the realized phase threshold. Estimates then rescale the surviving
indicator counts by the exact first-phase collection probability.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .canonical import DiscType, materialize_disc, project_extended_disc
from .detectors import GOOD, DetectorGrid, DiscDetector, TreeDetector
from .errors import (AllEstimatesNonpositiveError, BadWError,
                     EmptyVertexSetError, RadiusMismatchError,
                     UnweightedStreamError)
from .streams import CountingStream, EdgeStream, split_seed

WITHOUT_REPLACEMENT = "without_replacement"
WITH_REPLACEMENT = "with_replacement"


def gamma_disc(t_edges: int, tau: float) -> float:
    """Probability that t fixed edges land in the first phase in one fixed
    relative order: tau^t / t!."""
    if t_edges < 0:
        raise ValueError("t_edges must be >= 0")
    if t_edges == 0:
        return 1.0
    if t_edges < 120:
        direct = tau ** t_edges / math.factorial(t_edges)
        if direct > 0.0:
            return direct
    # log space keeps very deep collections representable
    return math.exp(t_edges * math.log(tau) - math.lgamma(t_edges + 1))


def gamma_k(k: int, tau: float) -> float:
    """First-phase collection probability of a fixed (k-1)-edge tree order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return gamma_disc(k - 1, tau)


@dataclass(frozen=True)
class EstimatorParams:
    """Run parameters. tau, s and k_max are chosen by the caller; the
    asymptotic settings the analysis would demand are exposed separately as a
    documentation calculator because their constants are impractically large.
    """

    tau: float
    s: int
    k_max: int = 1
    seed: int = 0
    epsilon: Optional[float] = None
    rho: Optional[float] = None
    delta: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.tau < 1.0:
            raise ValueError(f"tau must be in (0,1), got {self.tau}")
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")

    def to_dict(self) -> dict:
        out = {"tau": self.tau, "s": self.s, "k_max": self.k_max,
               "seed": self.seed}
        for name in ("epsilon", "rho", "delta"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


def sample_roots(n: int, s: int, seed: int) -> Tuple[Dict[int, int], str]:
    """Root multiset as {root: multiplicity}. Distinct draws when s <= n,
    else independent draws with replacement (duplicate draws of one root are
    perfectly correlated anyway, so they are folded into a weight).
    """
    if n <= 0:
        raise EmptyVertexSetError("graph has no vertices")
    rng = random.Random(seed)
    if s <= n:
        return {v: 1 for v in rng.sample(range(1, n + 1), s)}, WITHOUT_REPLACEMENT
    counts = Counter(rng.randrange(1, n + 1) for _ in range(s))
    return dict(counts), WITH_REPLACEMENT


@dataclass
class EstimateReport:
    algorithm: str
    n: int
    m_observed: int
    params: EstimatorParams
    sample_mode: str
    per_k: Dict[int, float]
    indicator_counts: Dict[int, int]
    total: float
    peak_tree_slots: int = 0

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "m": self.m_observed,
            "params": self.params.to_dict(),
            "sample_mode": self.sample_mode,
            "per_k": {str(k): v for k, v in sorted(self.per_k.items())},
            "indicator_counts": {str(k): v for k, v in
                                 sorted(self.indicator_counts.items())},
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


class NumCCRun:
    """One online component-count estimation instance.

    Feed every qualifying edge exactly once, in stream order; the instance
    keeps its own local clock and phase-coin stream, so several instances can
    share one physical pass over differently filtered views.
    """

    def __init__(self, n: int, params: EstimatorParams):
        self.n = n
        self.params = params
        self.roots, self.sample_mode = sample_roots(
            n, params.s, split_seed(params.seed, "sample"))
        self._coin = random.Random(split_seed(params.seed, "coins")).random
        self.heads = 0
        self.t = 0
        dets = [TreeDetector(v, k)
                for v in sorted(self.roots)
                for k in range(1, params.k_max + 1)]
        self.grid = DetectorGrid(dets)

    def feed(self, u: int, v: int) -> None:
        self.t += 1
        if self._coin() < self.params.tau:
            self.heads += 1
        self.grid.feed(u, v, self.t)

    def finalize(self) -> EstimateReport:
        params = self.params
        lam = self.heads
        indicators: Dict[int, int] = {k: 0 for k in range(1, params.k_max + 1)}
        for det, outcome in zip(self.grid.detectors, self.grid.finalize(lam)):
            if outcome == GOOD:
                indicators[det.k] += self.roots[det.root]
        per_k = {}
        for k in range(1, params.k_max + 1):
            per_k[k] = (indicators[k] / params.s) * (self.n / k) \
                / gamma_k(k, params.tau)
        slot_bound = params.s * params.k_max * (params.k_max + 1)
        assert self.grid.peak_slots <= slot_bound, \
            f"detector memory {self.grid.peak_slots} exceeded bound {slot_bound}"
        return EstimateReport(
            algorithm="num-cc", n=self.n, m_observed=self.t, params=params,
            sample_mode=self.sample_mode, per_k=per_k,
            indicator_counts=indicators, total=sum(per_k.values()),
            peak_tree_slots=self.grid.peak_slots)


def num_cc(stream: EdgeStream, n: int, params: EstimatorParams) -> EstimateReport:
    """Estimate the number of connected components from one pass.

    Components larger than k_max are invisible to the estimate; they can
    shrink the result by at most n / k_max.
    """
    run = NumCCRun(n, params)
    counting = CountingStream(stream)
    for e, _t in counting:
        run.feed(e.u, e.v)
    report = run.finalize()
    if hasattr(stream, "__len__"):
        assert counting.reads == len(stream), \
            "estimator must read the stream exactly once"
    return report


@dataclass
class MstReport:
    n: int
    W: int
    m_observed: int
    params: EstimatorParams
    estimate: float
    per_threshold: Dict[int, float]
    threshold_reports: Dict[int, EstimateReport] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algorithm": "mst-weight",
            "n": self.n,
            "W": self.W,
            "m": self.m_observed,
            "params": self.params.to_dict(),
            "per_threshold": {str(t): v for t, v in
                              sorted(self.per_threshold.items())},
            "estimate": self.estimate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def mst_weight(stream: EdgeStream, n: int, W: int,
               params: EstimatorParams) -> MstReport:
    """Estimate minimum-spanning-tree weight of a connected weighted graph.

    One component-count instance per weight threshold t < W runs over the
    filtered view of edges with weight <= t; all instances share the single
    physical pass, each flipping its own phase coin only for edges that
    qualify for it. The estimate is n - W plus the threshold estimates.
    Connectivity of the input is the caller's responsibility.
    """
    if not stream.weighted:
        raise UnweightedStreamError("mst_weight needs a weighted stream")
    if W < 1:
        raise BadWError(f"W must be >= 1, got {W}")
    if n <= 0:
        raise EmptyVertexSetError("graph has no vertices")
    instances = {
        t: NumCCRun(n, EstimatorParams(
            tau=params.tau, s=params.s, k_max=params.k_max,
            seed=split_seed(params.seed, f"threshold-{t}"),
            epsilon=params.epsilon, rho=params.rho, delta=params.delta))
        for t in range(1, W)
    }
    counting = CountingStream(stream)
    m_observed = 0
    for e, _t in counting:
        m_observed += 1
        if e.w is None or not 1 <= e.w <= W:
            raise BadWError(f"edge weight {e.w} outside [1..{W}]")
        for t in range(e.w, W):
            instances[t].feed(e.u, e.v)
    per_threshold: Dict[int, float] = {}
    reports: Dict[int, EstimateReport] = {}
    for t, run in instances.items():
        rep = run.finalize()
        reports[t] = rep
        per_threshold[t] = rep.total
    estimate = n - W + sum(per_threshold.values())
    return MstReport(n=n, W=W, m_observed=m_observed, params=params,
                     estimate=estimate, per_threshold=per_threshold,
                     threshold_reports=reports)


@dataclass
class DiscReport:
    n: int
    m_observed: int
    k: int
    d: int
    params: EstimatorParams
    sample_mode: str
    per_type: Dict[DiscType, float]
    indicator_counts: Dict[DiscType, int]
    witness_roots: Dict[DiscType, List[int]]

    def frequency(self, dt: DiscType) -> float:
        """C for a type; types never observed estimate to zero."""
        return self.per_type.get(dt, 0.0)

    def to_dict(self) -> dict:
        return {
            "algorithm": "num-disc",
            "n": self.n,
            "m": self.m_observed,
            "k": self.k,
            "d": self.d,
            "params": self.params.to_dict(),
            "sample_mode": self.sample_mode,
            "per_type": {dt.hex: v for dt, v in sorted(self.per_type.items())},
            "indicator_counts": {dt.hex: v for dt, v in
                                 sorted(self.indicator_counts.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def num_disc(stream: EdgeStream, n: int, k: int, d: int,
             params: EstimatorParams) -> DiscReport:
    """Estimate the frequency of extended (d+1)-bounded k-disc types.

    One detector runs per sampled root; each survivor is classified by the
    canonical code of whatever it collected, which is observationally the
    same as running one detector per (root, type) pair but linearly cheaper.
    """
    roots, sample_mode = sample_roots(n, params.s,
                                      split_seed(params.seed, "sample"))
    coin = random.Random(split_seed(params.seed, "coins")).random
    dets = [DiscDetector(v, k, d) for v in sorted(roots)]
    grid = DetectorGrid(dets)
    counting = CountingStream(stream)
    heads = 0
    t = 0
    for e, _t in counting:
        t += 1
        if coin() < params.tau:
            heads += 1
        grid.feed(e.u, e.v, t)
    indicators: Dict[DiscType, int] = {}
    witnesses: Dict[DiscType, List[int]] = {}
    for det, outcome in zip(grid.detectors, grid.finalize(heads)):
        if isinstance(outcome, DiscType):
            indicators[outcome] = indicators.get(outcome, 0) + roots[det.root]
            witnesses.setdefault(outcome, []).append(det.root)
    per_type = {dt: (cnt / params.s) * n / gamma_disc(dt.num_edges, params.tau)
                for dt, cnt in indicators.items()}
    return DiscReport(n=n, m_observed=t, k=k, d=d, params=params,
                      sample_mode=sample_mode, per_type=per_type,
                      indicator_counts=indicators, witness_roots=witnesses)


def disc_report_from_exact(g, k: int, d: int) -> DiscReport:
    """Oracle-substituted report: exact type frequencies with every root as a
    witness. Lets the downstream pipeline run with estimation noise removed.
    """
    from .oracles import exact_disc_roots

    groups = exact_disc_roots(g, k, d)
    per_type = {dt: float(len(roots)) for dt, roots in groups.items()}
    indicators = {dt: len(roots) for dt, roots in groups.items()}
    params = EstimatorParams(tau=0.5, s=max(g.n, 1), k_max=1, seed=0)
    return DiscReport(n=g.n, m_observed=g.m, k=k, d=d, params=params,
                      sample_mode="exact", per_type=per_type,
                      indicator_counts=indicators,
                      witness_roots={dt: list(r) for dt, r in groups.items()})


RootMembershipOracle = Callable[[object, int], bool]


@dataclass
class MisReport:
    n: int
    k: int
    d: int
    samples: int
    accepted: int
    estimate: float
    oracle_name: str

    def to_dict(self) -> dict:
        return {
            "algorithm": "mis",
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "samples": self.samples,
            "accepted": self.accepted,
            "estimate": self.estimate,
            "oracle": self.oracle_name,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"


def mis_estimate(disc_report: DiscReport, n: int, d: int, k: int,
                 samples: int, oracle: RootMembershipOracle, seed: int,
                 oracle_name: str = "custom") -> MisReport:
    """Estimate maximum-independent-set size from disc-type frequencies.

    Types are sampled proportionally to their (positive) estimated
    frequencies; each draw picks one recorded witness root of the type,
    projects a representative extended disc down to the d-bounded k-disc, and
    asks the membership oracle whether that root belongs to the chosen
    independent set of its part. The answer fraction scales to n.

    The disc report must have been built at radius k+1 with budget d.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if disc_report.k != k + 1 or disc_report.d != d:
        raise RadiusMismatchError(
            f"disc report built at (k={disc_report.k}, d={disc_report.d}), "
            f"need (k={k + 1}, d={d})")
    weighted = [(dt, c) for dt, c in sorted(disc_report.per_type.items())
                if c > 0.0]
    if not weighted:
        raise AllEstimatesNonpositiveError("no type has a positive estimate")
    total_w = sum(c for _, c in weighted)
    cumulative = []
    acc = 0.0
    for dt, c in weighted:
        acc += c
        cumulative.append((acc, dt))
    rng = random.Random(split_seed(seed, "mis-sampling"))
    accepted = 0
    for _ in range(samples):
        x = rng.random() * total_w
        chosen = next(dt for acc_w, dt in cumulative if x <= acc_w)
        roots = disc_report.witness_roots[chosen]
        root = roots[rng.randrange(len(roots))]
        gamma = materialize_disc(chosen, k + 1, d)
        local_view = materialize_disc(project_extended_disc(gamma, k, d), k, d)
        if oracle(local_view, root):
            accepted += 1
    return MisReport(n=n, k=k, d=d, samples=samples, accepted=accepted,
                     estimate=accepted / samples * n, oracle_name=oracle_name)


def cc_param_scales(epsilon: float, rho: float) -> Tuple[float, float]:
    """Base-10 magnitudes of the analysis-mandated phase probability and
    sample count for component counting, with all hidden constants set to
    one. Documentation only: the magnitudes are far beyond practical runs.
    """
    if not (0.0 < epsilon <= 0.5 and 0.0 < rho <= 0.5):
        raise ValueError("epsilon and rho must lie in (0, 1/2]")
    base = math.log10(4.0 / epsilon)
    log10_tau = (-6.0 / epsilon ** 2 - 3.0) * base + math.log10(rho)
    log10_s = (15.0 / epsilon ** 3) * base + (2.0 / epsilon + 1.0) * math.log10(1.0 / rho)
    return log10_tau, log10_s


def disc_param_scales(k: int, d: int, delta: float, rho: float) -> Tuple[float, float]:
    """Analogous documentation calculator for disc-frequency estimation,
    with the type count bounded by 2^((d+1)^(k+1))."""
    if not (0.0 < delta < 1.0 and 0.0 < rho < 1.0):
        raise ValueError("delta and rho must lie in (0, 1)")
    if k < 0 or d < 1:
        raise ValueError("need k >= 0 and d >= 1")
    log10_j = (d + 1) ** (k + 1) * math.log10(2.0)
    log10_2d = math.log10(2.0 * d)
    log10_tau = math.log10(rho * delta) - log10_j \
        - 4.0 * k * (d + 1) ** (2 * k) * log10_2d
    log10_s = (d + 1) ** (2 * k) * (log10_j - math.log10(rho * delta)) \
        + 4.0 * k * (d + 1) ** (4 * k) * log10_2d
    return log10_tau, log10_s
