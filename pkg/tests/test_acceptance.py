"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Criteria 5 and 8 state tolerances that are statistically unattainable at
their own parameters (the detection rates they fix put the estimator's
intrinsic per-run standard deviation above the allowed window; see the
failure messages for the measured numbers). Those tests implement the stated
thresholds faithfully and are expected to fail rather than be loosened.
"""

import statistics
import time

from streamscope.corpus import (cc_benchmark, disc_benchmark,
                                padded_triangles, random_small_components,
                                weighted_path)
from streamscope.estimators import (EstimatorParams, NumCCRun, mis_estimate,
                                    mst_weight, num_cc, num_disc)
from streamscope.oracles import (exact_disc_freq, exact_mis,
                                 make_component_mis_oracle)
from streamscope.streams import CountingStream, shuffle_stream, split_seed
from streamscope.verification import (check_canonical_replay,
                                      check_disc_projection,
                                      check_enumerator_montecarlo,
                                      check_exact_probabilities,
                                      check_mst_identity)


def _report(name, passed, details):
    print(f"criterion {name}: {'PASS' if passed else 'FAIL'} - {details}")


def test_criterion_1_exact_detection_probabilities():
    t0 = time.time()
    result = check_exact_probabilities(trials=1_000_000)
    elapsed = time.time() - t0
    ok = result.passed and elapsed < 30
    _report(1, ok, f"{result.details}; {elapsed:.1f}s (budget 30s)")
    assert result.passed, result.details
    assert elapsed < 30, f"runtime {elapsed:.1f}s over budget"


def test_criterion_2_enumerator_montecarlo_sweep():
    t0 = time.time()
    result = check_enumerator_montecarlo(trials=100_000, k_max=5,
                                         taus=(0.1, 0.3))
    elapsed = time.time() - t0
    ok = result.passed and elapsed < 600
    _report(2, ok, f"{result.details}; {elapsed:.0f}s (budget 600s)")
    assert result.passed, result.details
    assert elapsed < 600


def test_criterion_3_canonical_replay():
    t0 = time.time()
    result = check_canonical_replay(n_graphs=500, tree_k=5, disc_k=3,
                                    disc_d=3)
    _report(3, result.passed, f"{result.details}; {time.time()-t0:.0f}s")
    assert result.passed, result.details


def test_criterion_4_mst_identity():
    result = check_mst_identity(n_graphs=200)
    _report(4, result.passed, result.details)
    assert result.passed, result.details


def test_criterion_5_num_cc_end_to_end():
    g = cc_benchmark()
    t0 = time.time()
    passes = 0
    totals = []
    for seed in range(100):
        stream = shuffle_stream(g, split_seed(seed, "permutation"))
        rep = num_cc(stream, g.n, EstimatorParams(
            tau=0.1, s=2000, k_max=8, seed=split_seed(seed, "estimator")))
        totals.append(rep.total)
        if abs(rep.total - 100) <= 52.5:
            passes += 1
    elapsed = time.time() - t0
    ok = passes >= 90 and elapsed < 120
    _report(5, ok, f"{passes}/100 runs within +/-52.5 of 100 "
                   f"(mean {statistics.mean(totals):.1f}, "
                   f"sd {statistics.stdev(totals):.1f}); {elapsed:.0f}s")
    assert elapsed < 120
    assert passes >= 90, (
        f"{passes}/100 within tolerance, need 90. The tolerance is not "
        f"reachable at these parameters: with tau=0.1 a size-3 component is "
        f"detected with probability tau^2/2 - tau^3/6 ~= 0.0048, so the 150 "
        f"triangle roots yield ~0.7 detections per run and each detection "
        f"carries a weight of ~66 after rescaling by 1/gamma_3; the "
        f"estimator is unbiased (observed mean {statistics.mean(totals):.1f}) "
        f"but its intrinsic standard deviation "
        f"({statistics.stdev(totals):.1f}) exceeds the 52.5 window, capping "
        f"the per-run pass probability near 0.6 for any faithful "
        f"implementation.")


def test_criterion_6_mst_weight_end_to_end():
    g = weighted_path()
    t0 = time.time()
    passes = 0
    for seed in range(100):
        stream = shuffle_stream(g, split_seed(seed, "permutation"))
        rep = mst_weight(stream, g.n, 2, EstimatorParams(
            tau=0.05, s=5000, k_max=8, seed=split_seed(seed, "estimator")))
        if 0.75 * 249 <= rep.estimate <= 1.25 * 249:
            passes += 1
    elapsed = time.time() - t0
    ok = passes >= 90 and elapsed < 300
    _report(6, ok, f"{passes}/100 runs within (1 +/- 0.25) * 249; "
                   f"{elapsed:.0f}s (budget 300s)")
    assert passes >= 90, f"{passes}/100"
    assert elapsed < 300


def test_criterion_7_disc_projection_equivalence():
    t0 = time.time()
    result = check_disc_projection(n_graphs=200, k_max=2, d_max=3)
    _report(7, result.passed, f"{result.details}; {time.time()-t0:.0f}s")
    assert result.passed, result.details


def test_criterion_8_num_disc_end_to_end():
    g = disc_benchmark()
    truth = exact_disc_freq(g, 2, 2)
    t0 = time.time()
    passes = 0
    worst = []
    for seed in range(100):
        stream = shuffle_stream(g, split_seed(seed, "permutation"))
        rep = num_disc(stream, g.n, 2, 2, EstimatorParams(
            tau=0.2, s=1500, seed=split_seed(seed, "estimator")))
        every = set(truth) | set(rep.per_type)
        err = max(abs(rep.frequency(dt) - truth.get(dt, 0)) for dt in every)
        worst.append(err)
        if err <= 60:
            passes += 1
    elapsed = time.time() - t0
    ok = passes >= 90 and elapsed < 180
    _report(8, ok, f"{passes}/100 runs with max type error <= 60 "
                   f"(median worst error {statistics.median(worst):.0f}); "
                   f"{elapsed:.0f}s")
    assert elapsed < 180
    assert passes >= 90, (
        f"{passes}/100 within tolerance, need 90. Not reachable at these "
        f"parameters: the 3-edge triangle type (true frequency 120) is "
        f"collected only in canonical order fully inside the first phase, "
        f"probability tau^3/6 = 1.3e-3 per root, giving ~0.16 detected roots "
        f"per run; each detection rescales to ~750, so the estimate sits at "
        f"0 (error 120) in most runs and jumps past the window otherwise. "
        f"No faithful rescaling estimator concentrates within +/-60 here.")


def test_criterion_9_mis_pipeline():
    g = random_small_components(300, 6, 7)
    true_mis, _ = exact_mis(g, 6)
    oracle = make_component_mis_oracle(g, 6)
    t0 = time.time()
    passes = 0
    ests = []
    for seed in range(100):
        stream = shuffle_stream(g, split_seed(seed, "permutation"))
        rep = num_disc(stream, g.n, 3, 2, EstimatorParams(
            tau=0.2, s=1500, seed=split_seed(seed, "estimator")))
        mis = mis_estimate(rep, g.n, 2, 2, 500, oracle,
                           seed=split_seed(seed, "mis"))
        ests.append(mis.estimate)
        if abs(mis.estimate - true_mis) <= 0.3 * true_mis:
            passes += 1
    elapsed = time.time() - t0
    ok = passes >= 90 and elapsed < 180
    _report(9, ok, f"{passes}/100 runs within 30% of MIS={true_mis} "
                   f"(mean estimate {statistics.mean(ests):.0f}); "
                   f"{elapsed:.0f}s (budget 180s)")
    assert passes >= 90, f"{passes}/100"
    assert elapsed < 180


def test_criterion_10_space_and_pass_discipline():
    params_proto = dict(tau=0.1, s=300, k_max=4)
    sizes = [1_000, 10_000, 100_000]
    peaks = []
    per_edge = []
    for m_target in sizes:
        g = padded_triangles(m_target)
        stream = shuffle_stream(g, split_seed(m_target, "permutation"))
        run = NumCCRun(g.n, EstimatorParams(
            seed=split_seed(m_target, "estimator"), **params_proto))
        counting = CountingStream(stream)
        t0 = time.perf_counter()
        for e, _t in counting:
            run.feed(e.u, e.v)
        elapsed = time.perf_counter() - t0
        rep = run.finalize()
        assert counting.reads == g.m, "stream must be read exactly once"
        try:
            list(counting)
            assert False, "second pass must be refused"
        except RuntimeError:
            pass
        bound = params_proto["s"] * params_proto["k_max"] * (params_proto["k_max"] + 1)
        assert rep.peak_tree_slots <= bound
        peaks.append(rep.peak_tree_slots)
        per_edge.append(elapsed / g.m)
    spread = max(peaks) / min(peaks)
    growth = per_edge[-1] / per_edge[0]
    ok = spread <= 1.25 and growth < 2.0
    _report(10, ok, f"peak slots {peaks} (spread {spread:.2f}x), per-edge "
                    f"time {[f'{t*1e6:.2f}us' for t in per_edge]} "
                    f"(growth m=1e3 -> 1e5: {growth:.2f}x)")
    assert spread <= 1.25, f"peak memory varies with m: {peaks}"
    assert growth < 2.0, f"per-edge cost grew {growth:.2f}x"
