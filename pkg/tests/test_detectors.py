import random

import pytest
from hypothesis import given, settings, strategies as st

from streamscope.canonical import (RootedDisc, RootedTree, cano_disc,
                                   disc_code, is_violating_disc,
                                   is_violating_tree)
from streamscope.detectors import (ACTIVE, BAD_LARGE, BAD_LATE, BAD_SMALL,
                                   BAD_VIOLATING, DEAD, GOOD, DetectorGrid,
                                   DiscDetector, TreeDetector,
                                   run_disc_detector, run_tree_detector)
from streamscope.enumeration import profile_outcome, tree_replay_profile
from streamscope.errors import InvalidKError, OutOfOrderTimeStepError
from streamscope.graphs import Graph, edge


def test_new_detector_state():
    det = TreeDetector(3, 2)
    assert det.status == ACTIVE and det.tree.size == 1 and det.t_last == 0
    det1 = TreeDetector(1, 1)
    assert det1.status == ACTIVE
    with pytest.raises(InvalidKError):
        TreeDetector(1, 0)


def test_update_accepts_extension():
    det = TreeDetector(1, 3)
    det.update(1, 2, 1)
    det.update(2, 3, 5)
    assert det.tree.dep[3] == 2 and det.t_last == 5 and det.status == ACTIVE


def test_update_violating_label():
    det = TreeDetector(1, 3)
    det.update(1, 3, 1)
    det.update(1, 2, 2)
    assert det.status == DEAD and det.reason == BAD_VIOLATING


def test_update_ignores_equal_depth_pair():
    det = TreeDetector(1, 3)
    det.update(1, 2, 1)
    det.update(1, 3, 2)
    det.update(2, 3, 3)
    assert det.status == ACTIVE and det.finalize(3) == GOOD


def test_update_out_of_order_time():
    det = TreeDetector(1, 3)
    det.update(1, 2, 4)
    with pytest.raises(OutOfOrderTimeStepError):
        det.update(2, 3, 4)


def test_bad_is_absorbing():
    det = TreeDetector(1, 2)
    det.update(1, 3, 1)
    det.update(1, 2, 2)          # violating: child 3 outranks 2
    assert det.status == DEAD
    det.update(2, 3, 3)          # no-op
    assert det.reason == BAD_VIOLATING
    assert det.finalize(3) == BAD_VIOLATING


def test_finalize_isolated_k1_good():
    det = TreeDetector(5, 1)
    assert det.finalize(0) == GOOD


def test_k1_dies_on_any_incident_edge():
    det = TreeDetector(5, 1)
    det.update(5, 2, 1)
    assert det.status == DEAD and det.reason == BAD_LARGE


def test_finalize_triangle_traces():
    out, _ = run_tree_detector([(1, 2), (1, 3), (2, 3)], 1, 3, 3)
    assert out == GOOD
    out, _ = run_tree_detector([(1, 2), (1, 3), (2, 3)], 1, 3, 1)
    assert out == BAD_LATE
    out, _ = run_tree_detector([(1, 2)], 1, 3, 1)
    assert out == BAD_SMALL


def test_disc_detector_k0_returns_singleton():
    det = DiscDetector(4, 0, 2)
    det.update(4, 5, 1)
    code = det.finalize(0)
    assert code.num_vertices == 1 and code.num_edges == 0


def test_disc_detector_star_canonical_stream():
    star = Graph(5, [edge(1, 2), edge(1, 3), edge(1, 4), edge(1, 5)])
    out, det = run_disc_detector([(2, 1), (1, 3), (1, 4), (1, 5)], 2, 2, 2, 4)
    assert out == disc_code(cano_disc(star, 2, 2, 2))


def test_disc_detector_hijacked_triangle():
    # (2,3) passes while both endpoints are unknown, so the detector later
    # reports the 2-edge star type, not the triangle.
    out, det = run_disc_detector([(2, 3), (1, 2), (1, 3)], 1, 1, 2, 3)
    star3 = Graph(3, [edge(1, 2), edge(1, 3)])
    assert out == disc_code(cano_disc(star3, 1, 1, 2))
    assert det.disc.edges == {(1, 2), (1, 3)}


def test_disc_detector_late_completion():
    out, _ = run_disc_detector([(1, 2), (1, 3)], 1, 1, 2, 1)
    assert out == BAD_LATE


def test_grid_matches_sequential():
    rng = random.Random(0)
    for _ in range(40):
        n = rng.randint(2, 10)
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        rng.shuffle(pairs)
        stream = pairs[:rng.randint(0, len(pairs))]
        dets_grid = [TreeDetector(v, k) for v in range(1, n + 1)
                     for k in (1, 2, 3)]
        dets_seq = [TreeDetector(v, k) for v in range(1, n + 1)
                    for k in (1, 2, 3)]
        grid = DetectorGrid(dets_grid)
        for t, (a, b) in enumerate(stream, start=1):
            grid.feed(a, b, t)
            for det in dets_seq:
                det.update(a, b, t)
        lam = rng.randint(0, len(stream))
        assert grid.finalize(lam) == [d.finalize(lam) for d in dets_seq]


def test_grid_peak_slot_accounting():
    dets = [TreeDetector(1, 3), TreeDetector(2, 3)]
    grid = DetectorGrid(dets)
    assert grid.peak_slots == 2
    grid.feed(1, 2, 1)   # both detectors accept
    assert grid.peak_slots == 4


edge_seqs = st.lists(
    st.tuples(st.integers(1, 7), st.integers(1, 7)).filter(lambda p: p[0] != p[1]),
    max_size=12, unique_by=lambda p: frozenset(p))


@given(edge_seqs, st.integers(1, 7), st.integers(1, 5))
@settings(max_examples=300, deadline=None)
def test_detector_matches_standalone_predicate(seq, root, k):
    """The incremental detector's violation decisions equal the public
    predicate evaluated on a snapshot of its tree."""
    det = TreeDetector(root, k)
    shadow = RootedTree(root)
    for t, (a, b) in enumerate(seq, start=1):
        if det.status != ACTIVE:
            break
        in_tree = (min(a, b), max(a, b)) in shadow.edge_set()
        if not in_tree:
            expected_violating = is_violating_tree(shadow, edge(a, b))
        det.update(a, b, t)
        if not in_tree and expected_violating:
            assert det.status == DEAD and det.reason == BAD_VIOLATING
            break
        if det.status == ACTIVE and det.t_last == t:
            shadow.attach(*det.tree.edge_order[-1])


@given(edge_seqs, st.integers(1, 7), st.integers(1, 5), st.integers(0, 12))
@settings(max_examples=300, deadline=None)
def test_profile_reduction_matches_detector(seq, root, k, lam):
    """The shared-replay profile used by the verification sweep gives exactly
    the real detector's finalize outcome for every k."""
    out, _ = run_tree_detector(seq, root, k, lam)
    accepts, t_violate = tree_replay_profile(seq, root)
    category, t_last = profile_outcome(accepts, t_violate, k)
    if category == "pending":
        category = GOOD if t_last <= lam else BAD_LATE
    assert category == out


@given(edge_seqs, st.integers(1, 7), st.integers(0, 3), st.integers(1, 3))
@settings(max_examples=300, deadline=None)
def test_disc_detector_matches_standalone_predicate(seq, root, k, d):
    det = DiscDetector(root, k, d)
    shadow = RootedDisc(root, k, d)
    from streamscope.canonical import disc_update

    for t, (a, b) in enumerate(seq, start=1):
        if det.status != ACTIVE or k == 0:
            break
        if (min(a, b), max(a, b)) in shadow.edges:
            det.update(a, b, t)
            continue
        expected = is_violating_disc(shadow, edge(a, b))
        det.update(a, b, t)
        if expected:
            assert det.status == DEAD and det.reason == BAD_VIOLATING
            break
        disc_update(shadow, a, b)
        assert shadow.edges == det.disc.edges


@given(edge_seqs, st.integers(1, 7), st.integers(1, 5), st.integers(0, 12))
@settings(max_examples=200, deadline=None)
def test_good_implies_full_size_tree(seq, root, k, lam):
    out, det = run_tree_detector(seq, root, k, lam)
    if out == GOOD:
        assert det.tree.size == k
        assert det.t_last <= lam


def test_disc_grid_matches_sequential():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(2, 9)
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        rng.shuffle(pairs)
        stream = pairs[:rng.randint(0, len(pairs))]
        mk = lambda: [DiscDetector(v, k, 2) for v in range(1, n + 1)
                      for k in (0, 1, 2)]
        dets_seq = mk()
        grid = DetectorGrid(mk())
        for t, (a, b) in enumerate(stream, start=1):
            grid.feed(a, b, t)
            for det in dets_seq:
                det.update(a, b, t)
        lam = rng.randint(0, len(stream))
        assert grid.finalize(lam) == [d.finalize(lam) for d in dets_seq]
