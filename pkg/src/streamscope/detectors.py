"""Single-pass per-root detectors and the shared dispatch grid.

Each detector is a sequential state machine fed every stream edge in time
order. Violation checks run on every edge including those after the phase
threshold; only the time step of the last accepted edge is compared against
the threshold at finalize time. Bad is absorbing, and a dead detector's
memory is released from the dispatch index immediately.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Set, Tuple

from . import canonical
from .canonical import RootedDisc, RootedTree, disc_code
from .errors import InvalidKError, OutOfOrderTimeStepError

GOOD = "good"
BAD_VIOLATING = "bad:violating-edge"
BAD_LARGE = "bad:large-component"
BAD_SMALL = "bad:small-component"
BAD_LATE = "bad:late-completion"

ACTIVE = 0
DEAD = 1


class TreeDetector:
    """Collects a canonical-BFS-consistent tree of up to k vertices rooted at
    v from a single pass; finalize decides Good against the phase threshold.

    k=1 roots take the general path: they finish Good only when no incident
    edge ever arrives, with the empty tree's last-accept time pinned at 0.
    """

    __slots__ = ("root", "k", "tree", "t_last", "t_seen", "status", "reason")

    def __init__(self, v: int, k: int):
        if k < 1:
            raise InvalidKError(f"k must be >= 1, got {k}")
        self.root = v
        self.k = k
        self.tree = RootedTree(v)
        self.t_last = 0
        self.t_seen = 0
        self.status = ACTIVE
        self.reason: Optional[str] = None

    def update(self, a: int, b: int, t: int) -> Optional[int]:
        """Feed one edge; returns the newly collected vertex, if any."""
        if t <= self.t_seen:
            raise OutOfOrderTimeStepError(f"time step {t} after {self.t_seen}")
        self.t_seen = t
        if self.status != ACTIVE:
            return None
        tree = self.tree
        res = canonical.tree_update(tree, a, b)
        if res == "violating":
            self.status = DEAD
            self.reason = BAD_VIOLATING
            return None
        if res == "accepted":
            self.t_last = t
            if tree.size > self.k:
                self.status = DEAD
                self.reason = BAD_LARGE
                return None
            return tree.edge_order[-1][1]
        return None

    def finalize(self, lam: int) -> str:
        if self.status == DEAD:
            return self.reason
        if self.tree.size < self.k:
            return BAD_SMALL
        if self.t_last > lam:
            return BAD_LATE
        return GOOD

    def member_vertices(self) -> Iterable[int]:
        return self.tree.dep.keys()


class DiscDetector:
    """Collects an extended (d+1)-bounded k-disc from a single pass.

    finalize returns the disc's canonical type when the last accepted edge
    fell inside the first phase, else a Bad marker. k=0 short-circuits to the
    singleton type regardless of the stream.
    """

    __slots__ = ("root", "k", "d", "disc", "t_last", "t_seen", "status",
                 "reason")

    def __init__(self, v: int, k: int, d: int):
        if k < 0:
            raise InvalidKError(f"k must be >= 0, got {k}")
        if d < 1:
            raise InvalidKError(f"d must be >= 1, got {d}")
        self.root = v
        self.k = k
        self.d = d
        self.disc = RootedDisc(v, k, d)
        self.t_last = 0
        self.t_seen = 0
        self.status = ACTIVE
        self.reason: Optional[str] = None

    def update(self, a: int, b: int, t: int) -> Optional[int]:
        if t <= self.t_seen:
            raise OutOfOrderTimeStepError(f"time step {t} after {self.t_seen}")
        self.t_seen = t
        if self.status != ACTIVE or self.k == 0:
            return None
        disc = self.disc
        known_b = b in disc.dep
        known_a = a in disc.dep
        res = canonical.disc_update(disc, a, b)
        if res == "violating":
            self.status = DEAD
            self.reason = BAD_VIOLATING
            return None
        if res == "accepted":
            self.t_last = t
            if not known_a:
                return a
            if not known_b:
                return b
        return None

    def finalize(self, lam: int):
        """DiscType when collection finished in phase, else a Bad marker."""
        if self.status == DEAD:
            return self.reason
        if self.t_last > lam:
            return BAD_LATE
        return disc_code(self.disc)

    def member_vertices(self) -> Iterable[int]:
        return self.disc.dep.keys()


class DetectorGrid:
    """All live detectors over one shared stream, dispatched by vertex.

    An edge can only change a detector whose collected structure already
    contains one of its endpoints, so the grid keeps an index from vertex to
    the detectors watching it and touches nothing else. Results are identical
    to feeding every edge to every detector sequentially.
    """

    def __init__(self, detectors):
        self.detectors: List = list(detectors)
        self._index: Dict[int, Set[int]] = {}
        self._members: List[List[int]] = []
        self.peak_slots = 0
        self._slots = 0
        self.last_t = 0
        for i, det in enumerate(self.detectors):
            members = list(det.member_vertices())
            self._members.append(members)
            for v in members:
                self._index.setdefault(v, set()).add(i)
            self._slots += len(members)
        self.peak_slots = self._slots

    def feed(self, a: int, b: int, t: int) -> None:
        if t <= self.last_t:
            raise OutOfOrderTimeStepError(
                f"time step {t} after {self.last_t}")
        self.last_t = t
        watchers = self._index.get(a, ())
        other = self._index.get(b, ())
        if watchers or other:
            hit = set(watchers)
            hit.update(other)
            dead = []
            for i in hit:
                det = self.detectors[i]
                added = det.update(a, b, t)
                if added is not None:
                    self._index.setdefault(added, set()).add(i)
                    self._members[i].append(added)
                    self._slots += 1
                    if self._slots > self.peak_slots:
                        self.peak_slots = self._slots
                if det.status == DEAD:
                    dead.append(i)
            for i in dead:
                for v in self._members[i]:
                    bucket = self._index.get(v)
                    if bucket is not None:
                        bucket.discard(i)
                        if not bucket:
                            del self._index[v]
                self._slots -= len(self._members[i])
                self._members[i] = []

    def finalize(self, lam: int) -> List:
        return [det.finalize(lam) for det in self.detectors]


def run_tree_detector(edges: Iterable[Tuple[int, int]], root: int, k: int,
                      lam: int) -> Tuple[str, TreeDetector]:
    """Replay a whole edge sequence through one tree detector."""
    det = TreeDetector(root, k)
    t = 0
    for a, b in edges:
        t += 1
        det.update(a, b, t)
    return det.finalize(lam), det


def run_disc_detector(edges: Iterable[Tuple[int, int]], root: int, k: int,
                      d: int, lam: int):
    det = DiscDetector(root, k, d)
    t = 0
    for a, b in edges:
        t += 1
        det.update(a, b, t)
    return det.finalize(lam), det
