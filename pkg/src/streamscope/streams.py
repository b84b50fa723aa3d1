"""Seeded random-order edge streams and the online phase-threshold counter.

A run derives independent child generators from one master seed through
labeled splits, so the permutation draw and the phase-threshold coin flips
never share randomness.
"""

from __future__ import annotations

import hashlib
import random
from typing import Iterator, NamedTuple, Optional, Tuple

from .errors import BadWError, UnweightedStreamError
from .graphs import Edge, Graph


def split_seed(master: int, label: str) -> int:
    """Deterministic 64-bit child seed for a labeled stream of randomness."""
    digest = hashlib.sha256(f"{master}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class EdgeStream:
    """A fixed ordering of an edge set; time steps run 1..m in order.

    Iterating yields (Edge, time_step) pairs. Streams are immutable values;
    estimators enforce their single read through a counting wrapper.
    """

    __slots__ = ("edges", "weighted", "W")

    def __init__(self, edges, weighted: bool = False, W: Optional[int] = None):
        self.edges: Tuple[Edge, ...] = tuple(edges)
        self.weighted = weighted
        self.W = W

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Tuple[Edge, int]]:
        return iter(zip(self.edges, range(1, len(self.edges) + 1)))

    def __eq__(self, other):
        return (isinstance(other, EdgeStream) and self.edges == other.edges
                and self.weighted == other.weighted and self.W == other.W)

    def __repr__(self):
        return f"EdgeStream(m={self.m}, weighted={self.weighted})"


class PhaseThreshold(NamedTuple):
    """Number of first-phase positions, distributed Bi(m, tau)."""
    lam: int
    tau: float
    m: int


def _fisher_yates(items: list, rng: random.Random) -> None:
    """In-place Fisher-Yates; isolated here so every caller permutes alike."""
    for i in range(len(items) - 1, 0, -1):
        j = rng.randrange(i + 1)
        items[i], items[j] = items[j], items[i]


def _count_heads(m: int, tau: float, rng: random.Random) -> int:
    """Heads in m independent tau-coin flips, one flip per position."""
    rand = rng.random
    heads = 0
    for _ in range(m):
        if rand() < tau:
            heads += 1
    return heads


def shuffle_stream(g: Graph, seed: int) -> EdgeStream:
    """Uniformly random ordering of g's edges; same seed, same stream."""
    items = list(g.edges)
    _fisher_yates(items, random.Random(seed))
    return EdgeStream(items, weighted=g.weighted, W=g.W)


def given_order_stream(g: Graph) -> EdgeStream:
    """The edges in canonical storage order (debugging aid, not random)."""
    return EdgeStream(g.edges, weighted=g.weighted, W=g.W)


def sample_lambda_online(m: int, tau: float, seed: int) -> PhaseThreshold:
    """Draw the phase threshold by flipping one biased coin per stream edge.

    The counter needs constant extra state, so the same draw can run inline
    with a single pass; the result is distributed Bi(m, tau).
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau must be in (0,1), got {tau}")
    lam = _count_heads(m, tau, random.Random(seed))
    return PhaseThreshold(lam, tau, m)


def threshold_view(stream: EdgeStream, t: int) -> EdgeStream:
    """Subsequence of edges with weight <= t, re-timestamped 1..m', keeping
    relative order. A uniform source order induces a uniform order here.
    """
    if not stream.weighted:
        raise UnweightedStreamError("threshold_view needs a weighted stream")
    W = stream.W if stream.W is not None else max(
        (e.w for e in stream.edges), default=1)
    if not 1 <= t <= W - 1:
        raise BadWError(f"threshold {t} outside [1..{W - 1}]")
    kept = [e for e in stream.edges if e.w <= t]
    return EdgeStream(kept, weighted=True, W=stream.W)


class CountingStream:
    """Single-pass guard: yields each item once and refuses a second pass."""

    def __init__(self, stream):
        self._stream = stream
        self.reads = 0
        self._consumed = False

    def __iter__(self):
        if self._consumed:
            raise RuntimeError("stream already consumed; estimators are single-pass")
        self._consumed = True
        for item in self._stream:
            self.reads += 1
            yield item
