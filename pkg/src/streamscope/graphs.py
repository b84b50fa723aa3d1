"""Static simple undirected graphs with integer labels in [1..n].

The vertex set is always [1..n] with n explicit, so isolated vertices exist
even though they never show up in an edge list. Graphs are immutable after
construction and safe to share.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional

from .errors import (
    BadWeightError,
    DuplicateEdgeError,
    LabelOutOfRangeError,
    ParseError,
    SelfLoopError,
)


class Edge(NamedTuple):
    u: int
    v: int
    w: Optional[int] = None


def edge(u: int, v: int, w: Optional[int] = None) -> Edge:
    """Normalized edge: smaller label first, no self loops."""
    if u == v:
        raise SelfLoopError(f"self loop at {u}")
    if u > v:
        u, v = v, u
    return Edge(u, v, w)


class Graph:
    """Simple undirected graph on vertex set [1..n], optionally weighted.

    Edges are stored in canonical order (smaller endpoint first, sorted by
    endpoint pair) so every seeded downstream computation is reproducible.
    """

    __slots__ = ("n", "edges", "weighted", "W", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge], weighted: bool = False,
                 W: Optional[int] = None):
        if n < 0:
            raise LabelOutOfRangeError("n must be >= 0")
        seen = set()
        normalized = []
        for e in edges:
            e = edge(e.u, e.v, e.w)
            if (e.u, e.v) in seen:
                raise DuplicateEdgeError(f"duplicate edge ({e.u}, {e.v})")
            seen.add((e.u, e.v))
            if e.v > n:
                raise LabelOutOfRangeError(f"label {e.v} > n={n}")
            if e.u < 1:
                raise LabelOutOfRangeError(f"label {e.u} < 1")
            if weighted:
                if e.w is None:
                    raise BadWeightError(f"edge ({e.u},{e.v}) missing weight")
            elif e.w is not None:
                raise BadWeightError(f"edge ({e.u},{e.v}) has weight on unweighted graph")
            normalized.append(e)
        normalized.sort(key=lambda e: (e.u, e.v))
        if weighted:
            max_w = max((e.w for e in normalized), default=1)
            if W is None:
                W = max_w
            for e in normalized:
                if not 1 <= e.w <= W:
                    raise BadWeightError(
                        f"weight {e.w} of edge ({e.u},{e.v}) outside [1..{W}]")
        else:
            W = None
        self.n = n
        self.edges = tuple(normalized)
        self.weighted = weighted
        self.W = W
        adj = {}
        for e in self.edges:
            adj.setdefault(e.u, []).append(e.v)
            adj.setdefault(e.v, []).append(e.u)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors_sorted(self, v: int) -> tuple:
        if not 1 <= v <= self.n:
            raise LabelOutOfRangeError(f"vertex {v} outside [1..{self.n}]")
        return self._adj.get(v, ())

    def degree(self, v: int) -> int:
        return len(self.neighbors_sorted(v))

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges == other.edges and self.weighted == other.weighted
                and self.W == other.W)

    def __hash__(self):
        return hash((self.n, self.edges, self.weighted, self.W))

    def __repr__(self):
        kind = f"weighted W={self.W}" if self.weighted else "unweighted"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


def neighbors_sorted(g: Graph, v: int) -> tuple:
    return g.neighbors_sorted(v)


def load_edge_list(text, n_override: Optional[int] = None,
                   w_override: Optional[int] = None) -> Graph:
    """Parse an edge-list document into a validated Graph.

    Lines hold "u v" or "u v w" (whitespace separated); '#' starts a comment;
    an optional "n=<int>" line fixes the vertex count. When no explicit n is
    available the maximum label seen is used. All lines must agree on whether
    a weight column is present.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if hasattr(text, "read"):
        text = text.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    n_header = None
    rows = []  # (line_no, u, v, w)
    weighted = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if rows or n_header is not None:
                raise ParseError(line_no, "n= header must be the first data line")
            try:
                n_header = int(line[2:])
            except ValueError:
                raise ParseError(line_no, f"bad n= header {line!r}") from None
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(line_no, f"expected 2 or 3 fields, got {len(parts)}")
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(line_no, f"non-integer field in {line!r}") from None
        has_w = len(nums) == 3
        if weighted is None:
            weighted = has_w
        elif weighted != has_w:
            raise ParseError(line_no, "mixed weighted and unweighted lines")
        u, v = nums[0], nums[1]
        if u < 1 or v < 1:
            raise ParseError(line_no, f"labels must be >= 1 in {line!r}")
        rows.append((line_no, u, v, nums[2] if has_w else None))
    n = n_override if n_override is not None else n_header
    if n is None:
        n = max((max(u, v) for (_, u, v, _) in rows), default=0)
    edges = []
    for line_no, u, v, w in rows:
        if max(u, v) > n:
            raise LabelOutOfRangeError(f"line {line_no}: label {max(u, v)} > n={n}")
        edges.append(edge(u, v, w))
    return Graph(n, edges, weighted=bool(weighted), W=w_override)


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form: n= header, then one edge per line, smaller label
    first, lines sorted by (u, v). load_edge_list(serialize_edge_list(g)) == g.
    """
    lines = [f"n={g.n}"]
    for e in g.edges:
        if g.weighted:
            lines.append(f"{e.u} {e.v} {e.w}")
        else:
            lines.append(f"{e.u} {e.v}")
    return "\n".join(lines) + "\n"


def truncate_high_degree(g: Graph, d: int) -> Graph:
    """Subgraph keeping only edges whose both endpoints have degree <= d in g."""
    if d < 1:
        raise LabelOutOfRangeError("d must be >= 1")
    kept = [e for e in g.edges if g.degree(e.u) <= d and g.degree(e.v) <= d]
    return Graph(g.n, kept, weighted=g.weighted, W=g.W)


def connected_components(g: Graph) -> list:
    """Components as sorted vertex lists (includes isolated vertices)."""
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
    comps = {}
    for v in range(1, g.n + 1):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())
