"""Canonical rooted constructions and the violating-edge predicates.

Everything the streaming detectors must reproduce lives here: canonical BFS
trees, canonical extended bounded discs, the predicates that witness a
collected structure as non-canonical, canonical codes for rooted graphs, and
the projection that recovers a degree-truncated disc from its extended form.

The extended-disc acceptance rule is shared verbatim between the static
construction (`cano_disc`) and the stream detector, which makes replaying a
canonical edge order through the detector reproduce the construction exactly.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Set, Tuple

from .errors import (
    DiscTooLargeError,
    EdgeAlreadyInDiscError,
    EdgeAlreadyInTreeError,
    InvalidKError,
    RadiusMismatchError,
)
from .graphs import Edge, Graph

# Minimum depth gap that exposes a late attachment. The verification suite's
# mutation mode perturbs this to prove the probability checks are sensitive.
DEPTH_GAP = 2

DISC_SIZE_CAP = 64


# ---------------------------------------------------------------------------
# Rooted trees


class RootedTree:
    """Incrementally grown rooted tree with the bookkeeping the violating
    predicate needs: depths, per-vertex largest attached-child label, and the
    maximum depth present.
    """

    __slots__ = ("root", "dep", "parent", "children_max", "maxdep",
                 "edge_order")

    def __init__(self, root: int):
        self.root = root
        self.dep: Dict[int, int] = {root: 0}
        self.parent: Dict[int, int] = {}
        self.children_max: Dict[int, int] = {}
        self.maxdep = 0
        self.edge_order: List[Tuple[int, int]] = []

    @property
    def size(self) -> int:
        return len(self.dep)

    def edge_set(self) -> Set[Tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, b in self.edge_order}

    def attach(self, u: int, w: int) -> None:
        """Add new vertex w under u (no validity checks)."""
        d = self.dep[u] + 1
        self.dep[w] = d
        self.parent[w] = u
        prev = self.children_max.get(u, 0)
        if w > prev:
            self.children_max[u] = w
        if d > self.maxdep:
            self.maxdep = d
        self.edge_order.append((u, w))


def tree_update(t: RootedTree, a: int, b: int) -> str:
    """Apply one arriving edge to a collected tree.

    Returns "violating", "accepted", or "ignored". An edge is violating when
    it proves the tree cannot be a canonical BFS prefix: a new vertex hooks
    onto a vertex at least DEPTH_GAP above the deepest level, or onto a vertex
    that already attached a larger-labeled child; or an in-tree pair spans
    DEPTH_GAP levels, or the shallower endpoint already attached a child with
    a larger label than the deeper endpoint.
    """
    da = t.dep.get(a)
    db = t.dep.get(b)
    if da is None and db is None:
        return "ignored"
    if da is not None and db is not None:
        if da == db:
            return "ignored"
        if da > db:
            a, b, da, db = b, a, db, da
        if db - da >= DEPTH_GAP or t.children_max.get(a, 0) > b:
            return "violating"
        return "ignored"
    if da is None:
        a, b, da = b, a, db
    if t.maxdep - da >= DEPTH_GAP or t.children_max.get(a, 0) > b:
        return "violating"
    t.attach(a, b)
    return "accepted"


def is_violating_tree(t: RootedTree, e: Edge) -> bool:
    """Does e witness that t is not a canonical BFS tree? e must not be in t."""
    a, b = (e.u, e.v) if e.u < e.v else (e.v, e.u)
    if (a, b) in t.edge_set():
        raise EdgeAlreadyInTreeError(f"edge ({a},{b}) already in tree")
    da, db = t.dep.get(a), t.dep.get(b)
    if da is None and db is None:
        return False
    if da is not None and db is not None:
        if da == db:
            return False
        if da > db:
            a, b, da, db = b, a, db, da
        return db - da >= DEPTH_GAP or t.children_max.get(a, 0) > b
    if da is None:
        a, b, da = b, a, db
    return t.maxdep - da >= DEPTH_GAP or t.children_max.get(a, 0) > b


def cbfs_tree(g: Graph, v: int, k: int) -> RootedTree:
    """Canonical BFS tree of v up to k vertices: FIFO exploration, neighbors
    taken in ascending label order, stopping the instant k vertices are in.
    """
    if k < 1:
        raise InvalidKError(f"k must be >= 1, got {k}")
    t = RootedTree(v)
    queue = [v]
    head = 0
    while t.size < k and head < len(queue):
        u = queue[head]
        head += 1
        for w in g.neighbors_sorted(u):
            if w in t.dep:
                continue
            t.attach(u, w)
            if t.size == k:
                return t
            queue.append(w)
    return t


def cbfs_edge_order(t: RootedTree) -> List[Tuple[int, int]]:
    """Edge insertion order recorded while the tree was built."""
    return list(t.edge_order)


# ---------------------------------------------------------------------------
# Rooted bounded discs


class RootedDisc:
    """Rooted graph grown under the extended bounded-disc rule.

    dep holds shortest-path distance to the root within the disc;
    anchored_max holds, per vertex, the largest label of a new vertex it has
    attached (the disc analogue of a tree vertex's largest child).
    """

    __slots__ = ("root", "k", "d", "dep", "adj", "anchored_max", "maxdep",
                 "edges")

    def __init__(self, root: int, k: int, d: int):
        self.root = root
        self.k = k
        self.d = d
        self.dep: Dict[int, int] = {root: 0}
        self.adj: Dict[int, Set[int]] = {root: set()}
        self.anchored_max: Dict[int, int] = {}
        self.maxdep = 0
        self.edges: Set[Tuple[int, int]] = set()

    @property
    def size(self) -> int:
        return len(self.dep)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def radius(self) -> int:
        return self.maxdep

    def recompute_depths(self) -> Dict[int, int]:
        """BFS distances to the root over the current disc."""
        dist = {self.root: 0}
        frontier = [self.root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def disc_update(f: RootedDisc, a: int, b: int) -> str:
    """Apply one arriving edge under the extended-disc collection rule.

    Order of checks mirrors the stream detector: the violating test runs
    first; then an edge joining two collected vertices is always kept (it
    cannot move any depth once the gap test passed, and it cannot add a
    vertex, so the space bound is unaffected), while an edge reaching a new
    vertex is kept only when the radius stays within k and the collected
    degree of the attachment point stays within d+1.

    Only new-vertex attachments record an anchored target, exactly as tree
    collection records children: a closing edge between collected vertices
    says nothing about either endpoint's own lexicographic scan, and letting
    it pollute the anchored set makes a later canonical scan trip over its
    own edges.
    """
    da = f.dep.get(a)
    db = f.dep.get(b)
    if da is None and db is None:
        return "ignored"
    if da is not None and db is not None:
        if da != db:
            if da > db:
                a, b, da, db = b, a, db, da
            if db - da >= DEPTH_GAP or f.anchored_max.get(a, 0) > b:
                return "violating"
        f.adj[a].add(b)
        f.adj[b].add(a)
        f.edges.add((a, b) if a < b else (b, a))
        return "accepted"
    if da is None:
        a, b, da = b, a, db
    if f.maxdep - da >= DEPTH_GAP or f.anchored_max.get(a, 0) > b:
        return "violating"
    if da + 1 > f.k or len(f.adj[a]) + 1 > f.d + 1:
        return "ignored"
    f.dep[b] = da + 1
    f.adj[b] = {a}
    f.adj[a].add(b)
    f.edges.add((a, b) if a < b else (b, a))
    prev = f.anchored_max.get(a, 0)
    if b > prev:
        f.anchored_max[a] = b
    if da + 1 > f.maxdep:
        f.maxdep = da + 1
    return "accepted"


def is_violating_disc(f: RootedDisc, e: Edge) -> bool:
    """Disc analogue of is_violating_tree; dep is distance-to-root in f."""
    a, b = (e.u, e.v) if e.u < e.v else (e.v, e.u)
    if (a, b) in f.edges:
        raise EdgeAlreadyInDiscError(f"edge ({a},{b}) already in disc")
    da, db = f.dep.get(a), f.dep.get(b)
    if da is None and db is None:
        return False
    if da is not None and db is not None:
        if da == db:
            return False
        if da > db:
            a, b, da, db = b, a, db, da
        return db - da >= DEPTH_GAP or f.anchored_max.get(a, 0) > b
    if da is None:
        a, b, da = b, a, db
    return f.maxdep - da >= DEPTH_GAP or f.anchored_max.get(a, 0) > b


def _grow_cano_disc(g: Graph, v: int, k: int, d: int):
    if k < 0:
        raise InvalidKError(f"k must be >= 0, got {k}")
    if d < 1:
        raise InvalidKError(f"d must be >= 1, got {d}")
    f = RootedDisc(v, k, d)
    order: List[Tuple[int, int]] = []
    if k == 0:
        return f, order
    queue = [v]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        nbrs = g.neighbors_sorted(u)
        for w in nbrs[:min(len(nbrs), d + 1)]:
            key = (u, w) if u < w else (w, u)
            if key in f.edges:
                continue
            before = dict(f.dep)
            new_vertex = w not in f.dep
            if disc_update(f, u, w) == "accepted":
                order.append((u, w))
                after = f.recompute_depths()
                assert all(after[x] == dx for x, dx in before.items()), \
                    "accepted edge moved a collected depth"
                if new_vertex:
                    queue.append(w)
    return f, order


def cano_disc(g: Graph, v: int, k: int, d: int) -> RootedDisc:
    """Canonical extended (d+1)-bounded k-disc of v.

    BFS over collected vertices, each processed once; a popped vertex scans
    only its first min(deg, d+1) neighbors in ascending label order, and each
    scanned edge goes through exactly the stream-collection rule above.
    Depth stability is asserted after every insertion: an accepted edge never
    changes the distance of an already-collected vertex.
    """
    return _grow_cano_disc(g, v, k, d)[0]


def cano_disc_edge_order(g: Graph, v: int, k: int, d: int) -> List[Tuple[int, int]]:
    """Insertion order of the canonical extended disc's edges."""
    return _grow_cano_disc(g, v, k, d)[1]


# ---------------------------------------------------------------------------
# Canonical codes for rooted graphs


class DiscType:
    """Canonical identifier of a rooted graph up to root-preserving
    isomorphism. The code is self-describing: vertex count followed by the
    edge list under canonical labels (root is always label 0), so a
    representative disc can be rebuilt from it.
    """

    __slots__ = ("code", "num_edges")

    def __init__(self, code: bytes, num_edges: int):
        self.code = code
        self.num_edges = num_edges

    def __eq__(self, other):
        return isinstance(other, DiscType) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        return f"DiscType({self.code.hex()}, t={self.num_edges})"

    @property
    def hex(self) -> str:
        return self.code.hex()

    @property
    def num_vertices(self) -> int:
        return self.code[0]

    def decode(self) -> Tuple[int, List[Tuple[int, int]]]:
        """(vertex count, edge list over labels 0..n-1 with root 0)."""
        n = self.code[0]
        body = self.code[1:]
        edges = [(body[i], body[i + 1]) for i in range(0, len(body), 2)]
        return n, edges

    @classmethod
    def from_hex(cls, s: str) -> "DiscType":
        code = bytes.fromhex(s)
        return cls(code, (len(code) - 1) // 2)


def _refine_colors(n: int, adj: List[Set[int]], colors: List[int]) -> List[int]:
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v])))
                for v in range(n)]
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _twin_classes(cell: List[int], adj: List[Set[int]]) -> List[int]:
    """One representative per true-twin class (swapping twins is an
    automorphism, so only one branch needs exploring)."""
    reps: List[int] = []
    for x in cell:
        dup = False
        for r in reps:
            if adj[x] - {r} == adj[r] - {x}:
                dup = True
                break
        if not dup:
            reps.append(x)
    return reps


def canonical_rooted_code(n: int, edges, root: int,
                          deps: Optional[Dict[int, int]] = None,
                          size_cap: int = DISC_SIZE_CAP) -> bytes:
    """Minimal adjacency encoding over label permutations that fix the root.

    Vertices are pre-partitioned by (root flag, depth, degree) and refined by
    neighbor colors; the backtracking search then assigns positions cell by
    cell, pruning on the partial encoding and collapsing true twins.
    """
    if n > size_cap:
        raise DiscTooLargeError(f"{n} vertices exceeds cap {size_cap}")
    adj: List[Set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    base = [(0 if v == root else 1,
             -1 if deps is None else deps.get(v, -1),
             len(adj[v])) for v in range(n)]
    ranking = {sig: i for i, sig in enumerate(sorted(set(base)))}
    colors = _refine_colors(n, adj, [ranking[base[v]] for v in range(n)])

    best: List[Optional[Tuple[int, ...]]] = [None]

    def rec(placed: List[int], pos_of: Dict[int, int], key: List[int],
            remaining: List[List[int]]):
        if not remaining:
            tup = tuple(key)
            if best[0] is None or tup < best[0]:
                best[0] = tup
            return
        cell = remaining[0]
        rest = remaining[1:]
        for x in (_twin_classes(cell, adj) if len(cell) > 1 else cell):
            mask = 0
            for w in adj[x]:
                q = pos_of.get(w)
                if q is not None:
                    mask |= 1 << q
            key.append(mask)
            if best[0] is not None:
                prefix = best[0][:len(key)]
                if tuple(key) > prefix:
                    key.pop()
                    continue
            pos_of[x] = len(placed)
            placed.append(x)
            nxt = [c for c in ([y for y in cell if y != x],) if c]
            rec(placed, pos_of, key, nxt + rest)
            placed.pop()
            del pos_of[x]
            key.pop()

    cells: Dict[int, List[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    rec([], {}, [], ordered)

    # Recover the canonical edge list from the winning masks.
    masks = best[0]
    out = [n]
    canon_edges = []
    for p, mask in enumerate(masks):
        q = 0
        while mask:
            if mask & 1:
                canon_edges.append((q, p))
            mask >>= 1
            q += 1
    for a, b in sorted(canon_edges):
        out.append(a)
        out.append(b)
    return bytes(out)


_CODE_CACHE: Dict[tuple, DiscType] = {}


def disc_code(f: RootedDisc, size_cap: int = DISC_SIZE_CAP) -> DiscType:
    """Canonical code of a rooted disc; equal codes iff a root-preserving
    isomorphism exists between the discs.
    """
    verts = sorted(f.dep)
    if len(verts) > size_cap:
        raise DiscTooLargeError(f"disc has {len(verts)} vertices, cap {size_cap}")
    idx = {v: i for i, v in enumerate(verts)}
    edges = tuple(sorted((idx[a], idx[b]) for a, b in f.edges))
    cache_key = (len(verts), idx[f.root], edges)
    hit = _CODE_CACHE.get(cache_key)
    if hit is not None:
        return hit
    deps = {idx[v]: f.dep[v] for v in verts}
    code = canonical_rooted_code(len(verts), edges, idx[f.root], deps,
                                 size_cap=size_cap)
    dt = DiscType(code, len(edges))
    if len(_CODE_CACHE) < 200_000:
        _CODE_CACHE[cache_key] = dt
    return dt


def materialize_disc(dt: DiscType, k: int, d: int) -> RootedDisc:
    """Representative rooted disc of a type, labels 1..n with root 1."""
    n, edges = dt.decode()
    f = RootedDisc(1, k, d)
    for v in range(2, n + 1):
        f.adj[v] = set()
    for a, b in edges:
        u, w = a + 1, b + 1
        f.adj[u].add(w)
        f.adj[w].add(u)
        f.edges.add((u, w) if u < w else (w, u))
    f.dep = f.recompute_depths()
    assert len(f.dep) == n, "disc codes always describe root-connected graphs"
    f.maxdep = max(f.dep.values(), default=0)
    return f


# ---------------------------------------------------------------------------
# Projection back to degree-truncated discs


def _ball_code(root: int, adj: Dict[int, Set[int]], kept_edges,
               k: int, d: int) -> DiscType:
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            if dist[u] == k:
                continue
            for w in adj.get(u, ()):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    sub = RootedDisc(root, k, d)
    for v, dv in dist.items():
        sub.dep[v] = dv
        sub.adj.setdefault(v, set())
    for a, b in kept_edges:
        if a in dist and b in dist:
            sub.adj[a].add(b)
            sub.adj[b].add(a)
            sub.edges.add((a, b) if a < b else (b, a))
    sub.maxdep = max(dist.values(), default=0)
    return disc_code(sub)


def project_extended_disc(gamma: RootedDisc, k: int, d: int) -> DiscType:
    """Recover the d-bounded k-disc type from an extended disc built with
    radius k+1 and per-vertex budget d+1.

    A vertex that collected d+1 or more edges is certainly high degree in the
    source graph; every edge at such a vertex is dropped, and the code of the
    radius-k ball around the root in what remains is returned. A high-degree
    root therefore projects to the singleton type.
    """
    if gamma.k != k + 1:
        raise RadiusMismatchError(
            f"extended disc built with radius {gamma.k}, need {k + 1}")
    if gamma.d != d:
        raise RadiusMismatchError(
            f"extended disc built with budget {gamma.d}, need {d}")
    high = {v for v in gamma.dep if len(gamma.adj.get(v, ())) >= d + 1}
    kept = [(a, b) for (a, b) in gamma.edges if a not in high and b not in high]
    adj: Dict[int, Set[int]] = {}
    for a, b in kept:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return _ball_code(gamma.root, adj, kept, k, d)


def bounded_disc_code(g: Graph, v: int, k: int, d: int) -> DiscType:
    """Type of the k-disc of v computed directly on the degree-truncated
    graph: the independent reference the projection is checked against.
    """
    from .graphs import truncate_high_degree

    g2 = truncate_high_degree(g, d)
    adj = {u: set(g2.neighbors_sorted(u)) for u in range(1, g2.n + 1)}
    kept = [(e.u, e.v) for e in g2.edges]
    return _ball_code(v, adj, kept, k, d)
