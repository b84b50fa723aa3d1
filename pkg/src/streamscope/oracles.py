"""Exact combinatorial oracles the estimators are verified against."""

from __future__ import annotations

from typing import Dict, List, Tuple

from .canonical import DiscType, bounded_disc_code, cano_disc, disc_code
from .errors import ComponentTooLargeError, DisconnectedError
from .graphs import Graph, connected_components


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.count = n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


def exact_cc_histogram(g: Graph) -> Dict[int, int]:
    """Component-size histogram {size: count}, isolated vertices included."""
    uf = UnionFind(g.n)
    for e in g.edges:
        uf.union(e.u, e.v)
    sizes: Dict[int, int] = {}
    for v in range(1, g.n + 1):
        if uf.find(v) == v:
            sizes[uf.size[v]] = sizes.get(uf.size[v], 0) + 1
    return sizes


def exact_cc_count(g: Graph) -> int:
    return sum(exact_cc_histogram(g).values())


def threshold_components(g: Graph, t: int) -> int:
    """Number of components after dropping every edge heavier than t."""
    uf = UnionFind(g.n)
    for e in g.edges:
        if e.w <= t:
            uf.union(e.u, e.v)
    return uf.count


def kruskal_mst(g: Graph) -> int:
    """Exact minimum-spanning-tree weight of a connected weighted graph."""
    if not g.weighted:
        raise DisconnectedError("kruskal_mst needs a weighted graph")
    uf = UnionFind(g.n)
    total = 0
    used = 0
    for e in sorted(g.edges, key=lambda e: (e.w, e.u, e.v)):
        if uf.union(e.u, e.v):
            total += e.w
            used += 1
    if used != g.n - 1:
        raise DisconnectedError(f"graph has {g.n - used} components")
    return total


def mst_identity_value(g: Graph) -> int:
    """n - W + sum of exact threshold component counts; equals the MST weight
    on every connected weighted graph."""
    W = g.W
    return g.n - W + sum(threshold_components(g, t) for t in range(1, W))


def _component_subgraph(g: Graph, vertices: List[int]) -> Tuple[List[int], List[Tuple[int, int]]]:
    inside = set(vertices)
    edges = [(e.u, e.v) for e in g.edges if e.u in inside and e.v in inside]
    return sorted(inside), edges


def _max_independent_sets(vertices: List[int], edges: List[Tuple[int, int]]):
    """(alpha, lexicographically smallest maximum independent set)."""
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    order = sorted(vertices)
    n = len(order)

    best_size = 0

    def search(i: int, chosen: List[int], blocked: set) -> None:
        nonlocal best_size
        if n - i + len(chosen) < best_size:
            return
        if i == n:
            if len(chosen) > best_size:
                best_size = len(chosen)
            return
        v = order[i]
        if v not in blocked:
            chosen.append(v)
            search(i + 1, chosen, blocked | adj[v])
            chosen.pop()
        search(i + 1, chosen, blocked)

    search(0, [], set())

    # Second pass: greedily commit the smallest labels that still extend to
    # an optimum, which yields the lexicographically smallest witness.
    def alpha_with(i: int, chosen_count: int, blocked: set) -> int:
        best = chosen_count
        rem = [v for v in order[i:] if v not in blocked]

        def rec(vs: Tuple[int, ...], count: int, blk: frozenset) -> int:
            nonlocal best
            if count + len(vs) <= best:
                return best
            if not vs:
                if count > best:
                    best = count
                return best
            v = vs[0]
            rest = vs[1:]
            if v not in blk:
                rec(tuple(w for w in rest if w not in adj[v] and w not in blk),
                    count + 1, blk)
            rec(tuple(w for w in rest if w not in blk), count, blk)
            return best

        rec(tuple(rem), chosen_count, frozenset(blocked))
        return best

    witness: List[int] = []
    blocked: set = set()
    for i, v in enumerate(order):
        if v in blocked:
            continue
        if alpha_with(i + 1, len(witness) + 1, blocked | adj[v]) == best_size:
            witness.append(v)
            blocked |= adj[v]
    assert len(witness) == best_size
    return best_size, witness


def exact_mis(g: Graph, size_cap: int = 20) -> Tuple[int, List[int]]:
    """Exact maximum independent set size with the lexicographically smallest
    witness, component by component. Components above size_cap are refused.
    """
    total = 0
    witness: List[int] = []
    for comp in connected_components(g):
        if len(comp) > size_cap:
            raise ComponentTooLargeError(
                f"component of size {len(comp)} exceeds cap {size_cap}")
        vs, es = _component_subgraph(g, comp)
        size, wit = _max_independent_sets(vs, es)
        total += size
        witness.extend(wit)
    return total, sorted(witness)


def make_component_mis_oracle(g: Graph, size_cap: int = 20):
    """Reference root-membership oracle: answers whether a root belongs to the
    lexicographically smallest maximum independent set of its own component
    in g. Deterministic per (component, root); local views are ignored.
    """
    comp_of: Dict[int, int] = {}
    comps = connected_components(g)
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    cache: Dict[int, set] = {}

    def oracle(local_view, root: int) -> bool:
        ci = comp_of[root]
        hit = cache.get(ci)
        if hit is None:
            comp = comps[ci]
            if len(comp) > size_cap:
                raise ComponentTooLargeError(
                    f"component of size {len(comp)} exceeds cap {size_cap}")
            vs, es = _component_subgraph(g, comp)
            _, wit = _max_independent_sets(vs, es)
            hit = set(wit)
            cache[ci] = hit
        return root in hit

    return oracle


def exact_disc_freq(g: Graph, k: int, d: int) -> Dict[DiscType, int]:
    """Histogram of canonical extended (d+1)-bounded k-disc types over all
    roots of g."""
    hist: Dict[DiscType, int] = {}
    for v in range(1, g.n + 1):
        dt = disc_code(cano_disc(g, v, k, d))
        hist[dt] = hist.get(dt, 0) + 1
    return hist


def exact_disc_roots(g: Graph, k: int, d: int) -> Dict[DiscType, List[int]]:
    """Roots grouped by their canonical extended disc type."""
    groups: Dict[DiscType, List[int]] = {}
    for v in range(1, g.n + 1):
        dt = disc_code(cano_disc(g, v, k, d))
        groups.setdefault(dt, []).append(v)
    return groups


def exact_bounded_disc_freq(g: Graph, k: int, d: int) -> Dict[DiscType, int]:
    """Histogram of d-bounded k-disc types computed directly on the
    degree-truncated graph (the projection's independent reference)."""
    hist: Dict[DiscType, int] = {}
    for v in range(1, g.n + 1):
        dt = bounded_disc_code(g, v, k, d)
        hist[dt] = hist.get(dt, 0) + 1
    return hist
