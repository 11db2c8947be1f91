"""Elimination orderings and symbolic elimination (chordal extensions).

All strategies break ties by smallest node index.  Fill is only ever
computed by :func:`symbolic_elimination`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import ChordalExtension, Ordering, SparsityGraph, as_ordering

STRATEGIES = ("min_degree", "amd", "random", "max_degree", "given")


def _greedy_degree_order(g: SparsityGraph, largest: bool) -> Ordering:
    adj = [set(n) for n in g.adjacency]
    sign = -1 if largest else 1
    heap = [(sign * len(adj[v]), v) for v in range(g.node_count)]
    heapq.heapify(heap)
    done = [False] * g.node_count
    order = []
    while heap:
        key, v = heapq.heappop(heap)
        if done[v] or key != sign * len(adj[v]):
            continue
        done[v] = True
        order.append(v)
        nbrs = adj[v]
        for u in nbrs:
            adj[u].discard(v)
        for u in nbrs:
            adj[u].update(w for w in nbrs if w != u)
        for u in nbrs:
            heapq.heappush(heap, (sign * len(adj[u]), u))
        adj[v] = set()
    return Ordering(tuple(order))


def order_min_degree(g: SparsityGraph) -> Ordering:
    """Exact dynamic minimum degree on the elimination graph."""
    return _greedy_degree_order(g, largest=False)


def order_max_degree(g: SparsityGraph) -> Ordering:
    """Greedy dynamic maximum degree; a deliberately poor ordering."""
    return _greedy_degree_order(g, largest=True)


def order_random(g: SparsityGraph, seed: int = 0) -> Ordering:
    rng = np.random.default_rng(seed)
    return Ordering(tuple(int(v) for v in rng.permutation(g.node_count)))


def order_amd(g: SparsityGraph) -> Ordering:
    """Approximate minimum degree on a quotient graph.

    Variables keep their remaining variable neighbours ``A[i]`` and
    adjacent elements ``E[i]``; eliminated pivots become elements ``L[p]``.
    Degrees are the approximate external degrees of Amestoy, Davis and
    Duff.  Indistinguishable variables are merged into supervariables and
    eliminated together.  Element absorption is limited to the elements
    adjacent to the pivot (no aggressive absorption), and one pivot is
    eliminated per step (no multiple elimination).
    """
    n = g.node_count
    A = [set(nb) for nb in g.adjacency]
    E = [set() for _ in range(n)]
    L: dict[int, set] = {}
    nv = [1] * n
    members = [[v] for v in range(n)]
    deg = [len(nb) for nb in g.adjacency]
    eliminated = [False] * n
    n_left = n
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    order = []

    while heap:
        d, p = heapq.heappop(heap)
        if eliminated[p] or nv[p] == 0 or d != deg[p]:
            continue
        # new element: union of A[p] and the elements p touches
        lp = set(A[p])
        absorbed = E[p]
        for e in absorbed:
            lp |= L.pop(e)
        lp.discard(p)
        eliminated[p] = True
        order.extend(sorted(members[p]))
        n_left -= nv[p]
        A[p] = set()
        E[p] = set()
        for i in lp:
            E[i] -= absorbed
            E[i].add(p)
            A[i] -= lp
            A[i].discard(p)
        L[p] = lp

        # supervariables: identical A and E inside the new element
        groups: dict = {}
        for i in sorted(lp):
            groups.setdefault((frozenset(A[i]), frozenset(E[i])), []).append(i)
        for grp in groups.values():
            keep = grp[0]
            for j in grp[1:]:
                nv[keep] += nv[j]
                members[keep].extend(members[j])
                nv[j] = 0
                for e in E[j]:
                    L[e].discard(j)
                for k in A[j]:
                    A[k].discard(j)
                A[j] = set()
                E[j] = set()

        # |L_e \ L_p| for every other element touching the new element
        external = {}
        for i in lp:
            for e in E[i]:
                if e == p:
                    continue
                if e not in external:
                    external[e] = sum(nv[k] for k in L[e])
                external[e] -= nv[i]
        lp_weight = sum(nv[i] for i in lp)
        for i in lp:
            rest = lp_weight - nv[i]
            bound = sum(nv[k] for k in A[i]) + rest
            bound += sum(external[e] for e in E[i] if e != p)
            deg[i] = min(n_left - nv[i], deg[i] + rest, bound)
            heapq.heappush(heap, (deg[i], i))

    return Ordering(tuple(order))


def symbolic_elimination(g: SparsityGraph, order) -> ChordalExtension:
    """Simulate Cholesky fill for the given elimination order.

    Each node's higher-ordered neighbours are merged into its parent (the
    earliest of them), which yields the filled graph in O(nnz(L)).  The
    elimination order is a perfect elimination ordering of the result.
    """
    order = as_ordering(order)
    if len(order) != g.node_count:
        raise ValueError("ordering length does not match node count")
    pos = order.position
    higher = [{w for w in g.adjacency[v] if pos[w] > pos[v]} for v in range(g.node_count)]
    fill = set()
    for v in order.perm:
        hv = higher[v]
        if not hv:
            continue
        for w in hv:
            e = (v, w) if v < w else (w, v)
            if e not in g.edges:
                fill.add(e)
        parent = min(hv, key=pos.__getitem__)
        higher[parent].update(w for w in hv if w != parent)
    return ChordalExtension(g, frozenset(fill), order)


@dataclass(frozen=True)
class OrderingStrategy:
    """Which ordering heuristic to run; ``seed`` for random, ``perm`` for given."""

    kind: str = "min_degree"
    seed: Optional[int] = None
    perm: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown ordering strategy {self.kind!r}")
        if self.kind == "random":
            seed = 0 if self.seed is None else int(self.seed)
            if not 0 <= seed < 2**64:
                raise ValueError("random seed must fit in 64 bits")
            object.__setattr__(self, "seed", seed)
        if self.kind == "given" and self.perm is None:
            raise ValueError("given ordering requires a permutation")

    @classmethod
    def parse(cls, text: str, seed: Optional[int] = None) -> "OrderingStrategy":
        """Parse ``"min_degree"``, ``"amd"``, ``"random"``/``"random:SEED"``, ``"max_degree"``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower().replace("-", "_")
        if kind == "md":
            kind = "min_degree"
        if arg:
            seed = int(arg)
        return cls(kind, seed=seed if kind == "random" else None)

    def __str__(self):
        if self.kind == "random":
            return f"random:{self.seed}"
        return self.kind

    def order(self, g: SparsityGraph) -> Ordering:
        if self.kind == "min_degree":
            return order_min_degree(g)
        if self.kind == "amd":
            return order_amd(g)
        if self.kind == "random":
            return order_random(g, self.seed)
        if self.kind == "max_degree":
            return order_max_degree(g)
        return as_ordering(self.perm)


def chordal_extension(g: SparsityGraph, strategy="min_degree") -> ChordalExtension:
    if isinstance(strategy, str):
        strategy = OrderingStrategy.parse(strategy)
    return symbolic_elimination(g, strategy.order(g))
