"""Maximal cliques, clique trees and linking-constraint accounting."""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .graph import ChordalExtension
from .patterns import realify_clique


def _clique_key(c):
    return (min(c), sorted(c)) if c else (-1, [])


@dataclass(frozen=True)
class CliqueList:
    """Blocks ``C_1..C_r`` of a decomposition, as frozensets of node indices."""

    cliques: tuple
    source: Optional[ChordalExtension] = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __getitem__(self, i):
        return self.cliques[i]

    def max_size(self) -> int:
        return max((len(c) for c in self.cliques), default=0)


@dataclass(frozen=True)
class CliqueTree:
    """Spanning forest over clique indices; edges are ``(i, j, separator)`` with ``i < j``."""

    clique_count: int
    edges: tuple = ()

    @property
    def weight(self) -> int:
        return sum(len(sep) for _, _, sep in self.edges)

    def neighbors(self) -> list:
        nbrs = [[] for _ in range(self.clique_count)]
        for k, (i, j, _) in enumerate(self.edges):
            nbrs[i].append((j, k))
            nbrs[j].append((i, k))
        return nbrs

    def component_count(self) -> int:
        return self.clique_count - len(self.edges)


@dataclass(frozen=True)
class DecompositionStats:
    nc: int
    nlc: int
    max_clique_size: int
    fill_count: int


def maximal_cliques(h: ChordalExtension) -> CliqueList:
    """Maximal cliques of a chordal extension read off its PEO.

    Candidate ``{v} + later(v)`` is dropped when some node whose parent is
    ``v`` has exactly one more later neighbour than ``v``.
    """
    g = h.graph
    pos = h.peo.position
    later = [[w for w in g.adjacency[v] if pos[w] > pos[v]] for v in range(g.node_count)]
    maximal = [True] * g.node_count
    for u in range(g.node_count):
        if later[u]:
            p = min(later[u], key=pos.__getitem__)
            if len(later[u]) == len(later[p]) + 1:
                maximal[p] = False
    cliques = [frozenset([v, *later[v]]) for v in range(g.node_count) if maximal[v]]
    cliques.sort(key=_clique_key)
    return CliqueList(tuple(cliques), h)


def clique_graph_edges(cliques) -> dict:
    """``{(i, j): |C_i & C_j|}`` for every pair of intersecting cliques."""
    containing = defaultdict(list)
    for k, c in enumerate(cliques):
        for v in c:
            containing[v].append(k)
    weights: dict = defaultdict(int)
    for ks in containing.values():
        for a in range(len(ks)):
            for b in range(a + 1, len(ks)):
                weights[(ks[a], ks[b])] += 1
    return dict(weights)


def build_clique_tree(cliques) -> CliqueTree:
    """Maximum-weight spanning forest of the clique graph (Prim).

    Ties prefer the larger weight, then the smaller ``(i, j)`` pair.
    """
    cl = list(cliques)
    r = len(cl)
    adj = defaultdict(list)
    for (i, j), w in clique_graph_edges(cl).items():
        adj[i].append((w, j))
        adj[j].append((w, i))
    visited = [False] * r
    edges = []
    for root in range(r):
        if visited[root]:
            continue
        visited[root] = True
        heap = []
        for w, j in adj[root]:
            heapq.heappush(heap, (-w, min(root, j), max(root, j), j))
        while heap:
            _, a, b, target = heapq.heappop(heap)
            if visited[target]:
                continue
            visited[target] = True
            edges.append((a, b, cl[a] & cl[b]))
            for w, j in adj[target]:
                if not visited[j]:
                    heapq.heappush(heap, (-w, min(target, j), max(target, j), j))
    edges.sort(key=lambda e: (e[0], e[1]))
    return CliqueTree(r, tuple(edges))


def satisfies_rip(cliques, tree: CliqueTree) -> bool:
    """Running intersection: cliques holding each node form a subtree."""
    holders = defaultdict(int)
    for c in cliques:
        for v in c:
            holders[v] += 1
    links = defaultdict(int)
    for i, j, sep in tree.edges:
        if sep != cliques[i] & cliques[j]:
            return False
        for v in sep:
            links[v] += 1
    # a forest subgraph with k nodes and k-1 edges is connected
    return all(links[v] == k - 1 for v, k in holders.items())


def linking_constraints_for(k: int) -> int:
    return k * (k + 1) // 2


def count_linking_constraints(tree: CliqueTree, real_vars: bool = False) -> int:
    """Sum of ``k(k+1)/2`` over separators measured in real variables.

    Pass ``real_vars=True`` when the tree lives in complex variables so that
    separators are doubled first.
    """
    factor = 2 if real_vars else 1
    return sum(linking_constraints_for(factor * len(sep)) for _, _, sep in tree.edges)


def decomposition_stats(h, cliques, tree: CliqueTree, real_vars: bool = False) -> DecompositionStats:
    factor = 2 if real_vars else 1
    return DecompositionStats(
        nc=len(cliques),
        nlc=count_linking_constraints(tree, real_vars),
        max_clique_size=factor * max((len(c) for c in cliques), default=0),
        fill_count=h.fill_count if h is not None else 0,
    )


def realify_decomposition(cliques: CliqueList, tree: CliqueTree):
    """Double a complex-variable decomposition into real variables."""
    real = CliqueList(tuple(realify_clique(c) for c in cliques), None)
    edges = tuple((i, j, realify_clique(sep)) for i, j, sep in tree.edges)
    return real, CliqueTree(tree.clique_count, edges)


def decompose(h: ChordalExtension):
    """Cliques and clique tree of a chordal extension."""
    cliques = maximal_cliques(h)
    return cliques, build_clique_tree(cliques.cliques)
