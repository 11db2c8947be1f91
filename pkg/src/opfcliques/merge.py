"""Clique combination: merge adjacent clique-tree blocks to remove linking constraints.

Picking which tree edges to contract is a 0/1 program with one variable per
edge, a size cap per edge and at most one combination per clique.  Those
constraints make the feasible sets exactly the matchings of the forest
restricted to small-enough edges, so a two-state tree DP solves it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    CliqueList,
    CliqueTree,
    _clique_key,
    count_linking_constraints,
    linking_constraints_for,
)
from .exceptions import InvalidPlan

DEFAULT_SMAX = 50
DEFAULT_ROUNDS = 4


@dataclass(frozen=True)
class MergeModel:
    cliques: CliqueList
    tree: CliqueTree
    s_max: int = DEFAULT_SMAX

    def __post_init__(self):
        if self.s_max < 1:
            raise ValueError("s_max must be positive")

    def overlap(self, k: int) -> int:
        return len(self.tree.edges[k][2])

    def merged_size(self, k: int) -> int:
        i, j, sep = self.tree.edges[k]
        return len(self.cliques[i]) + len(self.cliques[j]) - len(sep)

    def weight(self, k: int) -> int:
        return linking_constraints_for(self.overlap(k))

    def allowed(self, k: int) -> bool:
        return self.merged_size(k) <= self.s_max


@dataclass(frozen=True)
class MergePlan:
    """Selected tree-edge indices and the number of linking constraints removed."""

    selected_edges: tuple
    objective: int


def solve_merge(model: MergeModel) -> MergePlan:
    """Maximum-weight size-capped matching on the clique forest.

    Among optimal matchings the lexicographically smallest edge-index set
    is returned.  Each weight is scaled by ``2**m`` and edge ``k`` gets a
    bonus ``2**(m-1-k)``; the bonus sum stays below ``2**m`` so it only
    separates equal-weight optima, and it makes the optimum unique.
    """
    tree = model.tree
    m = len(tree.edges)
    if m == 0:
        return MergePlan((), 0)
    scaled = [
        (model.weight(k) << m) + (1 << (m - 1 - k)) if model.allowed(k) else None
        for k in range(m)
    ]
    nbrs = tree.neighbors()
    r = tree.clique_count
    # free[v]: best in subtree with v unmatched; best[v]: v may be matched below
    free = [0] * r
    best = [0] * r
    pick = [None] * r  # child edge used by v in best[v]
    parent_edge = [None] * r
    seen = [False] * r
    selected = []
    for root in range(r):
        if seen[root]:
            continue
        seen[root] = True
        postorder = []
        stack = [root]
        while stack:
            v = stack.pop()
            postorder.append(v)
            for u, k in nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    parent_edge[u] = k
                    stack.append(u)
        children = {v: [] for v in postorder}
        for v in postorder:
            if parent_edge[v] is not None and v != root:
                i, j, _ = tree.edges[parent_edge[v]]
                children[i if j == v else j].append(v)
        for v in reversed(postorder):
            base = sum(best[c] for c in children[v])
            free[v] = base
            best[v] = base
            for c in children[v]:
                w = scaled[parent_edge[c]]
                if w is None:
                    continue
                cand = base - best[c] + free[c] + w
                if cand > best[v]:
                    best[v] = cand
                    pick[v] = c
        # top-down reconstruction
        stack = [(root, False)]
        while stack:
            v, matched_above = stack.pop()
            chosen = None if matched_above else pick[v]
            if chosen is not None:
                selected.append(parent_edge[chosen])
            for c in children[v]:
                stack.append((c, c == chosen))
    selected.sort()
    objective = sum(model.weight(k) for k in selected)
    return MergePlan(tuple(selected), objective)


def _check_plan(tree: CliqueTree, plan: MergePlan):
    used = set()
    for k in plan.selected_edges:
        if not 0 <= k < len(tree.edges):
            raise InvalidPlan(f"edge index {k} is not a tree edge")
        i, j, _ = tree.edges[k]
        if i in used or j in used:
            raise InvalidPlan(f"clique {i if i in used else j} is merged twice")
        used.update((i, j))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _contract(cliques, tree: CliqueTree, edge_ids):
    uf = _UnionFind(len(cliques))
    for k in edge_ids:
        i, j, _ = tree.edges[k]
        uf.union(i, j)
    blocks = {}
    for idx, c in enumerate(cliques):
        root = uf.find(idx)
        blocks[root] = blocks.get(root, frozenset()) | c
    roots = sorted(blocks, key=lambda x: _clique_key(blocks[x]))
    renum = {root: n for n, root in enumerate(roots)}
    new_cliques = [blocks[root] for root in roots]
    edges = []
    for i, j, _ in tree.edges:
        a, b = renum[uf.find(i)], renum[uf.find(j)]
        if a == b:
            continue
        a, b = min(a, b), max(a, b)
        edges.append((a, b, new_cliques[a] & new_cliques[b]))
    edges.sort(key=lambda e: (e[0], e[1]))
    return new_cliques, CliqueTree(len(new_cliques), tuple(edges))


def apply_merge(cliques: CliqueList, tree: CliqueTree, plan: MergePlan):
    """Contract the selected tree edges, then absorb blocks nested in a neighbour."""
    _check_plan(tree, plan)
    if not plan.selected_edges:
        return cliques, tree
    blocks, new_tree = _contract(list(cliques), tree, plan.selected_edges)
    while True:
        nested = [
            k
            for k, (i, j, sep) in enumerate(new_tree.edges)
            if sep == blocks[i] or sep == blocks[j]
        ]
        if not nested:
            break
        blocks, new_tree = _contract(blocks, new_tree, nested)
    return CliqueList(tuple(blocks), None), new_tree


@dataclass(frozen=True)
class RoundStats:
    round: int
    nc: int
    nlc: int
    max_block_size: int
    objective: int
    merged_edges: int

    def as_dict(self):
        return {
            "round": self.round,
            "nc": self.nc,
            "nlc": self.nlc,
            "max_block_size": self.max_block_size,
            "objective": self.objective,
            "merged_edges": self.merged_edges,
        }


def merge_rounds(cliques: CliqueList, tree: CliqueTree, s_max: int = DEFAULT_SMAX, rounds: int = DEFAULT_ROUNDS):
    """Alternate solve/apply up to ``rounds`` times, stopping at an empty plan.

    The returned history starts with the input as round 0.
    """
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    history = [RoundStats(0, len(cliques), count_linking_constraints(tree), cliques.max_size(), 0, 0)]
    for rnd in range(1, rounds + 1):
        plan = solve_merge(MergeModel(cliques, tree, s_max))
        if not plan.selected_edges:
            break
        cliques, tree = apply_merge(cliques, tree, plan)
        history.append(
            RoundStats(
                rnd,
                len(cliques),
                count_linking_constraints(tree),
                cliques.max_size(),
                plan.objective,
                len(plan.selected_edges),
            )
        )
    return cliques, tree, history
