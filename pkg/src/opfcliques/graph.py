"""Undirected simple graphs, orderings and chordality checks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

Edge = tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    u, v = int(u), int(v)
    if u == v:
        raise ValueError(f"self-loop on node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SparsityGraph:
    """Undirected simple graph over dense node indices ``0..node_count-1``.

    Instances are immutable; use :meth:`from_edges` or :meth:`with_edges`
    to build new graphs.  ``labels`` carry the external identity of each
    node (a bus id, optionally suffixed with ``_Re``/``_Im``).
    """

    node_count: int
    edges: frozenset
    labels: tuple

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be nonnegative")
        if len(self.labels) != self.node_count:
            raise ValueError("one label per node is required")
        for u, v in self.edges:
            if not (0 <= u < v < self.node_count):
                raise ValueError(f"invalid edge {(u, v)} for {self.node_count} nodes")

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Optional[Sequence[str]] = None,
    ) -> "SparsityGraph":
        """Build a graph, normalizing pairs and collapsing duplicates.

        Self-loops raise ``ValueError``.
        """
        normalized = frozenset(_normalize_edge(u, v) for u, v in edges)
        if labels is None:
            labels = [str(i) for i in range(node_count)]
        return cls(int(node_count), normalized, tuple(str(x) for x in labels))

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "SparsityGraph":
        return SparsityGraph.from_edges(
            self.node_count, list(self.edges) + list(extra), self.labels
        )

    @cached_property
    def adjacency(self) -> tuple:
        """Sorted neighbor tuple per node."""
        nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(n)) for n in nbrs)

    @cached_property
    def neighbor_sets(self) -> tuple:
        return tuple(frozenset(n) for n in self.adjacency)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __repr__(self):
        return f"SparsityGraph(node_count={self.node_count}, edges={len(self.edges)})"


@dataclass(frozen=True)
class Ordering:
    """A permutation of ``0..n-1``; ``perm[k]`` is the k-th node in the order."""

    perm: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("ordering is not a permutation of 0..n-1")
        object.__setattr__(self, "perm", perm)

    @cached_property
    def position(self) -> tuple:
        """``position[v]`` is the rank of node ``v`` in the ordering."""
        pos = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            pos[v] = k
        return tuple(pos)

    def __len__(self):
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)


def as_ordering(order) -> Ordering:
    return order if isinstance(order, Ordering) else Ordering(tuple(order))


@dataclass(frozen=True)
class ChordalExtension:
    """A graph together with fill edges that make it chordal.

    ``peo`` is a perfect elimination ordering of ``base`` plus ``fill_edges``.
    """

    base: SparsityGraph
    fill_edges: frozenset
    peo: Ordering

    def __post_init__(self):
        if self.fill_edges & self.base.edges:
            raise ValueError("fill edges overlap base edges")
        if len(self.peo) != self.base.node_count:
            raise ValueError("peo length does not match node count")

    @cached_property
    def graph(self) -> SparsityGraph:
        """The chordal graph ``base`` plus ``fill_edges``."""
        return SparsityGraph(
            self.base.node_count, self.base.edges | self.fill_edges, self.base.labels
        )

    @property
    def fill_count(self) -> int:
        return len(self.fill_edges)


def induced_neighbors(g: SparsityGraph, v: int, active) -> set:
    """Neighbors of ``v`` that lie in ``active``."""
    if v not in active:
        raise ValueError(f"node {v} is not active")
    return {w for w in g.adjacency[v] if w in active}


def verify_peo(g: SparsityGraph, order) -> bool:
    """Return True iff ``order`` is a perfect elimination ordering of ``g``.

    Uses the parent test: for each node, its later neighbors other than the
    earliest one (the parent) must all be later neighbors of the parent.
    """
    order = as_ordering(order)
    if len(order) != g.node_count:
        return False
    pos = order.position
    later = [
        {w for w in g.adjacency[v] if pos[w] > pos[v]} for v in range(g.node_count)
    ]
    for v in order.perm:
        lv = later[v]
        if len(lv) < 2:
            continue
        parent = min(lv, key=pos.__getitem__)
        if not (lv - {parent}) <= later[parent]:
            return False
    return True


class _Cell:
    __slots__ = ("members", "prev", "next")

    def __init__(self):
        self.members: dict = {}
        self.prev: Optional[_Cell] = None
        self.next: Optional[_Cell] = None


def lex_bfs(g: SparsityGraph) -> list[int]:
    """Lexicographic breadth-first search by partition refinement.

    Ties are broken by smallest node index. Returns nodes in visit order.
    """
    n = g.node_count
    if n == 0:
        return []
    head = _Cell()
    for v in range(n):
        head.members[v] = None
    cell_of = [head] * n
    visited = [False] * n
    order = []
    while head is not None:
        v = next(iter(head.members))
        del head.members[v]
        visited[v] = True
        order.append(v)
        if not head.members:
            head = head.next
            if head is not None:
                head.prev = None
        split: dict = {}
        # neighbors scanned ascending so new cells stay sorted
        for w in g.adjacency[v]:
            if visited[w]:
                continue
            old = cell_of[w]
            new = split.get(id(old))
            if new is None:
                new = _Cell()
                new.next = old
                new.prev = old.prev
                if old.prev is not None:
                    old.prev.next = new
                else:
                    head = new
                old.prev = new
                split[id(old)] = new
            del old.members[w]
            new.members[w] = None
            cell_of[w] = new
        for key, new in split.items():
            old = new.next
            if not old.members:
                new.next = old.next
                if old.next is not None:
                    old.next.prev = new
    return order


def is_chordal(g: SparsityGraph) -> tuple[bool, Optional[Ordering]]:
    """Test chordality; returns ``(True, peo)`` or ``(False, None)``."""
    peo = Ordering(tuple(reversed(lex_bfs(g))))
    if verify_peo(g, peo):
        return True, peo
    return False, None
