"""Complex and real sparsity patterns of the OPF relaxation.

Bus ``n`` of the complex pattern maps to real nodes ``2n`` (real part) and
``2n + 1`` (imaginary part).
"""

from __future__ import annotations

from .graph import ChordalExtension, Ordering, SparsityGraph
from .network import NetworkTopology


def build_complex_pattern(topology: NetworkTopology) -> SparsityGraph:
    """One node per bus, one edge per in-service branch (parallel branches collapsed)."""
    index = {bus: i for i, bus in enumerate(topology.buses)}
    edges = [(index[br.from_bus], index[br.to_bus]) for br in topology.in_service_branches()]
    return SparsityGraph.from_edges(len(index), edges, [str(b) for b in topology.buses])


def real_index(node: int, imag: bool = False) -> int:
    return 2 * node + int(imag)


def complex_index(real_node: int) -> int:
    return real_node // 2


def _real_labels(labels):
    out = []
    for lab in labels:
        out.extend((f"{lab}_Re", f"{lab}_Im"))
    return out


def _cross_edges(i: int, j: int):
    for a in (2 * i, 2 * i + 1):
        for b in (2 * j, 2 * j + 1):
            yield a, b


def realify_graph(gc: SparsityGraph) -> SparsityGraph:
    """Real pattern: each complex edge gives four cross edges; no Re-Im edges."""
    if any(lab.endswith(("_Re", "_Im")) for lab in gc.labels):
        raise ValueError("graph is already in real variables")
    edges = [e for i, j in gc.edges for e in _cross_edges(i, j)]
    return SparsityGraph.from_edges(2 * gc.node_count, edges, _real_labels(gc.labels))


def realify_clique(clique) -> frozenset:
    return frozenset(r for n in clique for r in (2 * n, 2 * n + 1))


def realify_extension(hc: ChordalExtension) -> ChordalExtension:
    """Double a complex chordal extension into real variables.

    Every edge of the chordal graph gives its four cross edges and every
    non-isolated node gets its (Re, Im) edge; the PEO is expanded in place.
    """
    base = realify_graph(hc.base)
    chordal = hc.graph
    edges = set()
    for i, j in chordal.edges:
        edges.update(_cross_edges(i, j))
    for n in range(chordal.node_count):
        if chordal.adjacency[n]:
            edges.add((2 * n, 2 * n + 1))
    fill = frozenset(edges - base.edges)
    peo = Ordering(tuple(r for n in hc.peo.perm for r in (2 * n, 2 * n + 1)))
    return ChordalExtension(base, fill, peo)
