"""Synthetic grid-like network topologies for experiments and tests."""

from __future__ import annotations

import numpy as np

from .network import Branch, NetworkTopology


def grid_topology(rows: int, cols: int) -> NetworkTopology:
    """Plain ``rows x cols`` lattice with buses numbered from 1."""
    return grid_like_topology(rows, cols, chords=0, drop=0.0, seed=0)


def grid_like_topology(
    rows: int,
    cols: int,
    chords: int = 0,
    drop: float = 0.0,
    pendants: int = 0,
    seed: int = 0,
) -> NetworkTopology:
    """Lattice with some edges dropped, short-range chords and radial buses.

    A spanning path (the boustrophedon through the lattice) is never
    dropped, so the result stays connected like a transmission network.
    ``pendants`` extra buses are each hung off a random existing bus.
    """
    rng = np.random.default_rng(seed)
    bus = lambda r, c: r * cols + c + 1  # noqa: E731
    keep = set()
    for r in range(rows):
        for c in range(cols - 1):
            keep.add((bus(r, c), bus(r, c + 1)))
    for r in range(rows - 1):
        c = cols - 1 if r % 2 == 0 else 0
        keep.add((bus(r, c), bus(r + 1, c)))
    edges = set(keep)
    for r in range(rows - 1):
        for c in range(cols):
            e = (bus(r, c), bus(r + 1, c))
            if e in keep or rng.random() >= drop:
                edges.add(e)
    n = rows * cols
    for _ in range(chords):
        r, c = int(rng.integers(rows)), int(rng.integers(cols))
        dr, dc = (int(x) for x in rng.integers(-2, 3, size=2))
        r2, c2 = min(max(r + dr, 0), rows - 1), min(max(c + dc, 0), cols - 1)
        u, v = bus(r, c), bus(r2, c2)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    total = n + pendants
    for b in range(n + 1, total + 1):
        edges.add((int(rng.integers(1, b)), b))
    branches = tuple(Branch(u, v) for u, v in sorted(edges))
    return NetworkTopology(tuple(range(1, total + 1)), branches, f"grid{rows}x{cols}s{seed}")


def transmission_like(n_buses: int, seed: int = 0) -> NetworkTopology:
    """Sparse meshed network of about ``n_buses`` buses.

    Roughly 70% of the buses sit on a thinned lattice (75% of the
    cross-row lines dropped, a chord per 50 buses) and the rest are
    radial buses, which keeps the branch/bus ratio near that of
    transmission cases.
    """
    core = max(4, round(0.7 * n_buses))
    rows = max(2, int(np.sqrt(core / 2)))
    cols = max(2, -(-core // rows))
    pendants = max(0, n_buses - rows * cols)
    t = grid_like_topology(rows, cols, chords=n_buses // 50, drop=0.75, pendants=pendants, seed=seed)
    return NetworkTopology(t.buses, t.branches, f"tlike{n_buses}s{seed}")
