"""Network topology ingestion from MATPOWER case files and edge lists."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import MalformedInput

# MATPOWER BR_STATUS, 1-based column 11
BRANCH_STATUS_COL = 10

_BLOCK_START = re.compile(r"^\s*mpc\.(\w+)\s*=\s*\[")


@dataclass(frozen=True)
class Branch:
    from_bus: int
    to_bus: int
    in_service: bool = True


@dataclass(frozen=True)
class NetworkTopology:
    """Buses and branches of a network; orientation is irrelevant downstream."""

    buses: tuple = ()
    branches: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.buses)) != len(self.buses):
            raise ValueError("bus ids must be unique")
        known = set(self.buses)
        for br in self.branches:
            if br.from_bus not in known or br.to_bus not in known:
                raise ValueError(f"branch {br.from_bus}-{br.to_bus} references an unknown bus")

    def in_service_branches(self):
        return [br for br in self.branches if br.in_service]


def _to_int(token, lineno, what):
    try:
        value = float(token)
    except ValueError:
        raise MalformedInput(f"non-numeric {what} entry {token!r}", lineno) from None
    if not value.is_integer():
        raise MalformedInput(f"{what} id {token!r} is not an integer", lineno)
    return int(value)


def _matrix_blocks(text):
    """Map block name -> list of (line number, tokens) rows."""
    blocks = {}
    current = None
    rows = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0]
        if current is None:
            m = _BLOCK_START.match(line)
            if m is None:
                continue
            current = m.group(1)
            rows = []
            line = line[m.end():]
        closed = "]" in line
        if closed:
            line = line.split("]", 1)[0]
        for chunk in line.split(";"):
            tokens = chunk.replace(",", " ").split()
            if tokens:
                rows.append((lineno, tokens))
        if closed:
            blocks[current] = rows
            current = None
    if current is not None:
        raise MalformedInput(f"unterminated matrix block mpc.{current}")
    return blocks


def parse_matpower(text: str, name: str = "") -> NetworkTopology:
    """Extract buses and branches from a MATPOWER case.

    Only the bus id column and the branch endpoint/status columns are read.
    A branch row shorter than the status column is taken as in service.
    """
    blocks = _matrix_blocks(text)
    for required in ("bus", "branch"):
        if required not in blocks:
            raise MalformedInput(f"missing mpc.{required} block")

    buses = []
    seen = set()
    for lineno, tokens in blocks["bus"]:
        for tok in tokens:
            try:
                float(tok)
            except ValueError:
                raise MalformedInput(f"non-numeric bus entry {tok!r}", lineno) from None
        bus = _to_int(tokens[0], lineno, "bus")
        if bus in seen:
            raise MalformedInput(f"duplicate bus id {bus}", lineno)
        seen.add(bus)
        buses.append(bus)

    branches = []
    for lineno, tokens in blocks["branch"]:
        if len(tokens) < 2:
            raise MalformedInput("branch row needs at least two columns", lineno)
        for tok in tokens:
            try:
                float(tok)
            except ValueError:
                raise MalformedInput(f"non-numeric branch entry {tok!r}", lineno) from None
        u = _to_int(tokens[0], lineno, "bus")
        v = _to_int(tokens[1], lineno, "bus")
        for b in (u, v):
            if b not in seen:
                raise MalformedInput(f"branch references unknown bus {b}", lineno)
        if u == v:
            raise MalformedInput(f"self-loop branch on bus {u}", lineno)
        status = True
        if len(tokens) > BRANCH_STATUS_COL:
            status = float(tokens[BRANCH_STATUS_COL]) != 0
        branches.append(Branch(u, v, status))
    return NetworkTopology(tuple(buses), tuple(branches), name)


def parse_edge_list(text: str, name: str = "") -> NetworkTopology:
    """Parse whitespace separated ``u v`` pairs, one per line; ``#`` starts a comment."""
    buses = {}
    branches = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise MalformedInput(f"expected two bus ids, got {len(tokens)} tokens", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedInput(f"non-integer token in {raw.strip()!r}", lineno) from None
        if u == v:
            raise MalformedInput(f"self-loop on bus {u}", lineno)
        buses.setdefault(u, None)
        buses.setdefault(v, None)
        branches.append(Branch(u, v, True))
    return NetworkTopology(tuple(buses), tuple(branches), name)


def to_matpower(topology: NetworkTopology) -> str:
    """Serialize the topology as a minimal MATPOWER case (zeros elsewhere)."""
    lines = ["function mpc = " + (topology.name or "case"), "mpc.version = '2';", "mpc.baseMVA = 100;", ""]
    lines.append("mpc.bus = [")
    for bus in topology.buses:
        lines.append(f"\t{bus}\t1\t0\t0\t0\t0\t1\t1\t0\t0\t1\t1.1\t0.9;")
    lines.append("];")
    lines.append("")
    lines.append("mpc.branch = [")
    for br in topology.branches:
        lines.append(
            f"\t{br.from_bus}\t{br.to_bus}\t0\t0.1\t0\t0\t0\t0\t0\t0\t{int(br.in_service)}\t-360\t360;"
        )
    lines.append("];")
    return "\n".join(lines) + "\n"


def to_edge_list(topology: NetworkTopology) -> str:
    """Serialize in-service branches; isolated buses are not representable."""
    return "".join(f"{br.from_bus} {br.to_bus}\n" for br in topology.in_service_branches())


def detect_format(path) -> str:
    return "matpower" if Path(path).suffix.lower() == ".m" else "edgelist"


def load_topology(path, fmt: str = "auto") -> NetworkTopology:
    path = Path(path)
    text = path.read_text()
    if fmt == "auto":
        fmt = detect_format(path)
    if fmt == "matpower":
        return parse_matpower(text, name=path.stem)
    if fmt == "edgelist":
        return parse_edge_list(text, name=path.stem)
    raise ValueError(f"unknown input format {fmt!r}")
