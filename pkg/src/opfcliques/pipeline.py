"""End-to-end pipelines, JSON reports and block-structure export."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .decomposition import (
    CliqueList,
    CliqueTree,
    count_linking_constraints,
    decompose,
    realify_decomposition,
)
from .exceptions import ConfigError
from .merge import DEFAULT_SMAX, merge_rounds
from .network import NetworkTopology, load_topology
from .ordering import OrderingStrategy, chordal_extension
from .patterns import build_complex_pattern, realify_extension, realify_graph

SCHEMA_VERSION = 1
SIDES = ("complex", "real")
FORMATS = ("auto", "matpower", "edgelist")


@dataclass(frozen=True)
class PipelineConfig:
    input_path: Optional[str] = None
    input_format: str = "auto"
    side: str = "complex"
    order: str = "min_degree"
    seed: Optional[int] = None
    s_max: int = DEFAULT_SMAX
    rounds: int = 0
    output: Optional[str] = None

    def validate(self) -> OrderingStrategy:
        if self.side not in SIDES:
            raise ConfigError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.input_format not in FORMATS:
            raise ConfigError(f"unknown input format {self.input_format!r}")
        if self.s_max < 1:
            raise ConfigError("s_max must be at least 1")
        if self.rounds < 0:
            raise ConfigError("rounds must be nonnegative")
        try:
            strategy = OrderingStrategy.parse(self.order, seed=self.seed)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if strategy.kind == "given":
            raise ConfigError("a given ordering cannot be passed through a config")
        if self.seed is not None and strategy.kind != "random":
            raise ConfigError("--seed only applies to the random ordering")
        return strategy


@dataclass
class Report:
    instance: str
    side: str
    strategy: str
    s_max: int
    fill_count: int
    fill_count_real: int
    nc: int
    nlc: int
    max_clique_size: int
    merge_rounds: list = field(default_factory=list)
    variables: list = field(default_factory=list)
    blocks: list = field(default_factory=list)
    tree_edges: list = field(default_factory=list)
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def recompute(self) -> dict:
        """nc, nlc and max block size recomputed from the serialized blocks and tree."""
        nlc = sum(len(e["separator"]) * (len(e["separator"]) + 1) // 2 for e in self.tree_edges)
        return {
            "nc": len(self.blocks),
            "nlc": nlc,
            "max_clique_size": max((len(b) for b in self.blocks), default=0),
        }


def _tree_edges_json(tree: CliqueTree) -> list:
    return [{"cliques": [i, j], "separator": sorted(sep)} for i, j, sep in tree.edges]


def decompose_topology(
    topology: NetworkTopology,
    side: str = "complex",
    strategy="min_degree",
    s_max: int = DEFAULT_SMAX,
    rounds: int = 0,
):
    """Run pattern -> extension -> decomposition -> merge on a topology.

    Returns ``(cliques, tree, info)`` in real variables; ``info`` holds the
    fill counts and the per-round merge history.
    """
    if isinstance(strategy, str):
        strategy = OrderingStrategy.parse(strategy)
    gc = build_complex_pattern(topology)
    if side == "complex":
        hc = chordal_extension(gc, strategy)
        cliques, tree = realify_decomposition(*decompose(hc))
        fill, fill_real = hc.fill_count, realify_extension(hc).fill_count
    elif side == "real":
        hr = chordal_extension(realify_graph(gc), strategy)
        cliques, tree = decompose(hr)
        fill = fill_real = hr.fill_count
    else:
        raise ConfigError(f"side must be one of {SIDES}, got {side!r}")
    cliques, tree, history = merge_rounds(cliques, tree, s_max, rounds)
    info = {"fill_count": fill, "fill_count_real": fill_real, "history": history}
    return cliques, tree, info


def build_report(
    topology: NetworkTopology,
    side: str = "complex",
    strategy="min_degree",
    s_max: int = DEFAULT_SMAX,
    rounds: int = 0,
) -> Report:
    if isinstance(strategy, str):
        strategy = OrderingStrategy.parse(strategy)
    cliques, tree, info = decompose_topology(topology, side, strategy, s_max, rounds)
    labels = realify_graph(build_complex_pattern(topology)).labels
    return Report(
        instance=topology.name,
        side=side,
        strategy=str(strategy),
        s_max=s_max,
        fill_count=info["fill_count"],
        fill_count_real=info["fill_count_real"],
        nc=len(cliques),
        nlc=count_linking_constraints(tree),
        max_clique_size=cliques.max_size(),
        merge_rounds=[r.as_dict() for r in info["history"]],
        variables=list(labels),
        blocks=[sorted(c) for c in cliques],
        tree_edges=_tree_edges_json(tree),
    )


def run_pipeline(cfg: PipelineConfig) -> Report:
    strategy = cfg.validate()
    if cfg.input_path is None:
        raise ConfigError("no input path given")
    topology = load_topology(cfg.input_path, cfg.input_format)
    return build_report(topology, cfg.side, strategy, cfg.s_max, cfg.rounds)


def percent_change(new, base) -> Optional[float]:
    """``(new / base - 1)`` in percent, 2 decimals; None when undefined."""
    if base == 0:
        return 0.0 if new == 0 else None
    return round(100.0 * (new / base - 1.0), 2)


def _summary(report: Report) -> dict:
    return {
        "side": report.side,
        "strategy": report.strategy,
        "fill_count": report.fill_count,
        "fill_count_real": report.fill_count_real,
        "nc": report.nc,
        "nlc": report.nlc,
        "max_clique_size": report.max_clique_size,
    }


def compare_reports(a: Report, b: Report) -> dict:
    metrics = ("nc", "nlc", "max_clique_size", "fill_count_real")
    ratios = {m: percent_change(getattr(b, m), getattr(a, m)) for m in metrics}
    return {
        "schema": SCHEMA_VERSION,
        "instance": a.instance,
        "a": _summary(a),
        "b": _summary(b),
        "ratios_percent": ratios,
        "ratios_text": {m: format_ratio(v) for m, v in ratios.items()},
    }


def compare(cfg_a: PipelineConfig, cfg_b: PipelineConfig) -> dict:
    """Ratios ``b / a - 1`` (percent) of the two pipelines' metrics."""
    if cfg_a.input_path is None or cfg_b.input_path is None:
        raise ConfigError("no input path given")
    if Path(cfg_a.input_path).resolve() != Path(cfg_b.input_path).resolve():
        raise ConfigError("compared pipelines must target the same instance")
    return compare_reports(run_pipeline(cfg_a), run_pipeline(cfg_b))


def format_ratio(value) -> str:
    return "undefined ratio" if value is None else f"{value:+.2f}%"


def block_structure(report: Report) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "instance": report.instance,
        "variables": report.variables,
        "blocks": report.blocks,
        "separators": report.tree_edges,
    }


def export_blocks(report: Report, path) -> Path:
    """Write the block structure (real-variable blocks and separators) as JSON."""
    path = Path(path)
    path.write_text(json.dumps(block_structure(report), sort_keys=True, indent=2) + "\n")
    return path


def cliques_from_report(report: Report):
    """Rebuild the decomposition objects from a report."""
    cliques = CliqueList(tuple(frozenset(b) for b in report.blocks))
    edges = tuple(
        (e["cliques"][0], e["cliques"][1], frozenset(e["separator"])) for e in report.tree_edges
    )
    return cliques, CliqueTree(len(cliques), edges)
