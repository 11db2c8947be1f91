"""Command-line driver: ``opfcliques {decompose,merge,compare,export}``.

Exit codes: 0 on success, 1 on input errors, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .exceptions import ConfigError, MalformedInput
from .merge import DEFAULT_ROUNDS, DEFAULT_SMAX
from .ordering import STRATEGIES
from .pipeline import SIDES, PipelineConfig, block_structure, compare, run_pipeline

log = logging.getLogger("opfcliques")

ORDER_CHOICES = [s for s in STRATEGIES if s != "given"]


def _common(p: argparse.ArgumentParser, rounds_default: int, with_rounds: bool = True):
    p.add_argument("input", help="MATPOWER .m case or edge-list file")
    p.add_argument("--format", default="auto", choices=["auto", "matpower", "edgelist"],
                   help="input format (default: by extension, .m is MATPOWER)")
    p.add_argument("--side", default="complex", choices=SIDES)
    p.add_argument("--order", default="min_degree", choices=ORDER_CHOICES)
    p.add_argument("--seed", type=int, default=None, help="seed for --order random")
    p.add_argument("--smax", type=int, default=DEFAULT_SMAX, help="merged block size cap")
    if with_rounds:
        p.add_argument("--rounds", type=int, default=rounds_default, help="clique combination rounds")
    p.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opfcliques", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="chordal extension and clique decomposition report")
    _common(p, 0, with_rounds=False)

    p = sub.add_parser("merge", help="decomposition followed by clique combination rounds")
    _common(p, DEFAULT_ROUNDS)

    p = sub.add_parser("compare", help="compare two pipelines on the same instance")
    _common(p, 0)
    p.add_argument("--side-b", default="real", choices=SIDES, help="side of the second pipeline")
    p.add_argument("--order-b", default=None, choices=ORDER_CHOICES,
                   help="ordering of the second pipeline (default: same as --order)")

    p = sub.add_parser("export", help="write the block structure for a downstream SDP")
    _common(p, 0)
    return parser


def _config(args, rounds: int) -> PipelineConfig:
    return PipelineConfig(
        input_path=args.input,
        input_format=args.format,
        side=args.side,
        order=args.order,
        seed=args.seed,
        s_max=args.smax,
        rounds=rounds,
        output=args.output,
    )


def _emit(payload: dict, output):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "decompose":
            report = run_pipeline(_config(args, 0))
            _emit(report.to_dict(), args.output)
        elif args.command == "merge":
            report = run_pipeline(_config(args, args.rounds))
            for r in report.merge_rounds:
                log.info("round %d: nc=%d nlc=%d max=%d", r["round"], r["nc"], r["nlc"], r["max_block_size"])
            _emit(report.to_dict(), args.output)
        elif args.command == "compare":
            cfg_a = _config(args, args.rounds)
            cfg_b = replace(cfg_a, side=args.side_b, order=args.order_b or args.order)
            result = compare(cfg_a, cfg_b)
            for metric, text in result["ratios_text"].items():
                log.info("%s: %s", metric, text)
            _emit(result, args.output)
        elif args.command == "export":
            report = run_pipeline(_config(args, args.rounds))
            _emit(block_structure(report), args.output)
    except ConfigError as exc:
        print(f"opfcliques: configuration error: {exc}", file=sys.stderr)
        return 2
    except (MalformedInput, OSError, UnicodeDecodeError) as exc:
        print(f"opfcliques: input error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
