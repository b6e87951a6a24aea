"""Command-line entry point.

Exit codes: 0 success, 2 usage or input error, 1 internal error.  Results go
to stdout and files; logs go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .baseline import DEFAULT_MAX_STEPS, climb
from .benchgen import BenchSpec, generate
from .extraction import ExtractionError, ExtractOptions, extract_snapshot, seed_previous
from .files import (
    FormatError,
    read_edges,
    read_partition_mapping,
    write_edges,
    write_json,
    write_partition,
    write_trace,
)
from .graph import GraphError, Partition
from .metrics import evaluate, social_welfare
from .mojo import MODES, mojo, u_sta
from .negotiation import IMPROVEMENT_EPS, StepRecord, ThresholdConfig, negotiate
from .sweep import sweep, write_sweep

logger = logging.getLogger("amcp")


class UsageError(Exception):
    pass


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is outside [0, 1]")
    return value


def _tau_list(text: str) -> list[float]:
    values = [_unit_interval(part) for part in text.split(",") if part.strip()]
    if not values:
        raise argparse.ArgumentTypeError("empty tau list")
    return values


def _echo(args: argparse.Namespace) -> dict:
    skip = {"func", "verbose"}
    return {
        "amcp_version": __version__,
        "command": args.command,
        "args": {k: v for k, v in sorted(vars(args).items()) if k not in skip},
    }


def _load_instance(edges_path, previous_path):
    graph = read_edges(edges_path)
    mapping = read_partition_mapping(previous_path)
    restriction, previous = seed_previous(graph, mapping)
    seeded = graph.n - restriction.n_common
    if seeded:
        logger.info("seeded %d module(s) missing from %s", seeded, previous_path)
    return graph, restriction, previous


def cmd_extract(args) -> int:
    options = ExtractOptions(merge_nested=not args.keep_nested, weighted=args.weighted)
    snapshot = extract_snapshot(args.input, options, label=args.label or "")
    prefix = args.output
    write_edges(f"{prefix}.edges.csv", snapshot.graph)
    packages = snapshot.packages
    with open(f"{prefix}.packages.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("module,cluster\n")
        for name, label in zip(snapshot.graph.modules, snapshot.package_partition.assignment):
            fh.write(f"{name},{packages[label] or '(default)'}\n")
    write_json(f"{prefix}.manifest.json", {**snapshot.manifest, "config": _echo(args)})
    print(f"{snapshot.graph.n} modules {len(snapshot.graph.edges)} edges {snapshot.package_partition.k} packages")
    return 0


def cmd_negotiate(args) -> int:
    graph, restriction, previous = _load_instance(args.edges, args.previous)
    config = ThresholdConfig(args.tau_sta, args.tau_coh)
    result = negotiate(graph, previous, restriction, config, args.mode)
    prefix = args.output
    write_partition(f"{prefix}.partition.csv", graph.modules, result.final_partition)
    write_trace(args.trace or f"{prefix}.trace.csv", graph.modules, result.trace)
    payload = result.to_json(graph.modules)
    payload["n_common"] = restriction.n_common
    payload["config_echo"] = _echo(args)
    write_json(f"{prefix}.result.json", payload)
    print(f"{result.final_u_coh:.6f} {result.final_u_sta:.6f} {result.final_sw:.6f} {result.steps} {result.termination}")
    return 0


def cmd_sweep(args) -> int:
    graph, restriction, previous = _load_instance(args.edges, args.previous)
    rows, reference = sweep(graph, previous, restriction, args.tau_sta, args.tau_coh, args.mode, args.threads)
    write_sweep(args.output, rows)
    sidecar = {
        "reference": {
            "tau_sta": 0.0,
            "u_coh": reference.final_u_coh,
            "u_sta": reference.final_u_sta,
            "sw": reference.final_sw,
            "steps": reference.steps,
            "termination": reference.termination,
        },
        "config_echo": _echo(args),
    }
    write_json(str(Path(args.output).with_suffix(".json")), sidecar)
    for row in rows:
        print(f"{row.tau_sta} {row.u_coh:.6f} {row.u_sta:.6f} {row.sw:.6f} {row.steps} {'yes' if row.diverged else 'no'}")
    return 0


def cmd_baseline(args) -> int:
    graph, restriction, start = _load_instance(args.edges, args.start)
    initial = evaluate(graph, start, start, restriction, args.mode)
    trace = []
    prev_coh, prev_sta = initial.u_coh, initial.u_sta
    final = start
    for step, (move, partition, _) in enumerate(climb(graph, start, args.max_steps), start=1):
        m = evaluate(graph, partition, start, restriction, args.mode)
        gain = m.u_coh - prev_coh
        ratio = (prev_sta - m.u_sta) / gain if gain > IMPROVEMENT_EPS else math.nan
        trace.append(StepRecord(step, move, m.u_coh, m.u_sta, ratio, m.sw, 0))
        prev_coh, prev_sta, final = m.u_coh, m.u_sta, partition
    prefix = args.output
    write_partition(f"{prefix}.partition.csv", graph.modules, final)
    write_trace(f"{prefix}.trace.csv", graph.modules, trace)
    write_json(
        f"{prefix}.result.json",
        {
            "steps": len(trace),
            "initial": {"u_coh": initial.u_coh, "u_sta": initial.u_sta, "turbomq": initial.turbomq},
            "final": {"u_coh": prev_coh, "u_sta": prev_sta, "sw": social_welfare(prev_coh, prev_sta)},
            "final_partition": final.to_mapping(graph.modules),
            "config_echo": _echo(args),
        },
    )
    print(f"{prev_coh:.6f} {prev_sta:.6f} {social_welfare(prev_coh, prev_sta):.6f} {len(trace)}")
    return 0


def cmd_mojo(args) -> int:
    a = read_partition_mapping(args.a)
    b = read_partition_mapping(args.b)
    if set(a) != set(b):
        raise UsageError("partitions cover different module sets")
    modules = sorted(a)
    pa = Partition.from_mapping(modules, a)
    pb = Partition.from_mapping(modules, b)
    distance = mojo(pa, pb, args.mode)
    print(f"{distance} {u_sta(pa, pb, len(modules), args.mode):.4f}")
    return 0


def cmd_gen(args) -> int:
    try:
        spec = BenchSpec(args.n, args.blocks, args.p_in, args.p_out, args.perturb, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    graph, truth, previous = generate(spec)
    prefix = args.output
    write_edges(f"{prefix}.edges.csv", graph)
    write_partition(f"{prefix}.truth.csv", graph.modules, truth)
    write_partition(f"{prefix}.previous.csv", graph.modules, previous)
    write_json(f"{prefix}.spec.json", {"generator": "amcp.benchgen", "spec": spec.to_json()})
    print(f"{graph.n} modules {len(graph.edges)} edges")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)")
    common.add_argument("--threads", type=int, default=1, help="worker cap for parallel runs (default 1)")

    parser = argparse.ArgumentParser(prog="amcp", description="Negotiated module clustering under a stability budget.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="build a dependency graph from class files or a JAR")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.add_argument("--keep-nested", action="store_true", help="keep Outer$Inner as separate modules")
    p.add_argument("--weighted", action="store_true", help="weight edges by referencing class files")
    p.add_argument("--label", help="version label for the manifest")
    p.set_defaults(func=cmd_extract)

    def instance(p, start_name="--previous"):
        p.add_argument("--edges", required=True, help="edge-list CSV")
        p.add_argument(start_name, required=True, help="partition CSV (module,cluster)")
        p.add_argument("--mode", choices=MODES, default="min", help="MoJo direction")

    p = sub.add_parser("negotiate", parents=[common], help="run one negotiation")
    instance(p)
    p.add_argument("--tau-sta", type=_unit_interval, required=True)
    p.add_argument("--tau-coh", type=_unit_interval, required=True)
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.add_argument("--trace", help="trace CSV path (default <prefix>.trace.csv)")
    p.set_defaults(func=cmd_negotiate)

    p = sub.add_parser("sweep", parents=[common], help="sweep the stability budget")
    instance(p)
    p.add_argument("--tau-sta", type=_tau_list, required=True, help="comma-separated budgets")
    p.add_argument("--tau-coh", type=_unit_interval, required=True)
    p.add_argument("-o", "--output", required=True, help="sweep CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("baseline", parents=[common], help="TurboMQ hill climbing from a start partition")
    instance(p, "--start")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("mojo", parents=[common], help="MoJo distance between two partition files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", choices=MODES, default="min")
    p.set_defaults(func=cmd_mojo)

    p = sub.add_parser("gen", parents=[common], help="generate a synthetic block benchmark")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--perturb", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except (UsageError, FormatError, GraphError, ExtractionError, ValueError) as exc:
        print(f"amcp {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception("internal error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
