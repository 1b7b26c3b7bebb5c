#!/usr/bin/env python3
"""
Command-line interface of the bandwidth negotiation simulator.

Usage:
    python -m src.app.cli run --config <path.json> --out <dir> [overrides]
    python -m src.app.cli sweep --configs <dir> --out <dir> [overrides]
    python -m src.app.cli plot --metrics <metrics.csv>... --out <chart.png>
    python -m src.app.cli plot --summary <summary.csv> --x n_devices --out <chart.png>
    python -m src.app.cli plot --topology <path.json> --out <chart.png>

Exit codes:
    0  success
    1  invalid configuration
    2  training fault
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..experiments.config_loader import load_config, load_config_dir, parse_config
from ..experiments.experiment import NegotiationExperiment
from ..experiments.results_writer import ResultsWriter
from ..experiments.sweep import SweepRunner
from ..models.errors import InvalidConfigError, TrainingFault
from ..nn.checkpoint import save_pair
from ..services.topology import build_neighbor_graph
from .config import settings, validate_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 1
EXIT_TRAINING_FAULT = 2


def setup_logging(level: Optional[str] = None) -> None:
    """Route log records to stdout with the configured format."""
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format=settings.LOG_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stdout)
        ],
    )


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--devices', type=int, help='Number of devices N')
    parser.add_argument('--channels', type=int, help='Number of subchannels C')
    parser.add_argument('--neighbors', type=int, help='Neighbors per device k')
    parser.add_argument('--alpha', type=float, help='Smoothing factor of the mean action')
    parser.add_argument('--seed', type=int, help='Run seed')
    parser.add_argument('--iterations', type=int, help='Training iterations')
    parser.add_argument('--algo', choices=['mf', 'idql'], help='Learning algorithm')


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "n_devices": args.devices,
        "n_channels": args.channels,
        "n_neighbors": args.neighbors,
        "smoothing": args.alpha,
        "seed": args.seed,
        "iterations": args.iterations,
        "algorithm": args.algo,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Mean-field multi-agent bandwidth negotiation simulator"
    )
    parser.add_argument('--log-level', help='Override LOG_LEVEL')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run one experiment')
    run.add_argument('--config', type=Path, help='SimConfig JSON (defaults if omitted)')
    run.add_argument('--out', type=Path, default=None, help='Output directory')
    run.add_argument('--trace-actions', action='store_true', help='Write actions.csv')
    run.add_argument('--save-networks', action='store_true',
                     help='Write every agent\'s networks to networks/')
    _add_overrides(run)

    sweep = commands.add_parser('sweep', help='Run every config of a directory')
    sweep.add_argument('--configs', type=Path, required=True,
                       help='Directory of SimConfig JSON files')
    sweep.add_argument('--out', type=Path, default=None, help='Output directory')
    sweep.add_argument('--workers', type=int, default=None, help='Parallel runs')
    sweep.add_argument('--trace-actions', action='store_true', help='Write actions.csv per run')
    _add_overrides(sweep)

    plot = commands.add_parser('plot', help='Render charts from CSV outputs')
    source = plot.add_mutually_exclusive_group(required=True)
    source.add_argument('--metrics', type=Path, nargs='+', help='metrics.csv files')
    source.add_argument('--summary', type=Path, help='summary.csv of a sweep')
    source.add_argument('--topology', type=Path, help='SimConfig JSON whose topology is drawn')
    plot.add_argument('--x', default='n_devices', help='Summary column on the x axis')
    plot.add_argument('--out', type=Path, required=True, help='PNG path')

    return parser


def command_run(args: argparse.Namespace) -> int:
    overrides = _overrides(args)
    config = load_config(args.config, overrides) if args.config else parse_config({}, overrides)
    out = args.out or Path(settings.OUTPUT_DIR)

    experiment = NegotiationExperiment(config, record_actions=args.trace_actions)
    try:
        result = experiment.run()
    except TrainingFault as exc:
        logger.error(f"Run aborted: {exc}")
        return EXIT_TRAINING_FAULT

    paths = ResultsWriter(out).write_run(result, out)
    if args.save_networks:
        for agent in experiment.agents:
            save_pair(agent.nets, out / "networks" / f"device_{agent.device_id}.json")
        logger.info(f"Saved networks of {len(experiment.agents)} agents to {out / 'networks'}")
    for kind, path in paths.items():
        logger.info(f"  {kind:10s} -> {path}")
    return EXIT_OK


def command_sweep(args: argparse.Namespace) -> int:
    configs = load_config_dir(args.configs, _overrides(args))
    out = args.out or Path(settings.OUTPUT_DIR)
    logger.info(f"Loaded {len(configs)} configs from {args.configs}")

    result = SweepRunner(out, workers=args.workers, record_actions=args.trace_actions).run(configs)
    for row in result.rows:
        logger.info(
            f"  {row['run']}: status={row['status']} utilization={row['mean_utilization']} "
            f"variance={row['action_variance']}"
        )
    return EXIT_TRAINING_FAULT if result.n_faults else EXIT_OK


def command_plot(args: argparse.Namespace) -> int:
    from ..utils.visualization import ExperimentVisualizer

    visualizer = ExperimentVisualizer()
    if args.metrics:
        visualizer.plot_training_curves(args.metrics, out=args.out)
    elif args.summary:
        visualizer.plot_sweep_summary(args.summary, args.x, out=args.out)
    else:
        config = load_config(args.topology)
        graph = build_neighbor_graph(config.n_devices, config.n_neighbors, config.seed)
        visualizer.plot_topology(graph, out=args.out)
    return EXIT_OK


COMMANDS = {
    "run": command_run,
    "sweep": command_sweep,
    "plot": command_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and return its exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    status = validate_settings()
    for warning in status["warnings"]:
        logger.warning(warning)
    if not status["valid"]:
        logger.error(f"Missing settings: {', '.join(status['missing'])}")
        return EXIT_INVALID_CONFIG

    try:
        return COMMANDS[args.command](args)
    except InvalidConfigError as exc:
        logger.error(str(exc))
        return EXIT_INVALID_CONFIG
    except TrainingFault as exc:
        logger.error(f"Training fault: {exc}")
        return EXIT_TRAINING_FAULT


if __name__ == "__main__":
    sys.exit(main())
