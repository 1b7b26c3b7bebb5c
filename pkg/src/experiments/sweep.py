"""
Parameter sweeps over lists of SimConfig.

Each config runs independently (optionally in a process pool); results keep
the input order. Faulted runs are recorded and the remaining runs continue.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..app.config import settings
from ..models.errors import NegotiationError
from ..models.results import RunResult
from ..models.simulation import SimConfig
from .experiment import run_experiment
from .metrics import normalized_series
from .results_writer import ResultsWriter

logger = logging.getLogger(__name__)

METRIC_COLUMNS = [
    "status",
    "mean_utilization",
    "infeasible_fraction",
    "action_variance",
    "normalized_variance",
    "mean_request",
    "loss_tail",
    "normalized_loss_tail",
    "error",
]


def execute_run(config: SimConfig, record_actions: bool = False) -> RunResult:
    """Run one config, turning simulator errors into a recorded fault."""
    try:
        return run_experiment(config, record_actions=record_actions)
    except NegotiationError as exc:
        logger.warning(f"Run with seed={config.seed} faulted: {exc}")
        return RunResult(config=config, status="fault", error=str(exc))


def varied_parameters(configs: List[SimConfig]) -> List[str]:
    """Config fields whose value differs between at least two configs, in field order."""
    if len(configs) < 2:
        return []
    dumps = [c.model_dump(mode="json") for c in configs]
    return [
        name for name in SimConfig.model_fields
        if len({repr(d[name]) for d in dumps}) > 1
    ]


@dataclass
class SweepResult:
    """Results of a sweep and its comparison table."""
    results: List[RunResult]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    paths: Dict[str, Path] = field(default_factory=dict)

    @property
    def n_faults(self) -> int:
        return sum(1 for r in self.results if not r.succeeded)


class SweepRunner:
    """Runs a list of configs and writes one directory per run plus summary.csv."""

    def __init__(self, output_dir: Union[str, Path], workers: Optional[int] = None,
                 record_actions: bool = False):
        """
        Initialize the runner.

        Args:
            output_dir: Directory receiving run_<i>/ folders and summary.csv
            workers: Process pool size (settings.SWEEP_WORKERS if None; <= 1 runs inline)
            record_actions: Whether every run writes actions.csv
        """
        self.output_dir = Path(output_dir)
        self.workers = settings.SWEEP_WORKERS if workers is None else workers
        self.record_actions = record_actions
        self.writer = ResultsWriter(self.output_dir)

    def _run_all(self, configs: List[SimConfig]) -> List[RunResult]:
        if self.workers <= 1 or len(configs) <= 1:
            return [execute_run(c, self.record_actions) for c in configs]
        logger.info(f"Running {len(configs)} configs on {self.workers} workers")
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(execute_run, configs, [self.record_actions] * len(configs)))

    def summary_table(self, results: List[RunResult]) -> SweepResult:
        """Build the comparison table keyed by the varied parameters."""
        configs = [r.config for r in results]
        keys = varied_parameters(configs)
        for always in ("algorithm", "seed"):
            if always not in keys:
                keys.append(always)

        variances = [r.summary.action_variance if r.summary else 0.0 for r in results]
        loss_tails = [
            r.summary.loss_tail if r.summary and r.summary.loss_tail is not None else 0.0
            for r in results
        ]
        normalized_variance = normalized_series(variances) if results else []
        normalized_loss = normalized_series(loss_tails) if results else []

        rows = []
        for i, result in enumerate(results):
            config = result.config.model_dump(mode="json")
            row: Dict[str, Any] = {"run": f"run_{i:03d}"}
            row.update({key: config[key] for key in keys})
            summary = result.summary
            row.update(
                {
                    "status": result.status,
                    "mean_utilization": summary.mean_utilization if summary else None,
                    "infeasible_fraction": summary.infeasible_fraction if summary else None,
                    "action_variance": summary.action_variance if summary else None,
                    "normalized_variance": normalized_variance[i] if summary else None,
                    "mean_request": summary.mean_request if summary else None,
                    "loss_tail": summary.loss_tail if summary else None,
                    "normalized_loss_tail": normalized_loss[i] if summary else None,
                    "error": result.error,
                }
            )
            rows.append(row)
        return SweepResult(results=results, rows=rows, columns=["run"] + keys + METRIC_COLUMNS)

    def run(self, configs: List[SimConfig]) -> SweepResult:
        """
        Run every config and write per-run files and summary.csv.

        Returns:
            SweepResult with results in input order
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        results = self._run_all(configs)

        sweep = self.summary_table(results)
        for i, result in enumerate(results):
            run_dir = self.output_dir / f"run_{i:03d}"
            files = self.writer.write_run(result, run_dir)
            sweep.paths[f"run_{i:03d}"] = files["metrics"]
        sweep.paths["summary"] = self.writer.write_summary(sweep.rows, sweep.columns)

        if sweep.n_faults:
            logger.warning(f"{sweep.n_faults} of {len(results)} runs faulted")
        logger.info(f"Sweep of {len(results)} runs written to {self.output_dir}")
        return sweep


def sweep(configs: List[SimConfig], output_dir: Union[str, Path],
          workers: Optional[int] = None) -> SweepResult:
    """Run a sweep and write its outputs."""
    return SweepRunner(output_dir, workers=workers).run(configs)
