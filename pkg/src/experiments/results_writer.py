"""
CSV and JSON emission of run and sweep results.

All CSV files are UTF-8 with LF line endings; floats use the shortest
representation that round-trips.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from ..models.results import RunResult

logger = logging.getLogger(__name__)

METRICS_COLUMNS = [
    "iteration",
    "mean_loss",
    "utilization",
    "feasible",
    "population_mean_action",
    "epsilon",
]


def metrics_frame(result: RunResult) -> pd.DataFrame:
    """Per-iteration metrics of a run as a DataFrame with the metrics.csv columns."""
    rows = [m.model_dump() for m in result.metrics]
    frame = pd.DataFrame(rows, columns=METRICS_COLUMNS)
    frame["mean_loss"] = frame["mean_loss"].astype("float64")
    return frame


def read_metrics(path: Union[str, Path]) -> pd.DataFrame:
    """Load a metrics.csv written by ResultsWriter."""
    frame = pd.read_csv(path, float_precision="round_trip")
    missing = [c for c in METRICS_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"{path} is missing metrics columns: {missing}")
    return frame


def _write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    return path


class ResultsWriter:
    """Writes the files of single runs and sweeps below an output directory."""

    def __init__(self, output_dir: Union[str, Path]):
        """
        Initialize the writer.

        Args:
            output_dir: Directory receiving all files; created on demand
        """
        self.output_dir = Path(output_dir)

    def write_metrics(self, result: RunResult, run_dir: Optional[Path] = None) -> Path:
        """Write metrics.csv of a run."""
        run_dir = run_dir or self.output_dir
        return _write_csv(metrics_frame(result), run_dir / "metrics.csv")

    def write_actions(self, result: RunResult, run_dir: Optional[Path] = None) -> Optional[Path]:
        """Write actions.csv (one row per iteration) when the run recorded its actions."""
        if result.action_trace is None:
            return None
        run_dir = run_dir or self.output_dir
        n_devices = result.config.n_devices
        frame = pd.DataFrame(result.action_trace, columns=[f"a_{j}" for j in range(n_devices)])
        frame.insert(0, "iteration", range(len(frame)))
        return _write_csv(frame, run_dir / "actions.csv")

    def write_allocation(self, result: RunResult, run_dir: Optional[Path] = None) -> Optional[Path]:
        """Write allocation.csv with the AP's final subchannel ranges when feasible."""
        allocation = result.final_allocation
        if allocation is None or not allocation.feasible:
            return None
        run_dir = run_dir or self.output_dir
        frame = pd.DataFrame(
            [
                {"device": device, "start": start, "stop": stop, "requested": stop - start}
                for device, (start, stop) in sorted(allocation.assignment.items())
            ],
            columns=["device", "start", "stop", "requested"],
        )
        return _write_csv(frame, run_dir / "allocation.csv")

    def write_run(self, result: RunResult, run_dir: Optional[Path] = None) -> Dict[str, Path]:
        """
        Write every file of one run.

        Returns:
            Mapping of file kind to path
        """
        run_dir = Path(run_dir) if run_dir is not None else self.output_dir
        run_dir.mkdir(parents=True, exist_ok=True)
        paths = {"metrics": self.write_metrics(result, run_dir)}

        config_path = run_dir / "config.json"
        config_path.write_text(
            json.dumps(result.config.model_dump(mode="json"), indent=2) + "\n", encoding="utf-8"
        )
        paths["config"] = config_path

        summary_path = run_dir / "summary.json"
        summary_path.write_text(
            json.dumps(
                {
                    "status": result.status,
                    "error": result.error,
                    "summary": result.summary.model_dump() if result.summary else None,
                    "final_requests": result.final_requests,
                },
                indent=2,
            ) + "\n",
            encoding="utf-8",
        )
        paths["summary"] = summary_path

        for kind, path in (
            ("actions", self.write_actions(result, run_dir)),
            ("allocation", self.write_allocation(result, run_dir)),
        ):
            if path is not None:
                paths[kind] = path

        logger.info(f"Wrote {len(paths)} files for run to {run_dir}")
        return paths

    def write_summary(self, rows: List[Dict[str, Any]], columns: List[str]) -> Path:
        """Write summary.csv of a sweep."""
        frame = pd.DataFrame(rows, columns=columns)
        return _write_csv(frame, self.output_dir / "summary.csv")
