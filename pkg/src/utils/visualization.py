"""
Negotiation Experiment Visualization Module

This module renders static charts from the CSV files written by the harness:
training curves of single runs, sweep comparisons against the varied
parameter and the neighbor topology of a configuration.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402
import pandas as pd  # noqa: E402

from ..experiments.metrics import normalized_series  # noqa: E402
from ..experiments.results_writer import read_metrics  # noqa: E402
from ..models.simulation import NeighborGraph  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ExperimentVisualizer:
    """
    Draws experiment charts and optionally saves them as PNG files.

    Every ``plot_*`` method returns the matplotlib Figure. Figures saved to a
    path are closed afterwards; they can still be inspected or saved again but
    no longer hold pyplot state. Unsaved figures stay open for the caller.
    """

    def __init__(self, dpi: int = 100, rolling_window: int = 50):
        """
        Initialize the visualizer.

        Args:
            dpi: Resolution of saved images
            rolling_window: Window of the moving average drawn over noisy curves
        """
        self.dpi = dpi
        self.rolling_window = rolling_window
        self.algorithm_colors = {
            "MeanField": "#1f77b4",
            "IDQL": "#d62728",
        }

    def _save(self, fig: plt.Figure, out: Optional[PathLike]) -> None:
        if out is None:
            return
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, format="png", dpi=self.dpi, bbox_inches="tight")
        plt.close(fig)
        logger.info(f"Saved chart to {out}")

    def plot_training_curves(
        self,
        metrics_paths: Sequence[PathLike],
        labels: Optional[Sequence[str]] = None,
        out: Optional[PathLike] = None,
    ) -> plt.Figure:
        """
        Utilization, normalized loss and epsilon over iterations for one or more runs.

        Args:
            metrics_paths: metrics.csv files
            labels: Legend labels (parent directory names if None)
            out: Optional PNG path

        Returns:
            The Figure
        """
        labels = list(labels) if labels else [Path(p).parent.name or str(p) for p in metrics_paths]
        fig, (ax_util, ax_loss, ax_eps) = plt.subplots(3, 1, figsize=(10, 10), sharex=True)

        for path, label in zip(metrics_paths, labels):
            frame = read_metrics(path)
            smoothed = frame["utilization"].rolling(self.rolling_window, min_periods=1).mean()
            ax_util.plot(frame["iteration"], smoothed, label=label)

            losses = frame[["iteration", "mean_loss"]].dropna()
            if not losses.empty:
                normalized = normalized_series(losses["mean_loss"].tolist())
                curve = pd.Series(normalized).rolling(self.rolling_window, min_periods=1).mean()
                ax_loss.plot(losses["iteration"], curve, label=label)

            ax_eps.plot(frame["iteration"], frame["epsilon"], label=label)

        ax_util.set_ylabel("Channel utilization")
        ax_util.set_ylim(0.0, 1.05)
        ax_loss.set_ylabel("Normalized loss")
        ax_eps.set_ylabel("Epsilon")
        ax_eps.set_xlabel("Iteration")
        ax_util.legend(loc="lower right")
        ax_util.set_title("Training progress")
        for ax in (ax_util, ax_loss, ax_eps):
            ax.grid(alpha=0.3)

        self._save(fig, out)
        return fig

    def plot_sweep_summary(
        self,
        summary_path: PathLike,
        x: str,
        out: Optional[PathLike] = None,
    ) -> plt.Figure:
        """
        Final-window utilization and normalized variance against a varied parameter.

        Rows are grouped by algorithm; repeated seeds are reduced to their median.

        Args:
            summary_path: summary.csv of a sweep
            x: Column holding the varied parameter (e.g. n_devices, smoothing)
            out: Optional PNG path
        """
        frame = pd.read_csv(summary_path)
        if x not in frame.columns:
            raise ValueError(f"Column {x} not found in {summary_path}")
        frame = frame[frame["status"] == "ok"]
        if "algorithm" not in frame.columns:
            frame = frame.assign(algorithm="MeanField")

        fig, (ax_util, ax_var) = plt.subplots(1, 2, figsize=(12, 5))
        for algorithm, group in frame.groupby("algorithm"):
            medians = group.groupby(x)[["mean_utilization", "normalized_variance"]].median()
            color = self.algorithm_colors.get(algorithm)
            ax_util.plot(medians.index, medians["mean_utilization"], marker="o",
                         color=color, label=algorithm)
            ax_var.plot(medians.index, medians["normalized_variance"], marker="s",
                        color=color, label=algorithm)

        ax_util.set_xlabel(x)
        ax_util.set_ylabel("Final-window utilization")
        ax_util.set_ylim(0.0, 1.05)
        ax_var.set_xlabel(x)
        ax_var.set_ylabel("Normalized variance of mean request")
        for ax in (ax_util, ax_var):
            ax.grid(alpha=0.3)
            ax.legend()

        self._save(fig, out)
        return fig

    def plot_topology(self, graph: NeighborGraph, out: Optional[PathLike] = None) -> plt.Figure:
        """Draw the neighbor graph on a circle in device-id order."""
        g = graph.to_networkx()
        fig, ax = plt.subplots(figsize=(8, 8))
        pos = nx.circular_layout(sorted(g.nodes))
        node_size = max(20, 600 // max(1, graph.n_devices // 10))
        nx.draw_networkx_nodes(g, pos, node_size=node_size, node_color="#86CEFA", ax=ax)
        nx.draw_networkx_edges(g, pos, alpha=0.3, arrows=False, ax=ax)
        if graph.n_devices <= 40:
            nx.draw_networkx_labels(g, pos, font_size=8, ax=ax)
        ax.set_title(f"Neighbor topology: N={graph.n_devices}, k={graph.n_neighbors}")
        ax.axis("off")

        self._save(fig, out)
        return fig
