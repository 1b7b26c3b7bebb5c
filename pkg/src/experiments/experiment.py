"""
Training loop of the distributed bandwidth negotiation.

Each iteration is one synchronous negotiation round followed by one training
step per agent:

1. every agent requests bandwidth with its epsilon-greedy policy, conditioned
   on the mean action it held at the end of the previous round;
2. every agent observes its neighbors' requests and soft-updates its mean action;
3. the AP evaluates the joint request and broadcasts the shared reward;
4. every agent stores the transition and trains on a replay batch.

Agents act before the environment steps and train only after it has stepped.
A run is a pure function of its SimConfig.
"""

import logging
from typing import List, Optional

import numpy as np

from ..agents.factory import create_population
from ..app.config import settings
from ..models.errors import TrainingFault
from ..models.results import IterationMetrics, RunResult
from ..models.simulation import SimConfig
from ..services.environment import NegotiationEnvironment, allocate_channels, utilization
from ..services.mean_field import (
    empirical_mean_action,
    mean_requested_bandwidth,
    population_mean_actions,
    soft_update_mean,
)
from ..services.topology import build_neighbor_graph, sample_action_spaces
from .metrics import epsilon_schedule, summarize_window

logger = logging.getLogger(__name__)


class NegotiationExperiment:
    """
    One run of the negotiation: topology, action spaces, agents and metrics.

    The "until converged" loop of the training procedure is a fixed budget of
    ``config.iterations`` rounds.
    """

    def __init__(self, config: SimConfig, record_actions: bool = False,
                 progress_interval: Optional[int] = None):
        """
        Initialize the run.

        Args:
            config: Run configuration
            record_actions: Whether to keep the joint action of every iteration
            progress_interval: Iterations between progress log lines
                (settings.PROGRESS_INTERVAL if None, 0 disables)
        """
        self.config = config
        self.graph = build_neighbor_graph(config.n_devices, config.n_neighbors, config.seed)
        self.spaces = sample_action_spaces(config.n_devices, config.action_mode, config.seed)
        self.environment = NegotiationEnvironment(self.spaces, config.n_channels)
        self.agents = create_population(self.spaces, config)
        self.metrics: List[IterationMetrics] = []
        self.action_trace: Optional[List[List[int]]] = [] if record_actions else None
        self.last_actions: Optional[np.ndarray] = None
        self.progress_interval = (
            settings.PROGRESS_INTERVAL if progress_interval is None else progress_interval
        )
        self._neighbor_matrix = self.graph.neighbor_matrix()

    def epsilon(self, iteration: int) -> float:
        """Exploration rate of an iteration; epsilon_end from exploration_iterations on."""
        c = self.config
        return epsilon_schedule(
            iteration, c.exploration_iterations, c.epsilon_start, c.epsilon_end
        )

    def negotiate(self, epsilon: float) -> np.ndarray:
        """Collect one request from every agent."""
        return np.array([agent.act(epsilon) for agent in self.agents], dtype=np.int64)

    def train_agents(self) -> List[float]:
        """One training step per agent; returns the losses of agents that trained."""
        c = self.config
        losses = []
        for agent in self.agents:
            loss = agent.train(c.discount, c.target_rate, c.batch_size)
            if loss is not None:
                losses.append(loss)
        return losses

    def run_iteration(self, iteration: int) -> IterationMetrics:
        """
        Execute one negotiation round and one training step per agent.

        Raises:
            TrainingFault: With the iteration and device id filled in
        """
        c = self.config
        epsilon = self.epsilon(iteration)
        actions = self.negotiate(epsilon)

        observed = population_mean_actions(actions, self._neighbor_matrix)
        reward, observations = self.environment.step(actions)
        for agent, action, obs, mean in zip(self.agents, actions, observations, observed):
            next_mean = soft_update_mean(agent.mean_iterate, mean, c.smoothing)
            agent.observe(int(action), reward, obs, next_mean)

        try:
            losses = self.train_agents()
        except TrainingFault as exc:
            exc.iteration = iteration
            logger.error(f"Training fault: {exc}")
            raise

        rate, feasible = utilization(actions, c.n_channels)
        record = IterationMetrics(
            iteration=iteration,
            mean_loss=float(np.mean(losses)) if losses else None,
            utilization=rate,
            feasible=feasible,
            population_mean_action=mean_requested_bandwidth(empirical_mean_action(actions)),
            epsilon=epsilon,
        )
        self.metrics.append(record)
        self.last_actions = actions
        if self.action_trace is not None:
            self.action_trace.append(actions.tolist())

        if self.progress_interval and (iteration + 1) % self.progress_interval == 0:
            loss_text = f"{record.mean_loss:.6f}" if record.mean_loss is not None else "n/a"
            logger.info(
                f"[{c.algorithm.value} N={c.n_devices} k={c.n_neighbors} seed={c.seed}] "
                f"iteration {iteration + 1}/{c.iterations}: eps={epsilon:.3f} "
                f"utilization={rate:.4f} feasible={feasible} loss={loss_text}"
            )
        return record

    def run(self) -> RunResult:
        """Run every iteration and assemble the result."""
        c = self.config
        logger.info(
            f"Starting {c.algorithm.value} run: N={c.n_devices}, C={c.n_channels}, "
            f"k={c.n_neighbors}, alpha={c.smoothing}, iterations={c.iterations}, seed={c.seed}"
        )
        for iteration in range(c.iterations):
            self.run_iteration(iteration)
        return self.result()

    def result(self) -> RunResult:
        """Result of the iterations executed so far."""
        final_requests = self.last_actions.tolist() if self.last_actions is not None else []
        summary = summarize_window(self.metrics, self.config.window)
        if summary is not None:
            logger.info(
                f"Final window: utilization={summary.mean_utilization:.4f}, "
                f"infeasible={summary.infeasible_fraction:.3f}, "
                f"variance={summary.action_variance:.6f}"
            )
        return RunResult(
            config=self.config,
            metrics=self.metrics,
            summary=summary,
            final_requests=final_requests,
            final_allocation=(
                allocate_channels(final_requests, self.config.n_channels)
                if final_requests else None
            ),
            action_trace=self.action_trace,
        )


def run_experiment(config: SimConfig, record_actions: bool = False) -> RunResult:
    """
    Run the full training procedure for one configuration.

    Raises:
        TrainingFault: If parameters become non-finite
    """
    return NegotiationExperiment(config, record_actions=record_actions).run()
