"""Adam training of circuit parameters against an encoding loss."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .circuits import Circuit
from .loss import LossSpec
from .simulator import loss_and_gradient

__all__ = ["TrainConfig", "TrainTrace", "StoppingRule", "init_params", "train"]


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    stop_window: int = 50
    stop_threshold: float = 0.01
    relaxed_stopping: bool = False  # stop after `relaxed_patience` non-improving epochs instead
    relaxed_patience: int = 150
    max_epochs: int = 20000
    seed: int = 0


@dataclass
class TrainTrace:
    losses: list = field(default_factory=list)
    best_loss: float = np.inf
    epochs: int = 0
    stopped_early: bool = False
    wall_time: float = 0.0


class StoppingRule:
    """Halts when the running-best loss improved by less than `threshold`
    over the last `window` epochs (or, in relaxed mode, after `patience`
    consecutive epochs without any improvement of the best loss)."""

    def __init__(self, window: int = 50, threshold: float = 0.01,
                 relaxed: bool = False, patience: int = 150):
        if window < 1 or patience < 1:
            raise ValueError("window and patience must be positive")
        self.window = window
        self.threshold = threshold
        self.relaxed = relaxed
        self.patience = patience
        self._best_history: list[float] = []
        self._since_improvement = 0

    def update(self, value: float) -> bool:
        """Record one epoch's loss; True means stop now."""
        best_before = self._best_history[-1] if self._best_history else np.inf
        best = min(best_before, value)
        if best < best_before:
            self._since_improvement = 0
        else:
            self._since_improvement += 1
        self._best_history.append(best)
        if self.relaxed:
            return self._since_improvement >= self.patience
        if len(self._best_history) <= self.window:
            return False
        return self._best_history[-1 - self.window] - best < self.threshold


def init_params(num_params: int, seed: int) -> np.ndarray:
    """Uniform initialization over [0, 2 pi)."""
    return np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, size=num_params)


def train(circuit: Circuit, spec: LossSpec, cfg: TrainConfig = TrainConfig(),
          params0=None) -> tuple[np.ndarray, TrainTrace]:
    """Adam-minimize the loss; returns (best-seen params, trace).

    Deterministic for a fixed (circuit, spec, cfg, params0). Raises
    FloatingPointError naming the epoch if the loss or gradient goes
    non-finite.
    """
    theta = (
        init_params(circuit.num_params, cfg.seed)
        if params0 is None
        else np.array(params0, dtype=np.float64)
    )
    if theta.shape != (circuit.num_params,):
        raise ValueError(f"params0 must have shape ({circuit.num_params},)")

    m1 = np.zeros_like(theta)
    m2 = np.zeros_like(theta)
    stop = StoppingRule(cfg.stop_window, cfg.stop_threshold,
                        cfg.relaxed_stopping, cfg.relaxed_patience)
    trace = TrainTrace()
    best_theta = theta.copy()
    t0 = time.perf_counter()

    for epoch in range(1, cfg.max_epochs + 1):
        value, grad = loss_and_gradient(circuit, theta, spec)
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise FloatingPointError(f"non-finite loss or gradient at epoch {epoch}")
        trace.losses.append(value)
        if value < trace.best_loss:
            trace.best_loss = value
            best_theta = theta.copy()
        if stop.update(value):
            trace.stopped_early = True
            break
        m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * grad
        m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * grad * grad
        hat1 = m1 / (1.0 - cfg.beta1**epoch)
        hat2 = m2 / (1.0 - cfg.beta2**epoch)
        theta = theta - cfg.learning_rate * hat1 / (np.sqrt(hat2) + cfg.epsilon)

    trace.epochs = len(trace.losses)
    trace.wall_time = time.perf_counter() - t0
    return best_theta, trace
