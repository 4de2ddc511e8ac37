"""Hyperparameter bundles for the network and its two learning phases.

``NetworkConfig`` carries everything a network needs to be built plus the
learning constants that the experiment tables expose as one block:

    dim      input dimensionality of one sample
    T        number of priming samples consumed before autonomous mode
    d        number of low-pass memory filters (d <= T)
    n        polynomial order of the identity accumulators
    sigma1   width of the sequence fuzzy sets (identity space)
    sigma2   width of the sample fuzzy sets (memory space)
    theta1   coverage threshold for adding a sequence fuzzy set
    theta2   coverage threshold for adding a sample fuzzy set
    theta3   per-sample squared-error target of fine-tuning
    iter_max cap on fine-tuning passes and on inner iterations per sample
    eta0     initial fine-tuning step
    beta     per-iteration step discount, in (0, 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class NetworkConfig:
    dim: int
    T: int
    d: int
    n: int
    sigma1: float
    sigma2: float
    theta1: float
    theta2: float
    theta3: float = 0.01
    iter_max: int = 20
    eta0: float = 0.1
    beta: float = 0.99

    def __post_init__(self):
        _require(self.dim >= 1, "dim must be a positive integer")
        _require(self.T >= 1, "T must be a positive integer")
        _require(self.d >= 1, "d must be a positive integer")
        _require(self.d <= self.T, "d must not exceed T")
        _require(self.n >= 1, "n must be a positive integer")
        _require(self.sigma1 > 0 and math.isfinite(self.sigma1), "sigma1 must be positive")
        _require(self.sigma2 > 0 and math.isfinite(self.sigma2), "sigma2 must be positive")
        _require(0.0 < self.theta1 < 1.0, "theta1 must lie in (0, 1)")
        _require(0.0 < self.theta2 < 1.0, "theta2 must lie in (0, 1)")
        _require(self.theta3 > 0, "theta3 must be positive")
        _require(self.iter_max >= 1, "iter_max must be a positive integer")
        _require(self.eta0 > 0, "eta0 must be positive")
        _require(0.0 < self.beta < 1.0, "beta must lie in (0, 1)")

    @classmethod
    def from_table(cls, dim: int, *, iter_max: int, theta1: float, theta2: float,
                   theta3: float, sigma: float, T: int, d: int, n: int,
                   eta0: float = 0.1, beta: float = 0.99) -> "NetworkConfig":
        """Build a config from one experiment-table row (single sigma)."""
        return cls(dim=dim, T=T, d=d, n=n, sigma1=sigma, sigma2=sigma,
                   theta1=theta1, theta2=theta2, theta3=theta3,
                   iter_max=iter_max, eta0=eta0, beta=beta)


@dataclass(frozen=True)
class TuneConfig:
    """Fine-tuning constants; ``inner_iter_max`` defaults to ``iter_max``.

    The same cap bounds both the number of tuning passes over a sequence
    and the number of weight iterations spent on one sample; they can be
    decoupled here.
    """

    eta0: float = 0.1
    beta: float = 0.99
    theta3: float = 0.01
    iter_max: int = 20
    inner_iter_max: int | None = None

    def __post_init__(self):
        _require(self.eta0 > 0, "eta0 must be positive")
        _require(0.0 < self.beta < 1.0, "beta must lie in (0, 1)")
        _require(self.theta3 > 0, "theta3 must be positive")
        _require(self.iter_max >= 1, "iter_max must be a positive integer")
        if self.inner_iter_max is not None:
            _require(self.inner_iter_max >= 1, "inner_iter_max must be positive")

    @property
    def inner_cap(self) -> int:
        return self.iter_max if self.inner_iter_max is None else self.inner_iter_max

    @classmethod
    def from_network(cls, cfg: NetworkConfig) -> "TuneConfig":
        return cls(eta0=cfg.eta0, beta=cfg.beta, theta3=cfg.theta3,
                   iter_max=cfg.iter_max)
