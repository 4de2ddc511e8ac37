"""Two-part recurrent fuzzy network for sequence learning.

The network keeps two recurrent feature vectors:

* the identity vector ``o1`` — running sums of the 1st..n-th powers of the
  first ``T`` samples, frozen afterwards; it is the discriminative signature
  of which sequence is being presented;
* the memory vector ``o3`` — a bank of ``d`` exponential low-pass filters
  with forgetting factors lam_i = i/(i+1); it is a soft sliding window that
  locates the current position inside the sequence.

Both vectors are fuzzified by Gaussian sets. A rule pairs one identity set
with one memory set; its strength is the product of the two memberships.
The output is the activation-weighted mean of the rule weight vectors and
serves as the one-step-ahead sample estimate. While priming (t <= T) the
network consumes true samples; afterwards it runs closed loop, feeding its
previous output back into the memory filters.

State vectors are flat float64 arrays laid out dimension-major:
``o1[k*n + (i-1)]`` is the i-th power sum of input dimension k,
``o3[k*d + (i-1)]`` is memory filter i applied to dimension k.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .config import NetworkConfig
from .errors import (
    DegenerateActivationError,
    DimensionMismatchError,
    EmptyRuleBaseError,
    InvalidSampleError,
    ModeContractError,
)


def as_sample(values, dim: int) -> np.ndarray:
    """Validate and convert one input sample to a float64 vector."""
    x = np.asarray(values, dtype=np.float64)
    if x.shape != (dim,):
        raise InvalidSampleError(f"sample has shape {x.shape}, expected ({dim},)")
    if not np.all(np.isfinite(x)):
        raise InvalidSampleError("sample contains non-finite entries")
    return x


class Mode(enum.Enum):
    PRIMING = "priming"
    AUTONOMOUS = "autonomous"


@dataclass
class FuzzySet:
    """Gaussian set with a shared width per dimension: exp(-||v-c||^2 / w^2)."""

    center: np.ndarray
    width: float

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=np.float64)
        if self.center.ndim != 1 or not np.all(np.isfinite(self.center)):
            raise ValueError("center must be a finite 1-D vector")
        if not self.width > 0:
            raise ValueError("width must be positive")


@dataclass
class Rule:
    """Pairing of one sequence set and one sample set with an output weight."""

    seq_fs: int
    samp_fs: int
    weight: np.ndarray


@dataclass
class NetworkState:
    """Mutable per-episode state: counters, accumulators, filter outputs."""

    t: int
    o1: np.ndarray
    o3: np.ndarray
    last_output: np.ndarray | None
    mode: Mode

    @classmethod
    def fresh(cls, cfg: NetworkConfig) -> "NetworkState":
        return cls(t=0,
                   o1=np.zeros(cfg.n * cfg.dim),
                   o3=np.zeros(cfg.d * cfg.dim),
                   last_output=None,
                   mode=Mode.PRIMING)


def membership(fs: FuzzySet, v) -> float:
    """Gaussian membership of v in fs; 1 exactly at the center.

    May underflow to 0.0 far from the center; the network's own forward pass
    normalizes in log space instead and never loses the ratio information.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != fs.center.shape:
        raise DimensionMismatchError(
            f"vector of length {v.size} vs center of length {fs.center.size}")
    diff = v - fs.center
    return float(np.exp(-(diff @ diff) / (fs.width * fs.width)))


def update_discrimination(state: NetworkState, x, config: NetworkConfig) -> np.ndarray:
    """Accumulate the power features of one priming sample into o1."""
    if state.mode is not Mode.PRIMING:
        raise ModeContractError("the identity accumulators are frozen after priming")
    x = as_sample(x, config.dim)
    backend.impl.accumulate_powers(state.o1, x, config.n)
    return state.o1


def update_memory(state: NetworkState, input) -> np.ndarray:
    """Advance the memory filter bank by one input (true sample or fed-back output)."""
    x = np.asarray(input, dtype=np.float64)
    if x.ndim != 1 or state.o3.size % x.size:
        raise DimensionMismatchError("input length does not divide the memory vector")
    if not np.all(np.isfinite(x)):
        raise InvalidSampleError("input contains non-finite entries")
    d = state.o3.size // x.size
    idx = np.arange(1, d + 1, dtype=np.float64)
    backend.impl.lowpass_update(state.o3, x, idx / (idx + 1.0))
    return state.o3


def normalize(mu) -> np.ndarray:
    """Scale activations to sum to one (the normalization layer)."""
    mu = np.asarray(mu, dtype=np.float64)
    total = mu.sum()
    if not total > 0.0:
        raise DegenerateActivationError("all rule activations are zero")
    return mu / total


class Network:
    """The full network: configuration, fuzzy structure, rules, episode state.

    The structure is stored as stacked arrays (centers, widths, rule index
    pairs, weight matrix); ``seq_sets``/``samp_sets``/``rules`` expose it as
    value objects. Structure grows only through the ``add_*`` methods, used
    by the initialization algorithm.
    """

    def __init__(self, config: NetworkConfig):
        self.config = config
        self.seq_centers = np.empty((0, config.n * config.dim))
        self.seq_inv_w2 = np.empty((0,))
        self.seq_widths = np.empty((0,))
        self.samp_centers = np.empty((0, config.d * config.dim))
        self.samp_inv_w2 = np.empty((0,))
        self.samp_widths = np.empty((0,))
        self.rule_seq = np.empty((0,), dtype=np.intp)
        self.rule_samp = np.empty((0,), dtype=np.intp)
        self.weights = np.empty((0, config.dim))
        self._pairs: set[tuple[int, int]] = set()
        idx = np.arange(1, config.d + 1, dtype=np.float64)
        self.lambdas = idx / (idx + 1.0)
        self.state = NetworkState.fresh(config)

    # -- structure ---------------------------------------------------------

    @property
    def n_seq_sets(self) -> int:
        return self.seq_centers.shape[0]

    @property
    def n_samp_sets(self) -> int:
        return self.samp_centers.shape[0]

    @property
    def n_rules(self) -> int:
        return self.rule_seq.shape[0]

    @property
    def seq_sets(self) -> list[FuzzySet]:
        return [FuzzySet(c.copy(), float(w))
                for c, w in zip(self.seq_centers, self.seq_widths)]

    @property
    def samp_sets(self) -> list[FuzzySet]:
        return [FuzzySet(c.copy(), float(w))
                for c, w in zip(self.samp_centers, self.samp_widths)]

    @property
    def rules(self) -> list[Rule]:
        return [Rule(int(s), int(m), w.copy())
                for s, m, w in zip(self.rule_seq, self.rule_samp, self.weights)]

    def add_seq_set(self, center, width: float | None = None) -> int:
        width = self.config.sigma1 if width is None else float(width)
        c = np.asarray(center, dtype=np.float64)
        if c.shape != (self.config.n * self.config.dim,):
            raise DimensionMismatchError("sequence-set center has wrong length")
        self.seq_centers = np.vstack([self.seq_centers, c])
        self.seq_widths = np.append(self.seq_widths, width)
        self.seq_inv_w2 = np.append(self.seq_inv_w2, 1.0 / (width * width))
        return self.n_seq_sets - 1

    def add_samp_set(self, center, width: float | None = None) -> int:
        width = self.config.sigma2 if width is None else float(width)
        c = np.asarray(center, dtype=np.float64)
        if c.shape != (self.config.d * self.config.dim,):
            raise DimensionMismatchError("sample-set center has wrong length")
        self.samp_centers = np.vstack([self.samp_centers, c])
        self.samp_widths = np.append(self.samp_widths, width)
        self.samp_inv_w2 = np.append(self.samp_inv_w2, 1.0 / (width * width))
        return self.n_samp_sets - 1

    def add_rule(self, seq_fs: int, samp_fs: int, weight) -> int:
        if not (0 <= seq_fs < self.n_seq_sets and 0 <= samp_fs < self.n_samp_sets):
            raise IndexError("rule refers to a fuzzy set that does not exist")
        if (seq_fs, samp_fs) in self._pairs:
            raise ValueError(f"rule ({seq_fs}, {samp_fs}) already exists")
        w = as_sample(weight, self.config.dim)
        self.rule_seq = np.append(self.rule_seq, seq_fs)
        self.rule_samp = np.append(self.rule_samp, samp_fs)
        self.weights = np.vstack([self.weights, w])
        self._pairs.add((seq_fs, samp_fs))
        return self.n_rules - 1

    def has_rule(self, seq_fs: int, samp_fs: int) -> bool:
        return (seq_fs, samp_fs) in self._pairs

    # -- distances and memberships ------------------------------------------

    def seq_log_strengths(self, v: np.ndarray) -> np.ndarray:
        """Scaled squared distances of v to the sequence-set centers."""
        return backend.impl.sq_distances(self.seq_centers, self.seq_inv_w2, v)

    def samp_log_strengths(self, v: np.ndarray) -> np.ndarray:
        return backend.impl.sq_distances(self.samp_centers, self.samp_inv_w2, v)

    def seq_memberships(self, v: np.ndarray) -> np.ndarray:
        return np.exp(-self.seq_log_strengths(v))

    def samp_memberships(self, v: np.ndarray) -> np.ndarray:
        return np.exp(-self.samp_log_strengths(v))

    # -- forward pass --------------------------------------------------------

    def forward(self) -> tuple[np.ndarray, np.ndarray]:
        """(phi, y) for the current state; does not advance the state."""
        if self.n_rules == 0:
            raise EmptyRuleBaseError("network has no rules")
        z1 = self.seq_log_strengths(self.state.o1)
        z2 = self.samp_log_strengths(self.state.o3)
        phi = backend.impl.phi_from_rules(z1, z2, self.rule_seq, self.rule_samp)
        return phi, phi @ self.weights

    def step(self, external_input=None) -> np.ndarray:
        """Advance one time step and return the next-sample estimate.

        While priming an input sample is required and drives both recurrent
        vectors; once autonomous, input must be absent and the memory runs
        on the previous output. The mode flips exactly once, after the T-th
        priming sample.
        """
        st = self.state
        cfg = self.config
        if st.mode is Mode.PRIMING:
            if external_input is None:
                raise ModeContractError("priming mode requires an input sample")
            x = as_sample(external_input, cfg.dim)
            st.t += 1
            backend.impl.accumulate_powers(st.o1, x, cfg.n)
            backend.impl.lowpass_update(st.o3, x, self.lambdas)
            if st.t >= cfg.T:
                st.mode = Mode.AUTONOMOUS
        else:
            if external_input is not None:
                raise ModeContractError("autonomous mode accepts no input")
            st.t += 1
            backend.impl.lowpass_update(st.o3, st.last_output, self.lambdas)
        phi, y = self.forward()
        st.last_output = y
        return y

    def reset_episode(self) -> None:
        """Zero the recurrent state; structure and weights are untouched."""
        self.state = NetworkState.fresh(self.config)

    # -- internals shared with the learning algorithms -----------------------

    def prime_update(self, x: np.ndarray) -> None:
        """State-only priming step (no forward pass)."""
        backend.impl.accumulate_powers(self.state.o1, x, self.config.n)
        backend.impl.lowpass_update(self.state.o3, x, self.lambdas)
        self.state.t += 1

    def memory_update(self, v: np.ndarray) -> None:
        backend.impl.lowpass_update(self.state.o3, v, self.lambdas)


def fire_rules(net) -> np.ndarray:
    """Raw rule activations mu_i for the current state (product T-norm).

    Values may underflow to zero far from every set; :func:`normalize`
    rejects the all-zero vector while ``Network.forward`` works on exponents
    directly and is immune.
    """
    if net.n_rules == 0:
        raise EmptyRuleBaseError("network has no rules")
    z1 = net.seq_log_strengths(net.state.o1)
    z2 = net.samp_log_strengths(net.state.o3)
    return np.exp(-(z1[net.rule_seq] + z2[net.rule_samp]))


def output(net, phi) -> np.ndarray:
    """Convex combination of the rule weights under normalized strengths phi."""
    phi = np.asarray(phi, dtype=np.float64)
    if phi.shape != (net.n_rules,):
        raise DimensionMismatchError("phi length does not match the rule count")
    return phi @ net.weights
