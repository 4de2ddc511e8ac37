"""Locator-only comparator network.

Same memory filters, sample fuzzy sets, normalization, output layer and
switch behavior as :class:`seqfnn.network.Network`, but with the sequence
identity pathway removed: a rule is just a sample set with a weight, so the
firing strength is the sample-set membership alone. Two sequences whose
recent history looks the same are therefore indistinguishable to it — which
is exactly the failure the full network exists to fix.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .backend import pure
from .config import NetworkConfig, TuneConfig
from .errors import (
    DimensionMismatchError,
    EmptyRuleBaseError,
    ModeContractError,
)
from .network import Mode, NetworkState, as_sample
from .structure import InitReport, TrainingSequence, _check_sequences, _membership_row
from .tuning import TuneReport, fine_tune


class BaselineNetwork:
    """Self-organizing fuzzy network without the sequence identifier."""

    def __init__(self, config: NetworkConfig):
        self.config = config
        self.samp_centers = np.empty((0, config.d * config.dim))
        self.samp_inv_w2 = np.empty((0,))
        self.samp_widths = np.empty((0,))
        self.rule_samp = np.empty((0,), dtype=np.intp)
        self.weights = np.empty((0, config.dim))
        idx = np.arange(1, config.d + 1, dtype=np.float64)
        self.lambdas = idx / (idx + 1.0)
        self.state = self._fresh_state()
        # Dummy zero-distance "identity" slot so the rule kernels are shared.
        self._z_none = np.zeros(1)
        self._rule_none = np.empty((0,), dtype=np.intp)

    def _fresh_state(self) -> NetworkState:
        return NetworkState(t=0, o1=np.zeros(0),
                            o3=np.zeros(self.config.d * self.config.dim),
                            last_output=None, mode=Mode.PRIMING)

    @property
    def n_samp_sets(self) -> int:
        return self.samp_centers.shape[0]

    @property
    def n_rules(self) -> int:
        return self.rule_samp.shape[0]

    def add_samp_set(self, center, width: float | None = None) -> int:
        width = self.config.sigma2 if width is None else float(width)
        c = np.asarray(center, dtype=np.float64)
        if c.shape != (self.config.d * self.config.dim,):
            raise DimensionMismatchError("sample-set center has wrong length")
        self.samp_centers = np.vstack([self.samp_centers, c])
        self.samp_widths = np.append(self.samp_widths, width)
        self.samp_inv_w2 = np.append(self.samp_inv_w2, 1.0 / (width * width))
        return self.n_samp_sets - 1

    def add_rule(self, samp_fs: int, weight) -> int:
        if not 0 <= samp_fs < self.n_samp_sets:
            raise IndexError("rule refers to a sample set that does not exist")
        self.rule_samp = np.append(self.rule_samp, samp_fs)
        self.weights = np.vstack([self.weights, as_sample(weight, self.config.dim)])
        self._rule_none = np.zeros(self.n_rules, dtype=np.intp)
        return self.n_rules - 1

    def samp_log_strengths(self, v: np.ndarray) -> np.ndarray:
        return backend.impl.sq_distances(self.samp_centers, self.samp_inv_w2, v)

    def samp_memberships(self, v: np.ndarray) -> np.ndarray:
        return np.exp(-self.samp_log_strengths(v))

    def forward(self) -> tuple[np.ndarray, np.ndarray]:
        if self.n_rules == 0:
            raise EmptyRuleBaseError("baseline network has no rules")
        z2 = self.samp_log_strengths(self.state.o3)
        phi = backend.impl.phi_from_rules(self._z_none, z2,
                                          self._rule_none, self.rule_samp)
        return phi, phi @ self.weights

    def step(self, external_input=None) -> np.ndarray:
        st = self.state
        if st.mode is Mode.PRIMING:
            if external_input is None:
                raise ModeContractError("priming mode requires an input sample")
            x = as_sample(external_input, self.config.dim)
            st.t += 1
            backend.impl.lowpass_update(st.o3, x, self.lambdas)
            if st.t >= self.config.T:
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
        self.state = self._fresh_state()

    def prime_update(self, x: np.ndarray) -> None:
        backend.impl.lowpass_update(self.state.o3, x, self.lambdas)
        self.state.t += 1

    def memory_update(self, v: np.ndarray) -> None:
        backend.impl.lowpass_update(self.state.o3, v, self.lambdas)


def baseline_initialize(net: BaselineNetwork,
                        sequences: list[TrainingSequence]) -> InitReport:
    """Coverage-driven growth with the sequence-layer branches removed.

    Every added sample set immediately gets its one rule, weighted with the
    next sample; covered samples add nothing (their best-matching set already
    owns a rule). First weights win, as in the full algorithm.
    """
    _check_sequences(net, sequences)
    cfg = net.config
    m0, r0 = net.n_samp_sets, net.n_rules
    traces: list[list[tuple[int, float]]] = []

    for seq in sequences:
        net.reset_episode()
        st = net.state
        samples = seq.samples
        for t in range(cfg.T):
            pure.lowpass_update(st.o3, samples[t], net.lambdas)
        trace: list[tuple[int, float]] = []
        for ti in range(cfg.T, len(seq) - 1):
            pure.lowpass_update(st.o3, samples[ti], net.lambdas)
            memb = _membership_row(net.samp_centers, net.samp_inv_w2, st.o3)
            cov2 = float(memb.sum()) if memb.size else 0.0
            trace.append((ti + 1, cov2))
            if cov2 <= cfg.theta2:
                m_new = net.add_samp_set(st.o3.copy())
                net.add_rule(m_new, samples[ti + 1])
        traces.append(trace)

    return InitReport(
        seq_sets_added=0,
        samp_sets_added=net.n_samp_sets - m0,
        rules_added=net.n_rules - r0,
        coverage_traces=traces,
        bindings=[-1] * len(sequences),
    )


def baseline_fine_tune(net: BaselineNetwork, sequences: list[TrainingSequence],
                       cfg: TuneConfig | None = None) -> TuneReport:
    """Gradual weight fine-tuning restricted to (sample set, weight) rules."""
    return fine_tune(net, sequences, cfg)
