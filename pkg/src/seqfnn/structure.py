"""Coverage-driven structure initialization.

One pass over each correct training sequence grows the fuzzy structure:

* after priming, if the identity vector is not covered by the existing
  sequence sets (membership sum <= theta1), a sequence set is centered on it;
* walking the remaining samples with the memory driven by true inputs, any
  memory state not covered by the sample sets (sum <= theta2) becomes a new
  sample set, paired with the current sequence set into a rule whose weight
  is the next sample;
* independently of that, every step pairs the current sequence set with the
  best-matching sample set if that rule is still missing.

Weights of existing rules are never refreshed and nothing is ever removed.

This module computes all coverage decisions with the NumPy kernels directly
(not the switchable backend) so that the learned structure does not depend
on which backend is installed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .backend import pure
from .errors import DimensionMismatchError, FnnError, InvalidSampleError
from .network import FuzzySet, Network


@dataclass
class TrainingSequence:
    """One sequence to learn: samples[t] is the t-th input vector."""

    samples: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 2:
            raise InvalidSampleError("samples must be a (length, dim) array")
        if not np.all(np.isfinite(self.samples)):
            raise InvalidSampleError(f"sequence {self.label!r} has non-finite samples")

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


@dataclass
class InitReport:
    """What one initialization pass added, plus per-sequence coverage traces."""

    seq_sets_added: int
    samp_sets_added: int
    rules_added: int
    coverage_traces: list[list[tuple[int, float]]]
    bindings: list[int]
    warnings: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"sequence sets added: {self.seq_sets_added}",
            f"sample sets added:   {self.samp_sets_added}",
            f"rules added:         {self.rules_added}",
        ]
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for i, (p, trace) in enumerate(zip(self.bindings, self.coverage_traces)):
            lines.append(f"sequence {i}: bound to sequence set {p}, "
                         f"{len(trace)} coverage checks")
            lines.extend(f"  t={t} coverage={c!r}" for t, c in trace)
        return "\n".join(lines)


def coverage(sets: list[FuzzySet], v) -> float:
    """Total Gaussian membership of v over a list of fuzzy sets (0 if empty)."""
    v = np.asarray(v, dtype=np.float64)
    total = 0.0
    for fs in sets:
        if fs.center.shape != v.shape:
            raise DimensionMismatchError("fuzzy set and vector dimensions differ")
        diff = v - fs.center
        total += float(np.exp(-(diff @ diff) / (fs.width * fs.width)))
    return total


def _membership_row(centers: np.ndarray, inv_w2: np.ndarray, v: np.ndarray) -> np.ndarray:
    if centers.shape[0] == 0:
        return np.empty(0)
    return np.exp(-pure.sq_distances(centers, inv_w2, v))


def _check_sequences(net: Network, sequences: list[TrainingSequence]) -> None:
    if not sequences:
        raise FnnError("no training sequences given")
    cfg = net.config
    for seq in sequences:
        if seq.dim != cfg.dim:
            raise DimensionMismatchError(
                f"sequence {seq.label!r} has dim {seq.dim}, network expects {cfg.dim}")
        if len(seq) < cfg.T + 2:
            raise FnnError(
                f"sequence {seq.label!r} has {len(seq)} samples; need more than "
                f"T+1 = {cfg.T + 1} to provide at least one training target")


def initialize(net: Network, sequences: list[TrainingSequence]) -> InitReport:
    """Grow fuzzy sets and rules from correct sequences (one pass, in order).

    The memory filters are driven by the true samples throughout, including
    past the priming horizon. The presentation order matters and is kept as
    given.
    """
    _check_sequences(net, sequences)
    cfg = net.config
    p0, m0, r0 = net.n_seq_sets, net.n_samp_sets, net.n_rules
    traces: list[list[tuple[int, float]]] = []
    bindings: list[int] = []
    warnings: list[str] = []

    for seq in sequences:
        net.reset_episode()
        st = net.state
        samples = seq.samples
        for t in range(cfg.T):
            pure.accumulate_powers(st.o1, samples[t], cfg.n)
            pure.lowpass_update(st.o3, samples[t], net.lambdas)

        cov1 = float(_membership_row(net.seq_centers, net.seq_inv_w2, st.o1).sum())
        if cov1 <= cfg.theta1:
            p_cur = net.add_seq_set(st.o1.copy())
        else:
            # Identity already covered: treat as a repeat of a known sequence
            # and keep binding to the most recently added sequence set.
            p_cur = net.n_seq_sets - 1
            warnings.append(
                f"sequence {seq.label!r}: identity already covered "
                f"(coverage {cov1:.3g} > theta1); no sequence set added")

        trace: list[tuple[int, float]] = []
        for ti in range(cfg.T, len(seq) - 1):
            x_t = samples[ti]
            target = samples[ti + 1]
            pure.lowpass_update(st.o3, x_t, net.lambdas)
            memb = _membership_row(net.samp_centers, net.samp_inv_w2, st.o3)
            cov2 = float(memb.sum()) if memb.size else 0.0
            trace.append((ti + 1, cov2))
            if cov2 <= cfg.theta2:
                m_new = net.add_samp_set(st.o3.copy())
                net.add_rule(p_cur, m_new, target)
                memb = np.append(memb, 1.0)
            best = int(np.argmax(memb))
            if not net.has_rule(p_cur, best):
                net.add_rule(p_cur, best, target)
        traces.append(trace)
        bindings.append(p_cur)

    return InitReport(
        seq_sets_added=net.n_seq_sets - p0,
        samp_sets_added=net.n_samp_sets - m0,
        rules_added=net.n_rules - r0,
        coverage_traces=traces,
        bindings=bindings,
        warnings=warnings,
    )
