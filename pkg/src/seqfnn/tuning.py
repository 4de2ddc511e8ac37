"""Closed-loop gradual fine-tuning of the rule output weights.

Only the output weights move; the fuzzy structure is frozen. For every
sequence the learning step eta starts at eta0 and is discounted by beta on
every weight iteration, across samples and passes. Each sample t is tuned
in isolation: the recurrent state is advanced once using the previous
output, the resulting rule strengths phi stay fixed, and the weight update

    w_i <- w_i - eta * (y - x(t+1)) * phi_i

is iterated until the squared one-step error drops to theta3 or the inner
iteration cap is hit. Only then does the episode move on, feeding the final
estimate forward — so the tuned trajectory is exactly the trajectory the
network will follow when generating on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .config import TuneConfig
from .errors import (
    DegenerateActivationError,
    DimensionMismatchError,
    NotInitializedError,
)
from .structure import TrainingSequence, _check_sequences


@dataclass
class SequenceTuneRecord:
    """Outcome of tuning one sequence (sample entries are from the last pass)."""

    label: str
    epochs: int
    samples: list[tuple[int, float, int]]  # (t, final squared error, iterations)
    total_inner_iterations: int
    final_eta: float
    aborted: bool = False
    abort_reason: str = ""

    @property
    def mean_error(self) -> float:
        if not self.samples:
            return float("nan")
        return float(np.mean([e for _, e, _ in self.samples]))


@dataclass
class TuneReport:
    records: list[SequenceTuneRecord] = field(default_factory=list)

    def to_text(self) -> str:
        lines = []
        for rec in self.records:
            status = "aborted: " + rec.abort_reason if rec.aborted else "ok"
            lines.append(
                f"sequence {rec.label!r}: {rec.epochs} passes, "
                f"{rec.total_inner_iterations} weight iterations, "
                f"final mean E={rec.mean_error!r}, eta={rec.final_eta!r} ({status})")
            lines.extend(f"  t={t} E={e!r} iters={it}" for t, e, it in rec.samples)
        return "\n".join(lines)


def weight_update(net, phi, y, target, eta: float) -> None:
    """One gradient step on all rule weights at fixed strengths phi."""
    phi = np.asarray(phi, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if phi.shape != (net.n_rules,):
        raise DimensionMismatchError("phi length does not match the rule count")
    if y.shape != target.shape or y.shape != (net.config.dim,):
        raise DimensionMismatchError("output/target dimension mismatch")
    net.weights -= eta * phi[:, None] * (y - target)[None, :]


def fine_tune(net, sequences: list[TrainingSequence],
              cfg: TuneConfig | None = None) -> TuneReport:
    """Tune ``net`` (proposed or baseline) on the given sequences in place.

    Each of the iter_max passes over a sequence re-primes the episode from
    scratch, so every pass sees the same recurrent states while the weights
    improve. Returns per-sequence records; a degenerate activation aborts
    that sequence's tuning and is recorded instead of raised.
    """
    if cfg is None:
        cfg = TuneConfig.from_network(net.config)
    if net.n_rules == 0:
        raise NotInitializedError("fine_tune requires an initialized network")
    _check_sequences(net, sequences)

    T = net.config.T
    report = TuneReport()
    for seq in sequences:
        samples = seq.samples
        eta = cfg.eta0
        rec = SequenceTuneRecord(label=seq.label, epochs=0, samples=[],
                                 total_inner_iterations=0, final_eta=eta)
        try:
            for _ in range(cfg.iter_max):
                net.reset_episode()
                for t in range(T):
                    net.prime_update(samples[t])
                phi, y = net.forward()
                net.state.last_output = y
                entries: list[tuple[int, float, int]] = []
                for ti in range(T, len(seq) - 1):
                    # Advance the memory once with the previous output; phi is
                    # then fixed for the whole inner loop of this sample.
                    net.memory_update(net.state.last_output)
                    phi, y = net.forward()
                    e, iters, eta = backend.impl.tune_inner(
                        net.weights, phi, y, samples[ti + 1], eta,
                        cfg.beta, cfg.theta3, cfg.inner_cap)
                    entries.append((ti + 1, e, iters))
                    rec.total_inner_iterations += iters
                    net.state.last_output = y
                    net.state.t += 1
                rec.epochs += 1
                rec.samples = entries
        except DegenerateActivationError as exc:
            rec.aborted = True
            rec.abort_reason = str(exc)
        rec.final_eta = eta
        report.records.append(rec)
    return report
