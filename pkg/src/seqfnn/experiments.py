"""Experiment harness: configure, train, evaluate, and write run artifacts.

A run builds its dataset, grows the structure on correct samples, fine-tunes
the weights closed loop, then replays every sequence as an evaluation
episode: the first T samples (optionally with input noise) prime the
network and the remainder is generated autonomously. Errors are always
measured against the clean targets.

Run directories contain: ``metrics.json`` (deterministic; byte-identical
for identical configs and seeds), ``seq_<label>.csv`` per-sample tables,
``model.txt`` (structure dump), ``report.txt`` (initialization/tuning
reports), ``config.txt`` (resolved configuration, reusable via --config)
and ``run.log`` (timing and environment; the one file allowed to vary).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import backend
from .baseline import BaselineNetwork, baseline_initialize
from .config import NetworkConfig, TuneConfig
from .datasets import (
    FIXTURE_LABELS,
    Dataset,
    NoiseSpec,
    add_noise,
    fixture_characters_path,
    gen_intersected_pair,
    gen_waveforms,
    load_trajectories,
)
from .errors import FnnError
from .model_io import dump_model
from .network import Network
from .plots import emit_plots
from .structure import initialize
from .tuning import fine_tune

EXPERIMENTS = ("intersected", "patterns", "characters", "custom")

# One row per experiment table: iter_max, theta1, theta2, theta3, sigma, T, d, n.
_TABLES = {
    "intersected": dict(dim=2, iter_max=20, theta1=0.3, theta2=0.3,
                        theta3=0.01, sigma=0.1, T=10, d=5, n=1),
    "patterns": dict(dim=1, iter_max=20, theta1=0.4, theta2=0.1,
                     theta3=0.01, sigma=0.1, T=20, d=20, n=2),
    "characters": dict(dim=2, iter_max=20, theta1=0.2, theta2=0.2,
                       theta3=0.01, sigma=0.2, T=30, d=30, n=2),
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    network: NetworkConfig
    tune: TuneConfig
    model: str = "proposed"
    seed: int = 0
    noise: NoiseSpec | None = None
    out_dir: str | None = None
    make_plots: bool = False
    # intersected-pair geometry
    samples_per_seq: int = 180
    head_samples: int = 20
    shared_samples: int = 110
    # waveform sampling
    period_samples: int = 20
    train_periods: int = 4
    phase_shift_eval: bool = True
    # character trajectories
    trajectories: str | None = None
    chars: tuple[str, ...] = FIXTURE_LABELS

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.model not in ("proposed", "baseline"):
            raise ValueError(f"model must be 'proposed' or 'baseline', "
                             f"got {self.model!r}")


def experiment_config(experiment: str, **overrides) -> ExperimentConfig:
    """Build a config from an experiment's parameter table plus overrides.

    Override keys: any table name (``sigma`` sets both widths; ``sigma1``/
    ``sigma2`` set one), ``eta0``, ``beta``, ``inner_iter_max``, ``dim``,
    plus any :class:`ExperimentConfig` field name.
    """
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r} "
                         f"(choose from {EXPERIMENTS})")
    table = dict(_TABLES.get(experiment, {}))
    net_keys = ("dim", "iter_max", "theta1", "theta2", "theta3", "sigma",
                "sigma1", "sigma2", "T", "d", "n", "eta0", "beta")
    for key in net_keys:
        if key in overrides:
            table[key] = overrides.pop(key)
    missing = [k for k in ("dim", "iter_max", "theta1", "theta2", "theta3",
                           "T", "d", "n") if k not in table]
    if missing:
        raise FnnError(f"experiment {experiment!r} needs explicit values "
                       f"for: {missing}")
    sigma = table.pop("sigma", None)
    sigma1 = table.pop("sigma1", sigma)
    sigma2 = table.pop("sigma2", sigma)
    if sigma1 is None or sigma2 is None:
        raise FnnError("a fuzzy-set width (sigma, or sigma1 and sigma2) is required")
    network = NetworkConfig(sigma1=float(sigma1), sigma2=float(sigma2), **{
        k: (int(v) if k in ("dim", "T", "d", "n", "iter_max") else float(v))
        for k, v in table.items()})
    inner = overrides.pop("inner_iter_max", None)
    tune = TuneConfig(eta0=network.eta0, beta=network.beta,
                      theta3=network.theta3, iter_max=network.iter_max,
                      inner_iter_max=None if inner is None else int(inner))

    if experiment == "characters" and "noise" not in overrides:
        overrides["noise"] = NoiseSpec(-0.3, 0.3, seed=int(overrides.get("seed", 0)))
    return ExperimentConfig(experiment=experiment, network=network, tune=tune,
                            **overrides)


def build_dataset(cfg: ExperimentConfig) -> Dataset:
    if cfg.experiment == "intersected":
        return gen_intersected_pair(cfg.samples_per_seq,
                                    head_samples=cfg.head_samples,
                                    shared_samples=cfg.shared_samples)
    if cfg.experiment == "patterns":
        return gen_waveforms(cfg.period_samples, cfg.train_periods)
    if cfg.experiment == "characters":
        path = cfg.trajectories or fixture_characters_path()
        return load_trajectories(path, list(cfg.chars))
    raise FnnError("custom experiments must supply a dataset via "
                   "run_experiment(cfg, dataset=...)")


@dataclass
class SequenceMetrics:
    label: str
    rmse: list[float]
    rmse_overall: float
    max_abs_error: float
    identified_set: int | None = None
    expected_set: int | None = None

    @property
    def identified(self) -> bool | None:
        if self.identified_set is None or self.expected_set is None:
            return None
        return self.identified_set == self.expected_set


@dataclass
class RunMetrics:
    experiment: str
    model: str
    seed: int
    noise: str
    seq_sets: int
    samp_sets: int
    rules: int
    sequences: list[SequenceMetrics] = field(default_factory=list)
    duration_s: float = 0.0  # not serialized: metrics files stay reproducible

    def by_label(self, label: str) -> SequenceMetrics:
        for sm in self.sequences:
            if sm.label == label:
                return sm
        raise KeyError(label)

    def to_json(self) -> str:
        doc = {
            "experiment": self.experiment,
            "model": self.model,
            "seed": self.seed,
            "noise": self.noise,
            "structure": {"seq_sets": self.seq_sets,
                          "samp_sets": self.samp_sets,
                          "rules": self.rules},
            "sequences": [{
                "label": sm.label,
                "rmse": sm.rmse,
                "rmse_overall": sm.rmse_overall,
                "max_abs_error": sm.max_abs_error,
                "identified_set": sm.identified_set,
                "expected_set": sm.expected_set,
            } for sm in self.sequences],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run_episode(net: Network | BaselineNetwork, inputs: np.ndarray,
                total_steps: int) -> tuple[np.ndarray, int | None]:
    """Prime with ``inputs[:T]``, then run autonomously to ``total_steps``.

    Returns the per-step outputs (row j is the estimate of sample j+2) and,
    for the full network, the index of the best-matching sequence set at the
    end of priming.
    """
    net.reset_episode()
    T = net.config.T
    outputs = np.empty((total_steps, net.config.dim))
    for i in range(T):
        outputs[i] = net.step(inputs[i])
    identified = None
    if isinstance(net, Network) and net.n_seq_sets > 0:
        identified = int(np.argmin(net.seq_log_strengths(net.state.o1)))
    for i in range(T, total_steps):
        outputs[i] = net.step()
    return outputs, identified


def _episode_metrics(label: str, clean: np.ndarray, outputs: np.ndarray, T: int,
                     identified: int | None, expected: int | None) -> SequenceMetrics:
    # Estimates of samples T+1 .. T_f sit at output rows T-1 .. T_f-2.
    est = outputs[T - 1:]
    ref = clean[T:]
    err = est - ref
    rmse = np.sqrt((err ** 2).mean(axis=0))
    return SequenceMetrics(
        label=label,
        rmse=[float(v) for v in rmse],
        rmse_overall=float(np.sqrt((err ** 2).mean())),
        max_abs_error=float(np.abs(err).max()),
        identified_set=identified,
        expected_set=expected,
    )


def _write_episode_csv(path: Path, clean: np.ndarray, fed: np.ndarray,
                       outputs: np.ndarray, T: int) -> None:
    """Rows t=1..T_f: clean target plus what the network saw or produced.

    For t <= T the output columns echo the fed (possibly noisy) input; past
    T they hold the autonomous estimates.
    """
    dim = clean.shape[1]
    header = (["t"] + [f"target_{k + 1}" for k in range(dim)]
              + [f"output_{k + 1}" for k in range(dim)])
    lines = [",".join(header)]
    for t in range(1, clean.shape[0] + 1):
        produced = fed[t - 1] if t <= T else outputs[t - 2]
        cells = [str(t)] + [repr(float(v)) for v in clean[t - 1]]
        cells += [repr(float(v)) for v in produced]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def _config_text(cfg: ExperimentConfig) -> str:
    net, tune = cfg.network, cfg.tune
    items = [("experiment", cfg.experiment), ("model", cfg.model),
             ("seed", cfg.seed), ("dim", net.dim), ("T", net.T), ("d", net.d),
             ("n", net.n), ("sigma1", net.sigma1), ("sigma2", net.sigma2),
             ("theta1", net.theta1), ("theta2", net.theta2),
             ("theta3", net.theta3), ("iter_max", net.iter_max),
             ("eta0", tune.eta0), ("beta", tune.beta)]
    if tune.inner_iter_max is not None:
        items.append(("inner_iter_max", tune.inner_iter_max))
    if cfg.noise is not None:
        items += [("noise_low", cfg.noise.low), ("noise_high", cfg.noise.high),
                  ("noise_seed", cfg.noise.seed)]
    if cfg.experiment == "intersected":
        items += [("samples_per_seq", cfg.samples_per_seq),
                  ("head_samples", cfg.head_samples),
                  ("shared_samples", cfg.shared_samples)]
    if cfg.experiment == "patterns":
        items += [("period_samples", cfg.period_samples),
                  ("train_periods", cfg.train_periods),
                  ("phase_shift_eval", cfg.phase_shift_eval)]
    if cfg.experiment == "characters":
        items += [("chars", ",".join(cfg.chars))]
        if cfg.trajectories:
            items.append(("trajectories", cfg.trajectories))
    return "\n".join(f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}"
                     for k, v in items) + "\n"


def run_experiment(cfg: ExperimentConfig,
                   dataset: Dataset | None = None) -> RunMetrics:
    """Train on the experiment's dataset and evaluate every sequence.

    ``dataset`` may be supplied directly (required for ``custom``); named
    experiments build their own.
    """
    started = time.perf_counter()
    if dataset is None:
        dataset = build_dataset(cfg)

    net: Network | BaselineNetwork
    if cfg.model == "baseline":
        net = BaselineNetwork(cfg.network)
        init_report = baseline_initialize(net, dataset.sequences)
    else:
        net = Network(cfg.network)
        init_report = initialize(net, dataset.sequences)
    tune_report = fine_tune(net, dataset.sequences, cfg.tune)

    eval_ds = add_noise(dataset, cfg.noise) if cfg.noise else dataset
    episodes = []  # (label, clean, fed, outputs, identified, expected)
    for seq, fed, expected in zip(dataset.sequences, eval_ds.sequences,
                                  init_report.bindings):
        total = len(seq) - 1
        outputs, identified = run_episode(net, fed.samples, total)
        episodes.append((seq.label, seq.samples, fed.samples, outputs,
                         identified, None if expected < 0 else expected))

    if cfg.experiment == "patterns" and cfg.phase_shift_eval:
        # Prime with a phase-shifted sine; the target is the shifted wave.
        sine_binding = init_report.bindings[0]
        for shift, tag in ((np.pi / 2, "quarter"), (np.pi, "half")):
            shifted = gen_waveforms(cfg.period_samples, cfg.train_periods,
                                    phase=shift).sequences[0]
            fed = shifted.samples
            if cfg.noise:
                rng = np.random.default_rng(cfg.noise.seed + 1)
                fed = fed + rng.uniform(cfg.noise.low, cfg.noise.high, fed.shape)
            outputs, identified = run_episode(net, fed, len(shifted) - 1)
            episodes.append((f"sine_shift_{tag}", shifted.samples, fed, outputs,
                             identified,
                             None if sine_binding < 0 else sine_binding))

    if cfg.model == "baseline":
        seq_sets = 0
    else:
        seq_sets = net.n_seq_sets
    metrics = RunMetrics(
        experiment=cfg.experiment, model=cfg.model, seed=cfg.seed,
        noise=eval_ds.noise if cfg.noise else "none",
        seq_sets=seq_sets, samp_sets=net.n_samp_sets, rules=net.n_rules)
    T = cfg.network.T
    for label, clean, fed, outputs, identified, expected in episodes:
        metrics.sequences.append(
            _episode_metrics(label, clean, outputs, T, identified, expected))
    metrics.duration_s = time.perf_counter() - started

    if cfg.out_dir is not None:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for label, clean, fed, outputs, _, _ in episodes:
            _write_episode_csv(out / f"seq_{label}.csv", clean, fed, outputs, T)
        (out / "metrics.json").write_text(metrics.to_json())
        dump_model(net, out / "model.txt")
        (out / "report.txt").write_text(
            "== initialization ==\n" + init_report.to_text()
            + "\n\n== fine-tuning ==\n" + tune_report.to_text() + "\n")
        (out / "config.txt").write_text(_config_text(cfg))
        (out / "run.log").write_text(
            f"backend: {backend.name}\n"
            f"duration_s: {metrics.duration_s:.3f}\n")
        if cfg.make_plots:
            emit_plots(out)
    return metrics
