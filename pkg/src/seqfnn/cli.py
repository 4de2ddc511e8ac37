"""Command-line interface.

Subcommands:

* ``run``     train and evaluate one experiment, writing a run directory
* ``plot``    render target-vs-output SVG overlays for an existing run
* ``inspect`` print the structure counts and rule table of a run

Configuration files are flat ``key=value`` text (``#`` starts a comment);
command-line flags override file values, which override the experiment's
parameter-table defaults.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .datasets import NoiseSpec
from .errors import DataFormatError, FnnError
from .experiments import EXPERIMENTS, experiment_config, run_experiment
from .model_io import load_model
from .plots import emit_plots

_INT_KEYS = {"dim", "T", "d", "n", "iter_max", "inner_iter_max", "seed",
             "samples_per_seq", "head_samples", "shared_samples",
             "period_samples", "train_periods", "noise_seed"}
_FLOAT_KEYS = {"sigma", "sigma1", "sigma2", "theta1", "theta2", "theta3",
               "eta0", "beta", "noise_low", "noise_high"}
_BOOL_KEYS = {"phase_shift_eval", "plot"}
_STR_KEYS = {"experiment", "model", "out", "trajectories", "chars", "noise"}


def _coerce(key: str, value: str):
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _BOOL_KEYS:
        if value.lower() in ("1", "true", "yes", "on"):
            return True
        if value.lower() in ("0", "false", "no", "off"):
            return False
        raise DataFormatError(f"{key} expects a boolean, got {value!r}")
    if key in _STR_KEYS:
        return value
    raise DataFormatError(f"unknown configuration key {key!r}")


def parse_config_file(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"config file not found: {path}")
    items: dict = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataFormatError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        items[key] = _coerce(key, value)
    return items


def _parse_noise_flag(text: str) -> tuple[float, float] | None:
    if text.lower() == "none":
        return None
    try:
        low, high = (float(part) for part in text.split(","))
    except ValueError:
        raise DataFormatError(
            f"--noise expects LOW,HIGH or 'none', got {text!r}") from None
    return low, high


def _build_config(args) -> tuple:
    items: dict = {}
    if args.config:
        items.update(parse_config_file(args.config))
    if args.experiment:
        items["experiment"] = args.experiment
    if args.model:
        items["model"] = args.model
    if args.seed is not None:
        items["seed"] = args.seed
    if args.out:
        items["out"] = args.out
    if args.noise:
        parsed = _parse_noise_flag(args.noise)
        if parsed is None:
            items["noise"] = "none"
            items.pop("noise_low", None)
            items.pop("noise_high", None)
        else:
            items.pop("noise", None)
            items["noise_low"], items["noise_high"] = parsed
    if args.plot:
        items["plot"] = True

    experiment = items.pop("experiment", None)
    if experiment is None:
        raise FnnError("an experiment is required (--experiment or config file)")

    overrides: dict = {}
    seed = int(items.pop("seed", 0))
    overrides["seed"] = seed
    if items.pop("noise", "") != "none":
        if "noise_low" in items or "noise_high" in items:
            if not ("noise_low" in items and "noise_high" in items):
                raise FnnError("noise_low and noise_high must be given together")
            overrides["noise"] = NoiseSpec(items.pop("noise_low"),
                                           items.pop("noise_high"),
                                           seed=items.pop("noise_seed", seed))
    else:
        overrides["noise"] = None
        for key in ("noise_low", "noise_high", "noise_seed"):
            items.pop(key, None)
    if "out" in items:
        overrides["out_dir"] = items.pop("out")
    if items.pop("plot", False):
        overrides["make_plots"] = True
    if "chars" in items:
        overrides["chars"] = tuple(items.pop("chars").split(","))
    overrides.update(items)
    return experiment, overrides


def _cmd_run(args) -> int:
    experiment, overrides = _build_config(args)
    cfg = experiment_config(experiment, **overrides)
    metrics = run_experiment(cfg)
    print(f"experiment={metrics.experiment} model={metrics.model} "
          f"seed={metrics.seed}")
    print(f"structure: {metrics.seq_sets} sequence sets, "
          f"{metrics.samp_sets} sample sets, {metrics.rules} rules")
    for sm in metrics.sequences:
        rmse = " ".join(f"{v:.4f}" for v in sm.rmse)
        ident = ""
        if sm.identified_set is not None and sm.expected_set is not None:
            ok = "ok" if sm.identified else "WRONG"
            ident = f" identified={sm.identified_set} ({ok})"
        print(f"  {sm.label}: rmse per coord [{rmse}] "
              f"max|err|={sm.max_abs_error:.4f}{ident}")
    if cfg.out_dir:
        print(f"run directory: {cfg.out_dir}")
    print(f"done in {metrics.duration_s:.2f}s")
    return 0


def _cmd_plot(args) -> int:
    written = emit_plots(args.run)
    for path in written:
        print(path)
    return 0


def _cmd_inspect(args) -> int:
    run_dir = Path(args.run)
    model_path = run_dir / "model.txt"
    net = load_model(model_path)
    seq_sets = getattr(net, "n_seq_sets", 0)
    print(f"model: {model_path}")
    print(f"sequence sets: {seq_sets}")
    print(f"sample sets:   {net.n_samp_sets}")
    print(f"rules:         {net.n_rules}")
    print("rule  seq_fs  samp_fs  weight")
    for i in range(net.n_rules):
        seq_fs = int(net.rule_seq[i]) if hasattr(net, "rule_seq") else -1
        weight = " ".join(f"{v: .5f}" for v in net.weights[i])
        print(f"{i:4d}  {seq_fs:6d}  {int(net.rule_samp[i]):7d}  {weight}")
    metrics_path = run_dir / "metrics.json"
    if metrics_path.exists():
        print("\nmetrics.json:")
        print(metrics_path.read_text(), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqfnn",
        description="Self-organizing fuzzy network for multi-sequence learning")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="train and evaluate one experiment")
    run.add_argument("--experiment", choices=EXPERIMENTS,
                     help="which experiment to run")
    run.add_argument("--config", help="key=value configuration file")
    run.add_argument("--model", choices=("proposed", "baseline"))
    run.add_argument("--seed", type=int)
    run.add_argument("--out", help="run directory for output files")
    run.add_argument("--noise", help="LOW,HIGH uniform input noise, or 'none'")
    run.add_argument("--plot", action="store_true",
                     help="render SVG overlays after the run")
    run.set_defaults(func=_cmd_run)

    plot = sub.add_parser("plot", help="render plots for an existing run")
    plot.add_argument("--run", required=True, help="run directory")
    plot.set_defaults(func=_cmd_plot)

    inspect = sub.add_parser("inspect", help="print structure and rules of a run")
    inspect.add_argument("--run", required=True, help="run directory")
    inspect.set_defaults(func=_cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FnnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
