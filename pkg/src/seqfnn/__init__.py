"""Self-organizing fuzzy neural network for multi-sequence learning.

A two-part recurrent fuzzy network (sequence identifier + sequence locator)
that learns several sequences from correct samples, fine-tunes its output
weights in closed loop, and regenerates any learned sequence autonomously
after a short priming prefix. Includes a locator-only baseline, dataset
generators for the bundled experiments, and a CLI harness (``seqfnn``).
"""

from . import backend
from .baseline import BaselineNetwork, baseline_fine_tune, baseline_initialize
from .config import NetworkConfig, TuneConfig
from .datasets import (
    Dataset,
    NoiseSpec,
    add_noise,
    fixture_characters_path,
    gen_intersected_pair,
    gen_waveforms,
    load_trajectories,
)
from .errors import (
    DataFormatError,
    DegenerateActivationError,
    DimensionMismatchError,
    EmptyRuleBaseError,
    FnnError,
    InvalidSampleError,
    ModeContractError,
    NotInitializedError,
)
from .experiments import (
    ExperimentConfig,
    RunMetrics,
    SequenceMetrics,
    build_dataset,
    experiment_config,
    run_episode,
    run_experiment,
)
from .model_io import dump_model, load_model
from .network import (
    FuzzySet,
    Mode,
    Network,
    NetworkState,
    Rule,
    fire_rules,
    membership,
    normalize,
    output,
    update_discrimination,
    update_memory,
)
from .plots import emit_plots
from .structure import InitReport, TrainingSequence, coverage, initialize
from .tuning import TuneReport, fine_tune, weight_update

__version__ = "0.1.0"

__all__ = [
    "BaselineNetwork", "Dataset", "DataFormatError",
    "DegenerateActivationError", "DimensionMismatchError",
    "EmptyRuleBaseError", "ExperimentConfig", "FnnError", "FuzzySet",
    "InitReport", "InvalidSampleError", "Mode", "ModeContractError",
    "Network", "NetworkConfig", "NetworkState", "NoiseSpec",
    "NotInitializedError", "Rule", "RunMetrics", "SequenceMetrics",
    "TrainingSequence", "TuneConfig", "TuneReport", "add_noise", "backend",
    "baseline_fine_tune", "baseline_initialize", "build_dataset", "coverage",
    "dump_model", "emit_plots", "experiment_config", "fine_tune",
    "fire_rules", "fixture_characters_path", "gen_intersected_pair",
    "gen_waveforms", "initialize", "load_model", "load_trajectories",
    "membership", "normalize", "output", "run_episode", "run_experiment",
    "update_discrimination", "update_memory", "weight_update",
]
