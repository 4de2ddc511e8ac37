"""Plain-text persistence of a trained network's structure and weights.

Line-oriented format with a fixed field order; floats are written with
``repr`` so a dump/load round trip is exact:

    seqfnn-model v1
    model proposed|baseline
    <config lines: dim T d n sigma1 sigma2 theta1 theta2 theta3 iter_max eta0 beta>
    seq_sets <p>
    seq_set <idx> <width> <center components...>
    samp_sets <m>
    samp_set <idx> <width> <center components...>
    rules <R>
    rule <idx> <seq_fs> <samp_fs> <weight components...>

Baseline dumps carry ``seq_sets 0`` and ``seq_fs`` = -1.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .baseline import BaselineNetwork
from .config import NetworkConfig
from .errors import DataFormatError
from .network import Network

_CONFIG_FIELDS = ("dim", "T", "d", "n", "sigma1", "sigma2", "theta1", "theta2",
                  "theta3", "iter_max", "eta0", "beta")
_INT_FIELDS = {"dim", "T", "d", "n", "iter_max"}


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values).ravel())


def dump_model(net: Network | BaselineNetwork, path) -> None:
    path = Path(path)
    is_baseline = isinstance(net, BaselineNetwork)
    cfg = net.config
    lines = ["seqfnn-model v1",
             f"model {'baseline' if is_baseline else 'proposed'}"]
    for name in _CONFIG_FIELDS:
        value = getattr(cfg, name)
        lines.append(f"{name} {value if name in _INT_FIELDS else repr(float(value))}")

    if is_baseline:
        lines.append("seq_sets 0")
    else:
        lines.append(f"seq_sets {net.n_seq_sets}")
        for i in range(net.n_seq_sets):
            lines.append(f"seq_set {i} {net.seq_widths[i]!r} {_fmt(net.seq_centers[i])}")
    lines.append(f"samp_sets {net.n_samp_sets}")
    for i in range(net.n_samp_sets):
        lines.append(f"samp_set {i} {net.samp_widths[i]!r} {_fmt(net.samp_centers[i])}")
    lines.append(f"rules {net.n_rules}")
    for i in range(net.n_rules):
        seq_fs = -1 if is_baseline else int(net.rule_seq[i])
        lines.append(f"rule {i} {seq_fs} {int(net.rule_samp[i])} "
                     f"{_fmt(net.weights[i])}")
    path.write_text("\n".join(lines) + "\n")


class _Lines:
    def __init__(self, path: Path):
        self.path = path
        self.lines = path.read_text().splitlines()
        self.pos = 0

    def next(self, expect: str | None = None) -> list[str]:
        if self.pos >= len(self.lines):
            raise DataFormatError(f"{self.path}: unexpected end of file")
        fields = self.lines[self.pos].split()
        self.pos += 1
        if expect is not None and (not fields or fields[0] != expect):
            raise DataFormatError(
                f"{self.path}:{self.pos}: expected {expect!r} line")
        return fields


def load_model(path) -> Network | BaselineNetwork:
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"model file not found: {path}")
    lines = _Lines(path)
    if lines.next() != ["seqfnn-model", "v1"]:
        raise DataFormatError(f"{path}: not a seqfnn v1 model file")
    kind = lines.next("model")[1]
    if kind not in ("proposed", "baseline"):
        raise DataFormatError(f"{path}: unknown model kind {kind!r}")

    raw: dict[str, str] = {}
    for name in _CONFIG_FIELDS:
        fields = lines.next(name)
        raw[name] = fields[1]
    cfg = NetworkConfig(**{k: (int(v) if k in _INT_FIELDS else float(v))
                           for k, v in raw.items()})

    net: Network | BaselineNetwork
    net = BaselineNetwork(cfg) if kind == "baseline" else Network(cfg)

    n_seq = int(lines.next("seq_sets")[1])
    for _ in range(n_seq):
        fields = lines.next("seq_set")
        net.add_seq_set(np.array([float(v) for v in fields[3:]]), float(fields[2]))
    n_samp = int(lines.next("samp_sets")[1])
    for _ in range(n_samp):
        fields = lines.next("samp_set")
        net.add_samp_set(np.array([float(v) for v in fields[3:]]), float(fields[2]))
    n_rules = int(lines.next("rules")[1])
    for _ in range(n_rules):
        fields = lines.next("rule")
        weight = np.array([float(v) for v in fields[4:]])
        if kind == "baseline":
            net.add_rule(int(fields[3]), weight)
        else:
            net.add_rule(int(fields[2]), int(fields[3]), weight)
    return net
