"""Sequence sources for the experiments.

Three families: a generated pair of 2-D curves that share a middle segment
(the discrimination task), four unit-amplitude periodic waveforms (the
pattern-generation task), and 2-D pen trajectories ingested from CSV (the
character task, with a bundled synthetic fixture). Plus uniform input noise.

Trajectory CSV format: header ``label,t,x,y``; rows sorted by (label, t)
with a 0-based integer t; one file may hold many characters and the first
contiguous block per label is the one used.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataFormatError, FnnError
from .structure import TrainingSequence

FIXTURE_LABELS = ("a", "c", "d", "e", "g", "o", "p", "q", "u")


@dataclass(frozen=True)
class NoiseSpec:
    """Independent uniform noise per coordinate per sample."""

    low: float
    high: float
    seed: int = 0
    kind: str = "uniform"

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("noise bounds must satisfy low < high")
        if self.kind != "uniform":
            raise ValueError(f"unsupported noise kind {self.kind!r}")


@dataclass
class Dataset:
    sequences: list[TrainingSequence]
    name: str
    noise: str = "none"

    @property
    def dim(self) -> int:
        return self.sequences[0].dim

    @property
    def length(self) -> int:
        return len(self.sequences[0])

    def labels(self) -> list[str]:
        return [s.label for s in self.sequences]


def add_noise(ds: Dataset, spec: NoiseSpec) -> Dataset:
    """Return a copy of the dataset with seeded uniform noise on every sample."""
    rng = np.random.default_rng(spec.seed)
    noisy = [
        TrainingSequence(
            seq.samples + rng.uniform(spec.low, spec.high, seq.samples.shape),
            seq.label)
        for seq in ds.sequences
    ]
    return Dataset(noisy, ds.name,
                   noise=f"uniform({spec.low!r},{spec.high!r},seed={spec.seed})")


# -- intersected pair ---------------------------------------------------------

def _bezier(p0, p1, p2, u: np.ndarray) -> np.ndarray:
    """Quadratic Bezier curve sampled at parameter values u."""
    u = u[:, None]
    p0, p1, p2 = (np.asarray(p, dtype=np.float64) for p in (p0, p1, p2))
    return (1 - u) ** 2 * p0 + 2 * u * (1 - u) * p1 + u ** 2 * p2


def gen_intersected_pair(samples_per_seq: int = 180, *,
                         head_samples: int = 20,
                         shared_samples: int = 110,
                         start_a=(-1.0, 0.55), start_b=(-1.0, -0.55),
                         end_a=(1.0, 0.6), end_b=(1.0, -0.6)) -> Dataset:
    """Two 2-D sequences with distinct heads, one shared arc, distinct tails.

    The shared segment is computed once and copied into both sequences, so it
    is coincident bit for bit; heads and tails stay separated by construction.
    """
    tail_samples = samples_per_seq - head_samples - shared_samples
    if shared_samples < 2 or head_samples < 2 or tail_samples < 2:
        raise FnnError("degenerate segmentation: every segment needs >= 2 samples")

    arc_start = np.array([-0.6, 0.0])
    arc_end = np.array([0.6, 0.0])
    s = np.linspace(0.0, 1.0, shared_samples)
    shared = np.column_stack([-0.6 + 1.2 * s, 0.25 * np.sin(np.pi * s)])

    u_head = np.arange(head_samples) / head_samples  # excludes the join point
    head_a = _bezier(start_a, (-0.95, 0.05), arc_start, u_head)
    head_b = _bezier(start_b, (-0.95, -0.05), arc_start, u_head)

    u_tail = np.arange(1, tail_samples + 1) / tail_samples
    tail_a = _bezier(arc_end, (0.85, 0.2), end_a, u_tail)
    tail_b = _bezier(arc_end, (0.85, -0.2), end_b, u_tail)

    seq_a = np.vstack([head_a, shared, tail_a])
    seq_b = np.vstack([head_b, shared.copy(), tail_b])
    return Dataset([TrainingSequence(seq_a, "upper"),
                    TrainingSequence(seq_b, "lower")], "intersected")


def shared_window(ds: Dataset, tol: float = 1e-9) -> tuple[int, int]:
    """Half-open index range of the maximal window where both sequences agree."""
    a, b = ds.sequences[0].samples, ds.sequences[1].samples
    same = np.all(np.abs(a - b) <= tol, axis=1)
    idx = np.flatnonzero(same)
    if idx.size == 0:
        raise FnnError("sequences share no coincident window")
    return int(idx[0]), int(idx[-1]) + 1


# -- periodic waveforms -------------------------------------------------------

WAVEFORM_LABELS = ("sine", "square", "triangle", "saw")


def _waveform(label: str, frac: np.ndarray, angle: np.ndarray) -> np.ndarray:
    if label == "sine":
        return np.sin(angle)
    if label == "square":
        # Cosine-aligned: the jumps sit mid-quarter, away from period boundaries.
        return np.where((frac < 0.25) | (frac >= 0.75), 1.0, -1.0)
    if label == "triangle":
        return np.where(frac < 0.25, 4.0 * frac,
                        np.where(frac < 0.75, 2.0 - 4.0 * frac, 4.0 * frac - 4.0))
    if label == "saw":
        return 2.0 * frac - 1.0
    raise ValueError(f"unknown waveform {label!r}")


def gen_waveforms(period_samples: int = 20, periods: int = 4,
                  phase: float = 0.0) -> Dataset:
    """Four unit-amplitude 1-D periodic sequences, ``periods`` periods long.

    ``phase`` (radians) shifts the sampling origin of all four waveforms.
    """
    if period_samples < 8:
        raise FnnError("period_samples must be at least 8")
    if periods < 1:
        raise FnnError("periods must be at least 1")
    k = np.arange(period_samples * periods, dtype=np.float64)
    angle = 2.0 * np.pi * k / period_samples + phase
    frac = (k / period_samples + phase / (2.0 * np.pi)) % 1.0
    seqs = [TrainingSequence(_waveform(lbl, frac, angle)[:, None], lbl)
            for lbl in WAVEFORM_LABELS]
    return Dataset(seqs, "waveforms")


# -- character trajectories ---------------------------------------------------

def resample_polyline(points: np.ndarray, length: int) -> np.ndarray:
    """Linear interpolation along the sample index to a fixed sample count."""
    src = np.arange(points.shape[0], dtype=np.float64)
    dst = np.linspace(0.0, points.shape[0] - 1.0, length)
    return np.column_stack([np.interp(dst, src, points[:, k])
                            for k in range(points.shape[1])])


def load_trajectories(path, char_filter: list[str] | None = None,
                      length: int = 180) -> Dataset:
    """Read pen trajectories from CSV, one sequence per selected character.

    Each selected trajectory is resampled to ``length`` samples and shifted
    so that it starts at (0, 0).
    """
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"trajectory file not found: {path}")
    runs: list[tuple[str, list[tuple[float, float]]]] = []
    last_t = -1
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["label", "t", "x", "y"]:
            raise DataFormatError(f"{path}: expected header label,t,x,y, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise DataFormatError(f"{path}:{lineno}: expected 4 fields")
            label = row[0]
            try:
                t, x, y = int(row[1]), float(row[2]), float(row[3])
            except ValueError as exc:
                raise DataFormatError(f"{path}:{lineno}: {exc}") from None
            if not runs or runs[-1][0] != label:
                runs.append((label, []))
                last_t = t - 1
            if t != last_t + 1:
                raise DataFormatError(
                    f"{path}:{lineno}: t must increase by 1 within a block")
            last_t = t
            runs[-1][1].append((x, y))

    blocks: dict[str, list[tuple[float, float]]] = {}
    for label, rows in runs:  # first contiguous block per label wins
        blocks.setdefault(label, rows)

    if char_filter is None:
        char_filter = list(blocks)
    missing = [c for c in char_filter if c not in blocks]
    if missing:
        raise DataFormatError(f"{path}: labels not found: {missing}")

    sequences = []
    for label in char_filter:
        pts = np.array(blocks[label], dtype=np.float64)
        if pts.shape[0] < 2:
            raise DataFormatError(f"{path}: label {label!r} has fewer than 2 samples")
        pts = resample_polyline(pts, length)
        pts = pts - pts[0]
        sequences.append(TrainingSequence(pts, label))
    return Dataset(sequences, f"trajectories:{path.name}")


def fixture_characters_path() -> Path:
    """Location of the bundled synthetic letter-trajectory CSV."""
    return Path(resources.files("seqfnn").joinpath("data/characters_fixture.csv"))


# -- synthetic letter curves (source of the bundled fixture) ------------------

def _arc(cx, cy, r, deg0, deg1, npts, rx=None) -> np.ndarray:
    ang = np.radians(np.linspace(deg0, deg1, npts))
    rx = r if rx is None else rx
    return np.column_stack([cx + rx * np.cos(ang), cy + r * np.sin(ang)])


def _line(p0, p1, npts) -> np.ndarray:
    u = np.linspace(0.0, 1.0, npts)[:, None]
    return (1 - u) * np.asarray(p0, dtype=float) + u * np.asarray(p1, dtype=float)


def _join(*segments) -> np.ndarray:
    parts = [np.asarray(segments[0], dtype=float)]
    for seg in segments[1:]:
        parts.append(np.asarray(seg, dtype=float)[1:])
    return np.vstack(parts)


def fixture_character_curves() -> dict[str, np.ndarray]:
    """Stylized single-stroke letter trajectories (raw, before resampling).

    Shapes are letter-like rather than faithful handwriting; the opening
    strokes are deliberately varied in direction, curvature and drawing
    speed so the nine letters have well-separated identity signatures.
    """
    curves = {}
    curves["a"] = _join(
        _arc(0.0, -0.45, 0.45, 90, 450, 72),
        _line((0.0, 0.0), (0.42, -0.08), 12),
        _line((0.42, -0.08), (0.45, -0.88), 34),
        _line((0.45, -0.88), (0.62, -0.78), 10),
    )
    curves["c"] = _join(
        _arc(0.0, -0.5, 0.62, 55, 295, 96),
    )
    curves["d"] = _join(
        _arc(0.0, -0.45, 0.38, 90, 450, 44),
        _line((0.0, -0.07), (0.40, 0.95), 38),
        _line((0.40, 0.95), (0.44, -0.82), 42),
        _line((0.44, -0.82), (0.60, -0.70), 10),
    )
    curves["e"] = _join(
        _line((0.0, 0.0), (0.58, 0.06), 26),
        _arc(0.28, -0.18, 0.36, 40, 300, 62, rx=0.32),
    )
    curves["g"] = _join(
        _arc(0.0, -0.40, 0.42, 80, 440, 52),
        _line((0.07, 0.01), (0.40, -1.22), 36),
        _arc(0.10, -1.22, 0.30, 0, -160, 26),
    )
    curves["o"] = _join(
        _arc(0.0, -0.36, 0.36, 90, 468, 104),
    )
    curves["p"] = _join(
        _line((0.0, 0.0), (-0.04, -1.25), 40),
        _line((-0.04, -1.25), (0.0, -0.12), 30),
        _arc(0.26, -0.48, 0.44, 125, -95, 44),
    )
    curves["q"] = _join(
        _arc(0.0, -0.52, 0.52, 78, 430, 62),
        _line((0.11, -0.01), (0.50, -1.30), 36),
        _line((0.50, -1.30), (0.70, -1.10), 12),
    )
    curves["u"] = _join(
        _line((0.0, 0.0), (-0.06, -0.55), 30),
        _arc(0.20, -0.55, 0.27, 180, 360, 30),
        _line((0.47, -0.55), (0.52, 0.0), 24),
        _line((0.52, 0.0), (0.58, -0.80), 28),
        _line((0.58, -0.80), (0.74, -0.66), 10),
    )
    return curves


def write_trajectories_csv(path, curves: dict[str, np.ndarray]) -> None:
    """Write curves in the trajectory CSV format (labels in given order)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "t", "x", "y"])
        for label, pts in curves.items():
            for t, (x, y) in enumerate(np.asarray(pts, dtype=float)):
                writer.writerow([label, t, repr(float(x)), repr(float(y))])
