"""Overlay plots (target vs. generated) as standalone SVG polylines.

One plot per per-sample CSV written by a run: 2-D sequences are drawn in
the plane, 1-D sequences against the time index. Every CSV row becomes one
polyline point in each of the two series.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DataFormatError

_WIDTH, _HEIGHT, _MARGIN = 640, 480, 40


def read_run_csv(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (t, target, output) arrays from one per-sample CSV."""
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "t" or (len(header) - 1) % 2:
            raise DataFormatError(f"{path}: expected header t,target...,output...")
        dim = (len(header) - 1) // 2
        rows = [row for row in reader if row]
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    data = np.array(rows, dtype=np.float64)
    return data[:, 0], data[:, 1:1 + dim], data[:, 1 + dim:1 + 2 * dim]


def _scale(points: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    unit = (points - lo) / span
    px = _MARGIN + unit[:, 0] * (_WIDTH - 2 * _MARGIN)
    py = _HEIGHT - _MARGIN - unit[:, 1] * (_HEIGHT - 2 * _MARGIN)
    return np.column_stack([px, py])


def _polyline(points: np.ndarray, color: str, dash: str = "") -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
            f'{dash_attr} points="{coords}"/>')


def render_sequence_svg(t: np.ndarray, target: np.ndarray, output: np.ndarray,
                        title: str) -> str:
    if target.shape[1] >= 2:
        tgt_xy, out_xy = target[:, :2], output[:, :2]
    else:
        tgt_xy = np.column_stack([t, target[:, 0]])
        out_xy = np.column_stack([t, output[:, 0]])
    both = np.vstack([tgt_xy, out_xy])
    lo, hi = both.min(axis=0), both.max(axis=0)
    pad = 0.05 * np.where(hi - lo > 0, hi - lo, 1.0)
    lo, hi = lo - pad, hi + pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_MARGIN}" y="24" font-family="sans-serif" '
        f'font-size="16">{title}</text>',
        f'<text x="{_WIDTH - 200}" y="24" font-family="sans-serif" '
        f'font-size="12" fill="#555555">dashed: target / solid: output</text>',
        _polyline(_scale(tgt_xy, lo, hi), "#555555", dash="5,4"),
        _polyline(_scale(out_xy, lo, hi), "#d62728"),
        "</svg>",
    ]
    return "\n".join(parts)


def emit_plots(run_dir) -> list[Path]:
    """Render one SVG per ``seq_*.csv`` in a run directory."""
    run_dir = Path(run_dir)
    csvs = sorted(run_dir.glob("seq_*.csv"))
    if not csvs:
        raise DataFormatError(f"no seq_*.csv files found in {run_dir}")
    written = []
    for csv_path in csvs:
        label = csv_path.stem[len("seq_"):]
        t, target, output = read_run_csv(csv_path)
        svg = render_sequence_svg(t, target, output, title=label)
        out_path = run_dir / f"plot_{label}.svg"
        out_path.write_text(svg)
        written.append(out_path)
    return written
