"""Pixel-level comparison of rendered pages.

Grids are 8-bit grayscale.  Similarity maps mean absolute error onto a
percentage: (1 - MAE/255) x 100, so identical grids score 100 and
black-vs-white scores 0.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import MetricError


def image_similarity(a, b) -> tuple[float, float, float]:
    """(MAE, MSE, similarity %) for two equally sized grayscale grids."""
    ga = np.asarray(a, dtype=np.float64)
    gb = np.asarray(b, dtype=np.float64)
    if ga.shape != gb.shape:
        raise MetricError(f"grid shapes differ: {ga.shape} vs {gb.shape}")
    if ga.size == 0:
        raise MetricError("empty grids cannot be compared")
    diff = ga - gb
    mae = float(np.mean(np.abs(diff)))
    mse = float(np.mean(diff * diff))
    similarity = (1.0 - mae / 255.0) * 100.0
    return mae, mse, similarity


def write_pgm(path, grid) -> None:
    """Binary (P5) grayscale output, maxval 255."""
    arr = np.asarray(grid, dtype=np.uint8)
    if arr.ndim != 2:
        raise MetricError("PGM grids must be two-dimensional")
    height, width = arr.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + arr.tobytes())


def read_pgm(path):
    data = Path(path).read_bytes()
    match = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if match is None:
        raise MetricError(f"{path} is not a binary P5 PGM file")
    width, height, maxval = (int(g) for g in match.groups())
    if maxval != 255:
        raise MetricError(f"{path}: unsupported maxval {maxval}")
    pixels = data[match.end():]
    if len(pixels) < width * height:
        raise MetricError(f"{path}: truncated pixel data")
    arr = np.frombuffer(pixels[: width * height], dtype=np.uint8)
    return arr.reshape((height, width)).copy()
