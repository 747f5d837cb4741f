"""Similarity metrics and PGM round trips."""

import random

import numpy as np
import pytest

from storyboard.errors import MetricError
from storyboard.metrics import image_similarity, read_pgm, write_pgm


def naive_metrics(a, b):
    """Double-loop recomputation in plain Python floats."""
    total_abs = 0.0
    total_sq = 0.0
    count = 0
    for row_a, row_b in zip(a.tolist(), b.tolist()):
        for pa, pb in zip(row_a, row_b):
            diff = float(pa) - float(pb)
            total_abs += abs(diff)
            total_sq += diff * diff
            count += 1
    mae = total_abs / count
    mse = total_sq / count
    return mae, mse, (1.0 - mae / 255.0) * 100.0


def test_identical_grids():
    grid = np.arange(64, dtype=np.uint8).reshape(8, 8)
    assert image_similarity(grid, grid.copy()) == (0.0, 0.0, 100.0)


def test_black_versus_white():
    black = np.zeros((10, 10), dtype=np.uint8)
    white = np.full((10, 10), 255, dtype=np.uint8)
    assert image_similarity(black, white) == (255.0, 65025.0, 0.0)


def test_half_and_half():
    half = np.zeros((10, 10), dtype=np.uint8)
    half[:5, :] = 255
    white = np.full((10, 10), 255, dtype=np.uint8)
    mae, mse, similarity = image_similarity(half, white)
    assert mae == 127.5
    assert mse == 32512.5
    assert similarity == 50.0


def test_matches_naive_oracle():
    rng = np.random.default_rng(42)
    for _ in range(10):
        a = rng.integers(0, 256, size=(9, 7), dtype=np.uint8)
        b = rng.integers(0, 256, size=(9, 7), dtype=np.uint8)
        got = image_similarity(a, b)
        expected = naive_metrics(a, b)
        assert got == pytest.approx(expected, abs=1e-9)


def test_symmetry():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 256, size=(5, 5), dtype=np.uint8)
    b = rng.integers(0, 256, size=(5, 5), dtype=np.uint8)
    assert image_similarity(a, b) == image_similarity(b, a)


def test_shape_mismatch():
    with pytest.raises(MetricError):
        image_similarity(np.zeros((2, 2)), np.zeros((3, 2)))


def test_empty_grids():
    with pytest.raises(MetricError):
        image_similarity(np.zeros((0, 0)), np.zeros((0, 0)))


def test_pgm_round_trip(tmp_path):
    rng = np.random.default_rng(7)
    grid = rng.integers(0, 256, size=(12, 34), dtype=np.uint8)
    path = tmp_path / "page.pgm"
    write_pgm(path, grid)
    assert path.read_bytes().startswith(b"P5\n34 12\n255\n")
    assert np.array_equal(read_pgm(path), grid)


def test_pgm_rejects_non_2d():
    with pytest.raises(MetricError):
        write_pgm("unused.pgm", np.zeros((2, 2, 3), dtype=np.uint8))


def test_read_rejects_ascii_pgm(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P2\n2 2\n255\n0 0 0 0\n")
    with pytest.raises(MetricError):
        read_pgm(path)


def test_read_rejects_wrong_maxval(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n2 2\n127\n" + bytes(4))
    with pytest.raises(MetricError):
        read_pgm(path)


def test_read_rejects_truncated(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + bytes(3))
    with pytest.raises(MetricError) as exc:
        read_pgm(path)
    assert "truncated" in str(exc.value)


def test_read_is_independent_copy(tmp_path):
    path = tmp_path / "a.pgm"
    write_pgm(path, np.zeros((2, 2), dtype=np.uint8))
    grid = read_pgm(path)
    grid[0, 0] = 9  # writable: not a view over the file buffer
    assert grid[0, 0] == 9


def test_random_inputs_bounded():
    rng = random.Random(3)
    for _ in range(20):
        h, w = rng.randint(1, 6), rng.randint(1, 6)
        a = np.array([[rng.randint(0, 255) for _ in range(w)]
                      for _ in range(h)], dtype=np.uint8)
        b = np.array([[rng.randint(0, 255) for _ in range(w)]
                      for _ in range(h)], dtype=np.uint8)
        mae, mse, similarity = image_similarity(a, b)
        assert 0.0 <= mae <= 255.0
        assert 0.0 <= mse <= 65025.0
        assert 0.0 <= similarity <= 100.0
