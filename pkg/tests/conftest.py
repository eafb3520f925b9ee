"""Shared fixtures: the worked 4x2 instance and a random-instance factory.

The ``tools`` directory holds the slow reference implementations the tests
compare against; it is put on sys.path here so test modules can import them
without packaging tricks.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

TOOLS_DIR = Path(__file__).resolve().parent.parent / "tools"
if str(TOOLS_DIR) not in sys.path:
    sys.path.insert(0, str(TOOLS_DIR))


@pytest.fixture
def instance_a():
    """Small hand-checkable instance used for the frozen-value tests."""
    theta = np.array([
        [0.9, 0.2],
        [0.8, 0.7],
        [0.1, 0.6],
        [0.3, 0.4],
    ])
    labels = np.array([
        [1, 0],
        [1, 1],
        [0, 1],
        [0, 0],
    ])
    return theta, labels


def random_instance(rng, max_records=50, max_targets=5, max_sources=5):
    """Random (theta, labels) pair where every target label is mixed.

    Each label column gets at least one positive and one negative so the
    weight computation never degenerates.
    """
    n = int(rng.randint(2, max_records + 1))
    y_count = int(rng.randint(1, max_targets + 1))
    z_count = int(rng.randint(1, max_sources + 1))
    theta = rng.rand(n, z_count)
    while True:
        labels = (rng.rand(n, y_count) < rng.uniform(0.2, 0.8)).astype(np.int64)
        pos = labels.sum(axis=0)
        if ((pos > 0) & (pos < n)).all():
            return theta, labels


@pytest.fixture
def make_instance():
    return random_instance
