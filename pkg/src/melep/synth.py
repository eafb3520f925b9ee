"""Synthetic worlds with checkpoints of controllable transferability.

A world drops records at random latent positions and labels them by linear
functionals with quantile thresholds. A checkpoint predicts through a
logistic link over a direction interpolated between a random one
(alignment 0) and the target label's own (alignment 1), plus gaussian logit
noise, so alignment and noise knobs tune how transferable the checkpoint
should look. downstream_f1_proxy then stands in for actually fine-tuning:
it scores the empirical predictor's transferred test-split predictions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .data import LabelMatrix, PredictionMatrix
from .errors import GenerationError, ValidationError
from .predictor import EmpiricalPredictor
from .stats import f1_report

__all__ = [
    "WorldConfig",
    "SyntheticWorld",
    "SyntheticCheckpoint",
    "generate_world",
    "generate_predictions",
    "downstream_f1_proxy",
]

# Logits are clipped here so generated probabilities stay strictly inside
# (0, 1) even when the link saturates in float64.
_MAX_LOGIT = 30.0
_LABEL_RETRIES = 64


@dataclass(frozen=True)
class WorldConfig:
    """Shape and seed of a synthetic world."""

    seed: int
    record_count: int
    label_count: int
    latent_dim: int = 12
    positive_fraction_range: tuple[float, float] = (0.2, 0.6)

    def __post_init__(self):
        if self.record_count < 4:
            raise ValidationError("record_count must be at least 4")
        if self.label_count < 1:
            raise ValidationError("label_count must be at least 1")
        if self.latent_dim < 1:
            raise ValidationError("latent_dim must be at least 1")
        lo, hi = self.positive_fraction_range
        if not 0.0 < lo <= hi < 1.0:
            raise ValidationError(
                "positive_fraction_range must satisfy 0 < lo <= hi < 1"
            )


@dataclass(frozen=True)
class SyntheticWorld:
    """Latent records plus the target labels' directions and thresholds."""

    config: WorldConfig
    latent: np.ndarray        # (n, d)
    directions: np.ndarray    # (y, d), unit rows
    thresholds: np.ndarray    # (y,)
    record_ids: tuple[str, ...]


@dataclass(frozen=True)
class SyntheticCheckpoint:
    """One simulated source model.

    ``alignment`` in [0, 1] interpolates each source direction between a
    random one and the paired target direction (source z pairs with target
    z mod label_count); ``gain`` scales the logit and ``noise_sigma`` the
    gaussian logit noise.
    """

    checkpoint_id: str
    seed: int
    source_label_count: int
    alignment: float
    noise_sigma: float = 0.0
    gain: float = 3.0

    def __post_init__(self):
        if not self.checkpoint_id:
            raise ValidationError("checkpoint_id must be nonempty")
        if self.source_label_count < 1:
            raise ValidationError("source_label_count must be at least 1")
        if not 0.0 <= self.alignment <= 1.0:
            raise ValidationError("alignment must lie in [0, 1]")
        if not self.noise_sigma >= 0.0:
            raise ValidationError("noise_sigma must be nonnegative")
        if not self.gain > 0.0:
            raise ValidationError("gain must be positive")


def _unit_rows(rows: np.ndarray) -> np.ndarray:
    norms = np.sqrt(np.einsum("kd,kd->k", rows, rows))
    if (norms < 1e-12).any():
        raise GenerationError("drew a zero direction vector")
    return rows / norms[:, None]


def generate_world(config: WorldConfig) -> tuple[SyntheticWorld, LabelMatrix]:
    """Build a world and its label matrix deterministically from the seed.

    Each label redraws its direction and threshold until both classes are
    present, within a fixed retry budget.
    """
    rng = np.random.RandomState(config.seed)
    n, y_count, dim = config.record_count, config.label_count, config.latent_dim
    latent = rng.standard_normal((n, dim))
    lo, hi = config.positive_fraction_range
    directions = np.empty((y_count, dim))
    thresholds = np.empty(y_count)
    columns = np.empty((n, y_count), dtype=np.int8)
    for y in range(y_count):
        for _attempt in range(_LABEL_RETRIES):
            direction = _unit_rows(rng.standard_normal((1, dim)))[0]
            fraction = float(rng.uniform(lo, hi))
            scores = np.einsum("nd,d->n", latent, direction)
            threshold = float(np.quantile(scores, 1.0 - fraction))
            column = scores > threshold
            positives = int(column.sum())
            if 1 <= positives <= n - 1:
                directions[y] = direction
                thresholds[y] = threshold
                columns[:, y] = column
                break
        else:
            raise GenerationError(
                f"label {y}: no threshold produced both classes after "
                f"{_LABEL_RETRIES} attempts"
            )
    record_ids = tuple(f"r{i:06d}" for i in range(n))
    label_names = tuple(f"label_{y:02d}" for y in range(y_count))
    world = SyntheticWorld(config, latent, directions, thresholds, record_ids)
    return world, LabelMatrix(columns, label_names, record_ids)


def generate_predictions(world: SyntheticWorld, checkpoint: SyntheticCheckpoint) -> PredictionMatrix:
    """Simulate the checkpoint's predicted probabilities on the whole world.

    The random direction set and the noise field are drawn before anything
    depends on alignment or noise_sigma, so checkpoints sharing a seed share
    them: sweeping one knob at a fixed seed moves along a common sample path.
    """
    rng = np.random.RandomState(checkpoint.seed)
    z_count = checkpoint.source_label_count
    dim = world.config.latent_dim
    random_dirs = _unit_rows(rng.standard_normal((z_count, dim)))
    noise = rng.standard_normal((world.latent.shape[0], z_count))

    alpha = checkpoint.alignment
    y_count = world.directions.shape[0]
    targets = np.arange(z_count) % y_count
    mixed = (1.0 - alpha) * random_dirs + alpha * world.directions[targets]
    mixed = _unit_rows(mixed)
    scores = np.einsum("nd,zd->nz", world.latent, mixed)
    logits = checkpoint.gain * (scores - world.thresholds[targets])
    logits += checkpoint.noise_sigma * noise
    np.clip(logits, -_MAX_LOGIT, _MAX_LOGIT, out=logits)
    theta = expit(logits)
    names = tuple(f"src_{z:02d}" for z in range(z_count))
    return PredictionMatrix(theta, names, world.record_ids)


def downstream_f1_proxy(theta_train, labels_train, theta_test, labels_test) -> float:
    """Support-weighted F1 of the transferred empirical predictor.

    Fits on the train split, predicts the test split with a 0.5 threshold
    (ties positive) and scores against the test labels. A cheap stand-in for
    fine-tuning the checkpoint on the fold.
    """
    model = EmpiricalPredictor().fit(theta_train, labels_train)
    predicted = model.predict(theta_test)
    return f1_report(labels_test, predicted).weighted_f1
