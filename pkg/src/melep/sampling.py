"""Seeded sampling of evaluation folds from a label matrix.

Each fold draws a label-count N, then N eligible labels, keeps the records
with at least one positive among them, draws the fold's records without
replacement and splits them into train/test. One sequential MT19937 stream
(numpy RandomState, whose outputs are frozen across numpy versions) drives
the whole run, so a seed pins every fold bit-for-bit regardless of how the
folds are later processed.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .data import LabelMatrix
from .errors import (
    InsufficientLabelsError,
    InsufficientRecordsError,
    ValidationError,
)

__all__ = ["RNG_NAME", "SamplerConfig", "FoldSpec", "eligible_labels", "sample_folds"]

# Recorded in fold-spec documents; the only generator this module uses.
RNG_NAME = "numpy-randomstate-mt19937"


@dataclass(frozen=True)
class SamplerConfig:
    """Fold-sampling parameters.

    Defaults mirror the reference protocol: folds of 1000 records over 2-10
    labels with at least 1000 positives each, split 7:3, 100 folds per run.
    """

    seed: int
    label_count_min: int = 2
    label_count_max: int = 10
    fold_size: int = 1000
    fold_count: int = 100
    train_fraction: float = 0.7
    min_label_positives: int = 1000
    max_retries: int = 20

    def __post_init__(self):
        if self.label_count_min < 2:
            raise ValidationError("label_count_min must be at least 2")
        if self.label_count_max < self.label_count_min:
            raise ValidationError("label_count_max must be >= label_count_min")
        if self.fold_size < 2:
            raise ValidationError("fold_size must be at least 2")
        if self.fold_count < 0:
            raise ValidationError("fold_count must be nonnegative")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValidationError("train_fraction must be strictly between 0 and 1")
        if self.min_label_positives < 1:
            raise ValidationError("min_label_positives must be at least 1")
        if self.max_retries < 0:
            raise ValidationError("max_retries must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FoldSpec:
    """One fold: the chosen label columns and the train/test record ids."""

    fold_id: int
    selected_label_indices: tuple[int, ...]
    train_record_ids: tuple[str, ...]
    test_record_ids: tuple[str, ...]


def eligible_labels(labels: LabelMatrix | np.ndarray, min_positives: int) -> list[int]:
    """Ascending indices of labels with at least ``min_positives`` positives."""
    if isinstance(labels, LabelMatrix):
        values = labels.values
    else:
        values = LabelMatrix.from_array(labels).values
    counts = values.astype(np.int64).sum(axis=0)
    return [int(y) for y in range(values.shape[1]) if counts[y] >= min_positives]


def train_size_for(fold_size: int, train_fraction: float) -> int:
    """Round-half-up train split size; 7:3 on 1000 gives exactly 700."""
    return int(math.floor(train_fraction * fold_size + 0.5))


def sample_folds(labels: LabelMatrix | np.ndarray, config: SamplerConfig) -> list[FoldSpec]:
    """Draw ``config.fold_count`` folds from the label matrix.

    Folds are generated sequentially from one seeded stream. A fold whose
    label subset leaves fewer than ``fold_size`` usable records redraws the
    subset up to ``max_retries`` times, then raises InsufficientRecordsError.
    """
    if not isinstance(labels, LabelMatrix):
        labels = LabelMatrix.from_array(labels)
    eligible = eligible_labels(labels, config.min_label_positives)
    if len(eligible) < config.label_count_max:
        raise InsufficientLabelsError(
            f"only {len(eligible)} labels have >= {config.min_label_positives} "
            f"positives; label_count_max is {config.label_count_max}"
        )
    eligible_arr = np.asarray(eligible, dtype=np.int64)
    values = labels.values
    train_size = train_size_for(config.fold_size, config.train_fraction)

    rng = np.random.RandomState(config.seed)
    folds: list[FoldSpec] = []
    for fold_id in range(config.fold_count):
        chosen = None
        for _attempt in range(config.max_retries + 1):
            n_labels = int(rng.randint(config.label_count_min, config.label_count_max + 1))
            subset = np.sort(rng.choice(eligible_arr, size=n_labels, replace=False))
            usable = np.flatnonzero(values[:, subset].sum(axis=1) > 0)
            if usable.size >= config.fold_size:
                chosen = (subset, usable)
                break
        if chosen is None:
            raise InsufficientRecordsError(
                fold_id,
                f"fold {fold_id}: no label subset yielded {config.fold_size} usable "
                f"records after {config.max_retries} retries",
            )
        subset, usable = chosen
        picked = rng.choice(usable, size=config.fold_size, replace=False)
        train_rows = np.sort(picked[:train_size])
        test_rows = np.sort(picked[train_size:])
        folds.append(
            FoldSpec(
                fold_id=fold_id,
                selected_label_indices=tuple(int(j) for j in subset),
                train_record_ids=tuple(labels.record_ids[i] for i in train_rows),
                test_record_ids=tuple(labels.record_ids[i] for i in test_rows),
            )
        )
    return folds
