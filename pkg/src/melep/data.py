"""Named prediction/label matrices and id-based pairing.

The numeric core works on bare arrays; these wrappers carry the record ids
and label names that files provide, so folds and reports can reference
records stably. Pairing two files means reordering the predictions into the
label file's record order and is only legal when the id sets match exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import PairingError, ValidationError
from .validation import check_label_matrix, check_prediction_matrix

__all__ = ["PredictionMatrix", "LabelMatrix", "align_predictions"]


def _check_names(names: Sequence[str], count: int, kind: str) -> tuple[str, ...]:
    names = tuple(str(v) for v in names)
    if len(names) != count:
        raise ValidationError(f"{kind} count {len(names)} does not match matrix width {count}")
    if len(set(names)) != len(names):
        raise ValidationError(f"duplicate {kind}")
    return names


def _check_ids(ids: Sequence[str], count: int) -> tuple[str, ...]:
    ids = tuple(str(v) for v in ids)
    if len(ids) != count:
        raise ValidationError(f"record id count {len(ids)} does not match row count {count}")
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate record ids")
    return ids


@dataclass(frozen=True)
class PredictionMatrix:
    """(n, z) matrix of predicted positive probabilities with names and ids."""

    values: np.ndarray
    label_names: tuple[str, ...]
    record_ids: tuple[str, ...]

    def __post_init__(self):
        values = check_prediction_matrix(self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(
            self, "label_names", _check_names(self.label_names, values.shape[1], "source label names")
        )
        object.__setattr__(self, "record_ids", _check_ids(self.record_ids, values.shape[0]))

    @classmethod
    def from_array(cls, values, label_names=None, record_ids=None) -> "PredictionMatrix":
        arr = check_prediction_matrix(values)
        if label_names is None:
            label_names = [f"src_{j:02d}" for j in range(arr.shape[1])]
        if record_ids is None:
            record_ids = [f"r{i:06d}" for i in range(arr.shape[0])]
        return cls(arr, tuple(label_names), tuple(record_ids))

    @property
    def n_records(self) -> int:
        return self.values.shape[0]

    @property
    def n_labels(self) -> int:
        return self.values.shape[1]

    def id_index(self) -> dict[str, int]:
        return {rid: i for i, rid in enumerate(self.record_ids)}


@dataclass(frozen=True)
class LabelMatrix:
    """(n, y) binary ground-truth matrix with names and ids."""

    values: np.ndarray
    label_names: tuple[str, ...]
    record_ids: tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = check_label_matrix(self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(
            self, "label_names", _check_names(self.label_names, values.shape[1], "target label names")
        )
        object.__setattr__(self, "record_ids", _check_ids(self.record_ids, values.shape[0]))

    @classmethod
    def from_array(cls, values, label_names=None, record_ids=None) -> "LabelMatrix":
        arr = check_label_matrix(values)
        if label_names is None:
            label_names = [f"label_{j:02d}" for j in range(arr.shape[1])]
        if record_ids is None:
            record_ids = [f"r{i:06d}" for i in range(arr.shape[0])]
        return cls(arr, tuple(label_names), tuple(record_ids))

    @property
    def n_records(self) -> int:
        return self.values.shape[0]

    @property
    def n_labels(self) -> int:
        return self.values.shape[1]

    def id_index(self) -> dict[str, int]:
        return {rid: i for i, rid in enumerate(self.record_ids)}

    def select_labels(self, indices: Sequence[int]) -> "LabelMatrix":
        """Column-subset copy keeping record ids; indices must be in range."""
        idx = list(indices)
        for j in idx:
            if not 0 <= j < self.n_labels:
                raise IndexError(f"label index {j} out of range for {self.n_labels} labels")
        return LabelMatrix(
            self.values[:, idx],
            tuple(self.label_names[j] for j in idx),
            self.record_ids,
        )


def align_predictions(preds: PredictionMatrix, labels: LabelMatrix) -> PredictionMatrix:
    """Reorder predictions into the label matrix's record order.

    Raises PairingError unless the two id sets match exactly.
    """
    pred_index = preds.id_index()
    missing = [rid for rid in labels.record_ids if rid not in pred_index]
    label_ids = set(labels.record_ids)
    extra = [rid for rid in preds.record_ids if rid not in label_ids]
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"{len(missing)} label ids missing from predictions (e.g. {missing[:3]})")
        if extra:
            parts.append(f"{len(extra)} prediction ids absent from labels (e.g. {extra[:3]})")
        raise PairingError("; ".join(parts))
    order = [pred_index[rid] for rid in labels.record_ids]
    return PredictionMatrix(preds.values[order], preds.label_names, labels.record_ids)
