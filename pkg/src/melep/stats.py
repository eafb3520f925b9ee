"""Evaluation statistics: per-label F1, correlation, distance binning.

These back the study protocol: weighted F1 summarizes transfer quality on a
fold's test split, the Pearson fit quantifies how well the transferability
score predicts it, and binning summarizes the relationship coarsely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .errors import (
    ConstantInputError,
    DegenerateRangeError,
    LengthMismatchError,
    NoSupportError,
    TooFewPointsError,
    ValidationError,
)
from .validation import check_label_matrix, check_paired, check_vector

__all__ = [
    "ConfusionCounts",
    "F1Report",
    "CorrelationResult",
    "DistanceBinning",
    "confusion_counts",
    "f1_report",
    "pearson",
    "bin_by_distance",
    "BINNING_MODES",
]

BINNING_MODES = ("equal-width", "quantile")


@dataclass(frozen=True)
class ConfusionCounts:
    """Per-label true-positive / false-positive / false-negative counts."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray


@dataclass(frozen=True)
class F1Report:
    """Per-label precision/recall/F1 plus the support-weighted aggregate.

    ``support_weights`` are each label's share of all positives and sum to
    one; 0/0 ratios (no predicted or no true positives) resolve to zero.
    """

    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support_weights: np.ndarray
    weighted_f1: float


@dataclass(frozen=True)
class CorrelationResult:
    """Pearson r with a two-sided p-value and the least-squares fit line."""

    r: float
    p_value: float
    sample_count: int
    fit_slope: float
    fit_intercept: float


@dataclass(frozen=True)
class DistanceBinning:
    """Four-bin summary of score/F1 points.

    ``bin_mean_f1`` entries are None for empty bins; the last bin is
    right-inclusive.
    """

    mode: str
    bin_edges: np.ndarray
    bin_mean_f1: tuple[float | None, ...]
    bin_counts: np.ndarray


def _binary_pair(truth, predicted):
    truth = check_label_matrix(truth, name="truth")
    predicted = check_label_matrix(predicted, name="predictions")
    check_paired(truth, predicted)
    if truth.shape[1] != predicted.shape[1]:
        raise LengthMismatchError(
            f"truth has {truth.shape[1]} labels but predictions have {predicted.shape[1]}"
        )
    return truth, predicted


def confusion_counts(truth, predicted) -> ConfusionCounts:
    """Per-label confusion counts for binary matrices of equal shape."""
    truth, predicted = _binary_pair(truth, predicted)
    t = truth.astype(np.int64)
    p = predicted.astype(np.int64)
    tp = np.einsum("ny->y", t * p)
    fp = np.einsum("ny->y", (1 - t) * p)
    fn = np.einsum("ny->y", t * (1 - p))
    return ConfusionCounts(tp, fp, fn)


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros(num.shape, dtype=np.float64)
    np.divide(num, den, out=out, where=den > 0)
    return out


def f1_report(truth, predicted) -> F1Report:
    """Per-label precision/recall/F1 and the support-weighted F1.

    Raises NoSupportError when the truth matrix has no positives at all.
    """
    counts = confusion_counts(truth, predicted)
    support = counts.tp + counts.fn
    total = int(support.sum())
    if total == 0:
        raise NoSupportError("truth matrix has no positive labels anywhere")
    precision = _safe_ratio(counts.tp, counts.tp + counts.fp)
    recall = _safe_ratio(counts.tp, support)
    f1 = _safe_ratio(2.0 * precision * recall, precision + recall)
    support_weights = support / total
    weighted = float(np.einsum("y->", support_weights * f1))
    return F1Report(precision, recall, f1, support_weights, weighted)


def pearson(xs, ys) -> CorrelationResult:
    """Pearson correlation with a two-sided p-value and fit line.

    The p-value comes from the exact Student-t law of r under the null,
    evaluated through the regularized incomplete beta function. Needs at
    least three points and nonconstant inputs.
    """
    xs = check_vector(xs, "xs")
    ys = check_vector(ys, "ys")
    if xs.size != ys.size:
        raise LengthMismatchError(f"xs has {xs.size} points but ys has {ys.size}")
    m = int(xs.size)
    if m < 3:
        raise TooFewPointsError(f"need at least 3 points, got {m}")
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    sxx = float(np.einsum("n->", xc * xc))
    syy = float(np.einsum("n->", yc * yc))
    if sxx == 0.0:
        raise ConstantInputError("xs is constant")
    if syy == 0.0:
        raise ConstantInputError("ys is constant")
    sxy = float(np.einsum("n->", xc * yc))
    r = max(-1.0, min(1.0, sxy / np.sqrt(sxx * syy)))
    df = m - 2
    if abs(r) == 1.0:
        p = 0.0
    else:
        t_squared = df * r * r / (1.0 - r * r)
        p = float(betainc(df / 2.0, 0.5, df / (df + t_squared)))
    slope = sxy / sxx
    intercept = float(ys.mean() - slope * xs.mean())
    return CorrelationResult(float(r), p, m, float(slope), intercept)


def bin_by_distance(scores, f1_values, mode: str = "equal-width",
                    value_range: tuple[float, float] | None = None) -> DistanceBinning:
    """Group score/F1 points into four score bins and average F1 per bin.

    Equal-width bins span ``value_range`` (observed [min, max] by default);
    quantile bins use the score quartiles. Bins are right-open except the
    last, which includes the upper edge.
    """
    scores = check_vector(scores, "scores")
    f1_values = check_vector(f1_values, "f1 values")
    if scores.size != f1_values.size:
        raise LengthMismatchError(
            f"scores has {scores.size} points but f1 values has {f1_values.size}"
        )
    if scores.size < 4:
        raise TooFewPointsError(f"need at least 4 points, got {scores.size}")
    if mode not in BINNING_MODES:
        raise ValidationError(f"unknown binning mode {mode!r}; expected one of {BINNING_MODES}")

    if mode == "equal-width":
        if value_range is None:
            lo, hi = float(scores.min()), float(scores.max())
        else:
            lo, hi = float(value_range[0]), float(value_range[1])
        if not hi > lo:
            raise DegenerateRangeError(f"score range [{lo}, {hi}] has zero width")
        if value_range is not None and ((scores < lo).any() or (scores > hi).any()):
            raise ValidationError(f"scores fall outside the supplied range [{lo}, {hi}]")
        edges = np.linspace(lo, hi, 5)
    else:
        edges = np.quantile(scores, [0.0, 0.25, 0.5, 0.75, 1.0])
        if not (np.diff(edges) > 0).all():
            raise DegenerateRangeError(
                "score quartiles are not strictly ascending; too many tied values"
            )

    idx = np.searchsorted(edges, scores, side="right") - 1
    np.clip(idx, 0, 3, out=idx)
    counts = np.bincount(idx, minlength=4)
    means: list[float | None] = []
    for b in range(4):
        members = f1_values[idx == b]
        means.append(float(members.mean()) if members.size else None)
    return DistanceBinning(mode, edges, tuple(means), counts)
