"""Transferability score for multi-label classifiers.

Given a matrix of predicted positive probabilities produced by a source
model (one column per source label) and a binary ground-truth matrix for the
target task (one column per target label), each (target, source) label pair
gets scored by the average negative log of an empirical predictor built from
their joint statistics; the final score averages those pair scores with
target-imbalance weights. Lower scores indicate a checkpoint that transfers
better.

All reductions run in a fixed ascending-record order (einsum without
optimization, no BLAS dispatch), so results are bit-identical across runs
and parallelism settings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLabelError, ValidationError
from .validation import (
    check_label_matrix,
    check_paired,
    check_prediction_matrix,
    check_vector,
)

__all__ = [
    "LIKELIHOOD_FLOOR",
    "PairDistribution",
    "PairNll",
    "TargetWeights",
    "MelepReport",
    "pair_distribution",
    "pair_nll",
    "pair_positive_proba",
    "target_weights",
    "melep_report",
    "melep_score",
]

# Floor applied to the per-record likelihood before the log; every
# application is counted and surfaced in the report.
LIKELIHOOD_FLOOR = 1e-12


# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairDistribution:
    """Empirical distributions for one (target, source) label pair.

    ``joint[t, s]`` is the mass of ground-truth value ``t`` co-occurring with
    prediction outcome ``s`` (``s = 1`` weighted by the predicted probability,
    ``s = 0`` by its complement). ``marginal[s]`` sums the joint over ``t``
    and is identical for every target label at a fixed source column.
    ``conditional[t, s]`` is ``joint / marginal`` with all-zero columns where
    the marginal is zero.
    """

    target_label: int
    source_label: int
    joint: np.ndarray
    marginal: np.ndarray
    conditional: np.ndarray


@dataclass(frozen=True)
class PairNll:
    """Average negative log-likelihood of one pair's empirical predictor."""

    value: float
    clamp_events: int


@dataclass(frozen=True)
class TargetWeights:
    """Positive/negative odds per target label, used to weight pair scores."""

    weights: np.ndarray
    positive_counts: np.ndarray
    negative_counts: np.ndarray


@dataclass(frozen=True)
class MelepReport:
    """Full scoring output.

    ``pair_nll[y, z]`` holds every pair score, ``per_label`` its unweighted
    mean over source columns, ``melep`` the weighted average
    ``sum(weights * per_label) / y_count``. ``source_weighted_melep`` is only
    present when source weights were supplied.
    """

    melep: float
    pair_nll: np.ndarray
    per_label: np.ndarray
    weights: TargetWeights
    clamp_events: int
    source_weighted_melep: float | None = None


# ---------------------------------------------------------------------------
# pair statistics
# ---------------------------------------------------------------------------


class _PairTables:
    """Joint/marginal/conditional arrays for every (target, source) pair.

    The marginal is reduced once per source column over all records, so it is
    bit-identical across target labels; the complement joint row is derived
    from it rather than summed separately.
    """

    __slots__ = ("n", "m0", "m1", "j00", "j01", "j10", "j11",
                 "c00", "c01", "c10", "c11")

    def __init__(self, theta: np.ndarray, labels: np.ndarray):
        n = theta.shape[0]
        lab = labels.astype(np.float64)
        comp = 1.0 - theta
        self.n = n
        self.m1 = np.einsum("nz->z", theta) / n
        self.m0 = np.einsum("nz->z", comp) / n
        self.j11 = np.einsum("ny,nz->yz", lab, theta) / n
        self.j10 = np.einsum("ny,nz->yz", lab, comp) / n
        self.j01 = np.clip(self.m1 - self.j11, 0.0, None)
        self.j00 = np.clip(self.m0 - self.j10, 0.0, None)
        self.c11 = _safe_div(self.j11, self.m1)
        self.c01 = _safe_div(self.j01, self.m1)
        self.c10 = _safe_div(self.j10, self.m0)
        self.c00 = _safe_div(self.j00, self.m0)


def _safe_div(joint: np.ndarray, marginal: np.ndarray) -> np.ndarray:
    """joint / marginal with all-zero output where the marginal is zero."""
    out = np.zeros_like(joint)
    np.divide(joint, marginal, out=out, where=marginal > 0.0)
    return out


def _nll_matrix(theta: np.ndarray, labels: np.ndarray, tables: _PairTables):
    """Pair score matrix (y, z) plus the total clamp count."""
    n, z_count = theta.shape
    y_count = labels.shape[1]
    comp = 1.0 - theta
    phi = np.empty((y_count, z_count), dtype=np.float64)
    clamps = 0
    for y in range(y_count):
        pos = labels[:, y] == 1
        like_pos = comp * tables.c10[y] + theta * tables.c11[y]
        like_neg = comp * tables.c00[y] + theta * tables.c01[y]
        like = np.where(pos[:, None], like_pos, like_neg)
        np.minimum(like, 1.0, out=like)
        clamps += int((like < LIKELIHOOD_FLOOR).sum())
        np.maximum(like, LIKELIHOOD_FLOOR, out=like)
        phi[y] = -np.einsum("nz->z", np.log(like)) / n + 0.0
    return phi, clamps


def _validated(theta, labels):
    theta = check_prediction_matrix(theta)
    labels = check_label_matrix(labels)
    check_paired(theta, labels)
    return theta, labels


def _check_pair_index(index: int, bound: int, kind: str) -> int:
    index = int(index)
    if not 0 <= index < bound:
        raise IndexError(f"{kind} index {index} out of range [0, {bound})")
    return index


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------


def pair_distribution(theta, labels, target: int, source: int) -> PairDistribution:
    """Empirical joint/marginal/conditional for one (target, source) pair."""
    theta, labels = _validated(theta, labels)
    target = _check_pair_index(target, labels.shape[1], "target label")
    source = _check_pair_index(source, theta.shape[1], "source label")
    t = _PairTables(theta, labels)
    joint = np.array([[t.j00[target, source], t.j01[target, source]],
                      [t.j10[target, source], t.j11[target, source]]])
    marginal = np.array([t.m0[source], t.m1[source]])
    conditional = np.array([[t.c00[target, source], t.c01[target, source]],
                            [t.c10[target, source], t.c11[target, source]]])
    return PairDistribution(target, source, joint, marginal, conditional)


def pair_nll(theta, labels, pair: PairDistribution) -> PairNll:
    """Average negative log-likelihood of the pair's empirical predictor.

    ``pair`` must have been computed from the same ``theta``/``labels``; the
    likelihood of each record's true value is floored at LIKELIHOOD_FLOOR
    before the log and each floor application is counted.
    """
    theta, labels = _validated(theta, labels)
    target = _check_pair_index(pair.target_label, labels.shape[1], "target label")
    source = _check_pair_index(pair.source_label, theta.shape[1], "source label")
    col = theta[:, source]
    truth = labels[:, target].astype(np.intp)
    cond = pair.conditional[truth]  # (n, 2) rows of conditional[t_i]
    like = cond[:, 0] * (1.0 - col) + cond[:, 1] * col
    np.minimum(like, 1.0, out=like)
    clamps = int((like < LIKELIHOOD_FLOOR).sum())
    np.maximum(like, LIKELIHOOD_FLOOR, out=like)
    value = float(-np.einsum("n->", np.log(like)) / theta.shape[0] + 0.0)
    return PairNll(value, clamps)


def pair_positive_proba(theta, labels, target: int, source: int) -> np.ndarray:
    """Per-record positive probability from one pair's empirical predictor.

    Mixing the conditional positive rates by each record's predicted
    probability gives the pair's transferred prediction for the target label.
    """
    theta, labels = _validated(theta, labels)
    target = _check_pair_index(target, labels.shape[1], "target label")
    source = _check_pair_index(source, theta.shape[1], "source label")
    t = _PairTables(theta, labels)
    col = theta[:, source]
    proba = t.c10[target, source] * (1.0 - col) + t.c11[target, source] * col
    return np.clip(proba, 0.0, 1.0)


def target_weights(labels, cap: float | None = None) -> TargetWeights:
    """Positive/negative odds per target label.

    A label with no negatives has infinite odds: that raises
    DegenerateLabelError unless ``cap`` is given, in which case every weight
    is clipped at ``cap``. A label with no positives gets weight zero.
    """
    labels = check_label_matrix(labels)
    if cap is not None:
        cap = float(cap)
        if not np.isfinite(cap) or cap <= 0.0:
            raise ValidationError(f"cap must be a positive finite number, got {cap!r}")
    n = labels.shape[0]
    positives = labels.astype(np.int64).sum(axis=0)
    negatives = n - positives
    weights = np.empty(labels.shape[1], dtype=np.float64)
    for y in range(labels.shape[1]):
        if negatives[y] == 0:
            if cap is None:
                raise DegenerateLabelError(y)
            weights[y] = cap
        else:
            weights[y] = positives[y] / negatives[y]
    if cap is not None:
        np.minimum(weights, cap, out=weights)
    return TargetWeights(weights, positives, negatives)


def melep_report(theta, labels, *, cap: float | None = None,
                 source_weights=None) -> MelepReport:
    """Score a checkpoint's predictions against target ground truth.

    Parameters
    ----------
    theta : (n, z) array-like of probabilities in [0, 1]
    labels : (n, y) array-like of 0/1 ground truth
    cap : optional positive float substituted for infinite label odds
    source_weights : optional length-z nonnegative vector; when given, an
        additional score replaces the uniform source average with these
        weights normalized to sum to one.

    Returns
    -------
    MelepReport
    """
    theta, labels = _validated(theta, labels)
    tables = _PairTables(theta, labels)
    phi, clamps = _nll_matrix(theta, labels, tables)
    weights = target_weights(labels, cap=cap)
    y_count, z_count = phi.shape
    per_label = np.einsum("yz->y", phi) / z_count
    score = float(np.einsum("y->", weights.weights * per_label) / y_count)

    weighted_score = None
    if source_weights is not None:
        vec = check_vector(source_weights, "source weights", length=z_count)
        if (vec < 0.0).any():
            raise ValidationError("source weights must be nonnegative")
        total = float(np.einsum("z->", vec))
        if total <= 0.0:
            raise ValidationError("source weights must have positive sum")
        normalized = vec / total
        weighted_per_label = np.einsum("yz,z->y", phi, normalized)
        weighted_score = float(
            np.einsum("y->", weights.weights * weighted_per_label) / y_count
        )

    return MelepReport(
        melep=score,
        pair_nll=phi,
        per_label=per_label,
        weights=weights,
        clamp_events=clamps,
        source_weighted_melep=weighted_score,
    )


def melep_score(theta, labels, *, cap: float | None = None,
                source_weights=None) -> float:
    """The scalar score alone; see melep_report for the full output."""
    return melep_report(theta, labels, cap=cap, source_weights=source_weights).melep
