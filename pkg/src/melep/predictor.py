"""Empirical predictor as a scikit-learn compatible estimator.

Fitting learns, for every (target, source) label pair, the conditional
positive rate of the target given the source model's prediction outcome.
Prediction mixes those rates by each record's predicted probabilities and
averages over source columns, giving a training-free transferred classifier.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .metric import _PairTables
from .validation import check_label_matrix, check_paired, check_prediction_matrix

__all__ = ["EmpiricalPredictor"]


class EmpiricalPredictor(BaseEstimator):
    """Transferred multi-label classifier built from pair statistics.

    Parameters
    ----------
    positive_threshold : float, default 0.5
        Probability at or above which predict() emits a positive; ties go
        positive.
    """

    def __init__(self, positive_threshold: float = 0.5):
        self.positive_threshold = positive_threshold

    def fit(self, X, y):
        """Learn pair conditionals from source predictions X and target labels y."""
        theta = check_prediction_matrix(X)
        labels = check_label_matrix(y)
        check_paired(theta, labels)
        tables = _PairTables(theta, labels)
        # P(target positive | source outcome s), shape (y, z) per outcome
        self.conditional_given_negative_ = tables.c10
        self.conditional_given_positive_ = tables.c11
        self.n_features_in_ = theta.shape[1]
        self.n_outputs_ = labels.shape[1]
        return self

    def predict_proba(self, X) -> np.ndarray:
        """(n, y) positive probabilities, averaged over source columns."""
        check_is_fitted(self, "conditional_given_positive_")
        theta = check_prediction_matrix(X)
        if theta.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {theta.shape[1]} source columns, expected {self.n_features_in_}"
            )
        c0 = self.conditional_given_negative_
        c1 = self.conditional_given_positive_
        # mean over z of c0[y,z]*(1-theta[n,z]) + c1[y,z]*theta[n,z]
        mixed = np.einsum("nz,yz->ny", theta, c1 - c0)
        proba = (mixed + np.einsum("yz->y", c0)) / self.n_features_in_
        return np.clip(proba, 0.0, 1.0)

    def predict(self, X) -> np.ndarray:
        """(n, y) binary predictions; ties at the threshold go positive."""
        proba = self.predict_proba(X)
        return (proba >= self.positive_threshold).astype(np.int8)
