"""Ridge classification over standardized features with cross-validated
regularization strength.

Targets are encoded one-vs-rest as signed indicator columns, the
regularized least-squares problem is solved per class on standardized
features with an unpenalized intercept, and the regularization strength
is chosen from a grid by leave-one-out cross-validation in closed form
(via the hat-matrix identity on one singular value decomposition).
Larger training sets fall back to deterministic k-fold validation.
Prediction takes the argmax over class scores with ties broken toward
the lower class index.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .errors import (
    EmptyFeaturesError,
    LengthMismatchError,
    ShapeMismatchError,
    SingleClassError,
)

SCALE_EPS = 1e-12


def default_alphas() -> np.ndarray:
    """Ten log-spaced regularization strengths spanning 1e-3 to 1e3."""
    return np.logspace(-3, 3, 10)


def accuracy(predicted, actual) -> float:
    """Fraction of matching entries."""
    predicted = np.asarray(predicted)
    actual = np.asarray(actual)
    if predicted.shape[0] != actual.shape[0]:
        raise LengthMismatchError(
            f"got {predicted.shape[0]} predictions for {actual.shape[0]} labels"
        )
    return float(np.mean(predicted == actual))


def _signed_indicators(y, classes) -> np.ndarray:
    out = -np.ones((len(y), len(classes)))
    for j, cls in enumerate(classes):
        out[np.asarray(y) == cls, j] = 1.0
    return out


def _solve_weights(Xc, Yc, alpha, svd=None):
    """Ridge weights on centered data for one alpha."""
    if svd is None:
        svd = np.linalg.svd(Xc, full_matrices=False)
    U, S, Vt = svd
    shrink = S / (S**2 + alpha)
    return Vt.T @ (shrink[:, None] * (U.T @ Yc))


class CvRidgeClassifier(ClassifierMixin, BaseEstimator):
    """Ridge classifier with closed-form leave-one-out model selection.

    Parameters
    ----------
    alphas : array-like, optional
        Candidate regularization strengths; defaults to
        ``logspace(-3, 3, 10)``.
    loo_threshold : int, default=2048
        Above this many training samples, model selection switches from
        closed-form leave-one-out to deterministic k-fold validation.
    n_folds : int, default=5
        Fold count for the k-fold path.

    Attributes
    ----------
    classes_ : ndarray
        Sorted class labels.
    alpha_ : float
        Selected regularization strength.
    coef_ : ndarray of shape (n_features, n_classes)
    intercept_ : ndarray of shape (n_classes,)
    cv_errors_ : ndarray
        Mean squared validation residual per candidate alpha.
    """

    def __init__(self, alphas=None, loo_threshold=2048, n_folds=5):
        self.alphas = alphas
        self.loo_threshold = loo_threshold
        self.n_folds = n_folds

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if X.ndim != 2:
            raise ValueError(f"X must be 2-dimensional, got shape {X.shape}")
        n, m = X.shape
        if m == 0:
            raise EmptyFeaturesError("fit needs at least one feature column")
        if n < 2:
            raise ValueError("fit needs at least two samples")
        if y.shape[0] != n:
            raise LengthMismatchError(f"got {n} rows but {y.shape[0]} labels")
        classes = np.unique(y)
        if classes.size < 2:
            raise SingleClassError("fit needs at least two classes")
        alphas = np.asarray(
            default_alphas() if self.alphas is None else self.alphas, dtype=np.float64
        )

        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale_ = np.where(std < SCALE_EPS, 1.0, std)
        Xs = (X - self.mean_) / self.scale_

        Y = _signed_indicators(y, classes)
        col_mean = Xs.mean(axis=0)
        y_mean = Y.mean(axis=0)
        Xc = Xs - col_mean
        Yc = Y - y_mean

        if n <= self.loo_threshold:
            errors = self._loo_errors(Xc, Yc, alphas)
        else:
            errors = self._kfold_errors(Xs, Y, alphas)
        best = int(np.argmin(errors))

        self.classes_ = classes
        self.alpha_ = float(alphas[best])
        self.cv_errors_ = errors
        W = _solve_weights(Xc, Yc, self.alpha_)
        self.coef_ = W
        self.intercept_ = y_mean - col_mean @ W
        self.n_features_in_ = m
        return self

    @staticmethod
    def _loo_errors(Xc, Yc, alphas):
        """Closed-form leave-one-out mean squared errors per alpha.

        With the smoother ``H = J/n + U diag(s/(s+a)) U^T`` of the
        intercept-plus-ridge model, the held-out residual at sample i is
        ``(y_i - yhat_i) / (1 - H_ii)`` exactly.
        """
        n = Xc.shape[0]
        U, S, _ = np.linalg.svd(Xc, full_matrices=False)
        UtY = U.T @ Yc
        U2 = U**2
        s2 = S**2
        errors = np.empty(len(alphas))
        for j, alpha in enumerate(alphas):
            d = s2 / (s2 + alpha)
            fitted = U @ (d[:, None] * UtY)
            h_diag = 1.0 / n + U2 @ d
            loo = (Yc - fitted) / (1.0 - h_diag)[:, None]
            errors[j] = np.mean(loo**2)
        return errors

    def _kfold_errors(self, Xs, Y, alphas):
        n = Xs.shape[0]
        folds = np.array_split(np.arange(n), self.n_folds)
        errors = np.zeros(len(alphas))
        for fold in folds:
            train = np.setdiff1d(np.arange(n), fold, assume_unique=True)
            col_mean = Xs[train].mean(axis=0)
            y_mean = Y[train].mean(axis=0)
            Xc = Xs[train] - col_mean
            Yc = Y[train] - y_mean
            svd = np.linalg.svd(Xc, full_matrices=False)
            for j, alpha in enumerate(alphas):
                W = _solve_weights(Xc, Yc, alpha, svd=svd)
                pred = (Xs[fold] - col_mean) @ W + y_mean
                errors[j] += np.sum((Y[fold] - pred) ** 2)
        return errors / (n * Y.shape[1])

    def decision_function(self, X):
        if not hasattr(self, "coef_"):
            raise NotFittedError("this CvRidgeClassifier instance is not fitted yet")
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ShapeMismatchError(
                f"expected shape (*, {self.n_features_in_}), got {X.shape}"
            )
        return ((X - self.mean_) / self.scale_) @ self.coef_ + self.intercept_

    def predict(self, X):
        scores = self.decision_function(X)
        return self.classes_[np.argmax(scores, axis=1)]

    def score(self, X, y):
        return accuracy(self.predict(X), y)
