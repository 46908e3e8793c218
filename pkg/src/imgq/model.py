"""Logistic regression, AUC evaluation, and the three-modality experiment.

The classifier minimizes mean log-loss plus (l2/2)||w||^2 (bias excluded) by
deterministic mini-batch gradient descent with a fixed per-seed shuffle. Only
the leading dense block of the feature matrix is z-scored by training-set
statistics; hashed text counts keep their natural scale.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np
from scipy import sparse
from scipy.special import expit
from sklearn.base import BaseEstimator, ClassifierMixin

from .errors import DegenerateLabels, DimensionMismatch
from .validation import check_binary_labels

_LOSS_SLACK = 1e-6
_MAX_HALVINGS = 50


def _split_blocks(X, dense_dims: int):
    """Split a feature matrix into (dense leading block, sparse-or-dense tail)."""
    d0 = min(dense_dims, X.shape[1])
    if sparse.issparse(X):
        X = X.tocsr()
        dense = np.asarray(X[:, :d0].todense()) if d0 else np.empty((X.shape[0], 0))
        tail = X[:, d0:]
    else:
        X = np.asarray(X, dtype=np.float64)
        dense = X[:, :d0]
        tail = X[:, d0:]
    return dense, tail


def _linear(dense, tail, w_dense, w_tail, b):
    z = np.full(dense.shape[0], b)
    if dense.shape[1]:
        z += dense @ w_dense
    if tail.shape[1]:
        z += np.asarray(tail @ w_tail).ravel()
    return z


def logloss_value_and_grad(w, b, X, y, l2):
    """Mean log-loss with l2/2 ||w||^2 and its analytic gradient.

    Returns (loss, grad_w, grad_b). Works for dense or sparse X; the bias is
    not regularized.
    """
    w = np.asarray(w, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(X @ w).ravel() + b
    # log(1 + e^z) - y z, stable at both tails
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))
    g = (expit(z) - y) / y.size
    grad_w = np.asarray(X.T @ g).ravel() + l2 * w
    return loss, grad_w, float(g.sum())


def auc(scores, labels) -> float:
    """Mann-Whitney AUC: P(score+ > score-) + 0.5 P(tie), by tie-averaged ranks."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    n_pos = int(np.count_nonzero(labels == 1))
    n_neg = int(np.count_nonzero(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabels("AUC needs both classes")
    n = scores.size
    order = np.argsort(scores, kind="mergesort")
    ranked = scores[order]
    ranks = np.empty(n)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and ranked[j + 1] == ranked[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    pos_rank_sum = float(ranks[labels == 1].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


class PopularityLogisticRegression(BaseEstimator, ClassifierMixin):
    """Binary logistic regression with deterministic mini-batch training.

    ``standardize_dims`` marks how many leading columns form the dense
    quality block to z-score with training statistics; zero-variance columns
    get scale 1 (their standardized values are 0, so their weights stay 0).
    An epoch that increases the full training loss is rolled back and retried
    with a halved learning rate, keeping the loss curve non-increasing.
    """

    def __init__(
        self,
        l2: float = 1e-4,
        lr: float = 0.1,
        epochs: int = 50,
        batch_size: int = 64,
        standardize_dims: int = 0,
        seed: int = 0,
    ):
        self.l2 = l2
        self.lr = lr
        self.epochs = epochs
        self.batch_size = batch_size
        self.standardize_dims = standardize_dims
        self.seed = seed

    def fit(self, X, y):
        if X.ndim != 2:
            raise ValueError("X must be 2-D")
        y = check_binary_labels(y)
        if X.shape[0] != y.shape[0]:
            raise ValueError("X and y row counts differ")
        if X.shape[0] < 2 or np.unique(y).size < 2:
            raise DegenerateLabels("training needs >= 2 examples of both classes")

        n, dim = X.shape
        dense, tail = _split_blocks(X, self.standardize_dims)
        d0 = dense.shape[1]
        if d0:
            # span, not computed variance, decides constancy: the variance of
            # an exactly constant column can round to a tiny positive number,
            # and dividing by its square root would fabricate a feature
            constant = dense.max(axis=0) == dense.min(axis=0)
            mean = np.where(constant, dense[0], dense.mean(axis=0))
            scale = np.where(constant, 1.0, np.sqrt(dense.var(axis=0)))
            scale = np.where(scale > 0.0, scale, 1.0)
            dense_std = (dense - mean) / scale
        else:
            mean = np.empty(0)
            scale = np.empty(0)
            dense_std = dense

        w = np.zeros(dim)
        b = 0.0
        lr = float(self.lr)
        rng = np.random.default_rng(self.seed)
        prev_loss = self._full_loss(dense_std, tail, w, b, y)
        history = [prev_loss]
        for _ in range(self.epochs):
            perm = rng.permutation(n)
            halvings = 0
            while True:
                w_new, b_new = self._run_epoch(dense_std, tail, w, b, y, perm, lr)
                loss = self._full_loss(dense_std, tail, w_new, b_new, y)
                if loss <= prev_loss + _LOSS_SLACK:
                    w, b = w_new, b_new
                    prev_loss = loss
                    history.append(loss)
                    break
                lr *= 0.5
                halvings += 1
                if halvings > _MAX_HALVINGS:
                    history.append(prev_loss)
                    break

        self.coef_ = w
        self.intercept_ = b
        self.mean_ = mean
        self.scale_ = scale
        self.n_features_in_ = dim
        self.classes_ = np.array([0, 1])
        self.loss_history_ = np.array(history)
        return self

    def _run_epoch(self, dense_std, tail, w, b, y, perm, lr):
        w = w.copy()
        d0 = dense_std.shape[1]
        batch = self.batch_size
        for start in range(0, perm.size, batch):
            rows = perm[start:start + batch]
            dzb = dense_std[rows]
            tzb = tail[rows]
            z = _linear(dzb, tzb, w[:d0], w[d0:], b)
            g = (expit(z) - y[rows]) / rows.size
            grad = self.l2 * w
            if d0:
                grad[:d0] += dzb.T @ g
            if tail.shape[1]:
                grad[d0:] += np.asarray(tzb.T @ g).ravel()
            w -= lr * grad
            b -= lr * float(g.sum())
        return w, b

    def _full_loss(self, dense_std, tail, w, b, y) -> float:
        d0 = dense_std.shape[1]
        z = _linear(dense_std, tail, w[:d0], w[d0:], b)
        return float(
            np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * self.l2 * np.dot(w, w)
        )

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise RuntimeError("model is not fitted")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        if X.ndim != 2:
            raise ValueError("X must be 2-D")
        if X.shape[1] != self.n_features_in_:
            raise DimensionMismatch(
                f"X has {X.shape[1]} features, model expects {self.n_features_in_}"
            )
        dense, tail = _split_blocks(X, self.standardize_dims)
        d0 = dense.shape[1]
        dense_std = (dense - self.mean_) / self.scale_ if d0 else dense
        return _linear(dense_std, tail, self.coef_[:d0], self.coef_[d0:], self.intercept_)

    def predict_proba(self, X) -> np.ndarray:
        p = expit(self.decision_function(X))
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) > 0.0).astype(np.int64)


def train(X, y, l2: float = 1e-4, epochs: int = 50, lr: float = 0.1,
          seed: int = 0, batch_size: int = 64,
          standardize_dims: int = 0) -> PopularityLogisticRegression:
    """Functional wrapper around :class:`PopularityLogisticRegression`."""
    return PopularityLogisticRegression(
        l2=l2, lr=lr, epochs=epochs, batch_size=batch_size,
        standardize_dims=standardize_dims, seed=seed,
    ).fit(X, y)


@dataclass(frozen=True)
class EvalReport:
    """AUCs per modality and relative lifts over the text baseline."""

    auc_text: float
    auc_image: float
    auc_mm: float
    lift_image_pct: float
    lift_mm_pct: float
    n_train: int
    n_test: int
    seed: int

    @classmethod
    def from_aucs(cls, auc_text: float, auc_image: float, auc_mm: float,
                  n_train: int, n_test: int, seed: int) -> "EvalReport":
        return cls(
            auc_text=auc_text,
            auc_image=auc_image,
            auc_mm=auc_mm,
            lift_image_pct=100.0 * (auc_image - auc_text) / auc_text,
            lift_mm_pct=100.0 * (auc_mm - auc_text) / auc_text,
            n_train=n_train,
            n_test=n_test,
            seed=seed,
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    test_fraction: float = 0.25
    binarize_policy: str = "median"
    l2: float = 1e-4
    lr: float = 0.1
    epochs: int = 50
    batch_size: int = 64


@dataclass(frozen=True)
class ExperimentResult:
    report: EvalReport
    models: dict
    accuracy: dict  # accuracy at threshold 0.5, per modality, for reference


def run_experiment(records, quality: np.ndarray, text_matrix,
                   config: ExperimentConfig | None = None) -> ExperimentResult:
    """Train text-only, image-only and multimodal models on one split.

    ``records`` provide popularity counts; ``quality`` is the (n, 5158)
    matrix aligned with them and ``text_matrix`` the hashed (n, 2^18) block.
    All three models share the split, seed and hyperparameters.
    """
    from .dataset import binarize, popularity_score, split_indices

    cfg = config or ExperimentConfig()
    records = list(records)
    if len(records) != quality.shape[0] or len(records) != text_matrix.shape[0]:
        raise ValueError("records, quality and text matrices must align")
    scores = [popularity_score(r) for r in records]
    labels = binarize(scores, cfg.binarize_policy)
    train_idx, test_idx = split_indices(labels, cfg.test_fraction, cfg.seed)

    quality_sparse = sparse.csr_matrix(quality)
    mm = sparse.hstack([quality_sparse, text_matrix]).tocsr()
    blocks = {
        "text": (text_matrix.tocsr(), 0),
        "image": (quality, quality.shape[1]),
        "mm": (mm, quality.shape[1]),
    }
    models, aucs, accuracy = {}, {}, {}
    for name, (X, dense_dims) in blocks.items():
        clf = PopularityLogisticRegression(
            l2=cfg.l2, lr=cfg.lr, epochs=cfg.epochs, batch_size=cfg.batch_size,
            standardize_dims=dense_dims, seed=cfg.seed,
        ).fit(X[train_idx], labels[train_idx])
        test_scores = clf.decision_function(X[test_idx])
        aucs[name] = auc(test_scores, labels[test_idx])
        accuracy[name] = float(np.mean(clf.predict(X[test_idx]) == labels[test_idx]))
        models[name] = clf

    report = EvalReport.from_aucs(
        auc_text=aucs["text"], auc_image=aucs["image"], auc_mm=aucs["mm"],
        n_train=int(train_idx.size), n_test=int(test_idx.size), seed=cfg.seed,
    )
    return ExperimentResult(report=report, models=models, accuracy=accuracy)


def save_model(model: PopularityLogisticRegression, path) -> None:
    np.savez(
        path,
        coef=model.coef_,
        intercept=np.array([model.intercept_]),
        mean=model.mean_,
        scale=model.scale_,
        params=np.array([model.l2, model.lr, model.epochs, model.batch_size,
                         model.standardize_dims, model.seed]),
    )


def load_model(path) -> PopularityLogisticRegression:
    data = np.load(path)
    l2, lr, epochs, batch_size, standardize_dims, seed = data["params"]
    model = PopularityLogisticRegression(
        l2=float(l2), lr=float(lr), epochs=int(epochs), batch_size=int(batch_size),
        standardize_dims=int(standardize_dims), seed=int(seed),
    )
    model.coef_ = data["coef"]
    model.intercept_ = float(data["intercept"][0])
    model.mean_ = data["mean"]
    model.scale_ = data["scale"]
    model.n_features_in_ = model.coef_.size
    model.classes_ = np.array([0, 1])
    return model
