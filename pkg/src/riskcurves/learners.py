"""Linear two-class learners: minimum-norm regression, pseudo-Fisher,
ridge, a semi-supervised pseudo-Fisher variant, and a subgradient-trained
max-margin classifier.

Labels are +-1 integers.  Every fit returns an immutable
:class:`LinearModel`; prediction is ``sign(w @ x + b)`` with ``sign(0)``
resolving to +1 so risk estimates stay deterministic.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonConvergence,
    NonPositiveLambda,
    SingleClassInput,
)
from .linalg import DEFAULT_REL_TOL, min_norm_least_squares, ridge_least_squares, thin_svd


@dataclass(frozen=True)
class LinearModel:
    """Affine decision function ``x -> w @ x + b``."""

    weights: np.ndarray
    bias: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1:
            raise ValueError("weights must be a 1-D vector")
        if not (np.all(np.isfinite(w)) and np.isfinite(self.bias)):
            raise ValueError("model parameters must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", float(self.bias))


# --------------------------------------------------------------------------
# Declarative learner choices, used by the sweep harness and the CLI config.


@dataclass(frozen=True)
class Mnlr:
    """Minimum-norm linear regression on +-1 targets."""

    rel_tol: float = DEFAULT_REL_TOL
    name: str | None = None

    def __post_init__(self):
        _check_rel_tol(self.rel_tol)

    @property
    def label(self) -> str:
        return self.name or "mnlr"


@dataclass(frozen=True)
class Pfld:
    """Pseudo-Fisher linear discriminant (mean-centered minimum-norm fit)."""

    rel_tol: float = DEFAULT_REL_TOL
    name: str | None = None

    def __post_init__(self):
        _check_rel_tol(self.rel_tol)

    @property
    def label(self) -> str:
        return self.name or "pfld"


@dataclass(frozen=True)
class Ridge:
    """L2-regularized least squares with an unpenalized bias."""

    lam: float
    name: str | None = None

    def __post_init__(self):
        if not self.lam > 0:
            raise NonPositiveLambda(f"ridge penalty must be > 0, got {self.lam}")

    @property
    def label(self) -> str:
        return self.name or f"ridge({self.lam:g})"


@dataclass(frozen=True)
class SemiSupPfld:
    """Pseudo-Fisher variant that centers and whitens with unlabeled data."""

    unlabeled_count: int
    rel_tol: float = DEFAULT_REL_TOL
    name: str | None = None

    def __post_init__(self):
        _check_rel_tol(self.rel_tol)
        if self.unlabeled_count < 0:
            raise ValueError(f"unlabeled_count must be >= 0, got {self.unlabeled_count}")

    @property
    def label(self) -> str:
        return self.name or f"semisup_pfld({self.unlabeled_count})"


@dataclass(frozen=True)
class MaxMargin:
    """Soft-margin linear classifier trained by averaged subgradient descent."""

    c: float = 100.0
    max_iters: int = 20_000
    step_decay: float = 1.0
    name: str | None = None

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.step_decay > 0:
            raise ValueError(f"step_decay must be > 0, got {self.step_decay}")

    @property
    def label(self) -> str:
        return self.name or "max_margin"


LearnerSpec = Mnlr | Pfld | Ridge | SemiSupPfld | MaxMargin


def _check_rel_tol(rel_tol: float):
    if not rel_tol > 0:
        raise ValueError(f"rel_tol must be > 0, got {rel_tol}")


# --------------------------------------------------------------------------
# Input validation helpers.


def _as_features(x) -> np.ndarray:
    """2-D finite float64 features; zero columns allowed (bias-only fits)."""
    m = np.asarray(x, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D feature matrix, got ndim={m.ndim}")
    if m.shape[0] < 1:
        raise ValueError("feature matrix needs at least one row")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("features must be finite")
    return m


def as_labels(y) -> np.ndarray:
    """1-D array of +-1 integer labels."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise ValueError("labels must be a 1-D sequence")
    out = arr.astype(np.int64)
    if not np.array_equal(out, arr):
        raise ValueError("labels must be integers -1 or +1")
    if not np.all(np.isin(out, (-1, 1))):
        raise ValueError("labels must be -1 or +1")
    return out


def _check_training_pair(x, y):
    xm = _as_features(x)
    ym = as_labels(y)
    if xm.shape[0] != ym.shape[0]:
        raise DimensionMismatch(
            f"{xm.shape[0]} feature rows but {ym.shape[0]} labels"
        )
    return xm, ym


def _require_both_classes(y: np.ndarray):
    if np.all(y == y[0]):
        raise SingleClassInput("training labels contain a single class")


# --------------------------------------------------------------------------
# Fits.


def fit_mnlr(x, y, rel_tol: float = DEFAULT_REL_TOL) -> LinearModel:
    """Minimum-norm least squares on +-1 targets with an appended bias column.

    In the interpolation regime (rows <= features + 1 with full row rank)
    the training residual is exactly zero.
    """
    xm, ym = _check_training_pair(x, y)
    aug = np.hstack([xm, np.ones((xm.shape[0], 1))])
    w = min_norm_least_squares(aug, ym.astype(np.float64), rel_tol)
    return LinearModel(weights=w[:-1], bias=float(w[-1]))


def fit_pfld(x, y, rel_tol: float = DEFAULT_REL_TOL) -> LinearModel:
    """Pseudo-Fisher discriminant: center by the global mean, then MNLR.

    The centering shift is folded into the bias so prediction operates on
    raw features.  Decisions agree with :func:`fit_mnlr` on class-balanced
    data.
    """
    xm, ym = _check_training_pair(x, y)
    _require_both_classes(ym)
    mean = xm.mean(axis=0)
    centered = fit_mnlr(xm - mean, ym, rel_tol)
    return LinearModel(
        weights=centered.weights,
        bias=centered.bias - float(centered.weights @ mean),
    )


def fit_ridge(x, y, lam: float) -> LinearModel:
    """Ridge fit with the bias left out of the penalty.

    Solved by centering features and targets, which is algebraically the
    same as excluding the constant column from the penalty: the optimal bias
    is ``mean(y) - mean(x) @ w``.
    """
    if not lam > 0:
        raise NonPositiveLambda(f"ridge penalty must be > 0, got {lam}")
    xm, ym = _check_training_pair(x, y)
    yf = ym.astype(np.float64)
    x_mean = xm.mean(axis=0)
    y_mean = float(yf.mean())
    w = ridge_least_squares(xm - x_mean, yf - y_mean, lam)
    return LinearModel(weights=w, bias=y_mean - float(w @ x_mean))


def fit_semisup_pfld(x_lab, y, x_unlab, rel_tol: float = DEFAULT_REL_TOL) -> LinearModel:
    """Pseudo-Fisher fit that pools unlabeled points into the preprocessing.

    Centers on the pooled mean, whitens with the pooled total-covariance SVD
    truncated at ``rel_tol``, fits MNLR in the whitened coordinates, and
    composes the transform back so the model predicts from raw features.
    With no unlabeled points this reproduces :func:`fit_pfld` decisions: the
    truncated whitening is then a bijection on the span of the training data.
    """
    xm, ym = _check_training_pair(x_lab, y)
    xu = np.asarray(x_unlab, dtype=np.float64)
    if xu.size == 0:
        xu = xu.reshape(0, xm.shape[1])
    if xu.ndim != 2 or xu.shape[1] != xm.shape[1]:
        raise DimensionMismatch(
            f"unlabeled features have shape {xu.shape}, expected (*, {xm.shape[1]})"
        )
    if xu.size and not np.all(np.isfinite(xu)):
        raise ValueError("unlabeled features must be finite")
    if xm.shape[1] == 0:
        return fit_mnlr(xm, ym, rel_tol)
    pooled = np.vstack([xm, xu])
    mean = pooled.mean(axis=0)
    f = thin_svd(pooled - mean)
    sigma = f.s / np.sqrt(pooled.shape[0])
    rank = int(np.count_nonzero(sigma > rel_tol * sigma[0])) if sigma[0] > 0 else 0
    if rank == 0:  # every pooled point identical: only the bias is learnable
        return LinearModel(weights=np.zeros(xm.shape[1]), bias=float(ym.mean()))
    transform = f.v[:, :rank] / sigma[:rank]  # d x rank
    whitened = fit_mnlr((xm - mean) @ transform, ym, rel_tol)
    w = transform @ whitened.weights
    return LinearModel(weights=w, bias=whitened.bias - float(w @ mean))


def hinge_objective(model: LinearModel, x, y, c: float) -> float:
    """Soft-margin objective ``0.5 ||w||^2 + c * sum hinge``."""
    xm, ym = _check_training_pair(x, y)
    margins = ym * (xm @ model.weights + model.bias)
    return 0.5 * float(model.weights @ model.weights) + c * float(
        np.sum(np.maximum(0.0, 1.0 - margins))
    )


def fit_max_margin(
    x,
    y,
    c: float = 100.0,
    max_iters: int = 20_000,
    step_decay: float = 1.0,
    collect_objectives: list | None = None,
) -> LinearModel:
    """Approximate minimizer of ``0.5 ||w||^2 + c * sum_i hinge_i`` by
    deterministic full-batch subgradient descent.

    Steps are ``eta_t = 1 / (step_decay * t)``; iterates are projected onto
    a ball that provably contains the minimizer, which keeps the early large
    steps harmless.  Returns the average of the last half of the iterates;
    if that average ever exceeds the best visited objective by more than 1%
    (rare, tiny budgets only) the best iterate is returned instead, so the
    result is always within 1% of the best objective seen.

    ``collect_objectives``, when given a list, receives the objective value
    of every iterate in order.

    Deterministic: no randomness, so curves built on it are reproducible.
    """
    if not c > 0:
        raise ValueError(f"c must be > 0, got {c}")
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    if not step_decay > 0:
        raise ValueError(f"step_decay must be > 0, got {step_decay}")
    xm, ym = _check_training_pair(x, y)
    _require_both_classes(ym)
    n, d = xm.shape
    yf = ym.astype(np.float64)

    # Any w with objective <= objective(0) = c*n satisfies 0.5||w||^2 <= c*n.
    w_radius = np.sqrt(2.0 * c * n)
    x_radius = float(np.max(np.linalg.norm(xm, axis=1))) if d else 0.0
    b_radius = 1.0 + x_radius * w_radius

    w = np.zeros(d)
    b = 0.0
    best_obj = np.inf
    best_w = w.copy()
    best_b = b
    tail_start = max_iters - max_iters // 2  # average over the last half
    acc_w = np.zeros(d)
    acc_b = 0.0
    acc_n = 0

    for t in range(1, max_iters + 1):
        margins = yf * (xm @ w + b)
        viol = margins < 1.0
        obj = 0.5 * float(w @ w) + c * float(np.sum(np.maximum(0.0, 1.0 - margins)))
        if not np.isfinite(obj):
            raise NonConvergence(f"objective became non-finite at iteration {t}")
        if collect_objectives is not None:
            collect_objectives.append(obj)
        if obj < best_obj:
            best_obj = obj
            best_w = w.copy()
            best_b = b
        eta = 1.0 / (step_decay * t)
        grad_w = w - c * (yf[viol] @ xm[viol])
        grad_b = -c * float(np.sum(yf[viol]))
        w = w - eta * grad_w
        b = b - eta * grad_b
        norm_w = float(np.linalg.norm(w))
        if norm_w > w_radius:
            w *= w_radius / norm_w
        if b > b_radius:
            b = b_radius
        elif b < -b_radius:
            b = -b_radius
        if t >= tail_start:
            acc_w += w
            acc_b += b
            acc_n += 1

    avg_w = acc_w / acc_n
    avg_b = acc_b / acc_n
    margins = yf * (xm @ avg_w + avg_b)
    avg_obj = 0.5 * float(avg_w @ avg_w) + c * float(np.sum(np.maximum(0.0, 1.0 - margins)))
    if avg_obj <= 1.01 * best_obj:
        return LinearModel(weights=avg_w, bias=float(avg_b))
    return LinearModel(weights=best_w, bias=float(best_b))


def fit(spec: LearnerSpec, x, y, x_unlabeled=None) -> LinearModel:
    """Dispatch a declarative learner spec to the matching fit function.

    ``x_unlabeled`` is only consulted for :class:`SemiSupPfld`; the pool is
    truncated to ``spec.unlabeled_count`` rows (fewer are used if the pool
    is smaller, e.g. limited leftover rows of a fixed dataset).
    """
    if isinstance(spec, Mnlr):
        return fit_mnlr(x, y, spec.rel_tol)
    if isinstance(spec, Pfld):
        return fit_pfld(x, y, spec.rel_tol)
    if isinstance(spec, Ridge):
        return fit_ridge(x, y, spec.lam)
    if isinstance(spec, SemiSupPfld):
        if x_unlabeled is None:
            raise ValueError("SemiSupPfld needs an unlabeled pool")
        pool = np.asarray(x_unlabeled, dtype=np.float64)
        return fit_semisup_pfld(x, y, pool[: spec.unlabeled_count], spec.rel_tol)
    if isinstance(spec, MaxMargin):
        return fit_max_margin(x, y, spec.c, spec.max_iters, spec.step_decay)
    raise TypeError(f"unknown learner spec {spec!r}")


# --------------------------------------------------------------------------
# Prediction and risks.


def decision_values(model: LinearModel, x) -> np.ndarray:
    """Raw affine scores ``x @ w + b`` per row."""
    xm = _as_features(x)
    if xm.shape[1] != model.weights.shape[0]:
        raise DimensionMismatch(
            f"{xm.shape[1]} feature columns but model has {model.weights.shape[0]} weights"
        )
    return xm @ model.weights + model.bias


def predict(model: LinearModel, x) -> np.ndarray:
    """Predicted +-1 labels; sign(0) resolves to +1."""
    vals = decision_values(model, x)
    return np.where(vals >= 0.0, 1, -1).astype(np.int64)


def zero_one_risk(pred, truth) -> float:
    """Fraction of mismatched labels."""
    p = as_labels(pred)
    t = as_labels(truth)
    if p.shape[0] != t.shape[0] or p.shape[0] < 1:
        raise DimensionMismatch(
            f"label sequences must have equal positive length, got {p.shape[0]} and {t.shape[0]}"
        )
    return float(np.mean(p != t))


def squared_risk(values, targets) -> float:
    """Mean squared difference between scores and targets."""
    v = np.asarray(values, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if v.shape != t.shape or v.ndim != 1 or v.shape[0] < 1:
        raise DimensionMismatch(
            f"value sequences must have equal positive length, got {v.shape} and {t.shape}"
        )
    return float(np.mean((v - t) ** 2))
