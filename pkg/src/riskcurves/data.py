"""Datasets: synthetic two-Gaussian generation, feature slicing, random
feature augmentation, stratified splitting/subsampling, CSV ingestion and
train-based standardization.

Everything randomized is a pure function of its inputs and an explicit
seed, so sweeps are reproducible bit for bit.
"""

import csv
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    MissingFile,
    MoreThanTwoClasses,
    NonNumericFeature,
    OddSampleSize,
    OutOfRange,
)
from .learners import as_labels

_CLASS_ORDER = (1, -1)  # fixed order keeps stratified draws deterministic


@dataclass(frozen=True)
class Dataset:
    """Feature matrix ``x`` (n rows, d columns) with +-1 labels ``y``.

    d = 0 is tolerated as an intermediate (e.g. before random-feature
    augmentation); everything else expects at least one column.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        xm = np.array(self.x, dtype=np.float64, copy=True)
        if xm.ndim != 2:
            raise ValueError(f"x must be 2-D, got ndim={xm.ndim}")
        ym = as_labels(self.y)
        if xm.shape[0] != ym.shape[0]:
            raise DimensionMismatch(
                f"{xm.shape[0]} feature rows but {ym.shape[0]} labels"
            )
        if xm.shape[0] < 1:
            raise ValueError("dataset needs at least one row")
        if xm.size and not np.all(np.isfinite(xm)):
            raise ValueError("features must be finite")
        object.__setattr__(self, "x", xm)
        object.__setattr__(self, "y", ym)

    @property
    def n_samples(self) -> int:
        return self.x.shape[0]

    @property
    def n_features(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class GaussianSpec:
    """Two isotropic Gaussian classes at +-mu in ``dim`` dimensions.

    The first ``informative`` coordinates of mu are ``separation/sqrt(k)``
    (so ``||mu|| = separation``), the rest are zero: early features carry
    signal, later ones only add capacity.
    """

    dim: int
    informative: int
    separation: float
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not 1 <= self.informative <= self.dim:
            raise ValueError(
                f"informative must be in 1..{self.dim}, got {self.informative}"
            )
        if self.separation < 0:
            raise ValueError(f"separation must be >= 0, got {self.separation}")

    def mean_vector(self) -> np.ndarray:
        mu = np.zeros(self.dim)
        mu[: self.informative] = self.separation / np.sqrt(self.informative)
        return mu


@dataclass(frozen=True)
class CsvSource:
    """Reference to a two-class CSV file used as a sweep data source."""

    path: str
    label_column: str
    positive_label: str
    standardize: bool = True


def gen_two_gaussians(spec: GaussianSpec, n: int) -> Dataset:
    """Draw n/2 points per class from Normal(+-mu, I), deterministically."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n % 2 != 0:
        raise OddSampleSize(f"sample size must be even, got {n}")
    rng = np.random.default_rng(spec.seed)
    mu = spec.mean_vector()
    half = n // 2
    x_pos = rng.standard_normal((half, spec.dim)) + mu
    x_neg = rng.standard_normal((half, spec.dim)) - mu
    y = np.concatenate([np.ones(half, dtype=np.int64), -np.ones(half, dtype=np.int64)])
    return Dataset(x=np.vstack([x_pos, x_neg]), y=y)


def take_features(ds: Dataset, n_features: int) -> Dataset:
    """Keep the first ``n_features`` columns; labels unchanged."""
    if not 1 <= n_features <= ds.n_features:
        raise OutOfRange(
            f"n_features must be in 1..{ds.n_features}, got {n_features}"
        )
    return Dataset(x=ds.x[:, :n_features], y=ds.y)


def append_random_features(ds: Dataset, k: int, sigma: float, seed: int) -> Dataset:
    """Append k columns of independent Normal(0, sigma^2) noise."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    rng = np.random.default_rng(seed)
    noise = sigma * rng.standard_normal((ds.n_samples, k))
    return Dataset(x=np.hstack([ds.x, noise]), y=ds.y)


def _stratified_counts(y: np.ndarray, n_take: int) -> dict[int, int]:
    """Per-class take counts: proportional, largest remainder, class-order ties."""
    total = len(y)
    counts = {}
    fracs = []
    for cls in _CLASS_ORDER:
        exact = n_take * int(np.sum(y == cls)) / total
        counts[cls] = int(np.floor(exact))
        fracs.append((cls, exact - np.floor(exact)))
    leftover = n_take - sum(counts.values())
    fracs.sort(key=lambda cf: -cf[1])  # stable: ties keep class order
    for i in range(leftover):
        counts[fracs[i][0]] += 1
    return counts


def split(ds: Dataset, n_train: int, seed: int) -> tuple[Dataset, Dataset]:
    """Disjoint stratified train/test partition covering all rows.

    Class proportions in the train part stay within one row of proportional.
    Row order within each part follows the original dataset.
    """
    if not 1 <= n_train < ds.n_samples:
        raise OutOfRange(
            f"n_train must be in 1..{ds.n_samples - 1}, got {n_train}"
        )
    rng = np.random.default_rng(seed)
    counts = _stratified_counts(ds.y, n_train)
    train_idx, test_idx = [], []
    for cls in _CLASS_ORDER:
        idx = np.flatnonzero(ds.y == cls)
        perm = idx[rng.permutation(len(idx))]
        train_idx.append(perm[: counts[cls]])
        test_idx.append(perm[counts[cls] :])
    tr = np.sort(np.concatenate(train_idx))
    te = np.sort(np.concatenate(test_idx))
    return (
        Dataset(x=ds.x[tr], y=ds.y[tr]),
        Dataset(x=ds.x[te], y=ds.y[te]),
    )


def subsample(ds: Dataset, n: int, seed: int) -> Dataset:
    """n rows drawn stratified without replacement, deterministic in seed."""
    idx = subsample_indices(ds, n, seed)
    return Dataset(x=ds.x[idx], y=ds.y[idx])


def subsample_indices(ds: Dataset, n: int, seed: int) -> np.ndarray:
    """Row indices :func:`subsample` would keep (sorted ascending)."""
    if not 2 <= n <= ds.n_samples:
        raise OutOfRange(f"n must be in 2..{ds.n_samples}, got {n}")
    rng = np.random.default_rng(seed)
    counts = _stratified_counts(ds.y, n)
    chosen = []
    for cls in _CLASS_ORDER:
        idx = np.flatnonzero(ds.y == cls)
        pick = rng.choice(len(idx), size=counts[cls], replace=False)
        chosen.append(idx[pick])
    return np.sort(np.concatenate(chosen))


def load_csv(path, label_column: str, positive_label: str) -> Dataset:
    """Load a two-class dataset from a headed, comma-separated, UTF-8 file.

    All non-label columns become features in file order; label tokens map to
    +1 for ``positive_label`` and -1 for the single other token.  Missing or
    non-numeric feature cells are errors, reported with line and column.
    """
    if not os.path.exists(path):
        raise MissingFile(f"no such file: {path}")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if label_column not in header:
            raise ValueError(f"{path}: no column named {label_column!r}")
        label_pos = header.index(label_column)
        feature_names = [h for i, h in enumerate(header) if i != label_pos]
        if not feature_names:
            raise ValueError(f"{path}: no feature columns besides the label")
        rows: list[list[float]] = []
        tokens: list[str] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(
                    f"{path}: line {line_no} has {len(row)} cells, expected {len(header)}"
                )
            feats = []
            for i, cell in enumerate(row):
                if i == label_pos:
                    tokens.append(cell.strip())
                    continue
                name = header[i]
                try:
                    value = float(cell)
                except ValueError:
                    raise NonNumericFeature(
                        f"{path}: non-numeric value {cell.strip()!r} at line {line_no}, "
                        f"column {name!r}"
                    ) from None
                if not np.isfinite(value):
                    raise NonNumericFeature(
                        f"{path}: non-finite value {cell.strip()!r} at line {line_no}, "
                        f"column {name!r}"
                    )
                feats.append(value)
            rows.append(feats)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    distinct = sorted(set(tokens))
    if len(distinct) > 2:
        raise MoreThanTwoClasses(
            f"{path}: expected two label tokens, found {len(distinct)}: {distinct}"
        )
    if len(distinct) < 2:
        raise ValueError(f"{path}: only one label token present: {distinct}")
    if positive_label not in distinct:
        raise ValueError(
            f"{path}: positive label {positive_label!r} not found, tokens are {distinct}"
        )
    y = np.array([1 if t == positive_label else -1 for t in tokens], dtype=np.int64)
    return Dataset(x=np.array(rows, dtype=np.float64), y=y)


@dataclass(frozen=True)
class ColumnTransform:
    """Per-column shift/scale fitted on a training set."""

    mean: np.ndarray
    scale: np.ndarray

    def apply(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) - self.mean) / self.scale


def standardize(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset, ColumnTransform]:
    """Shift/scale both sets by the train columns' mean and std.

    Zero-variance columns are centered but left unscaled.  The returned
    transform reapplies the identical mapping (bit for bit).
    """
    if train.n_features != test.n_features:
        raise DimensionMismatch(
            f"train has {train.n_features} columns, test has {test.n_features}"
        )
    mean = train.x.mean(axis=0)
    std = train.x.std(axis=0)
    scale = np.where(std > 0.0, std, 1.0)
    transform = ColumnTransform(mean=mean, scale=scale)
    return (
        Dataset(x=transform.apply(train.x), y=train.y),
        Dataset(x=transform.apply(test.x), y=test.y),
        transform,
    )
