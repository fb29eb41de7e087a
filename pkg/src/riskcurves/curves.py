"""Experiment harness: feature curves (sweep the feature count N at fixed
training size n), learning curves (sweep n at fixed N), alpha curves (sweep
the ratio alpha = n/N), Monte Carlo aggregation and peak detection.

Seed discipline
---------------
Every random draw derives its seed from ``mix(base_seed, ...)`` so results
never depend on execution order and reps can run in parallel:

* rep data pool:            ``mix(base_seed, rep)``
* train/test split:         ``mix(base_seed, rep, SEED_SPLIT)``
* CSV test/leftover split:  ``mix(base_seed, rep, SEED_SPLIT, 1)``
* unlabeled pool:           ``mix(base_seed, rep, SEED_UNLABELED)``
* subsample of size n:      ``mix(base_seed, rep, SEED_SUBSAMPLE, n)``

``SEED_AUGMENT`` is reserved for callers that augment per-rep data (for
instance with random noise features) and want streams disjoint from the
harness's own.

Within one (grid point, rep) cell all learners are fit and evaluated on
byte-identical data, so per-cell risk differences are attributable to the
learner alone.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ._version import __version__
from .data import (
    CsvSource,
    Dataset,
    GaussianSpec,
    gen_two_gaussians,
    load_csv,
    split,
    standardize,
    subsample,
    take_features,
)
from .errors import (
    GridExceedsDimension,
    InvariantViolation,
    OutOfRange,
    RiskCurvesError,
    TooFewPoints,
)
from .learners import (
    SemiSupPfld,
    decision_values,
    fit,
    predict,
    squared_risk,
    zero_one_risk,
)

SEED_SPLIT = 1
SEED_UNLABELED = 2
SEED_AUGMENT = 3
SEED_SUBSAMPLE = 4

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

RISK_METRICS = ("zero_one", "squared")


def _avalanche(z: int) -> int:
    """64-bit finalizer with full avalanche (splitmix64 constants)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix(base_seed: int, *parts: int) -> int:
    """Derive a 64-bit seed from a base seed and integer stream tags.

    Iterated avalanche hash: the base is whitened once, then each part is
    folded in and re-avalanched.  Pure integer arithmetic, so the result is
    identical on every platform; order and count of parts both matter.
    """
    h = _avalanche((int(base_seed) & _MASK64) ^ _GAMMA)
    for p in parts:
        h = _avalanche(h ^ ((int(p) + _GAMMA) & _MASK64))
    return h


class CurveKind(str, Enum):
    FEATURE = "feature_curve"
    LEARNING = "learning_curve"
    ALPHA = "alpha_curve"


def alpha_train_size(alpha: float, fixed_N: int) -> int:
    """Training size for a ratio point: round(alpha * N), half away from zero."""
    return int(np.floor(alpha * fixed_N + 0.5))


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one curve experiment.

    ``grid`` values are feature counts (feature curves), training sizes
    (learning curves) or ratios n/N (alpha curves).  ``fixed_n`` pins the
    training size of a feature curve; ``fixed_N`` pins the dimension of a
    learning or alpha curve.  Per-rep seeds all derive from ``base_seed``;
    the seed carried by a Gaussian data source is ignored here.
    """

    kind: CurveKind
    grid: tuple
    learners: tuple
    data_source: GaussianSpec | CsvSource
    fixed_n: int | None = None
    fixed_N: int | None = None
    test_size: int = 2000
    reps: int = 50
    base_seed: int = 0
    risk_metric: str = "zero_one"

    def __post_init__(self):
        object.__setattr__(self, "kind", CurveKind(self.kind))
        object.__setattr__(self, "learners", tuple(self.learners))
        self._validate_grid()
        self._validate_fields()
        self._validate_source()

    # -- validation ------------------------------------------------------

    def _validate_grid(self):
        raw = tuple(self.grid)
        if not raw:
            raise InvariantViolation("grid must be nonempty")
        if self.kind is CurveKind.ALPHA:
            vals = []
            for g in raw:
                if isinstance(g, bool) or not isinstance(g, (int, float)):
                    raise InvariantViolation(f"alpha grid values must be numbers, got {g!r}")
                if not g > 0:
                    raise InvariantViolation(f"alpha grid values must be > 0, got {g}")
                vals.append(float(g))
            grid = tuple(vals)
        else:
            what = "feature counts" if self.kind is CurveKind.FEATURE else "training sizes"
            low = 1 if self.kind is CurveKind.FEATURE else 2
            for g in raw:
                if isinstance(g, bool) or not isinstance(g, (int, np.integer)):
                    raise InvariantViolation(f"{what} must be integers, got {g!r}")
                if g < low:
                    raise InvariantViolation(f"{what} must be >= {low}, got {g}")
            grid = tuple(int(g) for g in raw)
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvariantViolation("grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)

    def _validate_fields(self):
        if not self.learners:
            raise InvariantViolation("at least one learner is required")
        labels = [spec.label for spec in self.learners]
        if len(set(labels)) != len(labels):
            raise InvariantViolation(
                f"learner names must be unique, got {labels}; set name= to disambiguate"
            )
        if self.kind is CurveKind.FEATURE:
            if self.fixed_n is None:
                raise InvariantViolation("feature curves need fixed_n")
            if self.fixed_N is not None:
                raise InvariantViolation("feature curves do not use fixed_N")
            if self.fixed_n < 2:
                raise InvariantViolation(f"fixed_n must be >= 2, got {self.fixed_n}")
        else:
            if self.fixed_N is None:
                raise InvariantViolation(f"{self.kind.value}s need fixed_N")
            if self.fixed_n is not None:
                raise InvariantViolation(f"{self.kind.value}s do not use fixed_n")
            if self.fixed_N < 2:
                raise InvariantViolation(f"fixed_N must be >= 2, got {self.fixed_N}")
        if self.kind is CurveKind.ALPHA:
            for a in self.grid:
                if alpha_train_size(a, self.fixed_N) < 2:
                    raise InvariantViolation(
                        f"alpha={a} gives a training size below 2 at N={self.fixed_N}"
                    )
        if self.test_size < 1:
            raise InvariantViolation(f"test_size must be >= 1, got {self.test_size}")
        if self.reps < 1:
            raise InvariantViolation(f"reps must be >= 1, got {self.reps}")
        if self.risk_metric not in RISK_METRICS:
            raise InvariantViolation(
                f"risk_metric must be one of {RISK_METRICS}, got {self.risk_metric!r}"
            )

    def _validate_source(self):
        if not isinstance(self.data_source, GaussianSpec):
            return
        dim = self.data_source.dim
        if self.kind is CurveKind.FEATURE:
            if max(self.grid) > dim:
                raise GridExceedsDimension(
                    f"grid asks for {max(self.grid)} features but the generator has dim={dim}"
                )
        elif self.fixed_N > dim:
            raise GridExceedsDimension(
                f"fixed_N={self.fixed_N} exceeds the generator dim={dim}"
            )
        pool = self.train_rows() + self.test_size
        if pool % 2 != 0:
            raise InvariantViolation(
                f"generator pools must have even size; train rows + test_size = {pool}"
            )

    # -- derived quantities ----------------------------------------------

    def train_rows(self) -> int:
        """Rows of the per-rep training pool (before any subsampling)."""
        if self.kind is CurveKind.FEATURE:
            return self.fixed_n
        if self.kind is CurveKind.LEARNING:
            return max(self.grid)
        return max(alpha_train_size(a, self.fixed_N) for a in self.grid)

    def x_name(self) -> str:
        return {
            CurveKind.FEATURE: "num_features",
            CurveKind.LEARNING: "num_train",
            CurveKind.ALPHA: "alpha",
        }[self.kind]


def interpolation_threshold(spec: SweepSpec) -> float:
    """Sweep value where training size and feature count coincide."""
    if spec.kind is CurveKind.FEATURE:
        return float(spec.fixed_n)
    if spec.kind is CurveKind.LEARNING:
        return float(spec.fixed_N)
    return 1.0


@dataclass(frozen=True)
class LearnerStats:
    """Aggregated risk of one learner at one grid point."""

    mean_risk: float
    std_risk: float
    stderr_risk: float
    min_risk: float
    max_risk: float
    rep_count: int


@dataclass(frozen=True)
class CurvePoint:
    x_value: float
    stats: dict


@dataclass(frozen=True)
class Provenance:
    base_seed: int
    version: str


@dataclass(frozen=True)
class CurveResult:
    """A finished sweep: one CurvePoint per grid value, in grid order.

    ``rep_risks[learner][point_index][rep]`` holds the raw per-rep risks
    when the sweep ran with ``keep_reps=True``, else None.
    """

    spec: SweepSpec
    points: tuple
    provenance: Provenance
    rep_risks: dict | None = None


@dataclass(frozen=True)
class PeakReport:
    """Location and prominence of the most prominent interior risk maximum.

    ``prominence`` is the peak mean minus the larger of the two adjacent
    local minima (curve edges count as minima).  ``at_interpolation`` is
    true when the peak sits within one grid step (the smaller neighbor
    spacing) of the interpolation threshold.  A curve without an interior
    local maximum reports its global maximum with prominence 0.
    """

    learner: str
    peak_x: float
    peak_mean: float
    prominence: float
    at_interpolation: bool


# --------------------------------------------------------------------------
# Running sweeps.


def run_feature_curve(spec: SweepSpec, *, keep_reps: bool = False, workers: int = 1) -> CurveResult:
    """Sweep the feature count N at fixed training size.

    Per rep: draw (or re-split) a pool, split into train/test, then for each
    N keep the first N columns and fit every learner on identical data.
    """
    if spec.kind is not CurveKind.FEATURE:
        raise ValueError(f"expected a feature_curve spec, got {spec.kind.value}")
    return _run_sweep(spec, keep_reps, workers)


def run_learning_curve(spec: SweepSpec, *, keep_reps: bool = False, workers: int = 1) -> CurveResult:
    """Sweep the training size n at fixed dimension ``fixed_N``."""
    if spec.kind is not CurveKind.LEARNING:
        raise ValueError(f"expected a learning_curve spec, got {spec.kind.value}")
    return _run_sweep(spec, keep_reps, workers)


def run_alpha_curve(spec: SweepSpec, *, keep_reps: bool = False, workers: int = 1) -> CurveResult:
    """Sweep alpha = n/N at fixed dimension; n = round(alpha * N) per point."""
    if spec.kind is not CurveKind.ALPHA:
        raise ValueError(f"expected an alpha_curve spec, got {spec.kind.value}")
    return _run_sweep(spec, keep_reps, workers)


def run_sweep(spec: SweepSpec, *, keep_reps: bool = False, workers: int = 1) -> CurveResult:
    """Dispatch on ``spec.kind``."""
    runner = {
        CurveKind.FEATURE: run_feature_curve,
        CurveKind.LEARNING: run_learning_curve,
        CurveKind.ALPHA: run_alpha_curve,
    }[spec.kind]
    return runner(spec, keep_reps=keep_reps, workers=workers)


def _point_train_sizes(spec: SweepSpec) -> list[int]:
    if spec.kind is CurveKind.LEARNING:
        return [int(g) for g in spec.grid]
    if spec.kind is CurveKind.ALPHA:
        return [alpha_train_size(a, spec.fixed_N) for a in spec.grid]
    return []


def _risk(model, test: Dataset, metric: str) -> float:
    if metric == "zero_one":
        return zero_one_risk(predict(model, test.x), test.y)
    return squared_risk(decision_values(model, test.x), test.y.astype(np.float64))


def _fit_cell(learner, train: Dataset, test: Dataset, unlab_x, metric, x_value, rep):
    try:
        model = fit(learner, train.x, train.y, x_unlabeled=unlab_x)
        return _risk(model, test, metric)
    except (RiskCurvesError, ValueError) as exc:
        raise type(exc)(
            f"learner {learner.label!r} failed at x={x_value:g}, rep={rep}: {exc}"
        ) from exc


def _run_sweep(spec: SweepSpec, keep_reps: bool, workers: int) -> CurveResult:
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    labels = [learner.label for learner in spec.learners]
    max_unlab = max(
        (l.unlabeled_count for l in spec.learners if isinstance(l, SemiSupPfld)),
        default=0,
    )
    train_rows = spec.train_rows()
    n_points = len(spec.grid)

    full: Dataset | None = None
    if isinstance(spec.data_source, CsvSource):
        src = spec.data_source
        full = load_csv(src.path, src.label_column, src.positive_label)
        need_cols = max(spec.grid) if spec.kind is CurveKind.FEATURE else spec.fixed_N
        if full.n_features < need_cols:
            raise GridExceedsDimension(
                f"{src.path} has {full.n_features} feature columns, need {need_cols}"
            )
        if full.n_samples < train_rows + spec.test_size:
            raise OutOfRange(
                f"{src.path} has {full.n_samples} rows; need at least "
                f"{train_rows + spec.test_size} (train pool + test)"
            )

    point_sizes = _point_train_sizes(spec)

    def run_rep(rep: int) -> np.ndarray:
        leftover: Dataset | None = None
        if full is None:
            gspec = replace(spec.data_source, seed=mix(spec.base_seed, rep))
            pool = gen_two_gaussians(gspec, train_rows + spec.test_size)
            train_pool, test_pool = split(pool, train_rows, mix(spec.base_seed, rep, SEED_SPLIT))
        else:
            train_pool, rest = split(full, train_rows, mix(spec.base_seed, rep, SEED_SPLIT))
            if rest.n_samples > spec.test_size:
                test_pool, leftover = split(
                    rest, spec.test_size, mix(spec.base_seed, rep, SEED_SPLIT, 1)
                )
            else:
                test_pool = rest
            if spec.data_source.standardize:
                train_pool, test_pool, tf = standardize(train_pool, test_pool)
                if leftover is not None:
                    leftover = Dataset(x=tf.apply(leftover.x), y=leftover.y)

        unlab_x = None
        if max_unlab > 0:
            if full is None:
                draw = max_unlab + (max_unlab % 2)
                ugspec = replace(spec.data_source, seed=mix(spec.base_seed, rep, SEED_UNLABELED))
                unlab_x = gen_two_gaussians(ugspec, draw).x[:max_unlab]
            else:
                unlab_x = (
                    leftover.x if leftover is not None
                    else np.zeros((0, train_pool.n_features))
                )

        out = np.empty((n_points, len(labels)))
        if spec.kind is CurveKind.FEATURE:
            for pi, n_feat in enumerate(spec.grid):
                tr = take_features(train_pool, n_feat)
                te = take_features(test_pool, n_feat)
                cell_unlab = unlab_x[:, :n_feat] if unlab_x is not None else None
                for li, learner in enumerate(spec.learners):
                    out[pi, li] = _fit_cell(
                        learner, tr, te, cell_unlab, spec.risk_metric, float(n_feat), rep
                    )
        else:
            tr_pool = take_features(train_pool, spec.fixed_N)
            te = take_features(test_pool, spec.fixed_N)
            cell_unlab = unlab_x[:, : spec.fixed_N] if unlab_x is not None else None
            for pi, (x_val, n_train) in enumerate(zip(spec.grid, point_sizes)):
                sub = subsample(tr_pool, n_train, mix(spec.base_seed, rep, SEED_SUBSAMPLE, n_train))
                for li, learner in enumerate(spec.learners):
                    out[pi, li] = _fit_cell(
                        learner, sub, te, cell_unlab, spec.risk_metric, float(x_val), rep
                    )
        return out

    risks = np.empty((n_points, len(labels), spec.reps))
    if workers == 1:
        for rep in range(spec.reps):
            risks[:, :, rep] = run_rep(rep)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for rep, cell in enumerate(pool.map(run_rep, range(spec.reps))):
                risks[:, :, rep] = cell

    points = []
    for pi, g in enumerate(spec.grid):
        stats = {}
        for li, label in enumerate(labels):
            v = risks[pi, li]
            std = float(np.std(v, ddof=1)) if spec.reps > 1 else 0.0
            stats[label] = LearnerStats(
                mean_risk=float(np.mean(v)),
                std_risk=std,
                stderr_risk=std / float(np.sqrt(spec.reps)),
                min_risk=float(np.min(v)),
                max_risk=float(np.max(v)),
                rep_count=spec.reps,
            )
        points.append(CurvePoint(x_value=float(g), stats=stats))

    rep_risks = None
    if keep_reps:
        rep_risks = {
            label: tuple(tuple(float(r) for r in risks[pi, li]) for pi in range(n_points))
            for li, label in enumerate(labels)
        }
    return CurveResult(
        spec=spec,
        points=tuple(points),
        provenance=Provenance(base_seed=spec.base_seed, version=__version__),
        rep_risks=rep_risks,
    )


# --------------------------------------------------------------------------
# Peak detection.


def _descend_left(means, i):
    j = i - 1
    while j - 1 >= 0 and means[j - 1] < means[j]:
        j -= 1
    return means[j]


def _descend_right(means, i):
    j = i + 1
    while j + 1 < len(means) and means[j + 1] < means[j]:
        j += 1
    return means[j]


def detect_peak(result: CurveResult, learner: str) -> PeakReport:
    """Report the most prominent interior local maximum of a learner's curve."""
    if len(result.points) < 3:
        raise TooFewPoints(f"need >= 3 grid points, got {len(result.points)}")
    known = list(result.points[0].stats)
    if learner not in known:
        raise ValueError(f"unknown learner {learner!r}; curve has {known}")
    xs = [p.x_value for p in result.points]
    means = [p.stats[learner].mean_risk for p in result.points]
    threshold = interpolation_threshold(result.spec)

    best = None  # (prominence, index)
    for i in range(1, len(means) - 1):
        if means[i] > means[i - 1] and means[i] > means[i + 1]:
            prominence = means[i] - max(_descend_left(means, i), _descend_right(means, i))
            if best is None or prominence > best[0]:
                best = (prominence, i)

    if best is None:
        top = int(np.argmax(means))
        return PeakReport(
            learner=learner,
            peak_x=xs[top],
            peak_mean=means[top],
            prominence=0.0,
            at_interpolation=False,
        )
    prominence, i = best
    step = min(xs[i] - xs[i - 1], xs[i + 1] - xs[i])
    return PeakReport(
        learner=learner,
        peak_x=xs[i],
        peak_mean=means[i],
        prominence=prominence,
        at_interpolation=abs(xs[i] - threshold) <= step,
    )
