"""Dense linear algebra kernel: SVD, numeric rank, minimum-norm and ridge
least squares.

All solvers go through one thin SVD so the pseudo-inverse and the ridge
filter share the same factorization semantics.  Matrices are plain 2-D
float64 ``numpy`` arrays, vectors 1-D; inputs are validated to be finite.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NonPositiveLambda

# Relative cutoff below which singular values count as zero.  Far below the
# noise scale of any experiment in this library.
DEFAULT_REL_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce to a nonempty 2-D float64 array with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix must be nonempty, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-D float64 array with finite entries."""
    w = np.asarray(v, dtype=np.float64)
    if w.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got ndim={w.ndim}")
    if not np.all(np.isfinite(w)):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return w


@dataclass(frozen=True)
class SvdFactorization:
    """Thin SVD ``a = u @ diag(s) @ v.T``.

    ``u`` is rows x k and ``v`` is cols x k, both with orthonormal columns;
    ``s`` holds the k = min(rows, cols) singular values, non-negative and
    non-increasing.
    """

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


def thin_svd(a) -> SvdFactorization:
    """Thin singular value decomposition of a dense matrix.

    Raises ConvergenceFailure if the underlying iteration fails, which
    signals a pathological input rather than a recoverable condition.
    """
    m = as_matrix(a)
    try:
        u, s, vt = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return SvdFactorization(u=u, s=s, v=vt.T)


def numeric_rank(s, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Number of singular values above ``rel_tol`` times the largest.

    ``s`` must be non-negative and non-increasing.  Returns 0 for an empty
    or all-zero spectrum.
    """
    if rel_tol <= 0:
        raise ValueError(f"rel_tol must be > 0, got {rel_tol}")
    sv = np.asarray(s, dtype=np.float64)
    if sv.ndim != 1:
        raise ValueError("singular values must form a 1-D vector")
    if sv.size == 0:
        return 0
    if np.any(sv < 0) or np.any(np.diff(sv) > 0):
        raise ValueError("singular values must be non-negative and non-increasing")
    if sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rel_tol * sv[0]))


def min_norm_least_squares(a, b, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Least-squares solution of ``a w = b`` with minimum Euclidean norm.

    Computed as ``v[:, :r] @ (u[:, :r].T @ b / s[:r])`` with the rank ``r``
    taken from :func:`numeric_rank`, i.e. the Moore-Penrose pseudo-inverse
    applied to ``b``.  Among all minimizers of ``||a w - b||`` this is the
    unique one of smallest ``||w||``.  A zero matrix yields ``w = 0``.
    """
    m = as_matrix(a)
    rhs = as_vector(b)
    if m.shape[0] != rhs.shape[0]:
        raise DimensionMismatch(
            f"matrix has {m.shape[0]} rows but right-hand side has {rhs.shape[0]} entries"
        )
    f = thin_svd(m)
    r = numeric_rank(f.s, rel_tol)
    if r == 0:
        return np.zeros(m.shape[1])
    return f.v[:, :r] @ ((f.u[:, :r].T @ rhs) / f.s[:r])


def ridge_least_squares(a, b, lam: float) -> np.ndarray:
    """Unique minimizer of ``||a w - b||^2 + lam * ||w||^2``.

    Uses the SVD filter ``s / (s^2 + lam)``, which shrinks every direction
    and needs no rank decision.
    """
    if not lam > 0:
        raise NonPositiveLambda(f"ridge penalty must be > 0, got {lam}")
    m = as_matrix(a)
    rhs = as_vector(b)
    if m.shape[0] != rhs.shape[0]:
        raise DimensionMismatch(
            f"matrix has {m.shape[0]} rows but right-hand side has {rhs.shape[0]} entries"
        )
    f = thin_svd(m)
    filt = f.s / (f.s**2 + lam)
    return f.v @ (filt * (f.u.T @ rhs))
