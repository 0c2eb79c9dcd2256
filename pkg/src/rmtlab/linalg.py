"""Dense complex linear-algebra kernels.

Everything here operates on square complex matrices held as contiguous
numpy arrays.  The four primitives are a full SVD, a general
(non-Hermitian) eigenvalue solve, the spectral norm and the
log-absolute-determinant.  They are pure functions of their inputs and
safe to call concurrently on distinct matrices.

Singular matrices are reported through the module-level ``NEG_INFINITY``
sentinel (a distinct object, not a float), so that downstream averaging
code is forced to handle the singular case explicitly instead of
silently folding ``-inf`` into a mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Singular values below this floor make log|det| = -inf.
UNDERFLOW_FLOOR = 1e-300

#: Backward-stability tolerance for the SVD reconstruction invariant.
TOL_SVD = 1e-10


class NonFiniteError(ValueError):
    """A matrix entry is NaN or Inf."""


class NoConvergenceError(RuntimeError):
    """The underlying iterative eigen/SVD solver failed to converge."""


class _NegInfinity:
    """Tagged 'minus infinity' result of log_abs_det on a singular matrix.

    Deliberately supports no arithmetic: downstream code must branch on
    ``result is NEG_INFINITY``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INFINITY"


NEG_INFINITY = _NegInfinity()


@dataclass(frozen=True)
class SvdResult:
    """Singular values (nonincreasing) and, on request, the unitary factors."""

    singular_values: np.ndarray
    left_vectors: np.ndarray | None = None
    right_vectors: np.ndarray | None = None


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues with multiplicity; multiset semantics, no fixed order."""

    eigenvalues: np.ndarray


def _check_square_finite(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFiniteError("matrix contains NaN or Inf entries")
    return a


def svd(a: np.ndarray, want_vectors: bool = False) -> SvdResult:
    """Full singular value decomposition of a square complex matrix.

    Returns singular values sorted nonincreasing.  With
    ``want_vectors=True`` the factors satisfy
    ``A = U @ diag(s) @ V`` (``V`` already conjugate-transposed) to
    within ``TOL_SVD * ||A||``.
    """
    a = _check_square_finite(a)
    try:
        if want_vectors:
            u, s, vh = np.linalg.svd(a)
            return SvdResult(singular_values=s, left_vectors=u, right_vectors=vh)
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return SvdResult(singular_values=s)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values only, nonincreasing."""
    return svd(a).singular_values


def eigenvalues(a: np.ndarray) -> EigenResult:
    """All n eigenvalues of a general complex matrix, with multiplicity."""
    a = _check_square_finite(a)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return EigenResult(eigenvalues=vals)


def smallest_singular_value(a: np.ndarray) -> float:
    """s_n(A): the distance of A to the set of singular matrices."""
    return float(singular_values(a)[-1])


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value of A."""
    return float(singular_values(a)[0])


def log_abs_det(a: np.ndarray):
    """log|det A| as the sum of log singular values.

    Returns the ``NEG_INFINITY`` sentinel when any singular value is at
    or below the underflow floor (numerically singular matrix).
    """
    s = singular_values(a)
    if s[-1] <= UNDERFLOW_FLOOR:
        return NEG_INFINITY
    return float(np.sum(np.log(s)))
