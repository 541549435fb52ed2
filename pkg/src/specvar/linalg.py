"""Dense complex-matrix primitives.

Norms, triangular splits, the trace-deflated measure ``delta`` and the
spectral condition number ``kappa2``.  Every function here is pure: inputs
are validated, never mutated, and results depend on nothing but the
arguments, so values are freely shareable across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, NonFiniteError, SingularMatrixError

# Unit roundoff of binary64 (half the machine epsilon).
UNIT_ROUNDOFF = float(np.finfo(np.float64).eps) / 2.0


def as_matrix(a, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a dense complex128 matrix.

    Rejects non-2-D input, empty dimensions and non-finite entries; with
    ``square=True`` also rejects rectangular shapes.  No copy is made when
    ``a`` is already complex128.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name} must be nonempty, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    if not np.isfinite(m.real).all() or not np.isfinite(m.imag).all():
        raise NonFiniteError(f"{name} contains NaN/Inf entries")
    return m


def frobenius_norm(m) -> float:
    """Frobenius norm ||M||_F."""
    return float(np.linalg.norm(as_matrix(m)))


def spectral_norm(m) -> float:
    """Spectral norm ||M||_2, i.e. the largest singular value."""
    return float(np.linalg.norm(as_matrix(m), 2))


def trace(m) -> complex:
    """Trace of a square matrix."""
    return complex(np.trace(as_matrix(m, square=True)))


def adjoint(m) -> np.ndarray:
    """Conjugate transpose M*."""
    return as_matrix(m).conj().T


def matmul(a, b) -> np.ndarray:
    """Matrix product A @ B with an explicit inner-dimension check."""
    a = as_matrix(a, name="left factor")
    b = as_matrix(b, name="right factor")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(
            f"inner dimensions differ: {a.shape} vs {b.shape}"
        )
    return a @ b


def solve(q, b) -> np.ndarray:
    """Solve Q X = B for X (i.e. return Q^-1 B) via LU with partial pivoting."""
    q = as_matrix(q, square=True, name="coefficient matrix")
    b = as_matrix(b, name="right-hand side")
    if q.shape[0] != b.shape[0]:
        raise DimensionError(
            f"incompatible shapes for solve: {q.shape} vs {b.shape}"
        )
    try:
        return np.linalg.solve(q, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"singular coefficient matrix: {exc}") from exc


def delta(m) -> float:
    """Trace-deflated Frobenius norm  (||M||_F^2 - |tr M|^2 / n)^(1/2).

    Zero exactly on scalar matrices mu*I, equal to ||M||_F exactly when
    tr M = 0.  Evaluated in the algebraically identical deviation form
    ||M - (tr M / n) I||_F, which is nonnegative by construction and free
    of the cancellation that makes the radicand form lose half the digits
    near scalar matrices; the result is clamped at ||M||_F (Pythagoras
    gives delta <= ||M||_F exactly, rounding can break it by one ulp).
    """
    m = as_matrix(m, square=True)
    n = m.shape[0]
    dev = m - (np.trace(m) / n) * np.eye(n)
    return min(float(np.linalg.norm(dev)), float(np.linalg.norm(m)))


@dataclass(frozen=True)
class TriangularSplit:
    """Exact entrywise partition of a square matrix into its diagonal,
    strictly lower and strictly upper triangular parts."""

    diagonal: np.ndarray
    strictly_lower: np.ndarray
    strictly_upper: np.ndarray


def split_dlu(m) -> TriangularSplit:
    """Split M into diagonal + strictly lower + strictly upper parts.

    The three parts have disjoint supports, so the reconstruction
    D + L + U == M holds bitwise.
    """
    m = as_matrix(m, square=True)
    return TriangularSplit(
        diagonal=np.diag(np.diag(m)),
        strictly_lower=np.tril(m, -1),
        strictly_upper=np.triu(m, 1),
    )


def kappa2(q) -> float:
    """Spectral condition number  kappa_2(Q) = ||Q||_2 ||Q^-1||_2.

    Computed as the ratio of extreme singular values.  Raises
    ``SingularMatrixError`` when sigma_min <= n * u * sigma_max
    (u = unit roundoff), i.e. when Q is singular to working precision.
    """
    q = as_matrix(q, square=True, name="Q")
    sigma = np.linalg.svd(q, compute_uv=False)
    n = q.shape[0]
    if sigma[-1] <= n * UNIT_ROUNDOFF * sigma[0]:
        raise SingularMatrixError(
            f"Q is numerically singular (sigma_min={sigma[-1]:.3e}, "
            f"sigma_max={sigma[0]:.3e})"
        )
    return float(sigma[0] / sigma[-1])
