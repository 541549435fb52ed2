"""Seeded random test-matrix generators.

All generators take an explicit ``numpy.random.Generator`` so that callers
own determinism: the same generator state always yields the same matrix.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError


def complex_gaussian(n_rows: int, n_cols: int, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian matrix (unit-variance entries)."""
    return (
        rng.standard_normal((n_rows, n_cols))
        + 1j * rng.standard_normal((n_rows, n_cols))
    ) / np.sqrt(2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR of a complex
    Gaussian matrix."""
    if n < 1:
        raise DimensionError(f"order must be >= 1, got {n}")
    q, r = np.linalg.qr(complex_gaussian(n, n, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def random_conditioned(n: int, kappa: float, rng: np.random.Generator) -> np.ndarray:
    """Random matrix with prescribed spectral condition number.

    SVD surgery: two independent Haar unitaries around log-spaced singular
    values running from kappa down to 1, so kappa2 of the result equals
    ``kappa`` exactly (up to rounding).  kappa = 1 returns a unitary.
    """
    if kappa < 1.0:
        raise DimensionError(f"target condition number must be >= 1, got {kappa}")
    u = random_unitary(n, rng)
    if kappa == 1.0 or n == 1:
        return u
    v = random_unitary(n, rng)
    sigma = np.geomspace(kappa, 1.0, n)
    return (u * sigma[None, :]) @ v.conj().T


def rank_one(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random rank-one matrix u v* with unit Frobenius norm."""
    u = complex_gaussian(n, 1, rng)
    v = complex_gaussian(n, 1, rng)
    m = u @ v.conj().T
    return m / np.linalg.norm(m)
