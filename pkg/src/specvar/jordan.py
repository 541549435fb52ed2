"""Jordan-structured test instances and the scaled-similarity envelope.

Instances are *constructed* from prescribed data: an ordered list of
(eigenvalue, block size) pairs and a nonsingular transform Q define
A = Q diag(J_1, ..., J_p) Q^-1 exactly.  The library never attempts to
compute a Jordan form of an arbitrary floating-point matrix -- that
problem is discontinuous and ill-posed; the one convenience path
(``spec_from_matrix``) only accepts matrices with well-separated
eigenvalues and builds the diagonalizable p = n case.

The diagonal scaling T(eps) = diag(1, eps, ..., eps^(m_i - 1)) per block
shrinks the Jordan superdiagonal to eps, and phi(eps) is the closed-form
envelope bounding || T^-1 Q^-1 (A+E) Q T - Lambda ||_F^2 from which every
bound in :mod:`specvar.bounds` is derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionError,
    DomainError,
    NotApplicableError,
)
from .linalg import as_matrix, delta, kappa2, solve

# minimum relative eigenvalue gap for the diagonalizable convenience path
MIN_EIG_GAP = 1e-6


def _frozen_copy(m: np.ndarray) -> np.ndarray:
    c = np.array(m, dtype=np.complex128)
    c.flags.writeable = False
    return c


@dataclass(frozen=True)
class JordanSpec:
    """Prescribed Jordan data: ordered (eigenvalue, size) blocks plus the
    similarity transform Q.  Block order is the user's order and is never
    re-sorted; it fixes the correspondence with Lambda."""

    blocks: tuple[tuple[complex, int], ...]
    q: np.ndarray

    @property
    def n(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def p(self) -> int:
        return len(self.blocks)

    @property
    def m(self) -> int:
        return max(size for _, size in self.blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(size for _, size in self.blocks)

    @property
    def eigenvalues(self) -> np.ndarray:
        """All n eigenvalues with multiplicity, in block order."""
        return np.concatenate(
            [np.full(size, lam, dtype=np.complex128) for lam, size in self.blocks]
        )

    def has_real_spectrum(self, tol: float = 1e-12) -> bool:
        """True iff every prescribed eigenvalue is real within
        tol * (1 + |lambda|)."""
        lams = np.array([lam for lam, _ in self.blocks])
        return bool(np.all(np.abs(lams.imag) <= tol * (1.0 + np.abs(lams))))


def make_jordan_spec(blocks, q=None) -> JordanSpec:
    """Validate and build a JordanSpec.

    ``q`` may be a matrix, None, or the string "identity".  Q must be
    square of the total block size and nonsingular (kappa2 check).
    """
    blocks = tuple((complex(lam), int(size)) for lam, size in blocks)
    if not blocks:
        raise DimensionError("at least one Jordan block is required")
    for lam, size in blocks:
        if size < 1:
            raise DimensionError(f"block size must be >= 1, got {size}")
        if not (np.isfinite(lam.real) and np.isfinite(lam.imag)):
            raise DimensionError("block eigenvalues must be finite")
    n = sum(size for _, size in blocks)
    if q is None or (isinstance(q, str) and q == "identity"):
        q = np.eye(n, dtype=np.complex128)
    q = as_matrix(q, square=True, name="Q")
    if q.shape[0] != n:
        raise DimensionError(
            f"Q has order {q.shape[0]} but blocks sum to {n}"
        )
    kappa2(q)  # raises SingularMatrixError if singular to working precision
    return JordanSpec(blocks=blocks, q=_frozen_copy(q))


def jordan_matrix(spec: JordanSpec) -> np.ndarray:
    """J = diag(J_1, ..., J_p): each block upper bidiagonal with the
    eigenvalue on the diagonal and 1 on the superdiagonal."""
    j = np.zeros((spec.n, spec.n), dtype=np.complex128)
    off = 0
    for lam, size in spec.blocks:
        for k in range(size):
            j[off + k, off + k] = lam
            if k + 1 < size:
                j[off + k, off + k + 1] = 1.0
        off += size
    return j


def lambda_matrix(spec: JordanSpec) -> np.ndarray:
    """Lambda = diag(lambda_1 I_{m_1}, ..., lambda_p I_{m_p}), block order."""
    return np.diag(spec.eigenvalues)


def assemble(spec: JordanSpec) -> np.ndarray:
    """A = Q J Q^-1.  Its exact eigenvalues are the prescribed ones."""
    x = spec.q @ jordan_matrix(spec)
    # X Q^-1 computed as a transposed solve, no explicit inverse
    return solve(spec.q.T, x.T).T


def _scaling_vector(spec: JordanSpec, eps: float) -> np.ndarray:
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"eps must lie in (0, 1], got {eps}")
    return np.concatenate(
        [eps ** np.arange(size, dtype=np.float64) for _, size in spec.blocks]
    )


def scaling_matrix(spec: JordanSpec, eps: float) -> np.ndarray:
    """T = diag(T_1, ..., T_p) with T_i = diag(1, eps, ..., eps^(m_i-1))."""
    return np.diag(_scaling_vector(spec, eps)).astype(np.complex128)


def superdiagonal_part(spec: JordanSpec, eps: float) -> np.ndarray:
    """Omega: the within-block superdiagonal entries, all equal to eps.
    T^-1 J T = Lambda + Omega, and ||Omega||_F^2 = (n - p) eps^2."""
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"eps must lie in (0, 1], got {eps}")
    om = np.zeros((spec.n, spec.n), dtype=np.complex128)
    off = 0
    for _, size in spec.blocks:
        for k in range(size - 1):
            om[off + k, off + k + 1] = eps
        off += size
    return om


def scalar_shift(e) -> complex | None:
    """The t with E == t*I bitwise, else None.

    Scalar matrices commute with every Q, so Q^-1 (tI) Q = tI holds exactly
    and callers can skip the solve (whose rounding would otherwise turn
    delta(E_Q) = 0 into ~sqrt(u) ||E_Q|| via cancellation).
    """
    e = np.asarray(e)
    t = e[0, 0]
    if np.array_equal(e, t * np.eye(e.shape[0], dtype=e.dtype)):
        return complex(t)
    return None


@dataclass(frozen=True)
class PerturbationInstance:
    """A (JordanSpec, E) pair with the derived quantities every bound needs.

    Immutable after construction; cached scalars therefore never go stale.
    ``e_q`` is Q^-1 E Q, the perturbation transported to the Jordan basis.
    """

    spec: JordanSpec
    e: np.ndarray
    a: np.ndarray = field(repr=False)
    e_q: np.ndarray = field(repr=False)
    norm_e: float
    norm_eq: float
    delta_eq: float
    trace_e: complex


def make_instance(spec: JordanSpec, e) -> PerturbationInstance:
    """Build a PerturbationInstance, computing A, E_Q and cached scalars."""
    e = as_matrix(e, square=True, name="E")
    if e.shape[0] != spec.n:
        raise DimensionError(
            f"E has order {e.shape[0]} but the spec has order {spec.n}"
        )
    shift = scalar_shift(e)
    e_q = e.copy() if shift is not None else solve(spec.q, e @ spec.q)
    return PerturbationInstance(
        spec=spec,
        e=_frozen_copy(e),
        a=_frozen_copy(assemble(spec)),
        e_q=_frozen_copy(e_q),
        norm_e=float(np.linalg.norm(e)),
        norm_eq=float(np.linalg.norm(e_q)),
        # delta(t I) = 0 analytically; skip the float evaluation's ulp noise
        delta_eq=0.0 if shift is not None else delta(e_q),
        trace_e=complex(np.trace(e)),
    )


def phi(inst: PerturbationInstance, eps: float) -> float:
    """Envelope value

        phi(eps) = eps^(2(1-m)) delta(E_Q)^2
                   + 2 eps^2 sqrt(n-p) delta(E_Q)
                   + (n-p) eps^2 + |tr E|^2 / n.

    For m = 1 the first exponent is 0, i.e. the coefficient is
    delta(E_Q)^2 itself.
    """
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"eps must lie in (0, 1], got {eps}")
    n, p, m = inst.spec.n, inst.spec.p, inst.spec.m
    d = inst.delta_eq
    return (
        eps ** (2 * (1 - m)) * d * d
        + 2.0 * eps * eps * np.sqrt(n - p) * d
        + (n - p) * eps * eps
        + abs(inst.trace_e) ** 2 / n
    )


def optimal_epsilon(inst: PerturbationInstance) -> float:
    """Minimizer of phi over (0, 1] for a non-diagonalizable instance.

    Returns ((m-1) delta^2 / (n - p + 2 sqrt(n-p) delta))^(1/(2m)) when
    that interior stationary point lies inside (0, 1) -- the sign of phi'
    flips there -- and 1 otherwise.  Requires m >= 2 (callers must use the
    diagonalizable path when m = 1) and delta(E_Q) > 0.
    """
    n, p, m = inst.spec.n, inst.spec.p, inst.spec.m
    if m < 2 or n == p:
        raise NotApplicableError(
            "optimal_epsilon applies only to non-diagonalizable instances "
            "(m >= 2); the diagonalizable case uses eps = 1"
        )
    d = inst.delta_eq
    if d <= 0.0:
        raise DomainError("optimal_epsilon requires delta(E_Q) > 0")
    drift = n - p + 2.0 * np.sqrt(n - p) * d
    curb = (m - 1) * d * d
    if drift > curb:
        return float((curb / drift) ** (1.0 / (2 * m)))
    return 1.0


def _scaled_ratio(spec: JordanSpec, eps: float) -> np.ndarray:
    t = _scaling_vector(spec, eps)
    return t[None, :] / t[:, None]


def envelope_margin(inst: PerturbationInstance, eps: float) -> float:
    """phi(eps) minus the squared deviation it bounds, recomputed from the
    instance matrices:

        phi(eps) - || T^-1 Q^-1 (A+E) Q T - Lambda ||_F^2.

    Q^-1 (A+E) Q is evaluated as J + Q^-1 E Q with a fresh solve (exact
    algebra for the prescribed instance; re-extracting J from the assembled
    A would only add O(u kappa2(Q)^2) reconstruction noise).  Nonnegative
    up to rounding; exactly zero when E = 0.
    """
    value = phi(inst, eps)
    if scalar_shift(inst.e) is not None:
        e_q = inst.e
    else:
        e_q = solve(inst.spec.q, inst.e @ inst.spec.q)
    f = (jordan_matrix(inst.spec) + e_q) * _scaled_ratio(inst.spec, eps)
    f -= lambda_matrix(inst.spec)
    return value - float(np.vdot(f, f).real)


def scaling_inequalities(inst: PerturbationInstance, eps: float) -> dict[str, float]:
    """Margins of the three elementwise estimates behind the envelope.

    Returns a dict with:

    - ``scaled_norm_margin``: eps^(2(1-m)) delta^2 + |tr E|^2/n
      minus ||T^-1 E_Q T||_F^2,
    - ``cross_term_margin``: eps^2 sqrt(n-p) delta
      minus Re tr(Omega* T^-1 E_Q T),
    - ``superdiag_norm_error``: | ||Omega||_F^2 - (n-p) eps^2 |.

    The first two are nonnegative up to rounding; the third is an exact
    identity.
    """
    n, p, m = inst.spec.n, inst.spec.p, inst.spec.m
    d = inst.delta_eq
    scaled = inst.e_q * _scaled_ratio(inst.spec, eps)
    omega = superdiagonal_part(inst.spec, eps)
    lhs_norm2 = float(np.vdot(scaled, scaled).real)
    rhs_norm2 = eps ** (2 * (1 - m)) * d * d + abs(inst.trace_e) ** 2 / n
    cross = float(np.vdot(omega, scaled).real)
    return {
        "scaled_norm_margin": rhs_norm2 - lhs_norm2,
        "cross_term_margin": float(eps * eps * np.sqrt(n - p) * d - cross),
        "superdiag_norm_error": abs(
            float(np.vdot(omega, omega).real) - (n - p) * eps * eps
        ),
    }


def eq_norm_majorant(inst: PerturbationInstance) -> float:
    """Computable majorant of ||E_Q||_F that avoids committing to a
    particular Q:  min( sqrt(rank E) ||E_Q||_2,  kappa2(Q) ||E||_F )."""
    rank = int(np.linalg.matrix_rank(inst.e))
    if rank == 0:
        return 0.0
    return float(
        min(
            np.sqrt(rank) * np.linalg.norm(inst.e_q, 2),
            kappa2(inst.spec.q) * inst.norm_e,
        )
    )


def spec_from_matrix(a, min_gap: float = MIN_EIG_GAP) -> JordanSpec:
    """Diagonalizable JordanSpec (p = n) from a matrix with well-separated
    eigenvalues.

    Refuses (``NotApplicableError``) when the minimum pairwise eigenvalue
    gap is <= min_gap * ||A||_F: close eigenvalues may hide a defective
    structure that floating point cannot resolve.
    """
    a = as_matrix(a, square=True)
    w, v = np.linalg.eig(a)
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if n > 1:
        gap = min(
            abs(w[i] - w[j]) for i in range(n) for j in range(i + 1, n)
        )
        if gap <= min_gap * scale:
            raise NotApplicableError(
                f"eigenvalue gap {gap:.3e} <= {min_gap:.1e} * ||A||_F; "
                "prescribe the Jordan data explicitly instead"
            )
    return make_jordan_spec([(lam, 1) for lam in w], v)
