"""Distinguishability measures between two states.

``d_rho`` maximizes ``|Tr[rho (rho_A - rho_B)]|`` over states and reduces to the
largest absolute eigenvalue of the difference; ``d_pi`` is the trace distance,
half the sum of absolute eigenvalues. Everything here is computed from the
eigenvalues of the difference operator.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import AlphaOutOfRange, BasisNotOrthonormal, DimensionMismatch
from .linalg import EigenSystem
from .states import DensityMatrix, as_state, difference

TIE_TOL = 1e-9
MAXGAP_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class MaxExpectationResult:
    value: float
    maximizer: DensityMatrix
    degenerate: bool
    degeneracy_order: int
    eigenvalue: float
    vector: np.ndarray


def _max_from_eigensystem(es: EigenSystem) -> MaxExpectationResult:
    lam, vec = es
    mags = np.abs(lam)
    value = float(mags.max())
    # lowest index in the descending order wins ties
    ties = np.flatnonzero(mags >= value - TIE_TOL)
    k = int(ties[0])
    v = vec[:, k]
    return MaxExpectationResult(
        value=value,
        maximizer=DensityMatrix(np.outer(v, v.conj())),
        degenerate=ties.size > 1,
        degeneracy_order=int(ties.size),
        eigenvalue=float(lam[k]),
        vector=v.copy(),
    )


def max_expectation(a) -> MaxExpectationResult:
    """Maximize ``|Tr[rho A]|`` over density matrices for Hermitian ``A``.

    The optimum is the eigenvalue of ``A`` with largest magnitude, attained by
    the projector onto its eigenvector. ``degeneracy_order`` counts the
    eigenvalues tying that magnitude within 1e-9.
    """
    return _max_from_eigensystem(linalg.eig_hermitian(a))


def _pair(a, b):
    a, b = as_state(a), as_state(b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"state dims differ: {a.dim} vs {b.dim}")
    return a, b


def _zeta(a, b) -> np.ndarray:
    a, b = _pair(a, b)
    return linalg.eigvals_hermitian(a.mat - b.mat)


def d_rho(a, b) -> float:
    return float(np.max(np.abs(_zeta(a, b))))


def d_pi(a, b) -> float:
    return float(0.5 * np.sum(np.abs(_zeta(a, b))))


def schatten_from_eigenvalues(zeta, alpha: float) -> float:
    """``(sum |zeta|^alpha)^(1/alpha)`` evaluated as ``m (sum (|zeta|/m)^alpha)^(1/alpha)``."""
    alpha = float(alpha)
    if not alpha >= 1.0:
        raise AlphaOutOfRange(f"alpha must be >= 1, got {alpha}")
    mags = np.abs(np.asarray(zeta, dtype=float))
    m = float(mags.max()) if mags.size else 0.0
    if m == 0.0:
        return 0.0
    if np.isinf(alpha):
        return m
    ratio = mags / m
    if alpha > 64:
        logs = alpha * np.log(ratio[ratio > 0])
        return m * float(np.exp(np.logaddexp.reduce(logs) / alpha))
    return m * float(np.sum(ratio ** alpha) ** (1.0 / alpha))


def d_alpha(a, b, alpha: float) -> float:
    """Schatten ``alpha``-norm of ``a - b``; ``alpha = 1`` gives ``2 d_pi``, large ``alpha`` tends to ``d_rho``."""
    if not float(alpha) >= 1.0:
        raise AlphaOutOfRange(f"alpha must be >= 1, got {alpha}")
    return schatten_from_eigenvalues(_zeta(a, b), alpha)


def _basis_matrix(basis, dim: int) -> np.ndarray:
    if isinstance(basis, np.ndarray) and basis.ndim == 2:
        u = basis.astype(np.complex128)
    else:
        u = np.column_stack([np.asarray(v, dtype=np.complex128).ravel() for v in basis])
    if u.shape != (dim, dim):
        raise BasisNotOrthonormal(f"basis of shape {u.shape} does not span dimension {dim}")
    defect = linalg.max_abs(linalg.adjoint(u) @ u - np.eye(dim))
    if defect > 1e-10:
        raise BasisNotOrthonormal(f"||U^dagger U - I||_max = {defect:.3e}")
    return u


def d_classical(a, b, basis) -> float:
    """Largest population difference ``max_k |<k|a|k> - <k|b|k>|`` in an orthonormal basis.

    ``basis`` is a matrix whose columns are the basis vectors, or a sequence
    of vectors.
    """
    a, b = _pair(a, b)
    u = _basis_matrix(basis, a.dim)
    delta = a.mat - b.mat
    pops = np.real(np.einsum("ik,ij,jk->k", u.conj(), delta, u))
    return float(np.max(np.abs(pops)))


class EqualityCase(str, enum.Enum):
    EQUAL = "Equal"
    STRICT = "Strict"
    MAX_GAP = "MaxGap"


@dataclass(frozen=True)
class ComparisonReport:
    d_rho: float
    d_pi: float
    n_plus: int
    n_minus: int
    cap_N: int
    equality_case: EqualityCase

    def to_dict(self) -> dict:
        return {
            "d_rho": self.d_rho,
            "d_pi": self.d_pi,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "cap_N": self.cap_N,
            "equality_case": self.equality_case.value,
        }


def compare(a, b) -> ComparisonReport:
    """Classify how ``d_pi`` relates to ``d_rho``.

    ``Equal`` when the difference has at most one positive or at most one
    negative eigenvalue; otherwise ``MaxGap`` if ``d_pi = N d_rho`` with
    ``N = dim // 2``, else ``Strict``.
    """
    a, b = _pair(a, b)
    d = difference(a, b)
    z = d.spectrum
    dr = float(np.max(np.abs(z)))
    dp = float(0.5 * np.sum(np.abs(z)))
    cap = a.dim // 2
    if d.n_plus <= 1 or d.n_minus <= 1:
        case = EqualityCase.EQUAL
    elif abs(dp - cap * dr) <= MAXGAP_RTOL * max(dp, 1.0):
        case = EqualityCase.MAX_GAP
    else:
        case = EqualityCase.STRICT
    return ComparisonReport(dr, dp, d.n_plus, d.n_minus, cap, case)


def d_rho_to_mixed(q) -> float:
    """``d_rho(q, I/dim)`` from the extreme eigenvalues of ``q``."""
    q = as_state(q)
    n = q.dim
    lam = q.spectrum
    return max(n * lam[0] - 1.0, 1.0 - n * lam[-1]) / n

