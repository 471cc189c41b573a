"""Density matrices, difference operators and the state families used in the examples."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    InfeasibleSpectrum,
    NotPositive,
    NotUnitary,
    OutsideBlochBall,
    ParamOutOfRange,
    TraceNotOne,
    ZeroVector,
)
from .linalg import EigenSystem
from .rand import rng_from

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ZERO_EIG_TOL = 1e-9
SPECTRUM_TOL = 1e-10
EXHAUSTIVE_SUBSET_MAX_DIM = 16

SIGMA_I = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite.

    The matrix is symmetrized on construction and stored read-only, together
    with its (descending) spectrum.
    """

    __slots__ = ("mat", "spectrum")

    def __init__(self, m):
        a = linalg.hermitize(m)
        tr = np.trace(a).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise TraceNotOne(f"|Tr[rho] - 1| = {abs(tr - 1.0):.3e} exceeds {TRACE_TOL:.0e}")
        lam = linalg.eigvals_hermitian(a)
        if lam[-1] < -PSD_TOL:
            raise NotPositive(f"minimum eigenvalue {lam[-1]:.3e} is below -{PSD_TOL:.0e}")
        self.mat = _readonly(a)
        self.spectrum = _readonly(lam)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, spectrum={np.round(self.spectrum, 6).tolist()})"


def density_from_matrix(m) -> DensityMatrix:
    return DensityMatrix(m)


def as_state(x) -> DensityMatrix:
    return x if isinstance(x, DensityMatrix) else DensityMatrix(x)


def pure(v) -> DensityMatrix:
    psi = np.asarray(v, dtype=np.complex128).ravel()
    norm = np.linalg.norm(psi)
    if psi.size == 0 or norm == 0.0:
        raise ZeroVector("cannot build a pure state from the zero vector")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def bloch_qubit(a: Sequence[float]) -> DensityMatrix:
    ax, ay, az = (float(c) for c in a)
    r = np.sqrt(ax * ax + ay * ay + az * az)
    if r > 1.0 + 1e-12:
        raise OutsideBlochBall(f"Bloch vector norm {r:.6g} exceeds 1")
    return DensityMatrix(0.5 * (SIGMA_I + ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z))


def maximally_mixed(dim: int) -> DensityMatrix:
    if dim < 1:
        raise ParamOutOfRange(f"dim must be positive, got {dim}")
    return DensityMatrix(np.eye(dim) / dim)


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return value


def separable_rr(r: float) -> DensityMatrix:
    """Product state ``(I + r sz)/2 (x) (I + r sz)/2``."""
    r = _unit_interval("r", r)
    q = 0.5 * (SIGMA_I + r * SIGMA_Z)
    return DensityMatrix(np.kron(q, q))


def bell_diagonal_s(s: float) -> DensityMatrix:
    """``(I_4 + s sx (x) sx) / 4``, diagonal in the Bell basis."""
    s = _unit_interval("s", s)
    return DensityMatrix((np.eye(4) + s * np.kron(SIGMA_X, SIGMA_X)) / 4)


@lru_cache(maxsize=None)
def _subset_matrix(n: int) -> np.ndarray:
    # every nonempty proper subset of {0..n-1} as a 0/1 row
    codes = np.arange(1, 2 ** n - 1)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(float)


def subset_violation(eigs, tol: float = SPECTRUM_TOL):
    """Return ``(b, sum)`` for a binary subset with ``|sum_k b_k eig_k| > 1 + tol``, else None.

    Subsets are enumerated exhaustively up to dimension 16. Beyond that only
    the two sign-pure subsets are checked, which bind whenever any subset does.
    """
    z = np.asarray(eigs, dtype=float)
    n = z.size
    if n < 2:
        return None
    if n <= EXHAUSTIVE_SUBSET_MAX_DIM:
        b = _subset_matrix(n)
        sums = b @ z
        k = int(np.argmax(np.abs(sums)))
        if abs(sums[k]) > 1.0 + tol:
            return b[k].astype(int), float(sums[k])
        return None
    for b in ((z > 0), (z < 0)):
        total = float(z[b].sum())
        if abs(total) > 1.0 + tol:
            return b.astype(int), total
    return None


@dataclass(frozen=True, eq=False)
class DifferenceOperator:
    """Traceless Hermitian ``rho_A - rho_B`` with its eigensystem cached."""

    delta: np.ndarray
    eigensystem: EigenSystem
    n_plus: int
    n_minus: int

    @property
    def dim(self) -> int:
        return self.delta.shape[0]

    @property
    def spectrum(self) -> np.ndarray:
        return self.eigensystem.eigenvalues


def _validate_spectrum(z: np.ndarray, tol: float = SPECTRUM_TOL) -> None:
    big = np.max(np.abs(z)) if z.size else 0.0
    if big > 1.0 + tol:
        raise InfeasibleSpectrum(f"eigenvalue of magnitude {big:.6g} outside [-1, 1]")
    bad = subset_violation(z, tol)
    if bad is not None:
        b, total = bad
        raise InfeasibleSpectrum(f"subset b={b.tolist()} sums to {total:.6g}, outside [-1, 1]")


def _make_difference(delta: np.ndarray, es: EigenSystem) -> DifferenceOperator:
    tr = abs(np.trace(delta))
    if tr > TRACE_TOL:
        raise InfeasibleSpectrum(f"|Tr[delta]| = {tr:.3e} is not zero")
    z = es.eigenvalues
    _validate_spectrum(z)
    n_plus = int(np.sum(z > ZERO_EIG_TOL))
    n_minus = int(np.sum(z < -ZERO_EIG_TOL))
    return DifferenceOperator(
        _readonly(delta), EigenSystem(_readonly(z), _readonly(es.eigenvectors)), n_plus, n_minus
    )


def difference(a, b) -> DifferenceOperator:
    a, b = as_state(a), as_state(b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"state dims differ: {a.dim} vs {b.dim}")
    delta = a.mat - b.mat
    return _make_difference(delta, linalg.eig_hermitian(delta))


def difference_from_spectrum(eigs: Sequence[float], basis=None) -> DifferenceOperator:
    """Build ``U diag(eigs) U^dagger`` after checking it is a difference of two states."""
    z = np.asarray(eigs, dtype=float).ravel()
    if z.size < 1:
        raise DimensionMismatch("empty spectrum")
    if abs(z.sum()) > 1e-12:
        raise InfeasibleSpectrum(f"eigenvalues sum to {z.sum():.3e}, not zero")
    _validate_spectrum(z)
    if basis is None:
        u = np.eye(z.size, dtype=np.complex128)
    else:
        u = linalg.as_matrix(basis)
        if u.shape[0] != z.size:
            raise DimensionMismatch(f"basis dim {u.shape[0]} != spectrum length {z.size}")
        if not linalg.is_unitary(u):
            raise NotUnitary("basis is not unitary within 1e-10")
    order = np.argsort(-z, kind="stable")
    delta = linalg.from_spectrum(z, u)
    return _make_difference(delta, EigenSystem(z[order], u[:, order].copy()))


def realize_states(d: DifferenceOperator) -> tuple[DensityMatrix, DensityMatrix]:
    """Two states whose difference is ``d``.

    Uses ``rho_A = D+ + c I`` and ``rho_B = D- + c I`` where ``D+`` and ``D-``
    are the positive and negative parts and ``c = (1 - Tr[D+]) / dim``.
    """
    z, v = d.eigensystem
    pos = np.clip(z, 0.0, None)
    neg = np.clip(-z, 0.0, None)
    c = (1.0 - pos.sum()) / d.dim
    filler = c * np.eye(d.dim)
    rho_a = linalg.from_spectrum(pos, v) + filler
    rho_b = linalg.from_spectrum(neg, v) + filler
    return DensityMatrix(rho_a), DensityMatrix(rho_b)


def feasible_spectra_mask(spectra: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Row-wise difference-of-states feasibility of traceless spectra.

    A spectrum is feasible iff its positive part sums to at most one; the
    sign-pure subsets are the binding ones.
    """
    s = np.asarray(spectra, dtype=float)
    pos = np.where(s > 0, s, 0.0).sum(axis=1)
    neg = np.where(s < 0, -s, 0.0).sum(axis=1)
    return (np.abs(s).max(axis=1) <= 1.0 + tol) & (pos <= 1.0 + tol) & (neg <= 1.0 + tol)


def sample_spectra(dim: int, count: int, seed=0, batch: int = 4096, max_draws: int = 10 ** 8):
    """Rejection-sample ``count`` feasible traceless spectra.

    Free eigenvalues are uniform on ``[-1, 1]^(dim-1)``; the last one is fixed
    by tracelessness. Returns ``(spectra, acceptance_rate)``.
    """
    if dim < 2:
        raise ParamOutOfRange(f"dim must be at least 2, got {dim}")
    rng = rng_from(seed)
    kept: list[np.ndarray] = []
    accepted = draws = 0
    while accepted < count:
        if draws >= max_draws:
            raise RuntimeError(f"rejection sampling exceeded {max_draws} draws")
        free = rng.uniform(-1.0, 1.0, size=(batch, dim - 1))
        cand = np.hstack([free, -free.sum(axis=1, keepdims=True)])
        ok = feasible_spectra_mask(cand)
        idx = np.flatnonzero(ok)
        need = count - accepted
        if idx.size > need:
            draws += int(idx[need - 1]) + 1
            idx = idx[:need]
        else:
            draws += batch
        kept.append(cand[idx])
        accepted += idx.size
    return np.vstack(kept), accepted / draws


def sample_difference(dim: int, seed=0) -> DifferenceOperator:
    """One random difference operator (computational basis); see :func:`sample_spectra`."""
    spectra, _ = sample_spectra(dim, 1, seed)
    z = spectra[0]
    z[-1] = -z[:-1].sum()
    return difference_from_spectrum(z)
