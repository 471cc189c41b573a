"""Dense complex matrix helpers and a self-contained Hermitian eigensolver.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single validation gate (square, finite). The eigensolver is a complex
cyclic Jacobi method using a round-robin pair ordering, so each step applies
``n // 2`` disjoint plane rotations at once as one unitary similarity.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class EigenSystem(NamedTuple):
    """Eigenvalues sorted descending; column ``i`` of ``eigenvectors`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce to a square, finite complex128 array (copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def adjoint(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def _check_same(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a + b


def sub(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a - b


def scale(m, c: complex) -> np.ndarray:
    return complex(c) * as_matrix(m)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a @ b


def max_abs(m) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_defect(m) -> float:
    a = np.asarray(m)
    return max_abs(a - adjoint(a))


def tensor(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: tuple[int, int], keep: int | str = 0) -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``keep`` selects the surviving subsystem: ``0``/``"a"`` keeps the first
    factor (traces out ``b``), ``1``/``"b"`` keeps the second.
    """
    m = as_matrix(m)
    da, db = (int(d) for d in dims)
    if da < 1 or db < 1 or m.shape[0] != da * db:
        raise DimensionMismatch(f"dim {m.shape[0]} is not {da}*{db}")
    t = m.reshape(da, db, da, db)
    if keep in (0, "a"):
        return np.einsum("ijkj->ik", t)
    if keep in (1, "b"):
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 0/'a' or 1/'b', got {keep!r}")


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and max_abs(adjoint(u) @ u - np.eye(u.shape[0])) <= tol


def hermitize(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate Hermiticity within ``tol`` and return ``(m + m^dagger) / 2``."""
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(f"||A - A^dagger||_max = {defect:.3e} exceeds {tol:.0e}")
    return 0.5 * (a + adjoint(a))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Disjoint (p, q) pair sets covering every pair once per sweep (circle method)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        order = np.argsort(ps, kind="stable")
        rounds.append((np.array(ps)[order], np.array(qs)[order]))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.real(np.diag(a)).copy(), v
    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.zeros(n), v
    target = JACOBI_REL_TOL * fro
    rounds = _round_robin(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) < target:
            break
        for p, q in rounds:
            apq = a[p, q]
            r = np.abs(apq)
            active = r > 0.0
            if not np.any(active):
                continue
            app = np.real(a[p, p])
            aqq = np.real(a[q, q])
            phase = np.where(active, np.exp(-1j * np.angle(apq)), 1.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                theta = np.where(active, (aqq - app) / (2.0 * np.where(active, r, 1.0)), 0.0)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            j = np.eye(n, dtype=np.complex128)
            j[p, p] = c
            j[p, q] = s
            j[q, p] = -s * phase
            j[q, q] = c * phase
            a = adjoint(j) @ a @ j
            a[p, q] = 0.0
            a[q, p] = 0.0
            v = v @ j
    else:
        if _off_norm(a) >= target:
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return np.real(np.diag(a)).copy(), v


def eig_hermitian(m) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises :class:`NotHermitian` if ``||A - A^dagger||_max > 1e-10``; inputs within
    tolerance are symmetrized first. Eigenvalues are returned in descending
    order, ties keeping the order in which the sweeps left them.
    """
    a = hermitize(m)
    lam, vec = _jacobi(a)
    order = np.argsort(-lam, kind="stable")
    return EigenSystem(lam[order], vec[:, order])


def eigvals_hermitian(m) -> np.ndarray:
    return eig_hermitian(m).eigenvalues


def from_spectrum(eigenvalues: Sequence[float], basis=None) -> np.ndarray:
    """``U diag(eigenvalues) U^dagger`` with ``U`` the identity when ``basis`` is None."""
    lam = np.asarray(eigenvalues, dtype=float)
    if basis is None:
        return np.diag(lam).astype(np.complex128)
    u = as_matrix(basis)
    return (u * lam) @ adjoint(u)
