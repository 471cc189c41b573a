"""Seeded random matrices, states and channels.

All helpers take a ``numpy.random.Generator`` (or a seed for one) so every
stochastic path in the package is reproducible.
"""
from __future__ import annotations

import numpy as np


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(dim: int, rng, cols: int | None = None) -> np.ndarray:
    rng = rng_from(rng)
    shape = (dim, dim if cols is None else cols)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def gram_schmidt(m: np.ndarray) -> np.ndarray:
    """Orthonormalize the columns of ``m`` (modified Gram-Schmidt)."""
    q = np.array(m, dtype=np.complex128)
    for k in range(q.shape[1]):
        for j in range(k):
            q[:, k] -= np.vdot(q[:, j], q[:, k]) * q[:, j]
        q[:, k] /= np.linalg.norm(q[:, k])
    return q


def random_unitary(dim: int, rng=None) -> np.ndarray:
    return gram_schmidt(ginibre(dim, rng))


def random_hermitian(dim: int, rng=None) -> np.ndarray:
    g = ginibre(dim, rng)
    return 0.5 * (g + g.conj().T)


def random_pure_vector(dim: int, rng=None) -> np.ndarray:
    rng = rng_from(rng)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng=None, rank: int | None = None) -> np.ndarray:
    """Induced-measure mixed state ``G G^dagger / Tr`` with ``G`` of shape ``dim x rank``."""
    g = ginibre(dim, rng, cols=dim if rank is None else rank)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_kraus(dim: int, n_ops: int, rng=None) -> list[np.ndarray]:
    """Kraus operators of a random CPTP map: blocks of a random isometry."""
    iso = gram_schmidt(ginibre(dim * n_ops, rng, cols=dim))
    return [iso[k * dim:(k + 1) * dim, :] for k in range(n_ops)]


def random_probabilities(n: int, rng=None) -> np.ndarray:
    p = rng_from(rng).random(n) + 1e-3
    return p / p.sum()
