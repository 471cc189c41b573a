"""Kraus-represented CPTP maps, their duals, and map quantumness.

For a map ``E[rho] = sum_a V_a rho V_a^dagger`` the operator ``V_E = E[I]`` has
trace ``dim``; its largest eigenvalue ``C`` bounds how much ``d_rho`` can grow
under the map, and ``M_Q = C - 1`` vanishes exactly for unital maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .distances import d_rho, max_expectation
from .errors import (
    BadProbabilities,
    ConsistencyError,
    DimensionMismatch,
    NotTracePreserving,
    NotUnitary,
    ParamOutOfRange,
)
from .rand import random_density, rng_from
from .states import DensityMatrix, as_state, maximally_mixed

TP_TOL = 1e-10
UNITAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrausMap:
    """A trace-preserving completely positive map given by its Kraus operators."""

    dim: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(linalg.as_matrix(k) for k in self.kraus)
        if not ops:
            raise ParamOutOfRange("a Kraus map needs at least one operator")
        for k in ops:
            if k.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Kraus operator of shape {k.shape} in a dim-{self.dim} map")
            k.setflags(write=False)
        defect = linalg.max_abs(sum(k.conj().T @ k for k in ops) - np.eye(self.dim))
        if defect > TP_TOL:
            raise NotTracePreserving(f"||sum V^dagger V - I||_max = {defect:.3e} exceeds {TP_TOL:.0e}")
        object.__setattr__(self, "kraus", ops)

    @classmethod
    def from_operators(cls, ops: Sequence) -> "KrausMap":
        ops = [linalg.as_matrix(k) for k in ops]
        if not ops:
            raise ParamOutOfRange("a Kraus map needs at least one operator")
        return cls(ops[0].shape[0], tuple(ops))

    def __call__(self, m) -> np.ndarray:
        return apply(self, m)

    def __repr__(self) -> str:
        return f"KrausMap(dim={self.dim}, n_kraus={len(self.kraus)})"


def _operand(E: KrausMap, m) -> np.ndarray:
    a = linalg.as_matrix(m.mat if isinstance(m, DensityMatrix) else m)
    if a.shape[0] != E.dim:
        raise DimensionMismatch(f"operand dim {a.shape[0]} != map dim {E.dim}")
    return a


def apply(E: KrausMap, m) -> np.ndarray:
    a = _operand(E, m)
    return sum(k @ a @ k.conj().T for k in E.kraus)


def dual_apply(E: KrausMap, m) -> np.ndarray:
    """Heisenberg-picture action ``sum_a V_a^dagger m V_a``."""
    a = _operand(E, m)
    return sum(k.conj().T @ a @ k for k in E.kraus)


def apply_state(E: KrausMap, rho) -> DensityMatrix:
    return DensityMatrix(apply(E, as_state(rho)))


@dataclass(frozen=True, eq=False)
class MapAnalysis:
    v_e: np.ndarray
    c_const: float
    m_q: float
    unital: bool
    mq_identity_residual: float

    @property
    def mq_identity_ok(self) -> bool:
        return self.mq_identity_residual <= 1e-10


def analyze(E: KrausMap, cross_check: bool = True) -> MapAnalysis:
    """Contraction constant and quantumness of ``E``.

    ``C`` is the top eigenvalue of ``V_E = E[I]``. The residual of the identity
    ``M_Q / dim = d_rho(E[I/dim], I/dim)`` is reported alongside.
    """
    v_e = apply(E, np.eye(E.dim))
    lam = linalg.eigvals_hermitian(v_e)
    c = float(lam[0])
    if cross_check:
        via_states = max_expectation(v_e).value
        if abs(via_states - c) > 1e-12:
            raise ConsistencyError(f"spectral C={c!r} disagrees with state maximization {via_states!r}")
    m_q = c - 1.0
    mixed = maximally_mixed(E.dim)
    residual = abs(m_q / E.dim - d_rho(apply(E, mixed), mixed))
    unital = linalg.max_abs(v_e - np.eye(E.dim)) <= UNITAL_TOL
    v_e.setflags(write=False)
    return MapAnalysis(v_e, c, m_q, bool(unital), float(residual))


def identity_map(dim: int) -> KrausMap:
    return KrausMap(dim, (np.eye(dim, dtype=np.complex128),))


def weyl_operators(dim: int) -> list[np.ndarray]:
    """Generalized Paulis ``X^a Z^b``, ``a, b = 0..dim-1``, ``(0, 0)`` first."""
    omega = np.exp(2j * np.pi / dim)
    shift = np.roll(np.eye(dim, dtype=np.complex128), 1, axis=0)
    clock = np.diag(omega ** np.arange(dim))
    return [
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a in range(dim)
        for b in range(dim)
    ]


def depolarizing(dim: int, w: float) -> KrausMap:
    """``rho -> w rho + (1 - w) I/dim`` for ``0 <= w < 1``."""
    w = float(w)
    if dim < 1:
        raise ParamOutOfRange(f"dim must be positive, got {dim}")
    if not 0.0 <= w < 1.0:
        raise ParamOutOfRange(f"w must lie in [0, 1), got {w}")
    ops = weyl_operators(dim)
    d2 = dim * dim
    coeffs = [np.sqrt(w + (1.0 - w) / d2)] + [np.sqrt((1.0 - w) / d2)] * (d2 - 1)
    return KrausMap(dim, tuple(c * u for c, u in zip(coeffs, ops)))


def amplitude_damping(gamma: float) -> KrausMap:
    """Zero-temperature qubit decay; basis state 0 relaxes to 1 with probability ``gamma``."""
    g = float(gamma)
    if not 0.0 <= g <= 1.0:
        raise ParamOutOfRange(f"gamma must lie in [0, 1], got {g}")
    v0 = np.array([[np.sqrt(1.0 - g), 0.0], [0.0, 1.0]], dtype=np.complex128)
    v1 = np.array([[0.0, 0.0], [np.sqrt(g), 0.0]], dtype=np.complex128)
    return KrausMap(2, (v0, v1))


def tensor_map(Ea: KrausMap, Eb: KrausMap) -> KrausMap:
    ops = tuple(np.kron(va, wb) for va in Ea.kraus for wb in Eb.kraus)
    return KrausMap(Ea.dim * Eb.dim, ops)


def bipartite_damping(gamma_a: float, gamma_b: float) -> KrausMap:
    return tensor_map(amplitude_damping(gamma_a), amplitude_damping(gamma_b))


def extend_with_ancilla(E: KrausMap, ancilla_dim: int = 2) -> KrausMap:
    """``E (x) I_a`` acting on system (first factor) and a passive ancilla."""
    if ancilla_dim < 2:
        raise ParamOutOfRange(f"ancilla_dim must be at least 2, got {ancilla_dim}")
    return tensor_map(E, identity_map(ancilla_dim))


def unitary_mixture(us: Sequence, ps: Sequence[float]) -> KrausMap:
    """Random-unitary channel ``sum_c p_c U_c rho U_c^dagger``."""
    us = [linalg.as_matrix(u) for u in us]
    p = np.asarray(ps, dtype=float)
    if not us or p.shape != (len(us),):
        raise BadProbabilities(f"need one probability per unitary, got {p.size} for {len(us)}")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise BadProbabilities(f"probabilities must be nonnegative and sum to 1, got {p.tolist()}")
    for i, u in enumerate(us):
        if not linalg.is_unitary(u):
            raise NotUnitary(f"operator {i} is not unitary within 1e-10")
    return KrausMap(us[0].shape[0], tuple(np.sqrt(pc) * u for pc, u in zip(p, us)))


def _ancilla_pair(dim: int) -> tuple[np.ndarray, np.ndarray]:
    plus = np.diag([1.0, 0.0]).astype(np.complex128)
    minus = np.diag([0.0, 1.0]).astype(np.complex128)
    mixed = np.eye(dim) / dim
    return np.kron(mixed, plus), np.kron(mixed, minus)


def max_violation_states(E: KrausMap) -> tuple[DensityMatrix, DensityMatrix, KrausMap]:
    """States ``I/dim (x) |+><+|`` and ``I/dim (x) |-><-|`` with the ancilla-extended map.

    For these inputs ``d_rho`` is ``1/dim`` before and ``C/dim`` after the
    extended map, so the general bound is saturated.
    """
    a, b = _ancilla_pair(E.dim)
    return DensityMatrix(a), DensityMatrix(b), extend_with_ancilla(E, 2)


def mixed_violation_states(E: KrausMap, w: float, seed=0) -> tuple[DensityMatrix, DensityMatrix]:
    """``(1 - w) rho_sa + w rho_A/B`` for a seeded random system-ancilla state ``rho_sa``."""
    w = float(w)
    if not 0.0 < w <= 1.0:
        raise ParamOutOfRange(f"w must lie in (0, 1], got {w}")
    a, b = _ancilla_pair(E.dim)
    background = random_density(2 * E.dim, rng_from(seed))
    return (
        DensityMatrix((1.0 - w) * background + w * a),
        DensityMatrix((1.0 - w) * background + w * b),
    )
