"""Witness landscapes, distance curves and sampling studies built on the core primitives.

The two-qubit studies parametrize a difference of states by its spectrum
``diag(x, y, z, -(x + y + z))``. Unless a basis is supplied, that operator is
placed in the computational basis, the one the Kraus operators are written in.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import linalg
from .channels import KrausMap, analyze, apply
from .distances import d_pi, d_rho, max_expectation
from .errors import (
    ConsistencyError,
    DimensionMismatch,
    NotUnitary,
    ParamOutOfRange,
    UnitalMap,
    ZeroInputDistance,
)
from .rand import rng_from
from .states import as_state, bell_diagonal_s, difference_from_spectrum, realize_states, separable_rr

ZERO_DISTANCE = 1e-12
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class WitnessReport:
    x: float
    y: float
    z: float
    d_in: float
    d_out: float
    c_const: float
    w: float


def _witness_value(d_in: float, d_out: float, c: float) -> float:
    return (d_in - d_out) / (d_in * (c - 1.0))


def witness(E: KrausMap, a, b, c_const: float | None = None) -> WitnessReport:
    """Normalized contractivity gap ``(d_in - d_out) / (d_in (C - 1))``.

    ``W >= 0`` means the pair contracts, ``W < 0`` flags a violation and
    ``W = -1`` the largest violation the map allows. ``x, y, z`` report the
    first three diagonal entries of ``a - b``.
    """
    a, b = as_state(a), as_state(b)
    if c_const is None:
        c_const = analyze(E, cross_check=False).c_const
    if c_const - 1.0 <= ZERO_DISTANCE:
        raise UnitalMap(f"C - 1 = {c_const - 1.0:.3e}: the witness is undefined for unital maps")
    d_in = d_rho(a, b)
    if d_in <= ZERO_DISTANCE:
        raise ZeroInputDistance(f"d_rho(a, b) = {d_in:.3e}: the witness is undefined")
    d_out = d_rho(apply(E, a), apply(E, b))
    diag = np.real(np.diag(a.mat - b.mat))
    xyz = [float(v) for v in diag[:3]] + [math.nan] * max(0, 3 - diag.size)
    return WitnessReport(*xyz, d_in, d_out, float(c_const), _witness_value(d_in, d_out, c_const))


def _spectrum(x: float, y: float, z: float) -> list[float]:
    return [x, y, z, -(x + y + z)]


def witness_at(E: KrausMap, x: float, y: float, z: float, basis=None, c_const: float | None = None) -> WitnessReport:
    """Witness for the realized state pair whose difference has spectrum ``(x, y, z, -(x+y+z))``."""
    d = difference_from_spectrum(_spectrum(x, y, z), basis)
    a, b = realize_states(d)
    rep = witness(E, a, b, c_const)
    return WitnessReport(float(x), float(y), float(z), rep.d_in, rep.d_out, rep.c_const, rep.w)


def bipartite_damping_outputs(x, y, z, gamma_a: float, gamma_b: float) -> np.ndarray:
    """Closed-form diagonal of ``(E_a (x) E_b)[diag(x, y, z, -(x+y+z))]`` for two damping maps.

    Works elementwise on arrays; the leading axis of the result indexes the
    ``++, +-, -+, --`` components.
    """
    ga, gb = gamma_a, gamma_b
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    return np.stack([
        (1 - ga) * (1 - gb) * x,
        (1 - ga) * (x * gb + y),
        (1 - gb) * (x * ga + z),
        -(1 - ga * gb) * x - (1 - ga) * y - (1 - gb) * z,
    ])


def diagonal_input_distance(x, y, z):
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    return np.max(np.abs(np.stack([x, y, z, x + y + z])), axis=0)


def domain_constraints(x, y, z) -> np.ndarray:
    """The seven linear forms bounded by one in absolute value, stacked on axis 0."""
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)
    return np.stack([x, y, z, x + y + z, x + y, x + z, y + z])


def in_domain(x, y, z, tol: float = FEASIBILITY_TOL):
    return np.all(np.abs(domain_constraints(x, y, z)) <= 1.0 + tol, axis=0)


class _OutputModel:
    """``E[Delta]`` as a linear function of the spectrum ``(x, y, z, -(x+y+z))``.

    When the images of the four basis projectors are all diagonal, the output
    distance is the largest absolute diagonal entry ("diagonal" mode);
    otherwise each point needs an eigensolve.
    """

    def __init__(self, E: KrausMap, basis=None):
        if E.dim != 4:
            raise DimensionMismatch(f"the (x, y, z) parametrization needs a dim-4 map, got {E.dim}")
        if basis is None:
            u = np.eye(4, dtype=np.complex128)
        else:
            u = linalg.as_matrix(basis)
            if u.shape != (4, 4) or not linalg.is_unitary(u):
                raise NotUnitary("scan basis must be a 4x4 unitary")
        self.images = np.stack([apply(E, np.outer(u[:, k], u[:, k].conj())) for k in range(4)])
        off = self.images - np.einsum("kii->ki", self.images)[:, :, None] * np.eye(4)
        self.diagonal = linalg.max_abs(off) <= 1e-14
        self.diag_images = np.real(np.einsum("kii->ki", self.images))

    def d_out(self, x, y, z) -> np.ndarray:
        x, y, z = (np.atleast_1d(np.asarray(v, float)) for v in (x, y, z))
        spec = np.stack([x, y, z, -(x + y + z)], axis=-1)
        if self.diagonal:
            return np.max(np.abs(spec @ self.diag_images), axis=-1)
        out = np.einsum("pk,kij->pij", spec.astype(np.complex128), self.images)
        return np.array([np.max(np.abs(linalg.eigvals_hermitian(m))) for m in out])


@dataclass(frozen=True)
class ScanGrid:
    z: float
    resolution: int
    rows: list[WitnessReport] = field(default_factory=list)

    def minimum(self) -> WitnessReport:
        return min(self.rows, key=lambda r: r.w)


def grid_axis(resolution: int) -> np.ndarray:
    """``resolution`` evenly spaced points on ``[-1, 1]``, computed as exact ratios."""
    n = resolution - 1
    return np.array([(2 * i - n) / n for i in range(resolution)])


def witness_scan(E: KrausMap, z: float, resolution: int, basis=None, threads: int = 1) -> ScanGrid:
    """Evaluate ``W`` on the feasible part of a ``resolution x resolution`` grid at fixed ``z``.

    Infeasible points and points with vanishing input distance are omitted.
    Rows (fixed ``x``) are independent and may run on ``threads`` workers;
    results keep row order.
    """
    z = float(z)
    if abs(z) > 1.0:
        raise ParamOutOfRange(f"|z| must be at most 1, got {z}")
    if resolution < 2:
        raise ParamOutOfRange(f"resolution must be at least 2, got {resolution}")
    c = analyze(E, cross_check=False).c_const
    if c - 1.0 <= ZERO_DISTANCE:
        raise UnitalMap("C - 1 vanishes: the witness is undefined for unital maps")
    model = _OutputModel(E, basis)
    axis = grid_axis(resolution)

    def row(x: float) -> list[WitnessReport]:
        ys = axis
        xs = np.full_like(ys, x)
        zs = np.full_like(ys, z)
        d_in = diagonal_input_distance(xs, ys, zs)
        keep = in_domain(xs, ys, zs) & (d_in > ZERO_DISTANCE)
        if not np.any(keep):
            return []
        ys, d_in = ys[keep], d_in[keep]
        d_out = model.d_out(np.full_like(ys, x), ys, np.full_like(ys, z))
        w = (d_in - d_out) / (d_in * (c - 1.0))
        return [
            WitnessReport(float(x), float(yv), z, float(di), float(do), c, float(wv))
            for yv, di, do, wv in zip(ys, d_in, d_out, w)
        ]

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(row, axis))
    else:
        chunks = [row(x) for x in axis]
    return ScanGrid(z, resolution, [r for chunk in chunks for r in chunk])


def w_min(gamma_a: float, gamma_b: float) -> float:
    """Minimal witness ``1 - 2 ga / (ga + gb + ga gb)`` of the two-qubit damping map, for ``gb <= ga``."""
    ga, gb = float(gamma_a), float(gamma_b)
    if not (0.0 <= gb <= ga <= 1.0 and ga > 0.0):
        raise ParamOutOfRange(f"need 0 <= gamma_b <= gamma_a <= 1 with gamma_a > 0, got ({ga}, {gb})")
    return 1.0 - 2.0 * ga / (ga + gb + ga * gb)


def w_min_line_scan(E: KrausMap, points: int = 1001) -> float:
    """Minimum of ``W`` along ``(z, -z, z)``, ``0 < |z| <= 1/2``, from the map itself."""
    c = analyze(E, cross_check=False).c_const
    if c - 1.0 <= ZERO_DISTANCE:
        raise UnitalMap("C - 1 vanishes: the witness is undefined for unital maps")
    zs = np.linspace(-0.5, 0.5, points)
    zs = zs[np.abs(zs) > ZERO_DISTANCE]
    model = _OutputModel(E)
    d_in = diagonal_input_distance(zs, -zs, zs)
    d_out = model.d_out(zs, -zs, zs)
    return float(np.min((d_in - d_out) / (d_in * (c - 1.0))))


class Fig1Row(NamedTuple):
    s: float
    d_rho: float
    d_pi: float
    two_d_rho: float
    equal: bool


def fig1_closed_form(r: float, s: float) -> tuple[float, float]:
    """``(d_rho, d_pi)`` from the explicit eigenvalues of the product/Bell-diagonal difference."""
    root = math.sqrt(4 * r * r + s * s)
    zeta = np.array([s - r * r, -s - r * r, r * r + root, r * r - root]) / 4
    return float(np.max(np.abs(zeta))), float(0.5 * np.sum(np.abs(zeta)))


def figure1_curves(r: float, s_steps: int) -> list[Fig1Row]:
    """Distances between ``separable_rr(r)`` and ``bell_diagonal_s(s)`` for ``s = k / s_steps``.

    Each point is computed from the constructed states and checked against
    the closed-form eigenvalues to 1e-10.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ParamOutOfRange(f"r must lie in [0, 1], got {r}")
    if s_steps < 1:
        raise ParamOutOfRange(f"s_steps must be positive, got {s_steps}")
    rho_a = separable_rr(r)
    rows = []
    for k in range(s_steps + 1):
        s = k / s_steps
        rho_b = bell_diagonal_s(s)
        dr, dp = d_rho(rho_a, rho_b), d_pi(rho_a, rho_b)
        cr, cp = fig1_closed_form(r, s)
        if abs(dr - cr) > 1e-10 or abs(dp - cp) > 1e-10:
            raise ConsistencyError(f"r={r}, s={s}: ({dr}, {dp}) vs closed form ({cr}, {cp})")
        rows.append(Fig1Row(s, dr, dp, 2 * dr, abs(dp - dr) <= 1e-9))
    return rows


@dataclass(frozen=True)
class HypothesisResult:
    trials: int
    successes: int
    p_hat: float
    p_theory: float
    z_score: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "p_hat": self.p_hat,
            "p_theory": self.p_theory,
            "z_score": self.z_score,
            "seed": self.seed,
        }


def hypothesis_test(a, b, trials: int, seed: int = 0) -> HypothesisResult:
    """Monte Carlo of guessing which of two equiprobable states was sent.

    The measurement is the rank-one projector that maximizes ``d_rho`` and its
    complement. If that projector sits on a negative eigenvalue of ``a - b``,
    the click is read as evidence for ``b``.
    """
    if trials < 1:
        raise ParamOutOfRange(f"trials must be positive, got {trials}")
    a, b = as_state(a), as_state(b)
    best = max_expectation(a.mat - b.mat)
    proj = best.maximizer.mat
    p_click_a = float(np.clip(np.real(np.trace(proj @ a.mat)), 0.0, 1.0))
    p_click_b = float(np.clip(np.real(np.trace(proj @ b.mat)), 0.0, 1.0))
    click_means_a = best.eigenvalue >= 0.0

    rng = rng_from(seed)
    sent_a = rng.random(trials) < 0.5
    click = rng.random(trials) < np.where(sent_a, p_click_a, p_click_b)
    guess_a = click if click_means_a else ~click
    successes = int(np.count_nonzero(guess_a == sent_a))

    p_hat = successes / trials
    p_theory = 0.5 * (1.0 + best.value)
    var = p_theory * (1.0 - p_theory) / trials
    if var > 0:
        z = (p_hat - p_theory) / math.sqrt(var)
    else:
        z = 0.0 if p_hat == p_theory else math.copysign(math.inf, p_hat - p_theory)
    return HypothesisResult(trials, successes, p_hat, p_theory, z, int(seed))


FACE_LABELS = tuple(
    f"{form}={sign}1"
    for form in ("x", "y", "z", "x+y+z", "x+y", "x+z", "y+z")
    for sign in ("+", "-")
)


def active_faces(points: np.ndarray, boundary_tol: float) -> list[str]:
    """Label each feasible point with its nearest bounding face, or ``interior``."""
    forms = domain_constraints(points[:, 0], points[:, 1], points[:, 2]).T
    slack = 1.0 - np.abs(forms)
    k = np.argmin(slack, axis=1)
    labels = []
    for i, j in enumerate(k):
        if slack[i, j] <= boundary_tol:
            labels.append(FACE_LABELS[2 * j + (0 if forms[i, j] > 0 else 1)])
        else:
            labels.append("interior")
    return labels


@dataclass(frozen=True, eq=False)
class DomainExport:
    points: np.ndarray
    faces: list[str]
    samples: int
    seed: int

    @property
    def volume_fraction(self) -> float:
        return len(self.points) / self.samples


def domain_export(samples: int, seed: int = 0, boundary_tol: float = 1e-2) -> DomainExport:
    """Rejection-sample the feasible ``(x, y, z)`` body from ``samples`` uniform draws in the cube."""
    if samples < 1:
        raise ParamOutOfRange(f"samples must be positive, got {samples}")
    rng = rng_from(seed)
    cube = rng.uniform(-1.0, 1.0, size=(samples, 3))
    keep = np.all(np.abs(domain_constraints(cube[:, 0], cube[:, 1], cube[:, 2])) <= 1.0, axis=0)
    pts = cube[keep]
    return DomainExport(pts, active_faces(pts, boundary_tol), samples, int(seed))
