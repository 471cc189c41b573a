"""Golden-value checks exercised by ``qdist selftest``."""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import analysis, channels, distances, states


class Golden(NamedTuple):
    name: str
    compute: Callable[[], float]
    expected: float
    tol: float


def _diag(*v):
    return states.density_from_matrix(np.diag(v) / 10)


def _mixed4():
    return states.maximally_mixed(4)


def _max_violation_ratio(gamma: float) -> float:
    E = channels.amplitude_damping(gamma)
    a, b, ext = channels.max_violation_states(E)
    return distances.d_rho(channels.apply(ext, a), channels.apply(ext, b)) / distances.d_rho(a, b)


GOLDEN_CASES: tuple[Golden, ...] = (
    Golden("diag(5,2,2,1)/10 vs I/4: d_rho", lambda: distances.d_rho(_diag(5, 2, 2, 1), _mixed4()), 0.25, 1e-12),
    Golden("diag(5,2,2,1)/10 vs I/4: d_pi", lambda: distances.d_pi(_diag(5, 2, 2, 1), _mixed4()), 0.25, 1e-12),
    Golden("diag(5,3,1,1)/10 vs I/4: d_rho", lambda: distances.d_rho(_diag(5, 3, 1, 1), _mixed4()), 0.25, 1e-12),
    Golden("diag(5,3,1,1)/10 vs I/4: d_pi", lambda: distances.d_pi(_diag(5, 3, 1, 1), _mixed4()), 0.30, 1e-12),
    Golden("diag(4,4,1,1)/10 vs I/4: d_rho", lambda: distances.d_rho(_diag(4, 4, 1, 1), _mixed4()), 0.15, 1e-12),
    Golden("diag(4,4,1,1)/10 vs I/4: d_pi", lambda: distances.d_pi(_diag(4, 4, 1, 1), _mixed4()), 0.30, 1e-12),
    Golden(
        "pure |0> vs |+>: d_rho",
        lambda: distances.d_rho(states.pure([1, 0]), states.pure([1, 1])),
        math.sqrt(0.5),
        1e-12,
    ),
    Golden("amplitude damping 0.5: C", lambda: channels.analyze(channels.amplitude_damping(0.5)).c_const, 1.5, 1e-12),
    Golden("two-qubit damping (1/2, 1/4): C", lambda: channels.analyze(channels.bipartite_damping(0.5, 0.25)).c_const, 1.875, 1e-12),
    Golden("ancilla scheme ratio, damping 0.5", lambda: _max_violation_ratio(0.5), 1.5, 1e-10),
    Golden("W_min(1/2, 1/4)", lambda: analysis.w_min(0.5, 0.25), -1.0 / 7.0, 1e-12),
    Golden(
        "W at (0.5, -0.5, 0.5), damping (1/2, 1/4)",
        lambda: analysis.witness_at(channels.bipartite_damping(0.5, 0.25), 0.5, -0.5, 0.5).w,
        -1.0 / 7.0,
        1e-10,
    ),
    Golden(
        "W at (0.3, -0.3, 0.3), damping (1/2, 0)",
        lambda: analysis.witness_at(channels.bipartite_damping(0.5, 0.0), 0.3, -0.3, 0.3).w,
        -1.0,
        1e-9,
    ),
)


def run(stream=None) -> bool:
    ok_all = True
    for case in GOLDEN_CASES:
        try:
            got = case.compute()
            ok = abs(got - case.expected) <= case.tol
            detail = f"got {got:.12g}, expected {case.expected:.12g}"
        except Exception as exc:  # report, do not abort the remaining cases
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        ok_all &= ok
        line = f"{'PASS' if ok else 'FAIL'}  {case.name}  ({detail})"
        if stream is not None:
            print(line, file=stream)
    return ok_all
