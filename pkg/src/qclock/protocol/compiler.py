"""Single-qubit gates from inhomogeneous pointer schedules at m = pi/4.

With the pointer flipped by kappa^x, every outcome string yields
``byproduct(kappa_final) * prod_j V R^z(-tau_j)``. At m = pi/4 V is the
Hadamard, so two consecutive steps give R^x(-tau_2) R^z(-tau_1) and three
steps give V R^z(-tau_3) R^x(-tau_2) R^z(-tau_1), which covers SU(2).
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import CompileError, InvalidArgument
from ..qcore import phase_distance, process_fidelity, v_operator
from ..timeline import TimelineSpec, pointer_state, timeline_isometry, transfer_operator
from .register import ClassicalRegister, classical_update

M_COMPILE = math.pi / 4
RESIDUAL_TOL = 1e-9
MAX_SCHEDULE = 5  # upper bound promised to callers; the search never exceeds 3


@dataclass
class CompileReport:
    schedule: tuple[float, ...]
    residual: float  # phase distance of the ideal product to the target
    min_fidelity: float  # over all outcome strings, byproduct removed
    branches: int
    dense_min_fidelity: float | None = None


def euler_zxz(u: np.ndarray) -> tuple[float, float, float]:
    """Angles (a, b, c) with u = R^z(a) R^x(b) R^z(c) up to global phase."""
    u = np.asarray(u, dtype=complex)
    su = u / cmath.sqrt(np.linalg.det(u))
    alpha, beta = su[0, 0], su[0, 1]
    b = 2 * math.atan2(abs(beta), abs(alpha))
    s = 2 * cmath.phase(alpha) if abs(alpha) > 1e-15 else 0.0
    d = 2 * (cmath.phase(beta) - math.pi / 2) if abs(beta) > 1e-15 else 0.0
    return (s + d) / 2, b, (s - d) / 2


def schedule_product(schedule, m: float = M_COMPILE) -> np.ndarray:
    """prod_j V R^z(-tau_j), first step rightmost."""
    out = np.eye(2, dtype=complex)
    for tau in schedule:
        out = transfer_operator(0, tau, m) @ out
    return out


def euler_xz(u: np.ndarray) -> tuple[float, float]:
    """(b, c) with u ~ R^x(b) R^z(c); exact only when such a form exists."""
    su = u / cmath.sqrt(np.linalg.det(u))
    alpha, gamma = su[0, 0], su[1, 0]
    b = 2 * math.atan2(abs(gamma), abs(alpha))
    if abs(alpha) >= abs(gamma):
        c = 2 * cmath.phase(alpha)
    else:
        c = 2 * (cmath.phase(gamma) - math.pi / 2)
    return b, c


def _candidates(target: np.ndarray) -> list[tuple[float, ...]]:
    v = v_operator(M_COMPILE)
    a, _, c = euler_zxz(v @ target)
    one = (-(a + c),)  # target ~ V R^z(-tau)
    b2, c2 = euler_xz(target)
    two = (-c2, -b2)  # target ~ R^x(-tau2) R^z(-tau1)
    a3, b3, c3 = euler_zxz(v @ target)
    three = (-c3, -b3, -a3)  # V target ~ R^z(-tau3) R^x(-tau2) R^z(-tau1)
    return [one, two, three]


def branch_operator(schedule, gammas, m: float = M_COMPILE) -> tuple[np.ndarray, ClassicalRegister]:
    """Adaptive product for one outcome string and the register it leaves behind."""
    kappa = ClassicalRegister()
    out = np.eye(2, dtype=complex)
    for tau, gamma in zip(schedule, gammas):
        t = -tau if kappa.kappa_x else tau
        out = transfer_operator(gamma, t, m) @ out
        kappa = classical_update(kappa, gamma)
    return out, kappa


def dense_branch_map(schedule, gammas, m: float = M_COMPILE) -> np.ndarray:
    """The 2x2 map from qubit 1 to qubit L+1 of a real timeline after L adaptive measurements."""
    n = len(schedule) + 1
    w = timeline_isometry(TimelineSpec(n, m, tuple(schedule)))
    t = w.reshape([2] * n + [2])
    kappa = ClassicalRegister()
    for tau, gamma in zip(schedule, gammas):
        bra = pointer_state(gamma, tau, kappa.kappa_x).conj()
        t = np.tensordot(bra, t, axes=([0], [0]))
        kappa = classical_update(kappa, gamma)
    return t


def verify_schedule(target: np.ndarray, schedule, m: float = M_COMPILE, dense: bool = False) -> CompileReport:
    ideal = schedule_product(schedule, m)
    residual = phase_distance(ideal, target)
    fids, dense_fids = [], []
    for gammas in itertools.product((0, 1), repeat=len(schedule)):
        op, kappa = branch_operator(schedule, gammas, m)
        fids.append(process_fidelity(kappa.byproduct().conj().T @ op, target))
        if dense:
            mp = dense_branch_map(schedule, gammas, m)
            mp = mp / math.sqrt(np.real(np.trace(mp.conj().T @ mp)) / 2)
            dense_fids.append(process_fidelity(kappa.byproduct().conj().T @ mp, target))
    return CompileReport(
        tuple(float(t) for t in schedule),
        residual,
        min(fids),
        len(fids),
        min(dense_fids) if dense else None,
    )


def compile_rotation(target: np.ndarray, dense: bool = False) -> CompileReport:
    """Shortest schedule (length 1, 2 or 3) realizing ``target`` at m = pi/4.

    Every candidate is verified over all outcome strings with the adaptive
    pointer rule; the first one within tolerance is returned.
    """
    target = np.asarray(target, dtype=complex)
    if target.shape != (2, 2):
        raise InvalidArgument("target must be 2x2")
    if np.abs(target.conj().T @ target - np.eye(2)).max() > 1e-10:
        raise InvalidArgument("target is not unitary within 1e-10")
    if abs(np.linalg.det(target) - 1) > 1e-10:
        target = target / cmath.sqrt(np.linalg.det(target))
    if phase_distance(target, np.eye(2)) <= RESIDUAL_TOL:
        cands = [(0.0, 0.0)]
    else:
        cands = _candidates(target)
    for cand in cands:
        if phase_distance(schedule_product(cand), target) <= RESIDUAL_TOL:
            report = verify_schedule(target, tuple(_wrap(t) for t in cand), dense=dense)
            if report.min_fidelity < 1 - RESIDUAL_TOL:
                raise CompileError(f"branch fidelity {report.min_fidelity!r} below tolerance")
            return report
    raise CompileError("no schedule of length <= 3 reproduced the target within 1e-9")


def _wrap(t: float) -> float:
    """Angle in (-pi, pi], with exact zeros kept as 0.0."""
    r = math.remainder(t, 2 * math.pi)
    return 0.0 if abs(r) < 1e-15 else r
