"""Enumeration of accumulated branch operators A(gamma_n) ... A(gamma_1)."""

from __future__ import annotations

import bisect
import math
from typing import Sequence

import numpy as np

from ..errors import InvalidArgument
from ..timeline import transfer_operator

DEDUP_TOL = 1e-8
MAX_STEPS = 12


def branch_products(m: float, steps: int, tau_schedule: Sequence[float] | None = None) -> tuple[np.ndarray, list]:
    """All 2^steps products, with the outcome strings (gamma_1, ..., gamma_n)."""
    if not 1 <= steps <= MAX_STEPS:
        raise InvalidArgument(f"steps must lie in 1..{MAX_STEPS}")
    taus = [0.0] * steps if tau_schedule is None else list(tau_schedule)
    if len(taus) != steps:
        raise InvalidArgument("tau_schedule length must equal steps")
    prods = np.eye(2, dtype=complex)[None]
    hist: list[tuple[int, ...]] = [()]
    for tau in taus:
        a = np.stack([transfer_operator(g, tau, m) for g in (0, 1)])
        prods = np.einsum("gab,hbc->hgac", a, prods).reshape(-1, 2, 2)
        hist = [h + (g,) for h in hist for g in (0, 1)]
    return prods, hist


def _phase_distances(u: np.ndarray, reps: np.ndarray) -> np.ndarray:
    """Phase-invariant operator-norm distance from u to each rep (2x2 unitaries)."""
    if len(reps) == 0:
        return np.empty(0)
    phases = np.sort(np.angle(np.linalg.eigvals(np.einsum("kba,bc->kac", reps.conj(), u))), axis=1)
    gaps = np.diff(np.concatenate([phases, phases[:, :1] + 2 * np.pi], axis=1), axis=1)
    spread = 2 * np.pi - gaps.max(axis=1)
    return 2 * np.sin(spread / 4)


def distinct_up_to_phase(ops: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Greedy representatives of ``ops`` modulo global phase.

    Candidates are windowed on |u_00|, which is phase invariant and differs by
    at most the operator-norm distance, so only nearby reps are compared.
    """
    keys: list[float] = []
    reps: list[np.ndarray] = []
    for u in ops:
        key = abs(u[0, 0])
        lo = bisect.bisect_left(keys, key - tol - 1e-12)
        hi = bisect.bisect_right(keys, key + tol + 1e-12)
        if hi > lo and _phase_distances(u, np.asarray(reps[lo:hi])).min() <= tol:
            continue
        pos = bisect.bisect_left(keys, key)
        keys.insert(pos, key)
        reps.insert(pos, u)
    return np.asarray(reps).reshape(-1, 2, 2)


def branch_census(m: float, steps: int, tau_schedule: Sequence[float] | None = None, tol: float = DEDUP_TOL) -> int:
    """Number of distinct branch operators up to global phase."""
    prods, _ = branch_products(m, steps, tau_schedule)
    return len(distinct_up_to_phase(prods, tol))


def predicted_census(m: float, steps: int) -> int | None:
    """Closed-form expectation where one exists: 4 at odd multiples of pi/4, 2 at multiples of pi/2."""
    r = math.fmod(abs(m), math.pi / 2) / (math.pi / 4)
    if abs(r) < 1e-12 or abs(r - 2) < 1e-12:
        return 2
    if abs(r - 1) < 1e-12:
        return 2 if steps == 1 else 4
    return None
