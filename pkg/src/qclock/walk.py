"""1+1D discrete-time quantum walk for the discretized Dirac evolution.

One step is ``S e^{i eps m sigma^y} e^{-i eps A(r) sigma^z}`` on a ring of L
sites, where the conditional shift S moves coin |0^z> one site down and coin
|1^z> one site up (``e^{i eps p sigma^z}`` with one lattice hop per step).
Amplitudes are indexed ``2 r + c``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .qcore import I2, SY, SZ, normalize, phase_distance
from .timeline import transfer_operator

NORM_TOL = 1e-10


@dataclass(frozen=True)
class WalkSpec:
    L: int
    m: float
    steps: int = 0
    epsilon: float = 1.0
    potential: tuple[float, ...] = ()  # A(r) per site; empty means A = 0

    def __post_init__(self):
        if self.L < 4:
            raise InvalidArgument("the ring needs at least 4 sites")
        if self.steps < 0:
            raise InvalidArgument("steps must be non-negative")
        if not (math.isfinite(self.m) and math.isfinite(self.epsilon)) or self.epsilon <= 0:
            raise InvalidArgument("m must be finite and epsilon positive")
        pot = tuple(float(a) for a in self.potential) or (0.0,) * self.L
        if len(pot) != self.L or not all(math.isfinite(a) for a in pot):
            raise InvalidArgument(f"potential needs {self.L} finite entries")
        object.__setattr__(self, "potential", pot)


@dataclass(frozen=True)
class WalkState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.size % 2 or abs(np.linalg.norm(a) - 1) > NORM_TOL:
            raise InvalidArgument("walk state must be a normalized vector of length 2L")
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def localized(cls, L: int, site: int, coin=(1, 0)) -> "WalkState":
        a = np.zeros(2 * L, dtype=complex)
        a[2 * (site % L) : 2 * (site % L) + 2] = normalize(np.asarray(coin, dtype=complex))
        return cls(a)


def coin_rotation(spec: WalkSpec) -> np.ndarray:
    t = spec.epsilon * spec.m
    return math.cos(t) * I2 + 1j * math.sin(t) * SY


def shift_operator(L: int) -> np.ndarray:
    s = np.zeros((2 * L, 2 * L), dtype=complex)
    for r in range(L):
        s[2 * ((r - 1) % L), 2 * r] = 1
        s[2 * ((r + 1) % L) + 1, 2 * r + 1] = 1
    return s


def walk_step(spec: WalkSpec) -> np.ndarray:
    """Dense 2L x 2L unitary of one step: potential, then coin, then shift."""
    phases = np.exp(-1j * spec.epsilon * np.repeat(spec.potential, 2) * np.tile([1, -1], spec.L))
    coin = np.kron(np.eye(spec.L), coin_rotation(spec))
    return shift_operator(spec.L) @ coin @ np.diag(phases)


@dataclass
class WalkResult:
    spec: WalkSpec
    origin: int
    distributions: np.ndarray  # (steps + 1, L)
    coin: np.ndarray  # (steps + 1, 2, 2) reduced coin density operators
    norms: np.ndarray
    wrapped: bool = False
    wrap_step: int | None = None
    notes: list[str] = field(default_factory=list)

    def displacements(self) -> np.ndarray:
        L = self.spec.L
        return (np.arange(L) - self.origin + L // 2) % L - L // 2

    def std(self) -> np.ndarray:
        d = self.displacements()
        mean = self.distributions @ d
        return np.sqrt(np.maximum(self.distributions @ d**2 - mean**2, 0.0))


def run_walk(spec: WalkSpec, initial: WalkState, origin: int | None = None) -> WalkResult:
    """Evolve for ``spec.steps`` steps, recording position and coin marginals.

    The spread can reach the far side of the ring once 2 * step >= L; from that
    step on the result is flagged, since displacements are no longer faithful.
    """
    if initial.amplitudes.size != 2 * spec.L:
        raise InvalidArgument("initial state length does not match the lattice")
    u = walk_step(spec)
    psi = initial.amplitudes
    if origin is None:
        origin = int(np.argmax(np.abs(psi.reshape(spec.L, 2)).sum(axis=1)))
    dists, coins, norms = [], [], []
    wrap_step = None
    for step in range(spec.steps + 1):
        if step:
            psi = u @ psi
        amp = psi.reshape(spec.L, 2)
        dists.append(np.sum(np.abs(amp) ** 2, axis=1))
        coins.append(amp.T @ amp.conj())
        norms.append(np.linalg.norm(psi))
        if wrap_step is None and 2 * step >= spec.L:
            wrap_step = step
    res = WalkResult(spec, origin, np.array(dists), np.array(coins), np.array(norms))
    if wrap_step is not None:
        res.wrapped, res.wrap_step = True, wrap_step
        res.notes.append(f"spread reaches the far side of the ring at step {wrap_step}")
    return res


def spread_fit(result: WalkResult, lo: int = 10, hi: int = 40) -> tuple[float, float]:
    """Slope and R^2 of a straight-line fit of the position spread over steps lo..hi."""
    if hi > result.spec.steps or lo < 0 or hi - lo < 2:
        raise InvalidArgument("fit window must lie inside the recorded steps")
    if result.wrapped and result.wrap_step <= hi:
        raise InvalidArgument(f"fit window reaches step {hi}, past the wrap-around at {result.wrap_step}")
    t = np.arange(lo, hi + 1, dtype=float)
    y = result.std()[lo : hi + 1]
    slope, intercept = np.polyfit(t, y, 1)
    resid = y - (slope * t + intercept)
    r2 = 1 - np.sum(resid**2) / np.sum((y - y.mean()) ** 2)
    return float(slope), float(r2)


def translate(state: WalkState, shift: int) -> WalkState:
    amp = state.amplitudes.reshape(-1, 2)
    return WalkState(np.roll(amp, shift, axis=0).reshape(-1))


def momentum_ket(L: int, k: float, coin: int) -> np.ndarray:
    v = np.zeros(2 * L, dtype=complex)
    v[coin::2] = np.exp(1j * k * np.arange(L)) / math.sqrt(L)
    return v


def sector_operator(spec: WalkSpec, k: float, power: int = 1) -> tuple[np.ndarray, float]:
    """Coin factor of ``power`` steps in the plane-wave sector k, and the leakage out of it.

    Requires a site-independent potential and a k compatible with the ring.
    """
    if max(spec.potential) - min(spec.potential) > 0:
        raise InvalidArgument("momentum sectors need a site-independent potential")
    u = np.linalg.matrix_power(walk_step(spec), power)
    basis = np.stack([momentum_ket(spec.L, k, c) for c in (0, 1)], axis=1)
    block = basis.conj().T @ u @ basis
    leak = float(np.linalg.norm(u @ basis - basis @ block))
    return block, leak


def mapping_check(m: float, tau: float, L: int = 8, epsilon: float = 1.0) -> float:
    """Distance up to phase between the walk's coin factor at theta_3 = pi and V R^z(-tau).

    The shift restricted to momentum k is diag(e^{ik}, e^{-ik}) = R^z(2k), so
    theta_3 = pi is the sector k = pi/2 (L divisible by 4). The mass maps to
    the coin angle (eps m = m) and the potential to the pointer (eps A = tau/2).
    Leakage out of the sector is included in the residual.
    """
    if L % 4:
        raise InvalidArgument("k = pi/2 needs L divisible by 4")
    spec = WalkSpec(L, m / epsilon, 1, epsilon, (tau / (2 * epsilon),) * L)
    block, leak = sector_operator(spec, math.pi / 2)
    return max(phase_distance(block, transfer_operator(0, tau, m)), leak)


def coin_factor_residual(m: float, tau: float, steps: int, L: int = 8) -> float:
    """n-step coin factor versus (V R^z(-tau))^n in the same sector."""
    spec = WalkSpec(L, m, steps, 1.0, (tau / 2,) * L)
    block, leak = sector_operator(spec, math.pi / 2, steps)
    return max(phase_distance(block, np.linalg.matrix_power(transfer_operator(0, tau, m), steps)), leak)


def distributions_to_csv(result: WalkResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "site", "probability"])
    for step, row in enumerate(result.distributions):
        for site, p in enumerate(row):
            w.writerow([step, site, f"{p:.17g}"])
    return buf.getvalue()


def sz_expectation(coin: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([np.real(np.trace(SZ @ c)) for c in coin])
