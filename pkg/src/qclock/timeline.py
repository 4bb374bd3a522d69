"""Clock states, the stationary-subspace projector and timeline states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateState, InvalidArgument
from .qcore import (
    I2,
    MAX_QUBITS,
    SX,
    SZ,
    apply_local,
    axis_basis,
    eig_hermitian,
    kron,
    normalize,
    pauli_string,
    rotation,
    v_operator,
    w_axis,
)

TWO_PI = 2 * math.pi


def reduce_angle(theta: float) -> float:
    """Map an angle into [0, 2 pi)."""
    r = math.fmod(theta, TWO_PI)
    return r + TWO_PI if r < 0 else r


@dataclass(frozen=True)
class TimelineSpec:
    n: int
    m: float
    tau_schedule: tuple[float, ...] = ()
    fiducial: tuple[float, float] = (math.pi / 4, 0.0)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise InvalidArgument(f"n must lie in 1..{MAX_QUBITS}, got {self.n}")
        angles = [self.m, *self.tau_schedule, *self.fiducial]
        if not all(math.isfinite(a) for a in angles):
            raise InvalidArgument("all angles must be finite")
        taus = tuple(self.tau_schedule) or (0.0,) * (self.n - 1)
        if len(taus) != self.n - 1:
            raise InvalidArgument(f"tau_schedule needs {self.n - 1} entries, got {len(taus)}")
        object.__setattr__(self, "tau_schedule", tuple(reduce_angle(t) for t in taus))


def clock_ket(t: float, normalized: bool = True) -> np.ndarray:
    """|t> = e^{it/2}|0^z> + e^{-it/2}|1^z>, divided by sqrt(2) when normalized."""
    v = np.array([np.exp(0.5j * t), np.exp(-0.5j * t)])
    return v / math.sqrt(2) if normalized else v


def clock_overlap(t: float, t_prime: float) -> complex:
    return complex(np.vdot(clock_ket(t), clock_ket(t_prime)))


def fiducial_state(m: float, lam: float = math.pi / 4, eta: float = 0.0) -> np.ndarray:
    """cos(lam) e^{i eta/2}|0^w> + sin(lam) e^{-i eta/2}|1^w>."""
    w0, w1 = axis_basis("w", m)
    return math.cos(lam) * np.exp(0.5j * eta) * w0 + math.sin(lam) * np.exp(-0.5j * eta) * w1


def stationary_hamiltonian(m: float) -> np.ndarray:
    return 0.5 * (kron(SZ, I2) - kron(I2, w_axis(m)))


def xi_projector(m: float) -> np.ndarray:
    """|0^z 0^w><0^z 0^w| + |1^z 1^w><1^z 1^w|."""
    z0, z1 = axis_basis("z")
    w0, w1 = axis_basis("w", m)
    a = kron(z0, w0)
    b = kron(z1, w1)
    return np.outer(a, a.conj()) + np.outer(b, b.conj())


def xi_quadrature(m: float, K: int) -> np.ndarray:
    """(1/K) sum_k R^z(t_k) (x) R^w(-t_k) on the uniform grid t_k = 2 pi k / K."""
    if K < 2:
        raise InvalidArgument("quadrature needs K >= 2 points")
    acc = np.zeros((4, 4), dtype=complex)
    for k in range(K):
        t = TWO_PI * k / K
        acc += kron(rotation("z", t), rotation("w", -t, m))
    return acc / K


def key_identity(tau: float, K: int) -> np.ndarray:
    """(1/K) sum_k |-t_k><tau - t_k| with unnormalized clock kets."""
    if K < 2:
        raise InvalidArgument("quadrature needs K >= 2 points")
    acc = np.zeros((2, 2), dtype=complex)
    for k in range(K):
        t = TWO_PI * k / K
        acc += np.outer(clock_ket(-t, False), clock_ket(tau - t, False).conj())
    return acc / K


def transfer_operator(gamma: int, tau: float, m: float) -> np.ndarray:
    """A(gamma) = V R^z(-tau(gamma)) with tau(1) = tau(0) + pi."""
    if gamma not in (0, 1):
        raise InvalidArgument("gamma must be 0 or 1")
    return v_operator(m) @ rotation("z", -(tau + gamma * math.pi))


def pointer_state(gamma: int, tau: float, kappa_x: int = 0) -> np.ndarray:
    """Normalized pointer ket at clock time tau(gamma), tau(0) = (-1)^kappa_x tau."""
    if gamma not in (0, 1) or kappa_x not in (0, 1):
        raise InvalidArgument("gamma and kappa_x must be bits")
    t0 = -tau if kappa_x else tau
    return clock_ket(t0 + gamma * math.pi)


def _as_phi(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.shape not in ((2,), (2, 2)):
        raise InvalidArgument(f"boundary state must be a qubit ket or 2x2 density, got {phi.shape}")
    return phi


def timeline_isometry(spec: TimelineSpec, bond_order: Sequence[int] | None = None) -> np.ndarray:
    """The 2^N x 2 map phi -> Xi_{N-1} ... Xi_1 (phi, o, ..., o), unnormalized.

    ``bond_order`` lists bond indices j (bond j couples qubits j, j+1, 0-based)
    in application order; default is increasing j.
    """
    n = spec.n
    order = list(range(n - 1)) if bond_order is None else list(bond_order)
    if sorted(order) != list(range(n - 1)):
        raise InvalidArgument("bond_order must be a permutation of the bond indices")
    o = fiducial_state(spec.m, *spec.fiducial)
    xi = xi_projector(spec.m)
    rest = kron(*([o] * (n - 1))) if n > 1 else np.ones(1, dtype=complex)
    cols = []
    for e in np.eye(2, dtype=complex):
        psi = np.kron(e, rest)
        for j in order:
            psi = apply_local(psi, xi, [j, j + 1], n)
        cols.append(psi)
    return np.stack(cols, axis=1)


def build_timeline(spec: TimelineSpec, phi, bond_order: Sequence[int] | None = None) -> np.ndarray:
    """Normalized timeline state carrying ``phi`` on the first qubit.

    A ket returns a ket; a 2x2 density operator returns the N-qubit density operator.
    """
    phi = _as_phi(phi)
    w = timeline_isometry(spec, bond_order)
    if phi.ndim == 1:
        return normalize(w @ phi)
    rho = w @ phi @ w.conj().T
    tr = np.trace(rho).real
    if tr < 1e-24:
        raise DegenerateState(f"projection annihilated the state (trace {tr:.3e})")
    return rho / tr


def fiducial_residuals(lam_o, lam_tau, m: float = math.pi / 4, tau: float = 0.0):
    """Unitarity and POVM residuals of the transfer for fiducial/pointer polar angles.

    Works elementwise on arrays. The transfer is built numerically as
    <tau|_1 Xi |o>_2 with |o> = cos lam_o |0^w> + sin lam_o |1^w> and the
    pointer cos lam_tau e^{i tau/2}|0^z> + sin lam_tau e^{-i tau/2}|1^z>.
    Returns (unitarity, povm): unitarity is |1 - s_min/s_max| of A^dagger A
    (1 when A vanishes), povm is max |sum_gamma P_gamma - I|.
    """
    lam_o = np.asarray(lam_o, dtype=float)
    lam_tau = np.asarray(lam_tau, dtype=float)
    lam_o, lam_tau = np.broadcast_arrays(lam_o, lam_tau)
    w0, w1 = axis_basis("w", m)
    xi = xi_projector(m).reshape(2, 2, 2, 2)
    o = np.cos(lam_o)[..., None] * w0 + np.sin(lam_o)[..., None] * w1
    ptr = np.stack(
        [np.cos(lam_tau) * np.exp(0.5j * tau), np.sin(lam_tau) * np.exp(-0.5j * tau)], axis=-1
    )
    # A[b, a] = sum <ptr|a'> Xi[a', b; a, c] o[c]
    a_mat = np.einsum("...p,pbac,...c->...ba", ptr.conj(), xi, o)
    ata = np.einsum("...ba,...bc->...ac", a_mat.conj(), a_mat)
    ev = np.linalg.eigvalsh(ata)
    smax = ev[..., 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        unit = np.where(smax > 1e-12, np.abs(1 - ev[..., 0] / smax), 1.0)
    ptr1 = np.stack(
        [np.cos(lam_tau) * np.exp(0.5j * (tau + math.pi)), np.sin(lam_tau) * np.exp(-0.5j * (tau + math.pi))],
        axis=-1,
    )
    povm = np.einsum("...a,...b->...ab", ptr, ptr.conj()) + np.einsum("...a,...b->...ab", ptr1, ptr1.conj())
    povm_res = np.abs(povm - np.eye(2)).max(axis=(-2, -1))
    return unit, povm_res


def fiducial_solver(grid: float = 1e-3, m: float = math.pi / 4, tol: float | None = None):
    """Scan (lam_o, lam_tau) over [0, pi/2]^2 and keep points meeting both conditions.

    Points are kept when both residuals are below ``tol`` (default 2*grid, the
    first-order residual change across one grid cell). Returns an (k, 2) array.
    """
    if grid > 1e-3:
        raise InvalidArgument("grid resolution must be <= 1e-3 rad")
    tol = 2 * grid if tol is None else tol
    n = int(math.ceil((math.pi / 2) / grid))
    n += n % 2  # odd point count puts pi/4 on the grid
    lam = np.linspace(0.0, math.pi / 2, n + 1)
    # POVM completeness depends on lam_tau alone; prefilter rows before the 2-D scan
    _, povm_1d = fiducial_residuals(np.zeros_like(lam), lam, m)
    rows = lam[povm_1d <= tol]
    lo, lt = np.meshgrid(lam, rows, indexing="xy")
    unit, povm = fiducial_residuals(lo, lt, m)
    ok = (unit <= tol) & (povm <= tol)
    return np.stack([lo[ok], lt[ok]], axis=1)


def stabilizer_operators(n: int) -> dict[str, np.ndarray]:
    """K_j = Z_{j-1} X_j Z_{j+1} for j = 2..N-1 and K_N = Z_{N-1} X_N (1-based names)."""
    ops = {}
    for j in range(2, n + 1):
        spec = {j - 2: "z", j - 1: "x"}
        if j < n:
            spec[j] = "z"
        ops[f"K{j}"] = pauli_string(spec, n)
    return ops


def stabilizer_check(spec: TimelineSpec, phi, include_sigma_z1: bool = False) -> dict[str, float]:
    """Residuals ||K_j psi - psi|| of the timeline state for j = 2..N."""
    if spec.n < 2:
        raise InvalidArgument("stabilizer check needs N >= 2")
    if any(abs(t) > 0 for t in spec.tau_schedule):
        raise InvalidArgument("stabilizer check assumes an all-zero tau schedule")
    psi = build_timeline(spec, phi)
    out = {name: float(np.linalg.norm(k @ psi - psi)) for name, k in stabilizer_operators(spec.n).items()}
    if include_sigma_z1:
        z1 = pauli_string({0: "z"}, spec.n)
        out["Z1"] = float(np.linalg.norm(z1 @ psi - psi))
    return out


def stabilizer_signs(spec: TimelineSpec, phi, include_sigma_z1: bool = False) -> dict[str, float]:
    """Expectation values <K_j> (and <Z_1>); +-1 whenever the state is an eigenvector."""
    psi = build_timeline(spec, phi)
    psi = psi / np.linalg.norm(psi)
    ops = stabilizer_operators(spec.n)
    if include_sigma_z1:
        ops["Z1"] = pauli_string({0: "z"}, spec.n)
    return {name: float(np.vdot(psi, k @ psi).real) for name, k in ops.items()}


CZ = np.diag([1, 1, 1, -1]).astype(complex)


def cluster_state(n: int, pair_order: Sequence[int] | None = None) -> np.ndarray:
    """CZ on every neighbouring pair of |0^z>|0^x>...|0^x>."""
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    zero = np.array([1, 0], dtype=complex)
    psi = kron(zero, *([plus] * (n - 1))) if n > 1 else zero
    order = range(n - 1) if pair_order is None else pair_order
    for j in order:
        psi = apply_local(psi, CZ, [j, j + 1], n)
    return psi


def cz_equivalence(n: int) -> float:
    """Fidelity of the m = pi/4 timeline (boundary phi = o) with the CZ-circuit state."""
    if not 2 <= n <= MAX_QUBITS:
        raise InvalidArgument(f"n must lie in 2..{MAX_QUBITS}")
    m = math.pi / 4
    spec = TimelineSpec(n, m)
    psi = build_timeline(spec, fiducial_state(m))
    return float(abs(np.vdot(cluster_state(n), psi)) ** 2)


@dataclass
class EvolutionDemo:
    max_residual: float
    min_fidelity: float
    stationarity: float
    times: np.ndarray = field(repr=False)
    conditioned: np.ndarray = field(repr=False)


def emergent_evolution_demo(
    h_B: np.ndarray,
    steps: int = 100,
    spacing: float = 1e-3,
    K: int = 2,
    chi: np.ndarray | None = None,
) -> EvolutionDemo:
    """Condition a stationary clock-system state on clock times and check Schrodinger's equation.

    The clock Hamiltonian is diagonal in the z basis with h_B's spectrum (larger
    eigenvalue on |0^z>), which is sigma^z/2 when h_B has eigenvalues +-1/2. The
    stationary state is the K-point time average of exp(i H t) applied to
    |o> (x) |chi>, exact because H has frequencies {0, +-gap} only.
    """
    h_B = np.asarray(h_B, dtype=complex)
    evals, vecs = eig_hermitian(h_B)
    h_A = np.diag(evals[::-1]).astype(complex)
    ham = kron(h_A, I2) - kron(I2, h_B)
    gap = float(evals[1] - evals[0])
    period = TWO_PI / gap if gap > 1e-12 else 1.0
    hv, hu = np.linalg.eigh(ham)
    proj = np.zeros((4, 4), dtype=complex)
    for k in range(K):
        t = period * k / K
        proj += (hu * np.exp(1j * hv * t)) @ hu.conj().T
    proj /= K
    o = np.array([1, 1], dtype=complex) / math.sqrt(2)
    chi = o if chi is None else normalize(np.asarray(chi, dtype=complex))
    psi = proj @ np.kron(o, chi)
    stationarity = float(np.linalg.norm(ham @ psi))
    psi2 = psi.reshape(2, 2)

    def conditioned(t):
        bra = (o.conj() * np.exp(-1j * np.diag(h_A).real * t))  # <o| e^{-i h_A t}
        return bra @ psi2

    times = np.linspace(0.0, period, steps, endpoint=False)
    states = np.array([conditioned(t) for t in times])
    res = 0.0
    for t, s in zip(times, states):
        deriv = 1j * (conditioned(t + spacing) - conditioned(t - spacing)) / (2 * spacing)
        res = max(res, float(np.linalg.norm(deriv - h_B @ s) / np.linalg.norm(s)))
    fid = 1.0
    u_step = lambda dt: (vecs * np.exp(-1j * evals * dt)) @ vecs.conj().T
    s0 = normalize(states[0])
    for t, s in zip(times, states):
        pred = normalize(u_step(t) @ s0)
        fid = min(fid, float(abs(np.vdot(pred, normalize(s))) ** 2))
    return EvolutionDemo(res, fid, stationarity, times, states)
