"""Dense state/operator kernel.

Operators and states are plain numpy arrays (complex128). Qubit 1 is the
most significant tensor factor, so ``kron(a, b)`` places ``a`` on the first
qubit.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import CapacityError, DegenerateState, InvalidArgument, InvalidState

MAX_QUBITS = 13
MAX_DIM = 2**MAX_QUBITS

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": SX, "y": SY, "z": SZ}


def _check_angle(theta):
    if not np.isfinite(theta):
        raise InvalidArgument(f"angle must be finite, got {theta!r}")


def v_operator(m: float) -> np.ndarray:
    """Hermitian frame change ``V = sigma^z exp(i m sigma^y)``."""
    _check_angle(m)
    return SZ @ (math.cos(m) * I2 + 1j * math.sin(m) * SY)


def w_axis(m: float) -> np.ndarray:
    """Pauli operator along the w axis, ``V sigma^z V^dagger``."""
    v = v_operator(m)
    return v @ SZ @ v.conj().T


def axis_operator(axis: str, m: float | None = None) -> np.ndarray:
    if axis == "w":
        if m is None:
            raise InvalidArgument("axis 'w' requires the mass angle m")
        return w_axis(m)
    try:
        return PAULI[axis]
    except KeyError:
        raise InvalidArgument(f"unknown axis {axis!r}") from None


def rotation(axis: str, theta: float, m: float | None = None) -> np.ndarray:
    """``e^{i theta/2}|0><0| + e^{-i theta/2}|1><1|`` in the eigenbasis of the axis.

    Since every axis operator squares to the identity this equals
    ``cos(theta/2) I + i sin(theta/2) sigma``.
    """
    _check_angle(theta)
    sigma = axis_operator(axis, m)
    return math.cos(theta / 2) * I2 + 1j * math.sin(theta / 2) * sigma


def axis_basis(axis: str, m: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Return (|0^axis>, |1^axis>), the +1 and -1 eigenvectors.

    The w basis is defined as ``V|0^z>, V|1^z>`` so its phases follow the frame
    change rather than whatever an eigensolver returns.
    """
    e0 = np.array([1, 0], dtype=complex)
    e1 = np.array([0, 1], dtype=complex)
    if axis == "z":
        return e0, e1
    if axis == "x":
        return np.array([1, 1], dtype=complex) / math.sqrt(2), np.array([1, -1], dtype=complex) / math.sqrt(2)
    if axis == "y":
        return np.array([1, 1j], dtype=complex) / math.sqrt(2), np.array([1, -1j], dtype=complex) / math.sqrt(2)
    if axis == "w":
        if m is None:
            raise InvalidArgument("axis 'w' requires the mass angle m")
        v = v_operator(m)
        return v @ e0, v @ e1
    raise InvalidArgument(f"unknown axis {axis!r}")


def kron(*ops: np.ndarray) -> np.ndarray:
    """Tensor product of any number of vectors or matrices."""
    if not ops:
        raise InvalidArgument("kron needs at least one operand")
    dim = math.prod(op.shape[0] for op in ops)
    if dim > MAX_DIM:
        raise CapacityError(f"dimension {dim} exceeds budget {MAX_DIM}")
    return reduce(np.kron, ops)


def embed(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """Place a single-qubit operator on ``site`` (0-based) of an n-qubit register."""
    if not 0 <= site < n:
        raise InvalidArgument(f"site {site} outside 0..{n - 1}")
    factors = [I2] * n
    factors[site] = op
    return kron(*factors)


def pauli_string(spec: dict[int, str], n: int) -> np.ndarray:
    """n-qubit Pauli product from {site: axis}, sites 0-based."""
    factors = [PAULI[spec[k]] if k in spec else I2 for k in range(n)]
    return kron(*factors)


def normalize(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    nrm = np.linalg.norm(v)
    if nrm < tol:
        raise DegenerateState(f"state norm {nrm:.3e} below {tol:g}")
    return v / nrm


def ket_to_density(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def validate_density(rho: np.ndarray, tol: float = 1e-12, neg_tol: float = 1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; returns rho as complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidState(f"density operator must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidState("density operator has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidState("density operator is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidState(f"trace {np.trace(rho).real:.15g} differs from 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -neg_tol:
        raise InvalidState(f"eigenvalue {lo:.3e} below -{neg_tol:g}")
    return rho


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduced operator on the factors listed in ``keep`` (kept in ascending order)."""
    dims = [int(d) for d in dims]
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if not keep:
        raise InvalidArgument("keep must be nonempty")
    if any(k < 0 or k >= n for k in keep):
        raise InvalidArgument(f"keep indices {keep} out of range for {n} factors")
    total = math.prod(dims)
    if rho.shape != (total, total):
        raise InvalidArgument(f"operator shape {rho.shape} does not match dims {dims}")
    t = rho.reshape(dims + dims)
    traced = [k for k in range(n) if k not in keep]
    # einsum letters: row indices a.., column indices shared for traced factors
    letters = "abcdefghijklmnopqrstuvwxyz"
    if 2 * n > len(letters) + 26:
        raise CapacityError("too many tensor factors")
    letters = letters + letters.upper()
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for k in traced:
        cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    d = math.prod(dims[k] for k in keep)
    return red.reshape(d, d)


def eig_hermitian(h: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real spectrum and orthonormal eigenvectors (as columns)."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > tol:
        raise InvalidArgument("matrix is not Hermitian")
    return np.linalg.eigh((h + h.conj().T) / 2)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_state(dim: int, seed) -> np.ndarray:
    """Haar-random pure state: a normalized complex Gaussian vector."""
    if dim < 1:
        raise InvalidArgument("dim must be >= 1")
    rng = _rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rank: int, seed) -> np.ndarray:
    """Mixed state obtained by tracing a Haar pure state on dim x rank."""
    if not 1 <= rank <= dim:
        raise InvalidArgument(f"rank must lie in 1..{dim}, got {rank}")
    psi = random_state(dim * rank, seed).reshape(dim, rank)
    return psi @ psi.conj().T


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar unitary via QR of a Ginibre matrix with the phase fix."""
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_kraus(dim: int, n_ops: int, seed) -> list[np.ndarray]:
    """Kraus set of a random channel: blocks of a Haar isometry C^dim -> C^(dim n_ops)."""
    u = random_unitary(dim * n_ops, seed)
    iso = u[:, :dim]
    return [iso[k * dim : (k + 1) * dim, :] for k in range(n_ops)]


def phase_distance(u: np.ndarray, w: np.ndarray) -> float:
    """min over theta of ||u - e^{i theta} w|| in operator norm, for unitaries.

    For unitaries this is ``2 sin(delta/4)`` where delta is the widest angular
    gap needed to cover the eigenphases of ``w^dagger u``; computed from the
    eigenphases directly to avoid the cancellation in trace-based formulas.
    """
    phases = np.sort(np.angle(np.linalg.eigvals(w.conj().T @ u)))
    gaps = np.diff(np.concatenate([phases, phases[:1] + 2 * np.pi]))
    spread = 2 * np.pi - gaps.max()
    return float(2 * math.sin(spread / 4))


def process_fidelity(u: np.ndarray, target: np.ndarray) -> float:
    """|tr(target^dagger u)|^2 / d^2 for unitaries of equal shape."""
    d = target.shape[0]
    return float(abs(np.trace(target.conj().T @ u)) ** 2 / d**2)


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def apply_local(state: np.ndarray, op: np.ndarray, sites: Sequence[int], n: int) -> np.ndarray:
    """Apply a k-qubit operator to ``sites`` (0-based, in the operator's factor order)."""
    k = len(sites)
    if op.shape != (2**k, 2**k):
        raise InvalidArgument(f"operator shape {op.shape} does not act on {k} qubits")
    if len(set(sites)) != k or any(not 0 <= s < n for s in sites):
        raise InvalidArgument(f"invalid sites {list(sites)} for {n} qubits")
    psi = np.asarray(state).reshape([2] * n)
    t = op.reshape([2] * (2 * k))
    out = np.tensordot(t, psi, axes=(list(range(k, 2 * k)), list(sites)))
    out = np.moveaxis(out, list(range(k)), list(sites))
    return out.reshape(-1)
