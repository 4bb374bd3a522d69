"""Entropies in bits and the inequalities built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, InvalidArgument, InvalidState
from .hybrid import HybridState, embed_density, reduce_Q
from .qcore import partial_trace

CLIP_BELOW = -1e-10
AGREE_TOL = 1e-9


@dataclass(frozen=True)
class EntropyReport:
    value: float
    spectrum_floor: float
    clipped_mass: float


def _entropy_of_spectrum(evals: np.ndarray) -> EntropyReport:
    evals = np.asarray(evals, dtype=float)
    lo = evals.min(initial=0.0)
    if lo < CLIP_BELOW:
        raise InvalidState(f"eigenvalue {lo:.3e} below {CLIP_BELOW:g}")
    neg = evals < 0
    clipped = float(-evals[neg].sum())
    keep = evals[evals > 0]
    # 0 log 0 := 0
    value = float(-np.sum(keep * np.log2(keep))) if keep.size else 0.0
    floor = float(keep.min()) if keep.size else 0.0
    return EntropyReport(max(value, 0.0), floor, clipped)


def shannon(p: Sequence[float]) -> float:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidArgument("expected a nonempty probability vector")
    if np.any(p < 0):
        raise InvalidArgument("negative probability")
    if abs(p.sum() - 1) > 1e-9:
        raise InvalidArgument(f"probabilities sum to {p.sum():.12g}")
    nz = p[p > 0]
    return float(max(-np.sum(nz * np.log2(nz)), 0.0))


def entropy_report(rho: np.ndarray) -> EntropyReport:
    rho = np.asarray(rho, dtype=complex)
    return _entropy_of_spectrum(np.linalg.eigvalsh((rho + rho.conj().T) / 2))


def von_neumann(rho: np.ndarray) -> float:
    return entropy_report(rho).value


def von_neumann_factor(f: np.ndarray) -> float:
    """Entropy of ``f f^dagger / tr(f f^dagger)`` from the singular values of f.

    Columns of ``f`` are weighted (unnormalized) pure branches; this avoids
    forming the dense operator when there are fewer branches than dimensions.
    """
    s = np.linalg.svd(f, compute_uv=False)
    w = s**2
    total = w.sum()
    if total <= 0:
        raise InvalidState("empty factor")
    return _entropy_of_spectrum(w / total).value


def holevo_form(h: HybridState) -> float:
    """H(p) - [S(sum p zeta) - sum p S(zeta)]."""
    chi = von_neumann(reduce_Q(h)) - sum(p * von_neumann(z) for _, p, z in h)
    return shannon(h.probs) - chi


def joint_form(h: HybridState) -> float:
    """S(rho^CQ) - S(rho^Q) using the embedded block operator."""
    return von_neumann(embed_density(h)) - von_neumann(reduce_Q(h))


def conditional_entropy(h: HybridState) -> float:
    """S(C|Q), evaluated both ways; the two must agree within 1e-9."""
    a = joint_form(h)
    b = holevo_form(h)
    if abs(a - b) > AGREE_TOL:
        raise ConsistencyError(f"conditional entropy forms disagree: {a!r} vs {b!r}")
    if b < -AGREE_TOL:
        raise ConsistencyError(f"negative conditional entropy {b!r} for a classical-quantum state")
    return b


def ssa_gap(rho123: np.ndarray, dims: Sequence[int]) -> float:
    """[S(12) - S(2)] - [S(123) - S(23)]; non-negative by strong subadditivity."""
    if len(dims) != 3:
        raise InvalidArgument("ssa_gap needs exactly three local dimensions")
    if int(np.prod(dims)) != rho123.shape[0]:
        raise InvalidArgument(f"dims {list(dims)} do not match operator dimension {rho123.shape[0]}")
    s12 = von_neumann(partial_trace(rho123, dims, [0, 1]))
    s2 = von_neumann(partial_trace(rho123, dims, [1]))
    s23 = von_neumann(partial_trace(rho123, dims, [1, 2]))
    s123 = von_neumann(rho123)
    return (s12 - s2) - (s123 - s23)


def dpi_check(before: HybridState, after: HybridState) -> float:
    """S(C'|Q') - S(C|Q); nonnegative whenever ``after`` is reached by processing."""
    return conditional_entropy(after) - conditional_entropy(before)
