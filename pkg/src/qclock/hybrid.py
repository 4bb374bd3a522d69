"""Classical-quantum ensembles: a register label kappa with probability p_kappa
paired with a density operator zeta_kappa on the quantum part."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgument, InvalidState
from .qcore import partial_trace, random_density, validate_density

PRUNE_BELOW = 1e-15


@dataclass(frozen=True)
class HybridState:
    register_size: int
    labels: tuple[int, ...]
    probs: np.ndarray
    zetas: tuple[np.ndarray, ...]
    q_dim: int

    def __post_init__(self):
        if len(self.labels) != len(self.probs) or len(self.labels) != len(self.zetas):
            raise InvalidArgument("labels, probs and zetas must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidArgument("labels must be distinct")
        if any(not 0 <= k < self.register_size for k in self.labels):
            raise InvalidArgument(f"labels must lie in [0, {self.register_size})")
        p = np.asarray(self.probs, dtype=float)
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-9:
            raise InvalidState(f"register probabilities must be a distribution, sum={p.sum():.12g}")
        for z in self.zetas:
            if z.shape != (self.q_dim, self.q_dim):
                raise InvalidArgument(f"zeta of shape {z.shape} does not match q_dim {self.q_dim}")
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_entries(cls, register_size: int, entries: Iterable[tuple[int, float, np.ndarray]], validate: bool = True):
        """Build from (label, p, zeta) triples, pruning labels with p < 1e-15."""
        labels, probs, zetas = [], [], []
        q_dim = None
        for label, p, zeta in entries:
            zeta = np.asarray(zeta, dtype=complex)
            if zeta.ndim == 1:
                zeta = np.outer(zeta, zeta.conj())
            q_dim = zeta.shape[0]
            if p < PRUNE_BELOW:
                continue
            if validate:
                zeta = validate_density(zeta, tol=1e-10)
            labels.append(int(label))
            probs.append(float(p))
            zetas.append(zeta)
        if not labels:
            raise InvalidState("hybrid state has no label with nonzero probability")
        probs = np.asarray(probs)
        return cls(register_size, tuple(labels), probs / probs.sum(), tuple(zetas), q_dim)

    def __iter__(self):
        return iter(zip(self.labels, self.probs, self.zetas))


def random_hybrid(register_size: int, q_dim: int, seed, rank: int | None = None) -> HybridState:
    """Dirichlet register weights and independent random zetas (full rank unless ``rank``)."""
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(register_size))
    zetas = [random_density(q_dim, rank or q_dim, rng) for _ in range(register_size)]
    return HybridState.from_entries(register_size, zip(range(register_size), probs, zetas))


def embed_density(h: HybridState) -> np.ndarray:
    """Block-diagonal operator sum_k p_k |k><k| (x) zeta_k on C^{d_C} (x) Q."""
    d = h.q_dim
    out = np.zeros((h.register_size * d, h.register_size * d), dtype=complex)
    for k, p, z in h:
        out[k * d : (k + 1) * d, k * d : (k + 1) * d] = p * z
    return out


def reduce_Q(h: HybridState) -> np.ndarray:
    return sum(p * z for _, p, z in h)


def reduce_Q_by_trace(h: HybridState) -> np.ndarray:
    """Same as reduce_Q but via an explicit partial trace of the embedding."""
    return partial_trace(embed_density(h), [h.register_size, h.q_dim], keep=[1])


def check_kraus(kraus: Sequence[np.ndarray], tol: float = 1e-10) -> None:
    if not kraus:
        raise InvalidArgument("empty Kraus set")
    d = kraus[0].shape[1]
    total = sum(k.conj().T @ k for k in kraus)
    if np.max(np.abs(total - np.eye(d))) > tol:
        raise InvalidArgument("Kraus operators are not trace preserving")


def apply_local_channel(h: HybridState, kraus_on_Q: Sequence[np.ndarray]) -> HybridState:
    """Apply a channel to the quantum part of every branch; p_kappa unchanged."""
    kraus_on_Q = [np.asarray(k, dtype=complex) for k in kraus_on_Q]
    check_kraus(kraus_on_Q)
    if kraus_on_Q[0].shape[1] != h.q_dim:
        raise InvalidArgument("Kraus input dimension does not match q_dim")
    zetas = tuple(sum(k @ z @ k.conj().T for k in kraus_on_Q) for z in h.zetas)
    return HybridState(h.register_size, h.labels, h.probs, zetas, kraus_on_Q[0].shape[0])


def depolarize(h: HybridState) -> HybridState:
    """Replace every zeta by the maximally mixed state."""
    d = h.q_dim
    zeta = np.eye(d, dtype=complex) / d
    return HybridState(h.register_size, h.labels, h.probs, tuple(zeta for _ in h.labels), d)


def _matrix_to_json(a: np.ndarray) -> list:
    return [[[float(f"{x.real:.17g}"), float(f"{x.imag:.17g}")] for x in row] for row in a]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def to_json_dict(h: HybridState) -> dict:
    return {
        "register_size": h.register_size,
        "q_dim": h.q_dim,
        "entries": [
            {"label": int(k), "p": float(f"{p:.17g}"), "zeta": _matrix_to_json(z)} for k, p, z in h
        ],
    }


def from_json_dict(doc: dict) -> HybridState:
    try:
        entries = [(e["label"], e["p"], _matrix_from_json(e["zeta"])) for e in doc["entries"]]
        return HybridState.from_entries(int(doc["register_size"]), entries)
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed hybrid-state document: {exc}") from None


def dumps(h: HybridState) -> str:
    return json.dumps(to_json_dict(h), sort_keys=True)


def loads(text: str) -> HybridState:
    return from_json_dict(json.loads(text))
