"""Step-by-step measurement of a timeline with classical bit routing.

The ensemble is held as one factor matrix per register label: the columns are
weighted pure branches of the unmeasured qubits, so ``zeta_kappa`` is
``F F^dagger / ||F||^2`` and ``p_kappa = ||F||^2``. Exhaustive mode keeps one
column per outcome history. Sampled mode compresses each label's columns to an
orthogonal basis after every step (the marginal over the traced-out memory) and
additionally draws one realized outcome trajectory from a seeded generator.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ..entropy import shannon, von_neumann_factor
from ..errors import ConsistencyError, DegenerateState, InvalidArgument
from ..hybrid import HybridState, to_json_dict
from ..qcore import MAX_DIM, normalize
from ..timeline import TimelineSpec, build_timeline, fiducial_state, pointer_state
from .register import Register, make_register

Buckets = dict[int, np.ndarray]


@dataclass
class StepRecord:
    step_index: int
    s_c_given_q: float
    d_c: int
    branch_probs: tuple[float, float]
    gamma_deviation: float  # max over labels of |p(gamma|kappa) - 1/2|
    dpi: float  # S(C'|Q') - S(C|Q) for this step
    n_branches: int
    realized_gamma: int | None = None
    realized_label: int | None = None


@dataclass
class ProtocolTrace:
    spec: TimelineSpec
    mode: str
    register: str
    init: str
    initial_s: float
    records: list[StepRecord] = field(default_factory=list)
    final: HybridState | None = None

    def entropies(self) -> list[float]:
        return [r.s_c_given_q for r in self.records]


def _compress(f: np.ndarray) -> np.ndarray:
    if f.shape[1] <= 1:
        return f
    u, s, _ = np.linalg.svd(f, full_matrices=False)
    keep = s > s[0] * 1e-13
    return u[:, keep] * s[keep]


def ensemble_entropy(buckets: Buckets, register_size: int) -> tuple[float, float, float]:
    """(S(C|Q), S(CQ), S(Q)) of the factor ensemble, checked two ways.

    The joint entropy is computed from the per-label spectra and, independently,
    from one SVD of the block-diagonal arrangement when it fits the budget.
    """
    labels = sorted(buckets)
    probs = np.array([np.vdot(buckets[k], buckets[k]).real for k in labels])
    total = probs.sum()
    probs = probs / total
    s_blocks = shannon(probs) + sum(p * von_neumann_factor(buckets[k]) for p, k in zip(probs, labels))
    s_q = von_neumann_factor(np.hstack([buckets[k] for k in labels]))
    dim = buckets[labels[0]].shape[0]
    cols = sum(buckets[k].shape[1] for k in labels)
    if len(labels) * dim <= MAX_DIM and len(labels) * dim * cols <= 2**24:
        big = np.zeros((len(labels) * dim, cols), dtype=complex)
        c = 0
        for i, k in enumerate(labels):
            f = buckets[k]
            big[i * dim : (i + 1) * dim, c : c + f.shape[1]] = f
            c += f.shape[1]
        s_joint = von_neumann_factor(big)
        if abs(s_joint - s_blocks) > 1e-9:
            raise ConsistencyError(f"joint entropy routes disagree: {s_joint!r} vs {s_blocks!r}")
    cond = s_blocks - s_q
    if cond < -1e-9:
        raise ConsistencyError(f"negative conditional entropy {cond!r}")
    return cond, s_blocks, s_q


def buckets_to_hybrid(buckets: Buckets, register_size: int) -> HybridState:
    entries = []
    total = sum(np.vdot(f, f).real for f in buckets.values())
    for k in sorted(buckets):
        f = buckets[k]
        p = np.vdot(f, f).real
        entries.append((k, p / total, f @ f.conj().T / p))
    return HybridState.from_entries(max(register_size, max(buckets) + 1), entries, validate=False)


def initial_buckets(spec: TimelineSpec, register: Register, init: str, phi=None) -> Buckets:
    phi = fiducial_state(spec.m, *spec.fiducial) if phi is None else normalize(np.asarray(phi, dtype=complex))
    if init == "stationary":
        labels = register.initial_labels()
    elif init == "deterministic":
        labels = [0]
    else:
        raise InvalidArgument(f"unknown init {init!r}")
    w = 1 / math.sqrt(len(labels))
    return {k: (w * build_timeline(spec, register.byproduct(k) @ phi))[:, None] for k in labels}


def measure_step(buckets: Buckets, tau: float, register: Register) -> tuple[Buckets, dict]:
    """Project the leading qubit of every branch onto the pointer pair.

    Returns the ensemble over (kappa, gamma), keyed by ``2*kappa + gamma`` and
    not yet merged, plus the conditional outcome probabilities per label.
    """
    out: Buckets = {}
    cond: dict[int, tuple[float, float]] = {}
    for k, f in buckets.items():
        dim = f.shape[0]
        if dim < 2:
            raise InvalidArgument("no unmeasured qubit left")
        ft = f.reshape(2, dim // 2, f.shape[1])
        norm = np.vdot(f, f).real
        pg = []
        for gamma in (0, 1):
            chi = pointer_state(gamma, tau, register.pointer_bit(k))
            g = np.einsum("a,abr->br", chi.conj(), ft)
            pg.append(np.vdot(g, g).real / norm)
            out[2 * k + gamma] = g
        if min(pg) * norm < 1e-24:
            raise DegenerateState(f"outcome branch of label {k} has vanishing norm")
        cond[k] = (pg[0], pg[1])
    return out, cond


def merge(pairs: Buckets, register: Register) -> Buckets:
    """Relabel (kappa, gamma) -> kappa' and pool the branches that coincide."""
    merged: dict[int, list[np.ndarray]] = {}
    for key in sorted(pairs):
        k, gamma = divmod(key, 2)
        merged.setdefault(register.update(k, gamma), []).append(pairs[key])
    return {k: np.hstack(v) for k, v in merged.items()}


def iter_chain(
    spec: TimelineSpec,
    register: str = "pauli",
    init: str = "stationary",
    mode: str = "exhaustive",
    phi=None,
) -> Iterator[tuple[int, Buckets, dict]]:
    """Yield (step, buckets, conditional outcome probabilities) after each measurement.

    Step 0 yields the initial ensemble with an empty probability table.
    """
    if mode not in ("exhaustive", "sampled"):
        raise InvalidArgument(f"unknown mode {mode!r}")
    reg = make_register(register)
    buckets = initial_buckets(spec, reg, init, phi)
    yield 0, buckets, {}
    for j, tau in enumerate(spec.tau_schedule, start=1):
        pairs, cond = measure_step(buckets, tau, reg)
        buckets = merge(pairs, reg)
        if mode == "sampled":
            buckets = {k: _compress(f) for k, f in buckets.items()}
        yield j, buckets, cond


def run_chain(
    spec: TimelineSpec,
    mode: str = "exhaustive",
    register: str = "pauli",
    init: str = "stationary",
    phi=None,
    seed: int | None = None,
) -> ProtocolTrace:
    """Measure qubits 1..N-1 in turn, recording S(C|Q) of the ensemble after each step."""
    if mode == "sampled" and seed is None:
        raise InvalidArgument("sampled mode needs a seed")
    reg = make_register(register)
    rng = np.random.default_rng(seed) if mode == "sampled" else None
    steps = iter_chain(spec, register, init, mode, phi)
    _, buckets, _ = next(steps)
    prev, _, _ = ensemble_entropy(buckets, reg.size(0))
    trace = ProtocolTrace(spec, mode, register, init, prev)
    realized = None
    if rng is not None:
        labels = sorted(buckets)
        realized = int(labels[rng.integers(len(labels))])
    for j, new, cond in steps:
        weights = _probs(buckets)
        p0 = sum(weights[k] * cond[k][0] for k in cond)
        p1 = sum(weights[k] * cond[k][1] for k in cond)
        gamma = None
        if rng is not None:
            gamma = int(rng.random() >= cond[realized][0])
            realized = reg.update(realized, gamma)
        buckets = new
        s_cond, _, _ = ensemble_entropy(buckets, reg.size(j))
        trace.records.append(
            StepRecord(
                step_index=j,
                s_c_given_q=s_cond,
                d_c=reg.size(j),
                branch_probs=(float(p0), float(p1)),
                gamma_deviation=float(max(abs(c[0] - 0.5) for c in cond.values())),
                dpi=s_cond - prev,
                n_branches=sum(f.shape[1] for f in buckets.values()),
                realized_gamma=gamma,
                realized_label=realized,
            )
        )
        prev = s_cond
    trace.final = buckets_to_hybrid(buckets, reg.size(len(trace.records)))
    return trace


def _probs(buckets: Buckets) -> dict[int, float]:
    total = sum(np.vdot(f, f).real for f in buckets.values())
    return {k: np.vdot(f, f).real / total for k, f in buckets.items()}


CSV_COLUMNS = ["step", "S_C_given_Q_bits", "d_C", "p_gamma0", "p_gamma1"]


def fmt(x: float) -> str:
    return f"{x:.17g}"


def trace_to_csv(trace: ProtocolTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in trace.records:
        w.writerow([r.step_index, fmt(r.s_c_given_q), r.d_c, fmt(r.branch_probs[0]), fmt(r.branch_probs[1])])
    return buf.getvalue()


def _num(x: float) -> float:
    return float(fmt(x))


def trace_to_dict(trace: ProtocolTrace, include_final: bool = True) -> dict:
    doc = {
        "n": trace.spec.n,
        "m": _num(trace.spec.m),
        "tau_schedule": [_num(t) for t in trace.spec.tau_schedule],
        "mode": trace.mode,
        "register": trace.register,
        "init": trace.init,
        "initial_S_C_given_Q_bits": _num(trace.initial_s),
        "records": [
            {
                "step": r.step_index,
                "S_C_given_Q_bits": _num(r.s_c_given_q),
                "d_C": r.d_c,
                "p_gamma0": _num(r.branch_probs[0]),
                "p_gamma1": _num(r.branch_probs[1]),
                "dpi_bits": _num(r.dpi),
                "gamma_deviation": _num(r.gamma_deviation),
                "n_branches": r.n_branches,
                "realized_gamma": r.realized_gamma,
                "realized_label": r.realized_label,
            }
            for r in trace.records
        ],
    }
    if include_final and trace.final is not None:
        doc["final"] = to_json_dict(trace.final)
    return doc


def trace_to_json(trace: ProtocolTrace, include_final: bool = True) -> str:
    return json.dumps(trace_to_dict(trace, include_final), sort_keys=True, indent=1) + "\n"


def ghz_fidelity(v: np.ndarray) -> float:
    """Best overlap |<x| + e^{i theta}<not x|)/sqrt 2 |v>|^2 over basis strings x and phases theta.

    Complementary pairs cover GHZ up to local bit flips (the m = pi/2 output
    is |0101..> + |1010..>). Index dim-1-x is the bitwise complement of x.
    """
    a = np.abs(v / np.linalg.norm(v))
    return float(np.max((a + a[::-1]) ** 2) / 2)


def ghz_audit(spec: TimelineSpec, register: str = "phase", init: str = "stationary", phi=None) -> list[float]:
    """Smallest GHZ-like fidelity over all pure branches, per step including step 0."""
    out = []
    for _, buckets, _ in iter_chain(spec, register, init, "exhaustive", phi):
        out.append(min(ghz_fidelity(f[:, c]) for f in buckets.values() for c in range(f.shape[1])))
    return out
