"""Bonds on a partially ordered set of qubits, the two-timeline gadget and its
communication accounting.

Every bond applies the stationary projector with its left qubit on the z side
and its right qubit on the w side. For each qubit the bonds where it sits on the
right (its left-hand bonds) must be applied before the bonds where it sits on
the left.
"""

from __future__ import annotations

import graphlib
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..errors import ConsistencyError, DegenerateState, InvalidArgument
from ..qcore import I2, MAX_QUBITS, PAULI, SX, apply_local, axis_basis, kron, process_fidelity, w_axis
from ..timeline import TimelineSpec, fiducial_state, pointer_state, timeline_isometry, xi_projector
from .register import ClassicalRegister, ExchangeMessage, three_site_exchange

FIDELITY_TOL = 1e-9


@dataclass(frozen=True)
class GeometrySpec:
    """Qubit labels, bonds ``(left, right)`` in application order, and layout.

    ``line`` maps timeline qubits to their timeline index; qubits absent from it
    are mediators. ``slice_`` gives each qubit its time slice and ``tau`` its pointer angle.
    """

    qubits: tuple[str, ...]
    bonds: tuple[tuple[str, str], ...]
    m: float = math.pi / 4
    line: Mapping[str, int] = field(default_factory=dict)
    slice_: Mapping[str, int] = field(default_factory=dict)
    tau: Mapping[str, float] = field(default_factory=dict)
    fiducial: tuple[float, float] = (math.pi / 4, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "bonds", tuple(tuple(b) for b in self.bonds))
        validate_geometry(self)

    def index(self, label: str) -> int:
        return self.qubits.index(label)

    @property
    def mediators(self) -> list[str]:
        return [q for q in self.qubits if q not in self.line]


def bond_precedence(qubits: Sequence[str], bonds: Sequence[tuple[str, str]]) -> dict[int, set[int]]:
    """Required predecessors of each bond: a qubit's left-hand bonds precede its right-hand ones."""
    preds: dict[int, set[int]] = {i: set() for i in range(len(bonds))}
    for q in qubits:
        before = [i for i, (_, r) in enumerate(bonds) if r == q]
        after = [i for i, (l, _) in enumerate(bonds) if l == q]
        for j in after:
            preds[j].update(before)
    return preds


def validate_geometry(g: GeometrySpec) -> None:
    if len(set(g.qubits)) != len(g.qubits):
        raise InvalidArgument("qubit labels must be unique")
    known = set(g.qubits)
    for left, right in g.bonds:
        if left not in known or right not in known:
            raise InvalidArgument(f"bond ({left}, {right}) refers to an unknown qubit")
        if left == right:
            raise InvalidArgument(f"bond ({left}, {right}) is a self-loop")
    if len(set(g.bonds)) != len(g.bonds):
        raise InvalidArgument("duplicate bond")
    for name in ("line", "slice_", "tau"):
        extra = set(getattr(g, name)) - known
        if extra:
            raise InvalidArgument(f"{name} mentions unknown qubits {sorted(extra)}")
    preds = bond_precedence(g.qubits, g.bonds)
    try:
        tuple(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as exc:
        raise InvalidArgument(f"bond order is cyclic: {exc.args[1]}") from None
    for j, ps in preds.items():
        late = [i for i in ps if i > j]
        if late:
            raise InvalidArgument(
                f"bond {g.bonds[j]} is listed before {g.bonds[late[0]]}, which must act first"
            )


def linear_extension(qubits: Sequence[str], bonds: Sequence[tuple[str, str]]) -> tuple[tuple[str, str], ...]:
    """A valid application order for an unordered bond set (ties keep input order)."""
    ts = graphlib.TopologicalSorter(bond_precedence(qubits, bonds))
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        raise InvalidArgument(f"bond order is cyclic: {exc.args[1]}") from None
    order = []
    while ts.is_active():
        ready = sorted(ts.get_ready())
        order.extend(ready)
        ts.done(*ready)
    return tuple(bonds[i] for i in order)


def build_geometry_state(g: GeometrySpec, inputs: Mapping[str, np.ndarray] | None = None) -> np.ndarray:
    """Apply every bond projector, in order, to the product of fiducials (unnormalized).

    ``inputs`` replaces the fiducial on selected qubits by the given kets.
    """
    n = len(g.qubits)
    if n > MAX_QUBITS:
        raise InvalidArgument(f"{n} qubits exceeds the {MAX_QUBITS}-qubit budget")
    inputs = dict(inputs or {})
    o = fiducial_state(g.m, *g.fiducial)
    kets = [np.asarray(inputs.pop(q), dtype=complex) if q in inputs else o for q in g.qubits]
    if inputs:
        raise InvalidArgument(f"inputs for unknown qubits {sorted(inputs)}")
    psi = kron(*kets)
    xi = xi_projector(g.m)
    for left, right in g.bonds:
        psi = apply_local(psi, xi, [g.index(left), g.index(right)], n)
    return psi


def project_qubit(psi: np.ndarray, site: int, n: int, bra: np.ndarray) -> np.ndarray:
    """Contract qubit ``site`` with ``<bra|``, leaving n - 1 qubits."""
    t = np.asarray(psi).reshape([2] * n)
    return np.tensordot(np.asarray(bra).conj(), t, axes=([0], [site])).reshape(-1)


def u_gate(tau: float, m: float = math.pi / 4) -> np.ndarray:
    """U(tau): phases e^{-i tau/2}, e^{i tau/2}, e^{-i tau/2}, -e^{i tau/2} on |k^z l^w>."""
    z = axis_basis("z")
    w = axis_basis("w", m)
    phases = [np.exp(-0.5j * tau), np.exp(0.5j * tau), np.exp(-0.5j * tau), -np.exp(0.5j * tau)]
    out = np.zeros((4, 4), dtype=complex)
    for (k, l), ph in zip(itertools.product((0, 1), repeat=2), phases):
        v = np.kron(z[k], w[l])
        out += ph * np.outer(v, v.conj())
    return out


def operator_schmidt_rank(u: np.ndarray, tol: float = 1e-9) -> int:
    """Rank of a two-qubit operator across the qubit split."""
    r = u.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    s = np.linalg.svd(r, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


_MAGIC = np.array([[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=complex) / math.sqrt(2)


def makhlin_invariants(u: np.ndarray) -> tuple[complex, complex]:
    """Local-equivalence invariants (G1, G2); CNOT has (0, 1)."""
    ub = _MAGIC.conj().T @ u @ _MAGIC
    mm = ub.T @ ub
    det = np.linalg.det(u)
    tr = np.trace(mm)
    return complex(tr**2 / (16 * det)), complex((tr**2 - np.trace(mm @ mm)) / (4 * det))


def cnot_class(u: np.ndarray, tol: float = 1e-9) -> bool:
    g1, g2 = makhlin_invariants(u)
    return abs(g1) <= tol and abs(g2 - 1) <= tol


def gadget_geometry(
    length: int = 2,
    tau: float = 0.0,
    m: float = math.pi / 4,
    fiducial: tuple[float, float] = (math.pi / 4, 0.0),
) -> GeometrySpec:
    """Two timelines of ``length`` qubits joined at their current statuses through Q0.

    Labels: ``a0..`` for the first timeline, ``Q0``, ``b0..`` for the second.
    Bond s1 = (a0, Q0) acts before s2 = (Q0, b0), both before b0's own timeline.
    """
    if length < 2:
        raise InvalidArgument("each timeline needs at least 2 qubits")
    a = [f"a{k}" for k in range(length)]
    b = [f"b{k}" for k in range(length)]
    qubits = (*a, "Q0", *b)
    bonds = [("a0", "Q0"), ("Q0", "b0")]
    bonds += list(zip(a, a[1:])) + list(zip(b, b[1:]))
    line = {**{q: 0 for q in a}, **{q: 1 for q in b}}
    slc = {**{q: k for k, q in enumerate(a)}, **{q: k for k, q in enumerate(b)}, "Q0": 0}
    return GeometrySpec(qubits, tuple(bonds), m, line, slc, {"Q0": tau}, fiducial)


@dataclass
class GadgetReport:
    tau: float
    m: float
    u: np.ndarray  # target U(tau)
    maps: dict  # (label1, label2, gamma0) -> normalized effective map
    fidelities: dict  # same keys -> process fidelity to the predicted operator
    branch_probs: dict  # (label1, label2) -> (p0, p1) for the product input phi1 (x) phi2
    output_fidelity: float  # state check for phi1 (x) phi2 in the bare case
    byproducts: dict  # (label1, label2, gamma0) -> (ClassicalRegister on a, ClassicalRegister on b)
    unitarity_defect: float  # max over maps of ||M^dagger M - 1||
    offset: tuple[str, float]  # best Pauli P with M(0, 0, 0) ~ P U(tau), and its fidelity

    @property
    def min_fidelity(self) -> float:
        return min(self.fidelities.values())


def pauli_offset(mat: np.ndarray, target: np.ndarray) -> tuple[str, float]:
    """Two-qubit Pauli string P maximizing the process fidelity of ``mat`` to P target."""
    best = ("II", -1.0)
    for a, b in itertools.product("ixyz", repeat=2):
        p = np.kron(I2 if a == "i" else PAULI[a], I2 if b == "i" else PAULI[b])
        f = process_fidelity(mat, p @ target)
        if f > best[1] + 1e-12:
            best = ((a + b).upper(), f)
    return best


def _pauli(reg: ClassicalRegister) -> np.ndarray:
    return reg.byproduct()


def _extract(g: GeometrySpec, pointer: np.ndarray, length: int) -> np.ndarray:
    """Effective 4x4 map on (a0, b0) by propagating the 4 basis inputs."""
    n = len(g.qubits)
    q0 = g.index("Q0")
    w = timeline_isometry(TimelineSpec(length, g.m, fiducial=g.fiducial))
    ww = np.kron(w, w)
    pinv = np.linalg.pinv(ww)
    cols = []
    for i, j in itertools.product((0, 1), repeat=2):
        psi = build_geometry_state(g, {"a0": np.eye(2)[i], "b0": np.eye(2)[j]})
        out = project_qubit(psi, q0, n, pointer)
        col = pinv @ out
        if np.linalg.norm(ww @ col - out) > 1e-10 * max(1.0, np.linalg.norm(out)):
            raise ConsistencyError("gadget output is not a product of timeline encodings")
        cols.append(col)
    return np.stack(cols, axis=1)


def _normalized(mat: np.ndarray) -> np.ndarray:
    s = math.sqrt(np.real(np.trace(mat.conj().T @ mat)) / mat.shape[0])
    if s < 1e-12:
        raise DegenerateState("gadget branch has vanishing norm")
    return mat / s


def run_gadget(
    tau: float,
    phi1=None,
    phi2=None,
    mode: str = "bare",
    m: float = math.pi / 4,
    length: int = 2,
    fiducial: tuple[float, float] = (math.pi / 4, 0.0),
) -> GadgetReport:
    """Measure the mediating qubit and extract the induced map on the two current statuses.

    ``mode="bare"`` assumes no incoming byproducts; ``mode="table"`` runs every
    incoming pair of Pauli byproducts, adapts Q0's pointer with the routed bit
    and checks the outgoing byproducts predicted by the exchange table.
    """
    if mode not in ("bare", "table"):
        raise InvalidArgument(f"unknown gadget mode {mode!r}")
    if mode == "table" and min(abs(w_axis(m) - s).max() for s in (SX, -SX)) > 1e-12:
        raise InvalidArgument("table mode needs sigma^w = +-sigma^x (m = pi/4 or 3 pi/4)")
    if 2 * length + 1 > MAX_QUBITS:
        raise InvalidArgument(f"{2 * length + 1} qubits exceeds the {MAX_QUBITS}-qubit budget")
    phi1 = _ket(phi1)
    phi2 = _ket(phi2)
    g = gadget_geometry(length, tau, m, fiducial)
    target = u_gate(tau, m)
    sw = w_axis(m)
    labels = [0] if mode == "bare" else [0, 1, 2, 3]
    maps, fids, probs, byps = {}, {}, {}, {}
    extracted = {}
    for l1, l2 in itertools.product(labels, repeat=2):
        k1, k2 = ClassicalRegister.from_label(l1), ClassicalRegister.from_label(l2)
        branch_norms = []
        for gamma in (0, 1):
            ex = three_site_exchange(k1, k2, gamma, 0, 0)
            k0_in, k0 = ex["Q0_in"], ex["Q0"]
            sign = k0_in.kappa_z
            key = (sign, gamma)
            if key not in extracted:
                extracted[key] = _extract(g, pointer_state(gamma, tau, sign), length)
            raw = extracted[key] @ np.kron(_pauli(k1), _pauli(k2))
            out_a = ClassicalRegister((k1.kappa_z + k0.kappa_z) % 2, k1.kappa_x)
            out_b = ClassicalRegister(k2.kappa_z, (k2.kappa_x + k0.kappa_x) % 2)
            if mode == "bare":
                predicted = np.kron(I2, np.linalg.matrix_power(sw, gamma)) @ target
            else:
                predicted = np.kron(_pauli(out_a), _pauli(out_b)) @ target
            vec = raw @ np.kron(phi1, phi2)
            branch_norms.append(np.vdot(vec, vec).real)
            norm_map = _normalized(raw)
            maps[(l1, l2, gamma)] = norm_map
            fids[(l1, l2, gamma)] = process_fidelity(norm_map, predicted)
            byps[(l1, l2, gamma)] = (out_a, out_b)
        total = sum(branch_norms)
        if total < 1e-24:
            raise DegenerateState("input state is annihilated by the gadget")
        probs[(l1, l2)] = (branch_norms[0] / total, branch_norms[1] / total)
    out = maps[(0, 0, 0)] @ np.kron(phi1, phi2)
    want = target @ np.kron(phi1, phi2)
    out_fid = float(abs(np.vdot(want, out)) ** 2 / (np.vdot(out, out).real * np.vdot(want, want).real))
    defect = max(float(np.abs(u.conj().T @ u - np.eye(4)).max()) for u in maps.values())
    offset = pauli_offset(maps[(0, 0, 0)], target)
    return GadgetReport(tau, m, target, maps, fids, probs, out_fid, byps, defect, offset)


def _ket(phi) -> np.ndarray:
    if phi is None:
        return np.array([1, 0], dtype=complex)
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if phi.shape != (2,) or np.linalg.norm(phi) < 1e-12:
        raise InvalidArgument("current status must be a nonzero qubit ket")
    return phi / np.linalg.norm(phi)


# communication accounting


def generated_geometry(timelines: int, steps: int, m: float = math.pi / 4) -> GeometrySpec:
    """T parallel timelines of ``steps`` qubits, with brickwork gadgets between neighbours.

    At slice k a mediator joins line i to line i + 1 whenever i = k (mod 2).
    Meant for accounting; dense simulation is only possible at small sizes.
    """
    if timelines < 1 or steps < 1:
        raise InvalidArgument("need at least one timeline and one step")
    qubits, bonds, line, slc = [], [], {}, {}
    for i in range(timelines):
        for k in range(steps):
            q = f"t{i}_{k}"
            qubits.append(q)
            line[q], slc[q] = i, k
            if k:
                bonds.append((f"t{i}_{k - 1}", q))
    for k in range(steps):
        for i in range(k % 2, timelines - 1, 2):
            c = f"c{i}_{k}"
            qubits.append(c)
            slc[c] = k
            bonds += [(f"t{i}_{k}", c), (c, f"t{i + 1}_{k}")]
    return GeometrySpec(tuple(qubits), linear_extension(qubits, bonds), m, line, slc)


def messages(g: GeometrySpec) -> list[tuple[str, str, int, str]]:
    """Classical messages (src, dst, bits, direction) implied by the bonds.

    A bond inside one timeline carries the 2-bit register forward. A bond
    touching a mediator carries one bit each way.
    """
    out = []
    for left, right in g.bonds:
        if left in g.line and right in g.line:
            if g.line[left] != g.line[right]:
                raise InvalidArgument(f"bond ({left}, {right}) joins two timelines without a mediator")
            out.append((left, right, 2, "time"))
        else:
            out.append((left, right, 1, "space"))
            out.append((right, left, 1, "space"))
    return out


def _position(g: GeometrySpec, q: str) -> tuple[float, int]:
    if q in g.line:
        return float(g.line[q]), g.slice_[q]
    nbrs = [g.line[x] for b in g.bonds if q in b for x in b if x != q and x in g.line]
    if not nbrs:
        raise InvalidArgument(f"mediator {q} touches no timeline")
    return (min(nbrs) + max(nbrs)) / 2, g.slice_.get(q, 0)


@dataclass
class CommunicationAudit:
    time_cuts: dict  # cut after slice k -> (forward bits, backward bits)
    space_cuts: dict  # cut position -> (rightward bits, leftward bits)

    def time_tallies(self) -> list[int]:
        return [f - b for f, b in self.time_cuts.values()]

    def space_net(self) -> list[int]:
        return [r - l for r, l in self.space_cuts.values()]


def communication_audit(g: GeometrySpec, steps: int | None = None) -> CommunicationAudit:
    """Count bits crossing every constant-time cut and every spatial cut.

    Spatial cuts sit at a quarter and three quarters between neighbouring
    timelines, so both placements of a mediator relative to the cut are seen.
    ``steps`` restricts time cuts to the first ``steps`` slices.
    """
    pos = {q: _position(g, q) for q in g.qubits}
    msgs = messages(g)
    last = max(p[1] for p in pos.values())
    horizon = last if steps is None else min(steps, last + 1) - 1
    time_cuts = {}
    for k in range(horizon):
        fwd = sum(b for s, d, b, _ in msgs if pos[s][1] <= k < pos[d][1])
        bwd = sum(b for s, d, b, _ in msgs if pos[d][1] <= k < pos[s][1])
        time_cuts[k] = (fwd, bwd)
    space_cuts = {}
    lines = sorted(set(g.line.values()))
    for i in lines[:-1]:
        for x in (i + 0.25, i + 0.75):
            right = sum(b for s, d, b, _ in msgs if pos[s][0] < x < pos[d][0])
            left = sum(b for s, d, b, _ in msgs if pos[d][0] < x < pos[s][0])
            space_cuts[x] = (right, left)
    return CommunicationAudit(time_cuts, space_cuts)


def exchange_messages() -> list[ExchangeMessage]:
    zero = ClassicalRegister()
    return three_site_exchange(zero, zero, 0, 0, 0)["messages"]


__all__ = [
    "FIDELITY_TOL",
    "GeometrySpec",
    "GadgetReport",
    "CommunicationAudit",
    "bond_precedence",
    "validate_geometry",
    "linear_extension",
    "build_geometry_state",
    "project_qubit",
    "u_gate",
    "operator_schmidt_rank",
    "makhlin_invariants",
    "cnot_class",
    "gadget_geometry",
    "pauli_offset",
    "run_gadget",
    "generated_geometry",
    "messages",
    "communication_audit",
    "exchange_messages",
]
