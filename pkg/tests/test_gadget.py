import math

import numpy as np
import pytest

from qclock.errors import InvalidArgument
from qclock.protocol.gadget import (
    GeometrySpec,
    build_geometry_state,
    cnot_class,
    communication_audit,
    exchange_messages,
    gadget_geometry,
    generated_geometry,
    linear_extension,
    makhlin_invariants,
    messages,
    operator_schmidt_rank,
    run_gadget,
    u_gate,
)
from qclock.qcore import random_state, random_unitary
from qclock.timeline import TimelineSpec, build_timeline

QUARTER = math.pi / 4
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
TAUS = [0.0] + [k * math.pi / 5 for k in range(1, 10)]


def test_makhlin_reference_gates():
    g1, g2 = makhlin_invariants(CNOT)
    assert abs(g1) < 1e-12 and abs(g2 - 1) < 1e-12
    # local dressing leaves the class unchanged
    loc = np.kron(random_unitary(2, 1), random_unitary(2, 2))
    assert cnot_class(loc @ CNOT @ np.kron(random_unitary(2, 3), random_unitary(2, 4)))
    assert not cnot_class(np.eye(4))
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert not cnot_class(swap)


@pytest.mark.parametrize("u, rank", [(np.eye(4), 1), (CNOT, 2), (np.eye(4)[[0, 2, 1, 3]], 4)])
def test_schmidt_rank_references(u, rank):
    assert operator_schmidt_rank(u) == rank


@pytest.mark.parametrize("tau", TAUS)
def test_u_gate_is_entangling_cnot_class(tau):
    u = u_gate(tau)
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
    assert operator_schmidt_rank(u) == 2
    assert cnot_class(u)


@pytest.mark.parametrize("tau", TAUS)
def test_gadget_bare(tau):
    rep = run_gadget(tau, random_state(2, 1), random_state(2, 2))
    assert rep.min_fidelity >= 1 - 1e-9
    assert rep.output_fidelity >= 1 - 1e-9
    assert rep.unitarity_defect < 1e-9


@pytest.mark.parametrize("tau", [0.0, 0.7, math.pi])
def test_gadget_table_modes(tau):
    rep = run_gadget(tau, mode="table")
    assert len(rep.fidelities) == 32
    assert rep.min_fidelity >= 1 - 1e-9
    for p0, p1 in rep.branch_probs.values():
        assert p0 + p1 == pytest.approx(1)


def test_gadget_longer_timelines():
    assert run_gadget(0.4, length=3, mode="table").min_fidelity >= 1 - 1e-9


def test_gadget_table_needs_quarter_mass():
    with pytest.raises(InvalidArgument):
        run_gadget(0.1, mode="table", m=0.5)


def test_gadget_three_quarter_pauli_offset():
    rep = run_gadget(0.3, m=3 * QUARTER)
    name, fid = rep.offset
    assert fid >= 1 - 1e-9
    assert name != "II"


def test_geometry_single_line_is_timeline():
    q = ("x0", "x1", "x2")
    g = GeometrySpec(q, (("x0", "x1"), ("x1", "x2")), QUARTER, {k: 0 for k in q})
    phi = random_state(2, 6)
    psi = build_geometry_state(g, {"x0": phi})
    ref = build_timeline(TimelineSpec(3, QUARTER), phi)
    assert abs(abs(np.vdot(ref, psi / np.linalg.norm(psi))) - 1) < 1e-12


@pytest.mark.parametrize(
    "bonds",
    [
        (("b", "c"), ("a", "b")),  # b's right-hand bond listed after its left-hand bond
        (("a", "b"), ("b", "a")),
        (("a", "a"),),
        (("a", "z"),),
    ],
)
def test_bad_geometries(bonds):
    with pytest.raises(InvalidArgument):
        GeometrySpec(("a", "b", "c"), bonds)


def test_linear_extension_repairs_order():
    q = ("a", "b", "c")
    order = linear_extension(q, [("b", "c"), ("a", "b")])
    assert order == (("a", "b"), ("b", "c"))
    with pytest.raises(InvalidArgument):
        linear_extension(q, [("a", "b"), ("b", "a")])


def test_gadget_geometry_order():
    g = gadget_geometry(3)
    assert g.bonds[:2] == (("a0", "Q0"), ("Q0", "b0"))
    assert g.mediators == ["Q0"]


@pytest.mark.parametrize("timelines", [1, 2, 3])
@pytest.mark.parametrize("steps", range(2, 9))
def test_area_law(timelines, steps):
    audit = communication_audit(generated_geometry(timelines, steps))
    assert audit.time_tallies() == [2 * timelines] * (steps - 1)
    assert all(net == 0 for net in audit.space_net())
    assert len(audit.space_cuts) == 2 * (timelines - 1)


def test_messages_bits():
    g = generated_geometry(2, 2)
    msgs = messages(g)
    assert sum(b for *_, b, d in msgs if d == "time") == 2 * 2
    assert sum(b for *_, b, d in msgs if d == "space") == 2 * 2


def test_exchange_messages_balanced():
    msgs = exchange_messages()
    into = sum(1 for m in msgs if m.dst == "Q0")
    out = sum(1 for m in msgs if m.src == "Q0")
    assert into == out == 2
