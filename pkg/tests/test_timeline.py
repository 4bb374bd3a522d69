import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclock.errors import InvalidArgument
from qclock.qcore import I2, SX, SZ, phase_distance, random_state, random_unitary, rotation, w_axis
from qclock.timeline import (
    TimelineSpec,
    build_timeline,
    clock_overlap,
    cluster_state,
    cz_equivalence,
    emergent_evolution_demo,
    fiducial_residuals,
    fiducial_solver,
    fiducial_state,
    key_identity,
    pointer_state,
    reduce_angle,
    stabilizer_check,
    stabilizer_signs,
    stationary_hamiltonian,
    timeline_isometry,
    transfer_operator,
    xi_projector,
    xi_quadrature,
)

QUARTER = math.pi / 4


@pytest.mark.parametrize("m", [0.0, 0.3, QUARTER, 1.0, 3 * QUARTER])
def test_xi_is_kernel_projector(m):
    xi = xi_projector(m)
    assert np.allclose(xi @ xi, xi, atol=1e-12)
    assert np.allclose(xi, xi.conj().T, atol=1e-12)
    assert np.trace(xi).real == pytest.approx(2)
    assert np.allclose(stationary_hamiltonian(m) @ xi, 0, atol=1e-12)


@pytest.mark.parametrize("K", [2, 3, 8])
def test_xi_quadrature(K):
    assert np.allclose(xi_quadrature(0.7, K), xi_projector(0.7), atol=1e-12)


def test_clock_overlap_orthogonal_half_period():
    assert abs(clock_overlap(0.4, 0.4 + math.pi)) < 1e-12
    assert abs(clock_overlap(0.4, 0.4)) == pytest.approx(1)


@pytest.mark.parametrize("K", [2, 3, 50])
@pytest.mark.parametrize("tau", np.linspace(-3, 6, 5))
def test_key_identity(K, tau):
    assert np.abs(key_identity(tau, K) - rotation("z", -tau)).max() < 1e-12


@pytest.mark.parametrize("gamma", [0, 1])
def test_transfer_has_pointer_shift(gamma):
    tau, m = 0.9, 0.4
    ref = transfer_operator(0, tau, m) @ (SZ if gamma else I2)
    assert phase_distance(transfer_operator(gamma, tau, m), ref) < 1e-12


@pytest.mark.parametrize("m", [0.3, QUARTER, 1.1])
@pytest.mark.parametrize("gamma", [0, 1])
def test_transfer_from_contraction(m, gamma):
    # <tau(gamma)|_1 Xi |o>_2 equals A(gamma)/sqrt 2 up to phase
    tau = 1.3
    xi = xi_projector(m).reshape(2, 2, 2, 2)
    o = fiducial_state(m)
    a = np.einsum("p,pbac,c->ba", pointer_state(gamma, tau).conj(), xi, o)
    assert phase_distance(math.sqrt(2) * a, transfer_operator(gamma, tau, m)) < 1e-12


def test_pointer_basis_completeness():
    tau = 2.2
    for kx in (0, 1):
        p = sum(np.outer(pointer_state(g, tau, kx), pointer_state(g, tau, kx).conj()) for g in (0, 1))
        assert np.allclose(p, I2)


def test_spec_validation():
    with pytest.raises(InvalidArgument):
        TimelineSpec(0, QUARTER)
    with pytest.raises(InvalidArgument):
        TimelineSpec(3, QUARTER, (0.1,))
    with pytest.raises(InvalidArgument):
        TimelineSpec(3, math.nan)
    assert TimelineSpec(3, QUARTER, (-0.5, 7.0)).tau_schedule == (reduce_angle(-0.5), reduce_angle(7.0))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.floats(0.05, 1.5), st.integers(0, 10**6))
def test_isometry_is_proportional_to_isometry(n, m, seed):
    rng = np.random.default_rng(seed)
    spec = TimelineSpec(n, m, tuple(rng.uniform(0, 6, n - 1)))
    w = timeline_isometry(spec)
    g = w.conj().T @ w
    assert np.allclose(g / g[0, 0], I2, atol=1e-10)


@pytest.mark.parametrize("m, commutes", [(0.0, True), (0.6, False)])
def test_bond_order(m, commutes):
    # Xi pairs commute only when the w axis is the z axis
    spec = TimelineSpec(5, m, (0.1, 0.2, 0.3, 0.4))
    phi = random_state(2, 4)
    a = build_timeline(spec, phi)
    b = build_timeline(spec, phi, bond_order=[3, 1, 0, 2])
    assert (abs(abs(np.vdot(a, b)) - 1) < 1e-12) == commutes


@pytest.mark.parametrize("n", range(2, 8))
def test_quarter_stabilizers(n):
    spec = TimelineSpec(n, QUARTER)
    for seed in range(5):
        assert max(stabilizer_check(spec, random_state(2, seed)).values()) < 1e-9
    assert stabilizer_check(spec, fiducial_state(QUARTER), True)["Z1"] < 1e-9


def test_three_quarter_last_stabilizer_flips_sign():
    # sigma^w = -X there, so the boundary generator comes out with eigenvalue -1
    spec = TimelineSpec(5, 3 * QUARTER)
    signs = stabilizer_signs(spec, random_state(2, 2))
    assert signs["K5"] == pytest.approx(-1)
    assert np.allclose(w_axis(3 * QUARTER), -SX)


@pytest.mark.parametrize("n", [2, 5, 10])
def test_cz_equivalence(n):
    assert cz_equivalence(n) >= 1 - 1e-9


def test_cluster_state_order_free():
    assert np.allclose(cluster_state(4), cluster_state(4, [2, 0, 1]))


def test_fiducial_solver_finds_equator():
    pts = fiducial_solver(1e-3)
    assert len(pts) > 0
    # the pointer pair must sit on the equator of the z sphere
    assert np.allclose(pts[:, 1], QUARTER, atol=2e-3)
    unit, povm = fiducial_residuals(QUARTER, QUARTER)
    assert unit < 1e-12 and povm < 1e-12


def test_fiducial_solver_rejects_coarse_grid():
    with pytest.raises(InvalidArgument):
        fiducial_solver(0.01)


@pytest.mark.parametrize("seed", range(4))
def test_emergent_evolution(seed):
    u = random_unitary(2, seed)
    h = u @ np.diag([0.5 + 0.1 * seed, -0.3]) @ u.conj().T
    demo = emergent_evolution_demo(h, steps=40)
    assert demo.max_residual <= 1e-6
    assert demo.stationarity < 1e-10


@pytest.mark.parametrize("scale", [0.5, 2.0])
def test_emergent_residual_is_second_order(scale):
    # central differences err by spacing^2 lambda^3 / 6 for a single frequency lambda
    h = scale * np.diag([1.0, -1.0])
    res = emergent_evolution_demo(h, steps=20, spacing=1e-3).max_residual
    assert res == pytest.approx(1e-6 * scale**3 / 6, rel=1e-2)
