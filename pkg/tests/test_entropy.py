import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qclock.entropy import (
    conditional_entropy,
    dpi_check,
    entropy_report,
    holevo_form,
    joint_form,
    shannon,
    ssa_gap,
    von_neumann,
    von_neumann_factor,
)
from qclock.errors import InvalidArgument, InvalidState
from qclock.hybrid import HybridState, apply_local_channel, depolarize, random_hybrid
from qclock.qcore import random_density, random_kraus, random_state


@pytest.mark.parametrize("p", np.linspace(0, 1, 9))
def test_binary_entropy(p):
    expected = 0 if p in (0, 1) else -(p * math.log2(p) + (1 - p) * math.log2(1 - p))
    assert shannon([p, 1 - p]) == pytest.approx(expected, abs=1e-12)
    assert von_neumann(np.diag([p, 1 - p])) == pytest.approx(expected, abs=1e-12)


def test_shannon_rejects():
    with pytest.raises(InvalidArgument):
        shannon([0.5, 0.6])
    with pytest.raises(InvalidArgument):
        shannon([1.2, -0.2])


def test_pure_state_entropy_zero():
    psi = random_state(5, 1)
    assert von_neumann(np.outer(psi, psi.conj())) == pytest.approx(0, abs=1e-10)


def test_maximally_mixed():
    assert von_neumann(np.eye(4) / 4) == pytest.approx(2)


def test_clipping_reports_mass():
    rho = np.diag([0.5 + 5e-11, 0.5, -5e-11])
    rep = entropy_report(rho)
    assert rep.clipped_mass == pytest.approx(5e-11)
    assert rep.value == pytest.approx(1, abs=1e-9)
    with pytest.raises(InvalidState):
        entropy_report(np.diag([1.1, -0.1]))


def test_factor_entropy_matches_dense():
    rng = np.random.default_rng(0)
    f = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
    rho = f @ f.conj().T
    assert von_neumann_factor(f) == pytest.approx(von_neumann(rho / np.trace(rho).real), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 4))
def test_conditional_entropy_forms_agree(seed, k, d):
    h = random_hybrid(k, d, seed)
    assert joint_form(h) == pytest.approx(holevo_form(h), abs=1e-9)
    s = conditional_entropy(h)
    # bounded by the register entropy and nonnegative for cq states
    assert -1e-9 <= s <= shannon(h.probs) + 1e-9


def test_identical_branches_have_full_conditional_entropy():
    zeta = random_density(2, 2, 4)
    h = HybridState.from_entries(4, [(k, 0.25, zeta) for k in range(4)])
    assert conditional_entropy(h) == pytest.approx(2, abs=1e-9)


def test_orthogonal_branches_have_zero_conditional_entropy():
    h = HybridState.from_entries(2, [(0, 0.5, np.array([1, 0])), (1, 0.5, np.array([0, 1]))])
    assert conditional_entropy(h) == pytest.approx(0, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_dpi_random_channels(seed):
    rng = np.random.default_rng(seed)
    h = random_hybrid(3, 3, rng)
    after = apply_local_channel(h, random_kraus(3, int(rng.integers(1, 4)), rng))
    assert dpi_check(h, after) >= -1e-9


def test_depolarizing_saturates_register_entropy():
    h = random_hybrid(4, 2, 9)
    assert conditional_entropy(depolarize(h)) == pytest.approx(shannon(h.probs), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_ssa_random(seed, dims):
    d = int(np.prod(dims))
    rho = random_density(d, 1 + seed % d, seed)
    assert ssa_gap(rho, dims) >= -1e-9


def test_ssa_product_state_is_zero():
    a, b, c = (random_density(2, 2, s) for s in range(3))
    assert ssa_gap(np.kron(np.kron(a, b), c), [2, 2, 2]) == pytest.approx(0, abs=1e-10)


def test_ssa_dimension_check():
    with pytest.raises(InvalidArgument):
        ssa_gap(np.eye(8) / 8, [2, 2])
    with pytest.raises(InvalidArgument):
        ssa_gap(np.eye(8) / 8, [2, 2, 3])
