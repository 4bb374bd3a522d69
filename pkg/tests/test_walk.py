import math

import numpy as np
import pytest

from qclock.errors import InvalidArgument
from qclock.walk import (
    WalkSpec,
    WalkState,
    coin_factor_residual,
    distributions_to_csv,
    mapping_check,
    run_walk,
    sector_operator,
    shift_operator,
    spread_fit,
    sz_expectation,
    translate,
    walk_step,
)

MS = [0.0, 0.1, math.pi / 8, math.pi / 4, 1.0, 1.4]
TAUS = [0.0, 0.5, math.pi / 3, 2.0, math.pi]


@pytest.mark.parametrize("m", MS)
@pytest.mark.parametrize("tau", TAUS)
def test_mapping(m, tau):
    assert mapping_check(m, tau) <= 1e-9


@pytest.mark.parametrize("steps", [2, 5])
def test_multi_step_coin_factor(steps):
    assert coin_factor_residual(0.6, 1.1, steps) <= 1e-9


def test_mapping_needs_compatible_ring():
    with pytest.raises(InvalidArgument):
        mapping_check(0.3, 0.2, L=10)


def test_step_is_unitary():
    spec = WalkSpec(9, 0.4, potential=np.linspace(0, 1, 9))
    u = walk_step(spec)
    assert np.allclose(u.conj().T @ u, np.eye(18), atol=1e-12)


def test_shift_conventions():
    s = shift_operator(5)
    psi = WalkState.localized(5, 2, (1, 0)).amplitudes
    assert np.argmax(np.abs(s @ psi)) == 2 * 1
    psi = WalkState.localized(5, 2, (0, 1)).amplitudes
    assert np.argmax(np.abs(s @ psi)) == 2 * 3 + 1


def test_massless_walk_moves_ballistically():
    spec = WalkSpec(41, 0.0, steps=10)
    res = run_walk(spec, WalkState.localized(41, 20, (0, 1)))
    assert res.distributions[10, 30] == pytest.approx(1)


def test_translation_covariance():
    spec = WalkSpec(21, 0.5, steps=6)
    init = WalkState.localized(21, 10, (1, 1j))
    a = run_walk(spec, init)
    b = run_walk(spec, translate(init, 3))
    assert np.allclose(np.roll(a.distributions, 3, axis=1), b.distributions)
    assert np.allclose(a.std(), b.std())


@pytest.mark.parametrize("m", [math.pi / 8, 0.5])
def test_ballistic_spread(m):
    spec = WalkSpec(101, m, steps=40)
    res = run_walk(spec, WalkState.localized(101, 50, (1, 1j)))
    assert np.allclose(res.norms, 1, atol=1e-10)
    assert not res.wrapped
    slope, r2 = spread_fit(res)
    assert r2 >= 0.99
    assert 0 < slope <= 1


def test_spread_fit_refuses_wrapped_window():
    spec = WalkSpec(30, 0.3, steps=40)
    res = run_walk(spec, WalkState.localized(30, 0))
    assert res.wrapped and res.wrap_step == 15
    with pytest.raises(InvalidArgument):
        spread_fit(res)


def test_sector_leak_zero():
    spec = WalkSpec(8, 0.3, 1, 1.0, (0.2,) * 8)
    _, leak = sector_operator(spec, math.pi / 2)
    assert leak < 1e-12
    with pytest.raises(InvalidArgument):
        sector_operator(WalkSpec(8, 0.3, potential=range(8)), math.pi / 2)


def test_csv_output_and_sz():
    spec = WalkSpec(6, 0.0, steps=1)
    res = run_walk(spec, WalkState.localized(6, 0))
    lines = distributions_to_csv(res).splitlines()
    assert lines[0] == "step,site,probability"
    assert len(lines) == 1 + 2 * 6
    assert np.allclose(sz_expectation(res.coin), 1)


def test_walk_spec_validation():
    with pytest.raises(InvalidArgument):
        WalkSpec(3, 0.1)
    with pytest.raises(InvalidArgument):
        WalkSpec(8, 0.1, potential=(1.0,))
    with pytest.raises(InvalidArgument):
        WalkState(np.ones(4))
