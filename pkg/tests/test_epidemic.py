import numpy as np
import pytest

from sispolicy import (DISEASE_FREE, ENDEMIC, DomainError, IntegrationOptions,
                       ModelParams, PhasePoint, SisState, baseline_equilibria,
                       baseline_planar_field, basic_reproduction_number,
                       classify_long_run, closed_form_infected, integrate,
                       sis_vector_field)


def test_params_validation():
    ModelParams(0.2, 0.2, 0.04)  # valid
    with pytest.raises(DomainError):
        ModelParams(-0.1, 0.2, 0.04)
    with pytest.raises(DomainError):
        ModelParams(0.2, -0.2, 0.04)
    with pytest.raises(DomainError):
        ModelParams(0.2, 0.2, 0.0)
    with pytest.raises(DomainError):
        ModelParams(0.2, 0.2, 0.04, p=1.5)
    with pytest.raises(DomainError):
        ModelParams(0.2, 0.2, 0.04, v=-0.1)


def test_sis_state_conservation():
    SisState(0.96, 0.04)
    with pytest.raises(DomainError):
        SisState(0.9, 0.2)
    with pytest.raises(DomainError):
        SisState(1.2, -0.2)


def test_r0_values():
    assert basic_reproduction_number(ModelParams(0.2, 0.2, 0.04)) == pytest.approx(1.0)
    assert basic_reproduction_number(ModelParams(0.5, 0.1, 0.04, p=1.0)) == 0.0
    assert basic_reproduction_number(ModelParams(0.3, 0.4, 0.04)) == pytest.approx(0.75)
    # policy rates rescale both sides of the ratio
    assert basic_reproduction_number(
        ModelParams(0.4, 0.2, 0.04, p=0.5, v=1.0)) == pytest.approx(0.5)


def test_r0_undefined_for_zero_recovery():
    with pytest.raises(ZeroDivisionError):
        basic_reproduction_number(ModelParams(0.2, 0.0, 0.04))


def test_vector_field_fixed_points():
    params = ModelParams(0.4, 0.2, 0.04)
    assert sis_vector_field(0.0, params) == 0.0
    endemic = baseline_equilibria(params)[1]
    assert endemic == pytest.approx(0.5)
    assert abs(sis_vector_field(endemic, params)) < 1e-15


def test_vector_field_hand_value():
    params = ModelParams(0.2, 0.2, 0.04)
    assert sis_vector_field(0.04, params) == pytest.approx(-3.2e-4, rel=1e-12)


def test_vector_field_domain():
    params = ModelParams(0.2, 0.2, 0.04)
    with pytest.raises(DomainError):
        sis_vector_field(-0.01, params)
    with pytest.raises(DomainError):
        sis_vector_field(1.2, params)


def test_baseline_equilibria():
    assert baseline_equilibria(ModelParams(0.4, 0.2, 0.04)) == (0.0, pytest.approx(0.5))
    dfe, endemic = baseline_equilibria(ModelParams(0.2, 0.26, 0.04))
    assert dfe == 0.0 and endemic is None
    # R0 = 1 boundary: the endemic level would be 0
    assert baseline_equilibria(ModelParams(0.3, 0.3, 0.04))[1] is None


def test_fixed_point_residuals_random_grid():
    rng = np.random.default_rng(7)
    for _ in range(25):
        alpha = rng.uniform(0.05, 0.9)
        delta = rng.uniform(0.05, 0.9)
        p, v = rng.uniform(0, 0.5, size=2)
        params = ModelParams(alpha, delta, 0.04, p=p, v=v)
        for level in baseline_equilibria(params):
            if level is not None:
                assert abs(sis_vector_field(level, params)) < 1e-12


def test_closed_form_initial_condition():
    params = ModelParams(0.37, 0.19, 0.04)
    for i0 in (0.01, 0.04, 0.5, 1.0):
        assert closed_form_infected(0.0, i0, params) == pytest.approx(i0)


def test_closed_form_r0_one_branch():
    # effective rate 0.2, R0 = 1: I_t = 1/(0.2 t + 1/0.04)
    params = ModelParams(0.2, 0.2, 0.04)
    val = closed_form_infected(100.0, 0.04, params)
    assert val == pytest.approx(1.0 / 45.0, rel=1e-12)


def test_closed_form_long_run_limit():
    params = ModelParams(0.4, 0.2, 0.04)
    assert closed_form_infected(400.0, 0.04, params) == pytest.approx(0.5, abs=1e-12)


def test_closed_form_absorbing_zero():
    params = ModelParams(0.4, 0.2, 0.04)
    assert closed_form_infected(50.0, 0.0, params) == 0.0
    assert np.all(closed_form_infected(np.linspace(0, 10, 5), 0.0, params) == 0.0)
    with pytest.raises(DomainError):
        closed_form_infected(1.0, -0.01, params)


def test_closed_form_full_prevention():
    # p = 1 kills incidence: pure exponential recovery
    params = ModelParams(0.5, 0.2, 0.04, p=1.0)
    t = np.linspace(0, 30, 7)
    expected = 0.04 * np.exp(-0.2 * t)
    assert np.allclose(closed_form_infected(t, 0.04, params), expected, atol=1e-14)


def test_closed_form_no_overflow_long_horizon():
    params = ModelParams(0.9, 0.1, 0.04)  # strong growth, r = 0.8
    val = closed_form_infected(800.0, 0.001, params)
    assert val == pytest.approx(1.0 - 1.0 / 9.0, abs=1e-12)


def test_monotone_convergence():
    params = ModelParams(0.4, 0.2, 0.04)  # endemic level 0.5
    t = np.linspace(0.0, 150.0, 400)
    rising = closed_form_infected(t, 0.1, params)
    assert np.all(np.diff(rising) > 0)
    falling = closed_form_infected(t, 0.9, params)
    assert np.all(np.diff(falling) < 0)


def test_branch_continuity_near_r0_one():
    i0, t = 0.04, np.linspace(0.0, 200.0, 801)
    for eps in (1e-6, -1e-6):
        params = ModelParams(0.2 * (1.0 + eps), 0.2, 0.04)
        general = closed_form_infected(t, i0, params)
        degenerate = 1.0 / (params.alpha_eff * t + 1.0 / i0)
        assert np.max(np.abs(general - degenerate)) < 1e-4


def test_classify_long_run():
    assert classify_long_run(ModelParams(0.2, 0.26, 0.04)) == DISEASE_FREE
    assert classify_long_run(ModelParams(0.4, 0.2, 0.04)) == ENDEMIC
    # boundary R0 = 1 counts as disease-free
    assert classify_long_run(ModelParams(0.2, 0.2, 0.04)) == DISEASE_FREE


def test_planar_conservation():
    params = ModelParams(0.4, 0.2, 0.04, p=0.1, v=0.2)
    opts = IntegrationOptions(step=0.01, t_max=200.0)
    traj = integrate(baseline_planar_field(params), PhasePoint(0.96, 0.04),
                     opts, "baseline")
    assert np.max(np.abs(traj.s + traj.c - 1.0)) < 1e-10


def test_integration_matches_closed_form():
    params = ModelParams(0.35, 0.22, 0.04, p=0.15, v=0.1)
    opts = IntegrationOptions(step=0.01, t_max=200.0)
    traj = integrate(baseline_planar_field(params), PhasePoint(0.96, 0.04),
                     opts, "baseline")
    oracle = closed_form_infected(traj.times, 0.04, params)
    assert np.max(np.abs(traj.c - oracle)) < 1e-6
