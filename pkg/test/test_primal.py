# testing done with pytest
import numpy as np
import pytest

from barrierdual.dual import barrier_dividend_value, eval_dual_value, lambda_from_barrier, solve_dual
from barrierdual.errors import MinimizationFailure, NegativeState
from barrierdual.model import ModelParams, discounted_horizon
from barrierdual.primal import (
    CaseTag,
    ExtendedReal,
    classify_and_solve,
    classify_discounted,
    dual_curve,
    duality_gap_certificate,
    minimize_dual,
    region_scan,
    slack_limit_profile,
    unconstrained_barrier,
)
from barrierdual.ruin import feasibility_threshold, horizon_threshold, psi, psi_hat

BASE = ModelParams(lam=1.0, c=1.3, alpha=1.0, delta=0.1)
LOW_PREMIUM = ModelParams(lam=1.0, c=1.0, alpha=1.0, delta=0.1)
K20 = discounted_horizon(0.1, 20.0)

# order of the cases along increasing K_T for a fixed x0
CASE_ORDER = [CaseTag.INACTIVE, CaseTag.ACTIVE, CaseTag.DO_NOTHING, CaseTag.INFEASIBLE]


def random_params(rng):
    lam = rng.uniform(0.5, 2.0)
    alpha = rng.uniform(0.5, 2.0)
    delta = rng.uniform(0.05, 0.3)
    c = lam / alpha * rng.uniform(1.1, 2.0)
    return ModelParams(lam=lam, c=c, alpha=alpha, delta=delta)


def random_active_instance(rng):
    params = random_params(rng)
    x0 = rng.uniform(0.0, 10.0)
    low = psi(params, unconstrained_barrier(params), x0)
    high = psi_hat(params, x0)
    kT = low + rng.uniform(0.1, 0.9) * (high - low)
    return params, x0, kT


def test_extended_real():
    assert ExtendedReal.minus_infinity().serialize() == "-inf"
    assert str(ExtendedReal.minus_infinity()) == "-inf"
    assert not ExtendedReal.minus_infinity().is_finite
    assert ExtendedReal(1.5).serialize() == 1.5
    assert ExtendedReal(0.0).is_finite


def test_inactive_constraint():
    outcome = classify_and_solve(BASE, 10.0, 1.0)
    assert outcome.case_tag is CaseTag.INACTIVE
    assert outcome.lambda_star == 0.0
    assert outcome.b_star == pytest.approx(0.7828, abs=1e-4)
    assert outcome.slack == pytest.approx(1.7418 - 0.9516, abs=1e-3)
    assert outcome.value.finite == pytest.approx(10.0 - outcome.b_star + 2.0, rel=1e-12)
    assert outcome.attained
    print(f"[INFO]: Test Primal.1 passed")


def test_inactive_with_zero_barrier():
    # lambda_bar >= 0: the unconstrained barrier is 0
    outcome = classify_and_solve(LOW_PREMIUM, 2.0, 0.5)
    assert outcome.case_tag is CaseTag.INACTIVE
    assert outcome.b_star == 0.0
    assert outcome.value.finite == pytest.approx(2.0 + 1.0 / 1.1, rel=1e-12)


def test_active_constraint():
    outcome = classify_and_solve(BASE, 10.0, 20.0)
    assert outcome.case_tag is CaseTag.ACTIVE
    assert outcome.lambda_star > 0
    assert outcome.b_star > unconstrained_barrier(BASE)
    assert abs(psi(BASE, outcome.b_star, 10.0) - K20) <= 1e-9
    assert abs(outcome.slack) <= 1e-9
    assert outcome.constraint.T == 20.0
    assert outcome.value.finite == pytest.approx(barrier_dividend_value(BASE, outcome.b_star, 10.0), abs=1e-8)
    print(f"[INFO]: Test Primal.2 passed")


def test_infeasible():
    outcome = classify_and_solve(BASE, 1.0, 20.0)
    assert outcome.case_tag is CaseTag.INFEASIBLE
    assert not outcome.value.is_finite
    assert outcome.value.serialize() == "-inf"
    assert not outcome.solvable
    assert outcome.horizon_threshold < 20.0


def test_do_nothing():
    x0 = feasibility_threshold(BASE, K20)
    outcome = classify_discounted(BASE, x0, psi_hat(BASE, x0))
    assert outcome.case_tag is CaseTag.DO_NOTHING
    assert outcome.value.finite == 0.0
    assert not outcome.attained
    assert outcome.b_star is None

    outcome = classify_and_solve(BASE, 2.0, horizon_threshold(BASE, 2.0))
    assert outcome.case_tag is CaseTag.DO_NOTHING


def test_negative_surplus():
    with pytest.raises(NegativeState):
        classify_and_solve(BASE, -1.0, 1.0)


def test_duality_gap_base_instances():
    report = duality_gap_certificate(BASE, 10.0, 20.0)
    assert report.gap <= 1e-6
    assert report.certified
    assert report.minimizer > 0
    assert abs(report.slackness) <= 1e-8

    report = duality_gap_certificate(BASE, 10.0, 1.0)
    assert report.minimizer == 0.0
    assert report.gap <= 1e-6

    with pytest.raises(MinimizationFailure):
        duality_gap_certificate(BASE, 1.0, 20.0)
    print(f"[INFO]: Test Primal.3 passed")


def test_strong_duality_random_active_instances():
    rng = np.random.default_rng(23)
    for _ in range(20):
        params, x0, kT = random_active_instance(rng)
        outcome = classify_discounted(params, x0, kT)
        assert outcome.case_tag is CaseTag.ACTIVE
        assert abs(outcome.lambda_star * outcome.slack) <= 1e-8

        minimizer, dual_min = minimize_dual(params, x0, outcome.constraint.T)
        assert abs(dual_min - outcome.value.finite) <= 1e-6
    print(f"[INFO]: Test Primal.4 passed")


def test_classification_property_suite():
    rng = np.random.default_rng(29)
    for _ in range(100):
        params = random_params(rng)
        x0 = rng.uniform(0.0, 10.0)
        kT = rng.uniform(0.0, 0.95) / params.delta
        outcome = classify_discounted(params, x0, kT)

        if outcome.case_tag is CaseTag.INACTIVE:
            assert outcome.lambda_star == 0.0 and outcome.slack >= 0
        elif outcome.case_tag is CaseTag.ACTIVE:
            assert outcome.lambda_star > 0
            assert abs(outcome.slack) <= 1e-8
            assert abs(outcome.lambda_star * outcome.slack) <= 1e-8
        elif outcome.case_tag is CaseTag.INFEASIBLE:
            assert kT > psi_hat(params, x0)


def test_weak_duality():
    x0, T = 10.0, 20.0
    b_star = classify_and_solve(BASE, x0, T).b_star
    feasible = [b for b in np.linspace(b_star, b_star + 20.0, 15) if psi(BASE, b, x0) >= K20]
    assert feasible

    for lm in np.linspace(0.0, 2.0, 21):
        dual_value = eval_dual_value(solve_dual(BASE, lm, T), x0)
        for b in feasible:
            assert dual_value >= barrier_dividend_value(BASE, b, x0) - 1e-9


def test_active_region_monotone_in_horizon():
    outcomes = [classify_and_solve(BASE, 10.0, T) for T in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0]]
    assert all(o.case_tag is CaseTag.ACTIVE for o in outcomes)
    assert all(np.diff([o.b_star for o in outcomes]) >= 0)
    assert all(np.diff([o.lambda_star for o in outcomes]) >= 0)


def test_dual_curve_shapes():
    grid = np.linspace(0.0, 4.0, 81)

    # inactive: minimum at Lambda = 0
    values = [v for _, v in dual_curve(BASE, 10.0, 1.0, grid)]
    assert int(np.argmin(values)) == 0

    # active: interior minimum
    values = [v for _, v in dual_curve(BASE, 10.0, 20.0, grid)]
    assert 0 < int(np.argmin(values)) < len(grid) - 1

    # boundary: decreasing toward 0
    T = horizon_threshold(BASE, 2.0)
    values = [v for _, v in dual_curve(BASE, 2.0, T, [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 500.0])]
    assert all(np.diff(values) < 0)
    assert values[-1] >= -1e-9
    assert values[-1] < 0.1 * values[0]

    with pytest.raises(ValueError):
        dual_curve(BASE, 2.0, 1.0, [])


def test_slack_limit_profile():
    profile = slack_limit_profile(BASE, 2.0, [0.0, 1.0, 10.0, 100.0])
    assert profile[0] == (0.0, 0.0)
    magnitudes = [abs(v) for _, v in profile[1:]]
    assert magnitudes[0] > magnitudes[1] > magnitudes[2] > 0


def test_slack_limit_profile_property_suite():
    rng = np.random.default_rng(31)
    for _ in range(100):
        params = random_params(rng)
        # far enough out that the leading exponential dominates
        b = unconstrained_barrier(params) + 12.0 / (params.r1 - params.r2)
        lm = lambda_from_barrier(params, b)
        profile = slack_limit_profile(params, rng.uniform(0.0, 2.0), [lm, 10 * lm])
        assert abs(profile[1][1]) < abs(profile[0][1])


def test_region_scan_geometry():
    xs = np.linspace(0.0, 10.0, 50)
    ks = [discounted_horizon(BASE.delta, T) for T in np.linspace(0.0, 40.0, 50)]
    cells = region_scan(BASE, xs, ks)
    assert len(cells) == 2500
    assert cells[0][:2] == (xs[0], ks[0])

    tags = {tag for _, _, tag in cells}
    assert {CaseTag.INACTIVE, CaseTag.ACTIVE, CaseTag.INFEASIBLE} <= tags

    for i, x0 in enumerate(xs):
        row = [tag for _, _, tag in cells[i * 50 : (i + 1) * 50]]
        # K_T = 0 never binds
        assert row[0] is CaseTag.INACTIVE
        ranks = [CASE_ORDER.index(tag) for tag in row]
        assert ranks == sorted(ranks)
    print(f"[INFO]: Test Primal.5 passed")


def test_region_scan_boundary_cell():
    x0 = feasibility_threshold(BASE, K20)
    cells = region_scan(BASE, [x0], [K20])
    assert cells[0][2] is CaseTag.DO_NOTHING


def test_active_near_horizon_threshold():
    outcome = classify_and_solve(BASE, 7.5, horizon_threshold(BASE, 7.5) - 1e-5)
    assert outcome.case_tag is CaseTag.ACTIVE
    assert outcome.b_star > 32.0
    assert abs(outcome.slack) <= 1e-9

    for x0 in np.linspace(0.0, 10.0, 41):
        H = horizon_threshold(BASE, x0)
        for gap in [1e-3, 1e-4, 1e-5, 1e-6]:
            outcome = classify_and_solve(BASE, x0, H - gap)
            assert outcome.case_tag is CaseTag.ACTIVE
            assert abs(outcome.slack) <= 1e-9
    print(f"[INFO]: Test Primal.6 passed")


def test_boundary_band_with_fast_discounting():
    fast = ModelParams(lam=1.0, c=3.0, alpha=1.0, delta=2.0)
    limit = psi_hat(fast, 1.0)

    assert classify_discounted(fast, 1.0, limit - 7e-10).case_tag is CaseTag.DO_NOTHING
    assert classify_discounted(fast, 1.0, limit + 7e-10).case_tag is CaseTag.DO_NOTHING

    outcome = classify_discounted(fast, 1.0, limit - 2e-9)
    assert outcome.case_tag is CaseTag.ACTIVE
    assert abs(outcome.slack) <= 1e-12


def test_certificate_reuses_outcome():
    outcome = classify_and_solve(BASE, 10.0, 20.0)
    report = duality_gap_certificate(BASE, 10.0, 20.0, outcome=outcome)
    assert report == duality_gap_certificate(BASE, 10.0, 20.0)
    assert report.primal_value == outcome.value.finite

    with pytest.raises(ValueError):
        duality_gap_certificate(BASE, 10.0, 5.0, outcome=outcome)
