# testing done with pytest
import math

import numpy as np
import pytest

from barrierdual.dual import lambda_from_barrier
from barrierdual.errors import NonPositiveParameter
from barrierdual.model import (
    Constraint,
    ModelParams,
    characteristic_roots,
    discounted_horizon,
    lambda_bar,
    params_from_mapping,
    validate_and_build,
)

BASE = ModelParams(lam=1.0, c=1.3, alpha=1.0, delta=0.1)
LOW_PREMIUM = ModelParams(lam=1.0, c=1.0, alpha=1.0, delta=0.1)


def random_params(rng):
    lam = rng.uniform(0.5, 2.0)
    alpha = rng.uniform(0.5, 2.0)
    delta = rng.uniform(0.05, 0.3)
    c = lam / alpha * rng.uniform(1.1, 2.0)
    return ModelParams(lam=lam, c=c, alpha=alpha, delta=delta)


def test_base_params_are_valid():
    params = validate_and_build(1, 1.3, 1, 0.1)
    assert params == BASE
    assert params.to_dict() == {"lambda": 1.0, "c": 1.3, "alpha": 1.0, "delta": 0.1}
    print(f"[INFO]: Test Model.1 passed")


@pytest.mark.parametrize(
    "values, name",
    [
        ((1, -1, 1, 0.1), "c"),
        ((0, 1.3, 1, 0.1), "lambda"),
        ((1, 1.3, 0, 0.1), "alpha"),
        ((1, 1.3, 1, -0.1), "delta"),
        ((1, 1.3, 1, math.nan), "delta"),
        ((math.inf, 1.3, 1, 0.1), "lambda"),
    ],
)
def test_non_positive_parameters_are_rejected(values, name):
    with pytest.raises(NonPositiveParameter) as err:
        validate_and_build(*values)
    assert err.value.name == name


def test_missing_parameter_in_mapping():
    with pytest.raises(NonPositiveParameter) as err:
        params_from_mapping({"lambda": 1.0, "c": 1.3, "alpha": 1.0})
    assert err.value.name == "delta"


def test_net_profit_warning(capsys):
    validate_and_build(1.0, 1.0, 1.0, 0.1)
    assert "[WARN]" in capsys.readouterr().err

    validate_and_build(1.0, 1.3, 1.0, 0.1)
    assert "[WARN]" not in capsys.readouterr().err


def test_base_roots():
    roots = characteristic_roots(BASE)
    # 1.3 r^2 + 0.2 r - 0.1 = 0
    assert roots.r1 == pytest.approx((-0.2 + math.sqrt(0.56)) / 2.6, rel=1e-13)
    assert roots.r2 == pytest.approx((-0.2 - math.sqrt(0.56)) / 2.6, rel=1e-13)
    assert roots.r1 == pytest.approx(0.2108967, abs=1e-7)
    assert roots.r2 == pytest.approx(-0.3647429, abs=1e-7)
    assert BASE.r1 == roots.r1 and BASE.r2 == roots.r2
    print(f"[INFO]: Test Model.2 passed")


def test_vieta_product_low_premium():
    assert LOW_PREMIUM.r1 * LOW_PREMIUM.r2 == pytest.approx(-0.1, rel=1e-12)


def test_lambda_bar():
    assert lambda_bar(BASE) == pytest.approx(-0.09, abs=1e-12)
    assert LOW_PREMIUM.lambda_bar == pytest.approx(0.21, abs=1e-12)


def test_roots_property_suite():
    rng = np.random.default_rng(7)
    for _ in range(100):
        params = random_params(rng)
        r1, r2 = params.r1, params.r2
        scale = params.c * r1 * r1 + params.alpha * params.delta

        assert r2 < 0 < r1
        assert params.alpha + r2 > 0
        assert abs(params.poly(r1)) <= 1e-12 * scale
        assert abs(params.poly(r2)) <= 1e-12 * (params.c * r2 * r2 + params.alpha * params.delta)
        assert r1 + r2 == pytest.approx(
            -(params.alpha * params.c - params.lam - params.delta) / params.c, rel=1e-12, abs=1e-15
        )
        assert r1 * r2 == pytest.approx(-params.alpha * params.delta / params.c, rel=1e-12)
        # barrier map at 0 is the critical multiplier
        assert lambda_from_barrier(params, 0.0) == pytest.approx(params.lambda_bar, abs=1e-10)
    print(f"[INFO]: Test Model.3 passed")


def test_roots_near_cancellation():
    # alpha c == lambda + delta
    params = ModelParams(lam=1.0, c=1.1, alpha=1.0, delta=0.1)
    assert params.r1 == pytest.approx(math.sqrt(0.1 / 1.1), rel=1e-14)
    assert params.r2 == pytest.approx(-math.sqrt(0.1 / 1.1), rel=1e-14)


def test_constraint_conversions():
    k20 = discounted_horizon(0.1, 20.0)
    assert k20 == pytest.approx(8.6466471676, abs=1e-9)

    constraint = Constraint.from_discounted(0.1, k20)
    assert constraint.T == pytest.approx(20.0, rel=1e-12)
    assert Constraint.from_horizon(0.1, 0.0).kT == 0.0

    with pytest.raises(ValueError):
        Constraint.from_discounted(0.1, 10.0)
    with pytest.raises(ValueError):
        Constraint.from_horizon(0.1, -1.0)
