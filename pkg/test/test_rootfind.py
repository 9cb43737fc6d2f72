# testing done with pytest
import math

import numpy as np
import pytest

from barrierdual.dual import _barrier_residual, lambda_from_barrier
from barrierdual.errors import MaxIterExceeded, NoRootInRange, NoSignChange
from barrierdual.model import ModelParams
from barrierdual.rootfind import Bracket, expand_bracket, solve_bracketed
from barrierdual.ruin import psi, psi_hat

BASE = ModelParams(lam=1.0, c=1.3, alpha=1.0, delta=0.1)


def test_sqrt_two():
    f = lambda x: x * x - 2.0
    result = solve_bracketed(f, Bracket.around(f, 1.0, 2.0))
    assert result.root == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert abs(result.residual) < 1e-10
    assert result.function_calls > 0

    # the root stays bracketed by the final tolerance window
    w = 1e-12 + 1e-12 * result.root
    assert f(result.root - w) * f(result.root + w) <= 0
    print(f"[INFO]: Test Rootfind.1 passed")


def test_unconstrained_barrier_equation():
    f = lambda b: lambda_from_barrier(BASE, b)
    result = solve_bracketed(f, Bracket.around(f, 1e-6, 10.0))
    assert result.root == pytest.approx(0.7828, abs=1e-4)
    print(f"[INFO]: Test Rootfind.2 passed")


def test_no_sign_change():
    f = lambda x: x * x + 1.0
    with pytest.raises(NoSignChange):
        Bracket.around(f, 1.0, 2.0)
    with pytest.raises(NoSignChange):
        Bracket(lo=2.0, hi=1.0, f_lo=-1.0, f_hi=1.0)


def test_max_iterations():
    f = lambda x: x * x - 2.0
    with pytest.raises(MaxIterExceeded):
        solve_bracketed(f, Bracket.around(f, 1.0, 2.0), tol_abs=1e-15, max_iter=1)


def test_exact_endpoint_root():
    f = lambda x: x - 1.0
    assert solve_bracketed(f, Bracket.around(f, 1.0, 3.0)).root == 1.0


def test_expand_bracket():
    f = lambda x: x - 5.0
    bracket = expand_bracket(f, 0.0, direction=1, growth=2.0, max_hi=100.0)
    assert bracket.lo <= 5.0 <= bracket.hi
    assert solve_bracketed(f, bracket).root == pytest.approx(5.0, abs=1e-12)

    bracket = expand_bracket(lambda x: x + 5.0, 0.0, direction=-1)
    assert bracket.lo <= -5.0 <= bracket.hi


def test_expand_bracket_unreachable_psi_target():
    # psi_b(1) stays below psi_hat(1) < K_20 for every barrier
    target = 8.6466
    assert psi_hat(BASE, 1.0) < target
    with pytest.raises(NoRootInRange):
        expand_bracket(lambda b: psi(BASE, b, 1.0) - target, 1e-8, max_hi=1e3)


def test_expand_bracket_lambda_targets():
    for target in [0.0, 0.01, 1.0, 1e3, 1e8, 1e200]:
        residual = lambda b: _barrier_residual(BASE, b, target)
        b = solve_bracketed(residual, expand_bracket(residual, 0.0)).root
        assert lambda_from_barrier(BASE, b) == pytest.approx(target, rel=1e-9, abs=1e-12)

    # beyond the exponent limit only the scaled residual is available
    residual = lambda b: _barrier_residual(BASE, b, 1e306)
    b = solve_bracketed(residual, expand_bracket(residual, 0.0)).root
    assert -BASE.r2 * b > 700
    assert lambda_from_barrier(BASE, b) == math.inf


def test_invalid_expansion_arguments():
    with pytest.raises(ValueError):
        expand_bracket(lambda x: x, 1.0, direction=0)
    with pytest.raises(ValueError):
        expand_bracket(lambda x: x, 1.0, growth=1.0)


def test_determinism():
    f = lambda x: np.cos(x) - x
    first = solve_bracketed(f, Bracket.around(f, 0.0, 1.0))
    second = solve_bracketed(f, Bracket.around(f, 0.0, 1.0))
    assert first == second


def test_expand_bracket_tries_max_hi():
    # 99.5 lies past the last power-of-two step below max_hi
    f = lambda x: x - 99.5
    bracket = expand_bracket(f, 0.0, max_hi=100.0)
    assert bracket.hi == 100.0
    assert solve_bracketed(f, bracket).root == pytest.approx(99.5, abs=1e-12)

    bracket = expand_bracket(lambda x: x + 0.25, 0.0, direction=-1, max_hi=0.5)
    assert bracket.lo == -0.5

    with pytest.raises(NoRootInRange):
        expand_bracket(f, 0.0, max_hi=99.0)
    with pytest.raises(ValueError):
        expand_bracket(f, 0.0, max_hi=0.0)
