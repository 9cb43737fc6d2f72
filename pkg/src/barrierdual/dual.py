"""Lagrangian (unconstrained) problem for a fixed multiplier.

For a multiplier ``lambda_mult`` the optimal strategy is a barrier ``b``; the
value function is linear above the barrier and a two-exponential curve below
it. Curved-branch coefficients are kept in scaled form,
``a1 = C1 * e^{r1 b}``, so evaluation never forms ``e^{r1 b}`` for deep
barriers.
"""

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from scipy import integrate

from barrierdual import defaults
from barrierdual.errors import NegativeMultiplier, NegativeState, QuadratureFailure
from barrierdual.model import ModelParams, discounted_horizon
from barrierdual.rootfind import expand_bracket, solve_bracketed


class DualRegime(Enum):
    BARRIER_ZERO = "BarrierZeroRegime"
    POSITIVE_BARRIER = "PositiveBarrier"


@dataclass(frozen=True)
class DualSolution:
    params: ModelParams
    lambda_mult: float
    regime: DualRegime
    barrier: float
    c1: float  # 0.0 in the barrier-zero regime
    c2: float  # 0.0 in the barrier-zero regime
    horizon_T: float
    a1: float = 0.0  # c1 * e^{r1 * barrier}

    @property
    def shift(self) -> float:
        """(Lambda / delta) e^{-delta T}: the constant that embeds -Lambda K_T."""
        return self.lambda_mult / self.params.delta * math.exp(-self.params.delta * self.horizon_T)

    def __call__(self, x: float) -> float:
        return eval_dual_value(self, x)


@dataclass(frozen=True)
class HJBResidual:
    generator: float  # Lambda + cV' + lambda int V(x-y) alpha e^{-alpha y} dy - (lambda + delta) V
    gradient: float  # 1 - V'(x)

    @property
    def max_residual(self) -> float:
        return max(self.generator, self.gradient)


def _barrier_terms(params: ModelParams) -> Tuple[float, float, float]:
    r1, r2 = params.r1, params.r2
    ld = params.lam + params.delta
    ad = params.alpha * params.delta
    a_pos = r1 * ld + ad
    a_neg = r2 * ld + ad
    den = (r2 - r1) * (params.alpha + r1) * (params.alpha + r2)
    return a_pos, a_neg, den


def lambda_from_barrier(params: ModelParams, b: float) -> float:
    if b < 0:
        raise NegativeState(b)
    r1, r2 = params.r1, params.r2
    if -r2 * b > defaults.EXP_LIMIT:
        return math.inf

    a_pos, a_neg, den = _barrier_terms(params)
    return (-r1 * math.exp(-r2 * b) * a_pos + r2 * math.exp(-r1 * b) * a_neg) / den


def _barrier_residual(params: ModelParams, b: float, target: float) -> float:
    """Sign-preserving form of lambda_from_barrier(b) - target.

    Beyond the exponent limit the difference is multiplied by e^{r2 b} > 0.
    """
    r1, r2 = params.r1, params.r2
    if -r2 * b <= defaults.EXP_LIMIT:
        return lambda_from_barrier(params, b) - target

    a_pos, a_neg, den = _barrier_terms(params)
    return (-r1 * a_pos + r2 * a_neg * math.exp((r2 - r1) * b)) / den - target * math.exp(r2 * b)


def dlambda_db(params: ModelParams, b: float) -> float:
    if b < 0:
        raise NegativeState(b)
    r1, r2 = params.r1, params.r2
    if -r2 * b > defaults.EXP_LIMIT:
        return math.inf

    a_pos, a_neg, den = _barrier_terms(params)
    return r1 * r2 * (math.exp(-r2 * b) * a_pos - math.exp(-r1 * b) * a_neg) / den


def barrier_from_lambda(params: ModelParams, lambda_mult: float) -> float:
    if lambda_mult < 0:
        raise NegativeMultiplier(lambda_mult)
    if lambda_mult <= params.lambda_bar:
        return 0.0

    def residual(b):
        return _barrier_residual(params, b, lambda_mult)

    bracket = expand_bracket(residual, 0.0, direction=1, growth=2.0)
    return solve_bracketed(residual, bracket).root


def _curved_coefficients(
    params: ModelParams, b: float, lambda_mult: float
) -> Tuple[float, float, float]:
    """(a1, C1, C2) of the curved branch for barrier b, from V'(b) = 1 and the
    integro-differential equation below b."""
    alpha, delta = params.alpha, params.delta
    r1, r2 = params.r1, params.r2
    ad = alpha * delta

    # denominator divided by e^{r1 b}
    den = r1 * (alpha + r1) - r2 * (alpha + r2) * math.exp((r2 - r1) * b)
    a1 = (alpha + r1) * (ad + math.exp(r2 * b) * lambda_mult * r2 * (alpha + r2)) / (ad * den)

    c1 = a1 * math.exp(-r1 * b) if r1 * b < defaults.EXP_LIMIT else 0.0
    c2 = -(alpha + r2) / alpha * (alpha * c1 / (alpha + r1) + lambda_mult / delta)
    return a1, c1, c2


def solve_dual(params: ModelParams, lambda_mult: float, horizon_T: float = 0.0) -> DualSolution:
    if lambda_mult < 0:
        raise NegativeMultiplier(lambda_mult)
    if horizon_T < 0:
        raise ValueError(f"Horizon must be nonnegative, got {horizon_T}")

    # closed condition: Lambda == lambda_bar belongs to the barrier-zero case
    if lambda_mult <= params.lambda_bar:
        return DualSolution(
            params=params,
            lambda_mult=lambda_mult,
            regime=DualRegime.BARRIER_ZERO,
            barrier=0.0,
            c1=0.0,
            c2=0.0,
            horizon_T=horizon_T,
        )

    b = barrier_from_lambda(params, lambda_mult)
    a1, c1, c2 = _curved_coefficients(params, b, lambda_mult)
    return DualSolution(
        params=params,
        lambda_mult=lambda_mult,
        regime=DualRegime.POSITIVE_BARRIER,
        barrier=b,
        c1=c1,
        c2=c2,
        horizon_T=horizon_T,
        a1=a1,
    )


def _linear_level(params: ModelParams) -> float:
    """Value at the barrier net of the multiplier term: (alpha c - lambda - delta) / (alpha delta)."""
    return (params.alpha * params.c - params.lam - params.delta) / (params.alpha * params.delta)


def eval_dual_value(sol: DualSolution, x: float) -> float:
    if x < 0:
        raise NegativeState(x)
    p = sol.params

    if sol.regime is DualRegime.BARRIER_ZERO:
        lm = sol.lambda_mult
        return (
            x
            + (p.c + lm) / (p.lam + p.delta)
            + lm / p.delta * math.expm1(-p.delta * sol.horizon_T)
        )

    b = sol.barrier
    if x >= b:
        return x - b + _linear_level(p) + sol.shift
    return sol.a1 * math.exp(p.r1 * (x - b)) + sol.c2 * math.exp(p.r2 * x) + sol.shift


def eval_dual_derivative(sol: DualSolution, x: float) -> float:
    """V'(x); at x == barrier this is the left derivative of the curved branch."""
    if x < 0:
        raise NegativeState(x)
    if sol.regime is DualRegime.BARRIER_ZERO or x > sol.barrier:
        return 1.0
    p = sol.params
    return p.r1 * sol.a1 * math.exp(p.r1 * (x - sol.barrier)) + p.r2 * sol.c2 * math.exp(p.r2 * x)


def barrier_dividend_value(params: ModelParams, b: float, x: float) -> float:
    """Expected discounted dividends paid by the barrier strategy at level b from surplus x."""
    if b < 0:
        raise NegativeState(b)
    if x < 0:
        raise NegativeState(x)

    a1, _, c2 = _curved_coefficients(params, b, 0.0)
    if x >= b:
        return x - b + a1 + c2 * math.exp(params.r2 * b)
    return a1 * math.exp(params.r1 * (x - b)) + c2 * math.exp(params.r2 * x)


def _unshifted_value(sol: DualSolution, u: float) -> float:
    # value of the Lagrangian problem before -Lambda K_T is subtracted
    return eval_dual_value(sol, u) + sol.lambda_mult * discounted_horizon(
        sol.params.delta, sol.horizon_T
    )


def _convolution_closed_form(sol: DualSolution, x: float) -> float:
    """int_0^x W(u) alpha e^{-alpha (x - u)} du, integrated piece by piece."""
    p = sol.params
    alpha = p.alpha
    lm = sol.lambda_mult

    def linear_piece(u0, u1, k):
        # int (u + k) alpha e^{alpha (u - x)} du
        return (u1 + k - 1.0 / alpha) * math.exp(alpha * (u1 - x)) - (
            u0 + k - 1.0 / alpha
        ) * math.exp(alpha * (u0 - x))

    if sol.regime is DualRegime.BARRIER_ZERO:
        return linear_piece(0.0, x, (p.c + lm) / (p.lam + p.delta))

    b = sol.barrier
    top = min(x, b)
    r1, r2 = p.r1, p.r2

    curved = sol.a1 * alpha / (r1 + alpha) * (
        math.exp(r1 * (top - b) + alpha * (top - x)) - math.exp(-r1 * b - alpha * x)
    )
    curved += sol.c2 * alpha / (r2 + alpha) * (
        math.exp((r2 + alpha) * top - alpha * x) - math.exp(-alpha * x)
    )
    curved += lm / p.delta * (math.exp(alpha * (top - x)) - math.exp(-alpha * x))

    if x <= b:
        return curved
    return curved + linear_piece(b, x, -b + _linear_level(p) + lm / p.delta)


def _convolution_quadrature(sol: DualSolution, x: float, quad_tol: float) -> float:
    alpha = sol.params.alpha

    def integrand(u):
        return _unshifted_value(sol, u) * alpha * math.exp(alpha * (u - x))

    points = None
    if sol.regime is DualRegime.POSITIVE_BARRIER and 0 < sol.barrier < x:
        points = [sol.barrier]

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                integrand, 0.0, x, epsabs=quad_tol, epsrel=1e-12, points=points, limit=200
            )
        except integrate.IntegrationWarning as e:
            raise QuadratureFailure(f"Quadrature on [0, {x}] did not converge: {e}")

    if abserr > max(quad_tol, 1e-12 * abs(value)):
        raise QuadratureFailure(f"Quadrature error {abserr} exceeds tolerance {quad_tol}")
    return value


def hjb_residual(
    sol: DualSolution,
    params: ModelParams,
    x: float,
    quad_tol: float = defaults.QUAD_TOL,
    closed_form: bool = False,
) -> HJBResidual:
    """Both terms of the variational inequality at x.

    The convolution is integrated by adaptive quadrature unless ``closed_form``
    is set, in which case the exact piecewise antiderivative is used.
    """
    if x < 0:
        raise NegativeState(x)
    if params is not sol.params and params != sol.params:
        raise ValueError("Parameters do not match the dual solution")

    if closed_form:
        conv = _convolution_closed_form(sol, x)
    else:
        conv = _convolution_quadrature(sol, x, quad_tol)

    w = _unshifted_value(sol, x)
    dw = eval_dual_derivative(sol, x)
    generator = sol.lambda_mult + params.c * dw + params.lam * conv - (params.lam + params.delta) * w

    if sol.regime is DualRegime.BARRIER_ZERO or x >= sol.barrier:
        gradient = 0.0
    else:
        gradient = 1.0 - dw
    return HJBResidual(generator=generator, gradient=gradient)
