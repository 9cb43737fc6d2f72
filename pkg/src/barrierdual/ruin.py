"""Discounted ruin-time functional of a barrier strategy.

psi(b, x) = E_x[int_0^{tau^b} e^{-delta s} ds] for the barrier strategy at
level b. All closed forms below are written with the denominator scaled by
e^{-r1 b} so that no exponent grows with the barrier.
"""

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from barrierdual import defaults
from barrierdual.errors import NegativeState, NoRootInRange, QuadratureFailure, TargetUnreachable
from barrierdual.model import ModelParams, discounted_horizon
from barrierdual.rootfind import expand_bracket, solve_bracketed


@dataclass(frozen=True)
class RuinFunctional:
    """psi_b(x) = 1/delta + d1 e^{r1 x} + d2 e^{r2 x} on [0, b], constant above b."""

    params: ModelParams
    barrier: float
    d1: float
    d2: float

    def __call__(self, x: float) -> float:
        return psi(self.params, self.barrier, x)


def _scaled_den(params: ModelParams, b: float) -> float:
    alpha, r1, r2 = params.alpha, params.r1, params.r2
    return r1 * (alpha + r1) - r2 * (alpha + r2) * math.exp((r2 - r1) * b)


def ruin_functional(params: ModelParams, b: float) -> RuinFunctional:
    if b < 0:
        raise NegativeState(b)
    alpha, delta, r1, r2 = params.alpha, params.delta, params.r1, params.r2
    ad = alpha * delta
    den = _scaled_den(params, b)

    scale = math.exp((r2 - r1) * b)
    d1 = (alpha + r1) * (alpha + r2) * r2 * scale / (ad * den)
    d2 = -((alpha + r2) ** 2) * r2 * scale / (ad * den) - (alpha + r2) / ad
    return RuinFunctional(params=params, barrier=b, d1=d1, d2=d2)


def psi(params: ModelParams, b: float, x: float) -> float:
    if b < 0:
        raise NegativeState(b)
    if x < 0:
        return 0.0
    x = min(x, b)

    alpha, delta, r1, r2 = params.alpha, params.delta, params.r1, params.r2
    ad = alpha * delta
    den = _scaled_den(params, b)

    # d1 e^{r1 x} with d1 carrying e^{r2 b - r1 b}
    first = (alpha + r1) * (alpha + r2) * r2 * math.exp(r2 * b + r1 * (x - b)) / (ad * den)
    second = -((alpha + r2) ** 2) * r2 * math.exp(r2 * (b + x) - r1 * b) / (ad * den)
    return 1.0 / delta + first + second - (alpha + r2) / ad * math.exp(r2 * x)


def psi_derivative_x(params: ModelParams, b: float, x: float) -> float:
    """d psi_b / dx; zero above the barrier and below 0."""
    if b < 0:
        raise NegativeState(b)
    if x < 0 or x > b:
        return 0.0

    alpha, delta, r1, r2 = params.alpha, params.delta, params.r1, params.r2
    ad = alpha * delta
    den = _scaled_den(params, b)
    first = r1 * (alpha + r1) * (alpha + r2) * r2 * math.exp(r2 * b + r1 * (x - b)) / (ad * den)
    second = -r2 * ((alpha + r2) ** 2) * r2 * math.exp(r2 * (b + x) - r1 * b) / (ad * den)
    return first + second - r2 * (alpha + r2) / ad * math.exp(r2 * x)


def psi_hat(params: ModelParams, x: float) -> float:
    """Limit of psi_b(x) as b -> infinity."""
    if x < 0:
        raise NegativeState(x)
    alpha, delta, r2 = params.alpha, params.delta, params.r2
    return 1.0 / delta - (alpha + r2) / (alpha * delta) * math.exp(r2 * x)


def horizon_threshold(params: ModelParams, x0: float) -> float:
    """H_{x0}: horizons beyond it cannot be met from x0 by any barrier."""
    if x0 < 0:
        raise NegativeState(x0)
    alpha, r2 = params.alpha, params.r2
    return -(math.log((alpha + r2) / alpha) + r2 * x0) / params.delta


def feasibility_threshold(params: ModelParams, kT: float) -> float:
    """Smallest x0 with psi_hat(x0) >= K_T (0 when every x0 qualifies)."""
    alpha, delta, r2 = params.alpha, params.delta, params.r2
    if not 0 <= kT < 1.0 / delta:
        raise ValueError(f"K_T must lie in [0, 1/delta), got {kT}")
    x = math.log((1.0 - delta * kT) * alpha / (alpha + r2)) / r2
    return max(x, 0.0)


def dpsi_db(params: ModelParams, b: float, x: float) -> float:
    """d psi_b(x) / db, strictly positive. For x >= b it equals the value at x = b."""
    if b <= 0:
        raise NegativeState(b)
    if x < 0:
        raise NegativeState(x)
    x = min(x, b)

    alpha, delta, r1, r2 = params.alpha, params.delta, params.r1, params.r2
    den = _scaled_den(params, b)

    # (alpha + r1) e^{r1 x} - (alpha + r2) e^{r2 x}, times e^{(r2 - r1) b}
    spread = (alpha + r1) * math.exp(r1 * (x - b) + r2 * b) - (alpha + r2) * math.exp(
        r2 * x + (r2 - r1) * b
    )
    return (
        -(alpha + r2) * r2 * r1 * (alpha + r1) * (r1 - r2) * spread / (alpha * delta * den * den)
    )


def boundary_band(params: ModelParams) -> float:
    """Half-width of the band around psi_hat(x0) treated as the b -> inf boundary."""
    return max(defaults.PSI_TARGET_MARGIN, defaults.DO_NOTHING_FACTOR / params.delta)


def barrier_for_target(params: ModelParams, x0: float, target: float) -> float:
    """Unique b with psi_b(x0) = target, or 0 when the barrier 0 already meets it."""
    if x0 < 0:
        raise NegativeState(x0)
    if not 0 <= target < 1.0 / params.delta:
        raise ValueError(f"Target must lie in [0, 1/delta), got {target}")

    limit = psi_hat(params, x0)
    if target >= limit - boundary_band(params):
        raise TargetUnreachable(target, limit)
    if target <= psi(params, 0.0, x0):
        return 0.0

    def residual(b):
        return psi(params, b, x0) - target

    try:
        bracket = expand_bracket(
            residual,
            defaults.PSI_BRACKET_START,
            direction=1,
            growth=2.0,
            max_hi=_saturation_barrier(params, x0),
            initial_step=1.0,
        )
    except NoRootInRange:
        raise TargetUnreachable(target, limit)
    return solve_bracketed(residual, bracket).root


def _saturation_barrier(params: ModelParams, x0: float) -> float:
    """A barrier beyond which psi_b(x0) is within 1e-13 of psi_hat(x0)."""
    b = max(x0, 1.0)
    while psi_hat(params, x0) - psi(params, b, x0) >= 1e-13 and b < 1e8:
        b *= 2.0
    return b


def ide_residual(params: ModelParams, b: float, x: float, quad_tol: float = defaults.QUAD_TOL) -> float:
    """c psi' + lambda int_0^x psi(x-y) alpha e^{-alpha y} dy - (lambda + delta) psi + 1 on [0, b]."""
    if x < 0:
        raise NegativeState(x)
    if x > b:
        raise ValueError(f"The equation only holds below the barrier, got x={x} > b={b}")
    alpha = params.alpha

    def integrand(u):
        return psi(params, b, u) * alpha * math.exp(alpha * (u - x))

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            conv, abserr = integrate.quad(integrand, 0.0, x, epsabs=quad_tol, epsrel=1e-12, limit=200)
        except integrate.IntegrationWarning as e:
            raise QuadratureFailure(f"Quadrature on [0, {x}] did not converge: {e}")
    if abserr > max(quad_tol, 1e-12 * abs(conv)):
        raise QuadratureFailure(f"Quadrature error {abserr} exceeds tolerance {quad_tol}")

    return (
        params.c * psi_derivative_x(params, b, x)
        + params.lam * conv
        - (params.lam + params.delta) * psi(params, b, x)
        + 1.0
    )


def constraint_slack(params: ModelParams, b: float, x0: float, T: float) -> float:
    """psi_b(x0) - K_T."""
    return psi(params, b, x0) - discounted_horizon(params.delta, T)
