"""Constrained dividend problem: case analysis and duality certificates.

For an initial surplus x0 and horizon T the instance is one of four cases:
the survival constraint is inactive (unconstrained barrier is feasible),
active (a larger barrier meets it with equality), on the boundary (only the
b -> infinity limit meets it; value 0) or infeasible (value -infinity).
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from barrierdual import defaults
from barrierdual.dual import barrier_from_lambda, eval_dual_value, lambda_from_barrier, solve_dual
from barrierdual.errors import MinimizationFailure, NegativeState
from barrierdual.model import Constraint, ModelParams
from barrierdual.ruin import barrier_for_target, boundary_band, horizon_threshold, psi, psi_hat

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


class CaseTag(Enum):
    INACTIVE = "InactiveConstraint"
    ACTIVE = "ActiveConstraint"
    DO_NOTHING = "DoNothing"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class ExtendedReal:
    """A real number or -infinity; -infinity is its own variant, not a float."""

    finite: Optional[float] = None

    @classmethod
    def minus_infinity(cls) -> "ExtendedReal":
        return cls(finite=None)

    @property
    def is_finite(self) -> bool:
        return self.finite is not None

    def serialize(self, fmt: str = defaults.NUMBER_FORMAT):
        if self.finite is None:
            return "-inf"
        return float(format(self.finite, fmt))

    def __str__(self):
        return "-inf" if self.finite is None else format(self.finite, defaults.NUMBER_FORMAT)


@dataclass(frozen=True)
class PrimalOutcome:
    case_tag: CaseTag
    x0: float
    constraint: Constraint
    value: ExtendedReal
    lambda_star: Optional[float] = None
    b_star: Optional[float] = None
    slack: Optional[float] = None
    # False when the value is only reached in the limit of ever larger barriers
    attained: bool = True
    horizon_threshold: Optional[float] = None

    @property
    def solvable(self) -> bool:
        return self.case_tag in (CaseTag.INACTIVE, CaseTag.ACTIVE)


@dataclass(frozen=True)
class GapReport:
    primal_value: float
    dual_minimum: float
    minimizer: float
    gap: float
    slackness: float  # Lambda* times slack
    search_tol: float

    @property
    def certified(self) -> bool:
        return self.gap <= self.search_tol


def unconstrained_barrier(params: ModelParams) -> float:
    """b0 when lambda_bar < 0, otherwise 0."""
    return barrier_from_lambda(params, 0.0)


def classify_discounted(params: ModelParams, x0: float, kT: float) -> PrimalOutcome:
    if x0 < 0:
        raise NegativeState(x0)
    constraint = Constraint.from_discounted(params.delta, kT)
    threshold = horizon_threshold(params, x0)

    b_free = unconstrained_barrier(params)
    free_psi = psi(params, b_free, x0)
    if free_psi >= kT:
        return PrimalOutcome(
            case_tag=CaseTag.INACTIVE,
            x0=x0,
            constraint=constraint,
            value=ExtendedReal(eval_dual_value(solve_dual(params, 0.0, constraint.T), x0)),
            lambda_star=0.0,
            b_star=b_free,
            slack=free_psi - kT,
            horizon_threshold=threshold,
        )

    limit = psi_hat(params, x0)
    if abs(kT - limit) <= boundary_band(params):
        return PrimalOutcome(
            case_tag=CaseTag.DO_NOTHING,
            x0=x0,
            constraint=constraint,
            value=ExtendedReal(0.0),
            attained=False,
            horizon_threshold=threshold,
        )

    if kT > limit:
        return PrimalOutcome(
            case_tag=CaseTag.INFEASIBLE,
            x0=x0,
            constraint=constraint,
            value=ExtendedReal.minus_infinity(),
            attained=False,
            horizon_threshold=threshold,
        )

    b_star = barrier_for_target(params, x0, kT)
    lambda_star = lambda_from_barrier(params, b_star)
    sol = solve_dual(params, lambda_star, constraint.T)
    return PrimalOutcome(
        case_tag=CaseTag.ACTIVE,
        x0=x0,
        constraint=constraint,
        value=ExtendedReal(eval_dual_value(sol, x0)),
        lambda_star=lambda_star,
        b_star=b_star,
        slack=psi(params, b_star, x0) - kT,
        horizon_threshold=threshold,
    )


def classify_and_solve(params: ModelParams, x0: float, T: float) -> PrimalOutcome:
    constraint = Constraint.from_horizon(params.delta, T)
    outcome = classify_discounted(params, x0, constraint.kT)
    # keep the caller's T rather than the one recovered from K_T
    return replace(outcome, constraint=constraint)


def dual_curve(
    params: ModelParams, x0: float, T: float, lambda_grid: Sequence[float]
) -> List[Tuple[float, float]]:
    if len(lambda_grid) == 0:
        raise ValueError("Lambda grid must be nonempty")
    return [(lm, eval_dual_value(solve_dual(params, lm, T), x0)) for lm in lambda_grid]


def _golden_section(f, a: float, b: float, tol: float) -> Tuple[float, float]:
    """Minimizer and minimum of a unimodal f on [a, b]."""
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    return (c, yc) if yc < yd else (d, yd)


def minimize_dual(
    params: ModelParams, x0: float, T: float, tol: float = defaults.GOLDEN_TOL, max_doublings: int = 60
) -> Tuple[float, float]:
    """min over Lambda >= 0 of V_Lambda(x0), by golden section on [0, Lambda_hi].

    Lambda_hi doubles until the dual value increases between Lambda_hi / 2
    and Lambda_hi, which brackets the minimum of the convex curve.
    """

    def value(lm):
        return eval_dual_value(solve_dual(params, lm, T), x0)

    hi = 1.0
    for _ in range(max_doublings):
        if value(hi) > value(0.5 * hi):
            break
        hi *= 2.0
    else:
        raise MinimizationFailure(
            f"Dual value still decreasing at Lambda={hi}; the instance has no finite minimum"
        )

    lm, v = _golden_section(value, 0.0, hi, tol)
    v0 = value(0.0)
    if v0 <= v:
        return 0.0, v0
    return lm, v


def duality_gap_certificate(
    params: ModelParams,
    x0: float,
    T: float,
    search_tol: float = 1e-6,
    outcome: Optional[PrimalOutcome] = None,
) -> GapReport:
    """Compares the primal value with the golden-section dual minimum.

    ``outcome`` is the already solved instance (x0, T), if the caller has one.
    """
    if outcome is None:
        outcome = classify_and_solve(params, x0, T)
    elif outcome.x0 != x0 or outcome.constraint.T != T:
        raise ValueError(
            f"Outcome solved (x0={outcome.x0}, T={outcome.constraint.T}), certificate asked for (x0={x0}, T={T})"
        )
    if not outcome.solvable:
        raise MinimizationFailure(
            f"No duality certificate for a {outcome.case_tag.value} instance (x0={x0}, T={T})"
        )

    minimizer, dual_min = minimize_dual(params, x0, T)
    primal_value = outcome.value.finite
    return GapReport(
        primal_value=primal_value,
        dual_minimum=dual_min,
        minimizer=minimizer,
        gap=abs(dual_min - primal_value),
        slackness=outcome.lambda_star * outcome.slack,
        search_tol=search_tol,
    )


def slack_limit_profile(
    params: ModelParams, x0: float, lambda_grid: Sequence[float]
) -> List[Tuple[float, float]]:
    """Lambda * (psi_{b_Lambda}(x0) - psi_hat(x0)), which vanishes as Lambda grows."""
    limit = psi_hat(params, x0)
    profile = []
    for lm in lambda_grid:
        if lm == 0:
            profile.append((lm, 0.0))
            continue
        b = barrier_from_lambda(params, lm)
        profile.append((lm, lm * (psi(params, b, x0) - limit)))
    return profile


def region_scan(
    params: ModelParams, x_grid: Sequence[float], k_grid: Sequence[float]
) -> List[Tuple[float, float, CaseTag]]:
    """Case tag of every (x0, K_T) cell, x-major in input order."""
    cells = []
    for x0 in x_grid:
        for kT in k_grid:
            cells.append((x0, kT, classify_discounted(params, x0, kT).case_tag))
    return cells
