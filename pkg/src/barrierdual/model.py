"""Model parameters of the Cramér-Lundberg surplus with exponential claims.

Everything downstream (barrier maps, ruin-time functionals, the simulator)
reads the quadruple (lambda, c, alpha, delta) and the two characteristic
roots from a single validated ``ModelParams`` instance.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import barrierdual.utils as BdUtils
from barrierdual.errors import NonPositiveParameter


@dataclass(frozen=True)
class Roots:
    r1: float  # positive root
    r2: float  # negative root


@dataclass(frozen=True)
class ModelParams:
    """Claim arrival rate ``lam``, premium rate ``c``, claim-size rate ``alpha``
    and discount rate ``delta``. Immutable once built."""

    lam: float
    c: float
    alpha: float
    delta: float

    def __post_init__(self):
        for name, value in (
            ("lambda", self.lam),
            ("c", self.c),
            ("alpha", self.alpha),
            ("delta", self.delta),
        ):
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise NonPositiveParameter(name, value)
            if value <= 0:
                raise NonPositiveParameter(name, value)

    @cached_property
    def roots(self) -> Roots:
        return characteristic_roots(self)

    @cached_property
    def lambda_bar(self) -> float:
        return lambda_bar(self)

    @property
    def r1(self) -> float:
        return self.roots.r1

    @property
    def r2(self) -> float:
        return self.roots.r2

    @property
    def inv_delta(self) -> float:
        return 1.0 / self.delta

    def poly(self, r: float) -> float:
        """Characteristic polynomial c r^2 + (alpha c - (lambda + delta)) r - alpha delta."""
        return (
            self.c * r * r
            + (self.alpha * self.c - (self.lam + self.delta)) * r
            - self.alpha * self.delta
        )

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "c": self.c, "alpha": self.alpha, "delta": self.delta}


def characteristic_roots(params: ModelParams) -> Roots:
    alpha, c, delta = params.alpha, params.c, params.delta
    b_coef = alpha * c - (params.lam + delta)
    # always positive: b_coef^2 + 4 c alpha delta
    sqrt_disc = math.sqrt(b_coef * b_coef + 4.0 * c * alpha * delta)

    # larger-magnitude root first, the other one from r1 * r2 = -alpha delta / c
    if b_coef >= 0:
        q = -0.5 * (b_coef + sqrt_disc)
        r2 = q / c
        r1 = -alpha * delta / q
    else:
        q = 0.5 * (sqrt_disc - b_coef)
        r1 = q / c
        r2 = -alpha * delta / q

    return Roots(r1=r1, r2=r2)


def lambda_bar(params: ModelParams) -> float:
    """Critical multiplier below which the optimal barrier is 0. May be negative."""
    return (params.delta + params.lam) ** 2 / (params.alpha * params.lam) - params.c


def validate_and_build(lam, c, alpha, delta) -> ModelParams:
    params = ModelParams(lam=lam, c=c, alpha=alpha, delta=delta)

    # force the derived quantities so the instance is complete when shared
    params.roots
    params.lambda_bar

    if c <= lam / alpha:
        BdUtils.print_warning(
            f"[WARN]: Net profit condition fails (c={c} <= lambda/alpha={lam / alpha}); "
            f"barrier strategies ruin almost surely, formulas still apply."
        )

    return params


def params_from_mapping(values: Mapping) -> ModelParams:
    missing = [k for k in ("lambda", "c", "alpha", "delta") if values.get(k) is None]
    if missing:
        raise NonPositiveParameter(missing[0], None)
    return validate_and_build(
        float(values["lambda"]),
        float(values["c"]),
        float(values["alpha"]),
        float(values["delta"]),
    )


def discounted_horizon(delta: float, T: float) -> float:
    """K_T = (1 - e^{-delta T}) / delta."""
    return -math.expm1(-delta * T) / delta


@dataclass(frozen=True)
class Constraint:
    """Survival constraint E[int_0^tau e^{-delta s} ds] >= K_T."""

    T: float
    kT: float

    @classmethod
    def from_horizon(cls, delta: float, T: float) -> "Constraint":
        if not T >= 0:
            raise ValueError(f"Horizon must be nonnegative, got {T}")
        return cls(T=T, kT=discounted_horizon(delta, T))

    @classmethod
    def from_discounted(cls, delta: float, kT: float) -> "Constraint":
        if not 0 <= kT < 1.0 / delta:
            raise ValueError(f"K_T must lie in [0, 1/delta), got {kT}")
        return cls(T=-math.log1p(-delta * kT) / delta, kT=kT)
