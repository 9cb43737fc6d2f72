"""Monte Carlo oracle for barrier strategies.

Paths are simulated claim by claim. Between claims the surplus drifts up at
rate c until it reaches the barrier and then stays there while paying
dividends at rate c, so every discounted integral over a segment has a closed
form and there is no discretization error. Path i draws its (wait, claim)
pairs from its own Philox stream keyed by SeedSequence([seed, i]), so a path
does not depend on n_paths or on how paths are grouped into chunks.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.stats import norm

from barrierdual import defaults
from barrierdual.dual import barrier_dividend_value
from barrierdual.errors import InvalidConfig
from barrierdual.model import ModelParams, discounted_horizon
from barrierdual.ruin import psi


@dataclass(frozen=True)
class SimConfig:
    n_paths: int
    seed: int
    t_max: float
    barrier: float
    x0: float

    def __post_init__(self):
        if not isinstance(self.n_paths, (int, np.integer)) or self.n_paths < 1:
            raise InvalidConfig(f"n_paths must be a positive integer, got {self.n_paths}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be a 64-bit nonnegative integer, got {self.seed}")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise InvalidConfig(f"t_max must be positive and finite, got {self.t_max}")
        if not self.barrier >= 0:
            raise InvalidConfig(f"barrier must be nonnegative, got {self.barrier}")
        if not self.x0 >= 0:
            raise InvalidConfig(f"x0 must be nonnegative, got {self.x0}")

    @classmethod
    def build(
        cls,
        params: ModelParams,
        barrier: float,
        x0: float,
        n_paths: int = defaults.SIM_N_PATHS,
        seed: int = defaults.SIM_SEED,
        t_max: Optional[float] = None,
    ) -> "SimConfig":
        if t_max is None:
            t_max = defaults.SIM_TMAX_FACTOR / params.delta
        return cls(n_paths=n_paths, seed=seed, t_max=t_max, barrier=barrier, x0=x0)


@dataclass(frozen=True)
class SimEstimate:
    mean_dividends: float
    se_dividends: float
    mean_psi: float
    se_psi: float
    truncation_bound: float
    n_ruined: int
    n_paths: int


@dataclass(frozen=True)
class SlackEstimate:
    mean: float  # mean_psi - K_T
    se: float
    ci_low: float
    ci_high: float
    kT: float
    confidence: float


@dataclass(frozen=True)
class OracleComparison:
    exact_dividends: float
    exact_psi: float
    z_dividends: float
    z_psi: float

    @property
    def max_abs_z(self) -> float:
        return max(abs(self.z_dividends), abs(self.z_psi))


def path_generator(seed: int, path_id: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, path_id])))


def _draw_block(generators, rows: np.ndarray, block: int) -> np.ndarray:
    """The next ``block`` unit-rate (wait, claim) pairs of every path in ``rows``."""
    return np.stack([generators[i].standard_exponential((block, 2)) for i in rows])


def _simulate_chunk(
    params: ModelParams, config: SimConfig, first: int, size: int, block: int = defaults.SIM_BLOCK
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    c, delta = params.c, params.delta
    b, t_max = config.barrier, config.t_max

    generators = [path_generator(config.seed, first + i) for i in range(size)]
    draws = np.empty((size, block, 2))

    surplus = np.full(size, min(config.x0, b))
    clock = np.zeros(size)
    # lump sum paid at time 0
    dividends = np.full(size, max(config.x0 - b, 0.0))
    stop_time = np.full(size, t_max)
    ruined = np.zeros(size, dtype=bool)

    alive = np.arange(size)
    k = 0
    while alive.size:
        # every alive path is at its k-th claim
        j = k % block
        if j == 0:
            draws[alive] = _draw_block(generators, alive, block)
        wait = draws[alive, j, 0] / params.lam
        claim = draws[alive, j, 1] / params.alpha
        k += 1

        t0 = clock[alive]
        x0 = surplus[alive]
        t1 = t0 + wait
        end = np.minimum(t1, t_max)

        # dividends at rate c from the barrier hit until the claim (or t_max)
        pay_from = np.minimum(t0 + (b - x0) / c, end)
        dividends[alive] += c / delta * (np.exp(-delta * pay_from) - np.exp(-delta * end))

        truncated = t1 >= t_max
        x1 = np.minimum(x0 + c * wait, b) - claim
        dead = ~truncated & (x1 < 0)
        stop_time[alive[dead]] = t1[dead]
        ruined[alive[dead]] = True

        survivors = ~truncated & ~dead
        surplus[alive[survivors]] = x1[survivors]
        clock[alive[survivors]] = t1[survivors]
        alive = alive[survivors]

    discounted_life = -np.expm1(-delta * stop_time) / delta
    return dividends, discounted_life, ruined


def simulate_paths(
    params: ModelParams, config: SimConfig, chunk: int = defaults.SIM_CHUNK
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-path discounted dividends, discounted lifetime and ruin flags, in path order."""
    if chunk < 1:
        raise InvalidConfig(f"chunk must be a positive integer, got {chunk}")
    parts = []
    for start in range(0, config.n_paths, chunk):
        size = min(chunk, config.n_paths - start)
        parts.append(_simulate_chunk(params, config, start, size))

    dividends = np.concatenate([p[0] for p in parts])
    lifetime = np.concatenate([p[1] for p in parts])
    ruined = np.concatenate([p[2] for p in parts])
    return dividends, lifetime, ruined


def _standard_error(x: np.ndarray) -> float:
    if len(x) < 2:
        return math.inf
    return float(np.std(x, ddof=1) / np.sqrt(len(x)))


def simulate(params: ModelParams, config: SimConfig) -> SimEstimate:
    dividends, lifetime, ruined = simulate_paths(params, config)
    return SimEstimate(
        mean_dividends=float(np.mean(dividends)),
        se_dividends=_standard_error(dividends),
        mean_psi=float(np.mean(lifetime)),
        se_psi=_standard_error(lifetime),
        # neither functional can gain more than this after t_max
        truncation_bound=max(1.0, params.c) * math.exp(-params.delta * config.t_max) / params.delta,
        n_ruined=int(np.count_nonzero(ruined)),
        n_paths=config.n_paths,
    )


def estimate_constraint_slack(
    params: ModelParams, config: SimConfig, T: float, confidence: float = 0.99
) -> SlackEstimate:
    return slack_from_estimate(params, simulate(params, config), T, confidence)


def slack_from_estimate(
    params: ModelParams, estimate: SimEstimate, T: float, confidence: float = 0.99
) -> SlackEstimate:
    """Normal confidence interval for psi_b(x0) - K_T."""
    if not 0 < confidence < 1:
        raise ValueError(f"Confidence must lie in (0, 1), got {confidence}")
    kT = discounted_horizon(params.delta, T)
    z = norm.ppf(1 - (1 - confidence) / 2)
    mean = estimate.mean_psi - kT
    return SlackEstimate(
        mean=mean,
        se=estimate.se_psi,
        ci_low=mean - z * estimate.se_psi,
        ci_high=mean + z * estimate.se_psi,
        kT=kT,
        confidence=confidence,
    )


def z_score(estimate: float, exact: float, se: float) -> float:
    return (estimate - exact) / se if se else 0.0


def compare_with_closed_form(
    params: ModelParams, config: SimConfig, estimate: SimEstimate
) -> OracleComparison:
    exact_dividends = barrier_dividend_value(params, config.barrier, config.x0)
    exact_psi = psi(params, config.barrier, config.x0)
    return OracleComparison(
        exact_dividends=exact_dividends,
        exact_psi=exact_psi,
        z_dividends=z_score(estimate.mean_dividends, exact_dividends, estimate.se_dividends),
        z_psi=z_score(estimate.mean_psi, exact_psi, estimate.se_psi),
    )
