"""Bracketed scalar root finding.

Brent's method from scipy does the work; this module adds bracket validation,
geometric bracket expansion and typed errors.
"""

import math
from dataclasses import dataclass
from typing import Callable

from scipy import optimize

from barrierdual import defaults
from barrierdual.errors import MaxIterExceeded, NoRootInRange, NoSignChange

# scipy refuses relative tolerances below 4 machine epsilons
_MIN_RTOL = 4 * 2.220446049250313e-16


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise NoSignChange(f"Invalid bracket: lo={self.lo} must be below hi={self.hi}")
        if math.isnan(self.f_lo) or math.isnan(self.f_hi):
            raise NoSignChange(f"f is NaN on the bracket [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise NoSignChange(
                f"f(lo) and f(hi) must have opposite signs, got f({self.lo})={self.f_lo}, f({self.hi})={self.f_hi}"
            )

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo=lo, hi=hi, f_lo=f(lo), f_hi=f(hi))


@dataclass(frozen=True)
class RootResult:
    """Attributes:
    root: the located root.
    residual: f(root).
    iterations: Brent iterations used.
    function_calls: number of f evaluations.
    """

    root: float
    residual: float
    iterations: int
    function_calls: int


def solve_bracketed(
    f: Callable[[float], float],
    bracket: Bracket,
    tol_abs: float = defaults.TOL_ABS,
    tol_rel: float = defaults.TOL_REL,
    max_iter: int = defaults.MAX_ITER,
) -> RootResult:
    if bracket.f_lo == 0:
        return RootResult(root=bracket.lo, residual=0.0, iterations=0, function_calls=0)
    if bracket.f_hi == 0:
        return RootResult(root=bracket.hi, residual=0.0, iterations=0, function_calls=0)

    try:
        sol = optimize.root_scalar(
            f,
            bracket=[bracket.lo, bracket.hi],
            method="brentq",
            xtol=tol_abs,
            rtol=max(tol_rel, _MIN_RTOL),
            maxiter=max_iter,
        )
    except RuntimeError as e:
        raise MaxIterExceeded(f"Brent iteration failed on [{bracket.lo}, {bracket.hi}]: {e}")

    if not sol.converged:
        raise MaxIterExceeded(
            f"No convergence within {max_iter} iterations on [{bracket.lo}, {bracket.hi}] ({sol.flag})"
        )

    return RootResult(
        root=sol.root,
        residual=f(sol.root),
        iterations=sol.iterations,
        function_calls=sol.function_calls,
    )


def expand_bracket(
    f: Callable[[float], float],
    start: float,
    direction: int = 1,
    growth: float = 2.0,
    max_hi: float = 1e8,
    initial_step: float = 1.0,
) -> Bracket:
    """Walk away from ``start`` with geometrically growing steps until f changes sign.

    ``max_hi`` bounds the distance travelled from ``start``; the last point
    tried is always ``start + direction * max_hi``.
    """
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    if growth <= 1:
        raise ValueError(f"growth must exceed 1, got {growth}")
    if not max_hi > 0:
        raise ValueError(f"max_hi must be positive, got {max_hi}")

    inner, f_inner = start, f(start)
    if f_inner == 0:
        outer = start + direction * initial_step
        return _ordered(inner, outer, f_inner, f(outer))

    step = min(initial_step, max_hi)
    while True:
        outer = start + direction * step
        f_outer = f(outer)
        if math.isnan(f_outer):
            break
        if f_inner * f_outer <= 0:
            return _ordered(inner, outer, f_inner, f_outer)
        if step >= max_hi:
            break
        # same sign: the root lies further out
        inner, f_inner = outer, f_outer
        step = min(step * growth, max_hi)

    raise NoRootInRange(f"No sign change found within {max_hi} of {start}")


def _ordered(a, b, fa, fb) -> Bracket:
    if a < b:
        return Bracket(lo=a, hi=b, f_lo=fa, f_hi=fb)
    return Bracket(lo=b, hi=a, f_lo=fb, f_hi=fa)
