"""Bracketed scalar root finding and the transcendental roots t1(a), t2(a).

``t1(a)`` is the unique solution of ``t = cosh(t + a) exp(-(t + a))``,
equivalently ``t = (1 + exp(-2 (t + a))) / 2``, and ``t2(a) = t1(-a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import NoConvergence, NoSignChange

DEFAULT_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise NoSignChange(f"empty bracket [{self.lo}, {self.hi}]")
        if not (self.f_lo < 0 < self.f_hi or self.f_hi < 0 < self.f_lo):
            if self.f_lo == 0 or self.f_hi == 0:
                return
            raise NoSignChange(
                f"no sign change on [{self.lo}, {self.hi}]: f = {self.f_lo}, {self.f_hi}"
            )

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


def find_root(f: Callable[[float], float], bracket: Bracket, tol: float = DEFAULT_TOL) -> float:
    """Root of ``f`` inside ``bracket`` by Brent's method.

    Parameters
    ----------
    f : callable
        Continuous scalar function with a sign change across the bracket.
    bracket : Bracket
        Validated bracket; ``f_lo`` and ``f_hi`` must be ``f`` at its ends.
    tol : float
        Absolute tolerance on the argument.

    Raises
    ------
    NoConvergence
        If the iteration cap is hit, which points at a non-continuous ``f``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if bracket.f_lo == 0:
        return bracket.lo
    if bracket.f_hi == 0:
        return bracket.hi
    try:
        return brentq(f, bracket.lo, bracket.hi, xtol=tol, maxiter=MAX_ITER)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc


def expand_upward(f: Callable[[float], float], lo: float, step: float = 1.0,
                  max_doublings: int = 60) -> Bracket:
    """Grow ``[lo, lo + step]`` geometrically until ``f`` changes sign."""
    f_lo = f(lo)
    if f_lo == 0:
        return Bracket(lo, lo + step, f_lo, f(lo + step))
    for _ in range(max_doublings):
        hi = lo + step
        f_hi = f(hi)
        if (f_lo < 0) != (f_hi < 0):
            return Bracket(lo, hi, f_lo, f_hi)
        step *= 2.0
    raise NoSignChange(f"no sign change above {lo}")


def _t1_residual(a: float) -> Callable[[float], float]:
    if a >= 0:
        # exp(-2(t + a)) <= 1 for t > 0: the direct form cannot overflow.
        return lambda t: t - 0.5 * (1.0 + math.exp(-2.0 * (t + a)))
    # log form of 2t - 1 = exp(-2(t + a)); increasing in t on (1/2, inf)
    return lambda t: math.log(2.0 * t - 1.0) + 2.0 * (t + a)


def solve_t1(a: float, tol: float = DEFAULT_TOL) -> float:
    """Unique root t1(a) > 1/2 of ``t = (1 + exp(-2 (t + a))) / 2``.

    ``solve_t1(-a)`` is t2(a). The function is strictly decreasing in ``a``
    with limits ``+inf`` at ``a -> -inf`` and ``1/2`` at ``a -> +inf``.
    """
    if not math.isfinite(a):
        raise ValueError(f"a must be finite, got {a}")
    f = _t1_residual(a)
    # for a < 0 the root exceeds t1(0) ~ 0.639, keeping the log argument away from 0
    lo = 0.5 if a >= 0 else 0.6
    bracket = expand_upward(f, lo)
    return find_root(f, bracket, tol=min(tol, 1e-15))


def solve_t2(a: float, tol: float = DEFAULT_TOL) -> float:
    return solve_t1(-a, tol)
