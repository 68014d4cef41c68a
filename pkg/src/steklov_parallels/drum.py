"""Closed-form spectrum of the two-circle "drum" and its optimal shape.

A drum is a cylinder of conformal length T capped by two disks, with boundary
densities f0 and fT on its two circles. Mode 0 contributes 0 and
``(f0 + fT) / (T f0 fT)``; each mode n >= 1 contributes the two roots of

    tau^2 f0 fT sinh(nT) - n tau e^{nT} (f0 + fT) + 2 n^2 e^{nT} = 0.

The optimal drums are parametrized by a real ``a`` through ``t1 = t1(a)`` and
``t2 = t1(-a)``: length ``t1 + t2``, density ratio ``t2 / t1`` and normalized
first eigenvalue ``2 pi (1/t1 + 1/t2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .cylinder import CircleConfig
from .errors import InputError, NegativeDiscriminant
from .numerics import Bracket, expand_upward, find_root, solve_t1


@dataclass(frozen=True)
class DrumParams:
    f0: float
    fT: float
    T: float

    def __post_init__(self):
        for name in ("f0", "fT", "T"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InputError(f"{name} must be positive, got {v}")

    @property
    def mass(self) -> float:
        """Total density f0 + fT; cylinder eigenvalues are drum eigenvalues times this."""
        return self.f0 + self.fT

    def to_config(self) -> CircleConfig:
        return CircleConfig.from_masses([self.T], [self.f0, self.fT])

    @classmethod
    def from_config(cls, config: CircleConfig, mass: float = 1.0) -> "DrumParams":
        if config.n != 2:
            raise InputError("a drum has exactly two circles")
        return cls(config.weights[0] * mass, config.weights[1] * mass, config.spacings[0])


def _half_one_minus_exp(x: float) -> float:
    # sinh(x) e^{-x} = (1 - e^{-2x}) / 2
    return -0.5 * math.expm1(-2.0 * x)


def scaled_discriminant(p: DrumParams, n: int) -> float:
    """``Delta_n / (n^2 e^{2nT})``.

    Equal to ``(f0 + fT)^2 - 8 f0 fT sinh(nT) e^{-nT}``, evaluated as
    ``(f0 - fT)^2 + 4 f0 fT e^{-2nT}`` so it stays positive in floating point.
    """
    return (p.f0 - p.fT) ** 2 + 4.0 * p.f0 * p.fT * math.exp(-2.0 * n * p.T)


def log_discriminant(p: DrumParams, n: int) -> float:
    """Natural log of Delta_n, finite even when Delta_n itself overflows."""
    d = scaled_discriminant(p, n)
    if d <= 0:
        raise NegativeDiscriminant(f"Delta_{n} <= 0 for {p}")
    return 2.0 * math.log(n) + 2.0 * n * p.T + math.log(d)


def tau0_plus(p: DrumParams) -> float:
    return (p.f0 + p.fT) / (p.T * p.f0 * p.fT)


def tau_n_pair(p: DrumParams, n: int) -> tuple[float, float]:
    """``(tau_n^-, tau_n^+)`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = scaled_discriminant(p, n)
    if d < 0 or (d == 0 and p.f0 != p.fT):
        raise NegativeDiscriminant(f"Delta_{n} = {d} for {p}")
    sigma = p.f0 + p.fT
    root = math.sqrt(d)
    s = _half_one_minus_exp(n * p.T)
    minus = 4.0 * n / (sigma + root)
    plus = n * (sigma + root) / (2.0 * p.f0 * p.fT * s)
    return minus, plus


def drum_eigenvalues(p: DrumParams, n_max: int) -> list[tuple[int, float]]:
    """``(mode, tau)`` pairs: 0, tau_0^+, then tau_n^-, tau_n^+ for n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = [(0, 0.0), (0, tau0_plus(p))]
    for n in range(1, n_max + 1):
        lo, hi = tau_n_pair(p, n)
        out.append((n, lo))
        out.append((n, hi))
    return out


def drum_tau1(p: DrumParams) -> float:
    """First nonzero eigenvalue ``min(tau_0^+, tau_1^-)``."""
    # 4 / (f0 + fT + sqrt((f0 + fT)^2 - 8 f0 fT sinh(T) e^{-T}))
    t1m = 4.0 / (p.f0 + p.fT + math.sqrt(scaled_discriminant(p, 1)))
    return min(tau0_plus(p), t1m)


def crossing_ratio(alpha: float, T: float) -> float:
    """``tau_1^- / tau_0^+`` as a function of T for density ratio ``alpha = f0 / fT``."""
    disc = (alpha - 1.0) ** 2 + 4.0 * alpha * math.exp(-2.0 * T)
    return 4.0 * T / (1.0 / alpha + 1.0) / (alpha + 1.0 + math.sqrt(disc))


def crossing_T(alpha: float) -> float:
    """Length T(alpha) where mode 0 and mode 1 give the same first eigenvalue.

    The ratio grows from 0 to infinity in T, so the crossing is unique; there
    tau_1 has multiplicity 3.
    """
    if not (math.isfinite(alpha) and alpha > 0):
        raise InputError(f"alpha must be positive, got {alpha}")
    f = lambda T: crossing_ratio(alpha, T) - 1.0
    return find_root(f, expand_upward(f, 1e-12, step=1.0), tol=1e-15)


@dataclass(frozen=True)
class DrumProfile:
    a: float
    t1: float
    t2: float

    @property
    def T(self) -> float:
        return self.t1 + self.t2

    @property
    def alpha(self) -> float:
        return self.t2 / self.t1

    @property
    def F(self) -> float:
        return 1.0 / self.t1 + 1.0 / self.t2

    @property
    def tau1_bar(self) -> float:
        return 2.0 * math.pi * self.F

    def params(self) -> DrumParams:
        """Densities ``(1/t1, 1/t2)`` and length ``t1 + t2``; both branches equal 1 there."""
        return DrumParams(1.0 / self.t1, 1.0 / self.t2, self.T)

    def as_row(self) -> dict:
        return {"a": self.a, "t1": self.t1, "t2": self.t2, "alpha": self.alpha,
                "T": self.T, "F": self.F, "tau1_bar": self.tau1_bar}


def drum_profile(a: float) -> DrumProfile:
    return DrumProfile(a, solve_t1(a), solve_t1(-a))


def F(a: float) -> float:
    return drum_profile(a).F


def maximize_F(lo: float = -5.0, hi: float = 5.0, step: float = 0.05) -> tuple[float, float]:
    """Maximize F(a) = 1/t1(a) + 1/t2(a): coarse grid, then golden section."""
    grid = np.arange(lo, hi + 0.5 * step, step)
    values = np.array([F(a) for a in grid])
    i = int(np.argmax(values))
    a_lo, a_hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(lambda a: -F(a), bracket=(a_lo, grid[i], a_hi), method="golden",
                          tol=1e-12)
    a_star = float(res.x)
    return a_star, F(a_star)


def alpha_to_a(alpha: float) -> float:
    """Invert the increasing map ``a -> t2(a) / t1(a)``."""
    if not (math.isfinite(alpha) and alpha > 0):
        raise InputError(f"alpha must be positive, got {alpha}")
    f = lambda a: math.log(drum_profile(a).alpha) - math.log(alpha)
    lo, hi = -1.0, 1.0
    while f(lo) > 0:
        lo *= 2.0
    while f(hi) < 0:
        hi *= 2.0
    return find_root(f, Bracket.of(f, lo, hi), tol=1e-14)


def proof_constants(t1_0: float | None = None) -> dict:
    """The two numbers compared in the proof that a = 0 is the maximizer.

    ``upper = 2 / t1(0)`` is F(0); ``bound = 2 + 2 x2`` with
    ``x0 = 1 / (2 t2(0))`` and ``x2 = ((1 - x0) + sqrt((1 - x0)(1 + 3 x0))) / 2``
    bounds F on the tail ``a >= a0``.
    """
    t = solve_t1(0.0) if t1_0 is None else t1_0
    x0 = 1.0 / (2.0 * t)
    x2 = 0.5 * ((1.0 - x0) + math.sqrt((1.0 - x0) * (1.0 + 3.0 * x0)))
    return {"t1_0": t, "x0": x0, "x2": x2, "upper": 2.0 / t, "bound": 2.0 + 2.0 * x2}


def Q(x: float) -> float:
    return x * x * (1.0 - x)


def F_prime(a: float) -> float:
    """Analytic derivative ``4 [Q(1/(2 t1)) - Q(1/(2 t2))]``."""
    p = drum_profile(a)
    return 4.0 * (Q(0.5 / p.t1) - Q(0.5 / p.t2))


def sweep_a(a_values) -> list[dict]:
    return [drum_profile(float(a)).as_row() for a in a_values]


def sweep_T(alpha: float, T_values) -> list[dict]:
    """tau_0^+, tau_1^- and tau_1 along T for fixed ``alpha = f0 / fT``, with fT = 1."""
    rows = []
    for T in T_values:
        p = DrumParams(alpha, 1.0, float(T))
        t0 = tau0_plus(p)
        t1m = tau_n_pair(p, 1)[0]
        rows.append({"T": float(T), "tau0_plus": t0, "tau1_minus": t1m, "tau1": min(t0, t1m)})
    return rows
