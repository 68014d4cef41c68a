"""Steklov transmission spectrum of N weighted circles on the flat cylinder.

The cylinder S^1 x R carries circles at heights z_1 < ... < z_N. A function
``h(z) cos(n theta)`` that is harmonic off the circles solves ``h'' = n^2 h``
on each gap and decays (n >= 1) or stays constant (n = 0) on the two ends.
Its Dirichlet energy, written in terms of the traces h(z_i), is a symmetric
tridiagonal form K_n; the weights give the diagonal mass B = diag(beta).
The transmission eigenvalues of mode n are the generalized eigenvalues of
(K_n, B).

Weights sum to one, so the total boundary mass is 2 pi and the normalized
first eigenvalue is ``2 pi tau_1``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import lapack

from .errors import AllZero, InputError, NumericDegeneracy, SingularMass

log = logging.getLogger(__name__)

MODE_CAP = 64
DEFAULT_CLUSTER_TOL = 1e-6
DEFAULT_KMAX = 10
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class CircleConfig:
    """Gaps between consecutive circles and the simplex weights on them."""

    spacings: tuple[float, ...]
    weights: tuple[float, ...]

    def __init__(self, spacings: Sequence[float], weights: Sequence[float]):
        object.__setattr__(self, "spacings", tuple(float(s) for s in spacings))
        object.__setattr__(self, "weights", tuple(float(w) for w in weights))
        self.validate()

    def validate(self) -> None:
        n = len(self.weights)
        if n < 1:
            raise InputError("a configuration needs at least one circle")
        if len(self.spacings) != n - 1:
            raise InputError(f"{n} weights need {n - 1} spacings, got {len(self.spacings)}")
        if not all(math.isfinite(s) and s > 0 for s in self.spacings):
            raise InputError(f"spacings must be finite and positive: {self.spacings}")
        if not all(math.isfinite(w) and w >= 0 for w in self.weights):
            raise InputError(f"weights must be nonnegative: {self.weights}")
        if abs(math.fsum(self.weights) - 1.0) > WEIGHT_SUM_TOL:
            raise InputError(f"weights must sum to 1, got {math.fsum(self.weights)!r}")

    @property
    def n(self) -> int:
        return len(self.weights)

    @classmethod
    def from_masses(cls, spacings: Sequence[float], masses: Sequence[float]) -> "CircleConfig":
        """Normalize arbitrary nonnegative masses onto the simplex."""
        masses = np.asarray(masses, dtype=float)
        total = masses.sum()
        if total <= 0:
            raise AllZero("total mass must be positive")
        w = masses / total
        # push the rounding residue onto the largest weight so the sum is exact
        w[np.argmax(w)] += 1.0 - math.fsum(w)
        return cls(spacings, w)

    def reversed(self) -> "CircleConfig":
        return CircleConfig(self.spacings[::-1], self.weights[::-1])

    def to_dict(self) -> dict:
        return {"spacings": list(self.spacings), "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, data: dict) -> "CircleConfig":
        try:
            spacings = data["spacings"]
            weights = data["weights"]
        except (KeyError, TypeError) as exc:
            raise InputError("config needs 'spacings' and 'weights' arrays") from exc
        if not isinstance(spacings, list) or not isinstance(weights, list):
            raise InputError("'spacings' and 'weights' must be arrays")
        return cls(spacings, weights)

    @classmethod
    def from_json(cls, text: str) -> "CircleConfig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ModeProblem:
    """Tridiagonal stiffness (diagonal, off-diagonal) and diagonal mass of one mode."""

    mode: int
    diag: np.ndarray
    offdiag: np.ndarray
    mass: np.ndarray

    @property
    def stiffness(self) -> np.ndarray:
        k = np.diag(self.diag)
        if len(self.offdiag):
            k += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return k


def _coth_and_csch(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # coth x = (1 + e^{-2x}) / (1 - e^{-2x}), csch x = 2 e^{-x} / (1 - e^{-2x})
    e1 = np.exp(-x)
    denom = -np.expm1(-2.0 * x)
    return (1.0 + e1 * e1) / denom, 2.0 * e1 / denom


def mode_stiffness(config: CircleConfig, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the mode-``n`` energy form K_n.

    A gap of length L contributes ``n coth(nL)`` to both incident diagonals and
    ``-n / sinh(nL)`` off the diagonal (``1/L`` and ``-1/L`` for ``n = 0``);
    the two semi-infinite ends add ``n`` to the outer diagonals.
    """
    if n < 0:
        raise ValueError("mode must be nonnegative")
    L = np.asarray(config.spacings, dtype=float)
    diag = np.zeros(config.n)
    if n == 0:
        seg_d = 1.0 / L
        seg_o = -1.0 / L
    else:
        coth, csch = _coth_and_csch(n * L)
        seg_d = n * coth
        seg_o = -n * csch
        diag[0] += n
        diag[-1] += n
    diag[:-1] += seg_d
    diag[1:] += seg_d
    return diag, seg_o


def mode_problem(config: CircleConfig, n: int) -> ModeProblem:
    d, o = mode_stiffness(config, n)
    return ModeProblem(n, d, o, np.asarray(config.weights, dtype=float))


def mode_eigenvalues(problem: ModeProblem) -> np.ndarray:
    """All generalized eigenvalues of ``K_n h = tau B h``, ascending.

    Symmetrized with ``B^{-1/2}`` and passed to a tridiagonal solver.
    """
    w = problem.mass
    if np.any(w <= 0):
        raise SingularMass("zero weight reached the eigensolver")
    r = 1.0 / np.sqrt(w)
    d = problem.diag * r * r
    if len(d) == 1:
        vals = d.copy()
    else:
        # LAPACK sterf: all eigenvalues of a symmetric tridiagonal matrix
        vals, info = lapack.dsterf(d, problem.offdiag * r[:-1] * r[1:])
        if info != 0:
            raise NumericDegeneracy(f"tridiagonal eigensolver failed (info={info})")
    # K_n is positive semidefinite; clip roundoff below zero
    vals = np.maximum(np.sort(vals), 0.0)
    if problem.mode == 0:
        # constants span the kernel of K_0 exactly
        vals[0] = 0.0
    return vals


def reduce_zero_weights(config: CircleConfig) -> CircleConfig:
    """Drop zero-weight circles, merging the gaps on either side of each."""
    w = config.weights
    if not any(x > 0 for x in w):
        raise AllZero("every weight is zero")
    if all(x > 0 for x in w):
        return config
    keep = [i for i, x in enumerate(w) if x > 0]
    z = np.concatenate([[0.0], np.cumsum(config.spacings)])
    zk = z[keep]
    return CircleConfig(np.diff(zk), [w[i] for i in keep])


@dataclass(frozen=True)
class SpectrumEntry:
    tau: float
    mode: int
    multiplicity: int


@dataclass
class TransmissionSpectrum:
    entries: list[SpectrumEntry]
    tau1: float
    multiplicity: int
    cluster_tol: float
    modes_scanned: int = 0
    capped: bool = False
    cluster: list[SpectrumEntry] = field(default_factory=list)

    @property
    def tau1_bar(self) -> float:
        return 2.0 * math.pi * self.tau1

    def values(self) -> list[float]:
        """Eigenvalues repeated by angular multiplicity."""
        out = []
        for e in self.entries:
            out.extend([e.tau] * e.multiplicity)
        return out

    def next_above(self) -> float:
        """Smallest eigenvalue outside the tau_1 cluster (``inf`` if none was computed)."""
        hi = self.tau1 * (1.0 + self.cluster_tol)
        above = [e.tau for e in self.entries if e.tau > hi]
        return min(above) if above else math.inf


def _kth(values: list[tuple[float, int]], k: int) -> float:
    count = 0
    for tau, mult in sorted(values):
        count += mult
        if count >= k:
            return tau
    return math.inf


def transmission_spectrum(config: CircleConfig, k_max: int = DEFAULT_KMAX,
                          cluster_tol: float = DEFAULT_CLUSTER_TOL) -> TransmissionSpectrum:
    """Transmission eigenvalues of ``config`` up to at least the ``k_max``-th.

    Modes are scanned upward until a whole mode lies above both the running
    ``k_max``-th value (counted with angular multiplicity) and the tau_1
    cluster. Every eigenvalue of K_{n+1} dominates the matching one of K_n,
    so later modes cannot contribute below the cutoff.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if any(w <= 0 for w in config.weights):
        raise SingularMass("zero weights present; apply reduce_zero_weights first")

    found: list[tuple[float, int]] = []
    labels: list[tuple[float, int, int]] = []
    capped = False
    n = 0
    while True:
        vals = mode_eigenvalues(mode_problem(config, n))
        mult = 1 if n == 0 else 2
        for v in vals:
            found.append((float(v), mult))
            labels.append((float(v), n, mult))
        positive = [v for v, _ in found if v > 0]
        tau1 = min(positive) if positive else math.inf
        cutoff = max(_kth(found, k_max + 1), tau1 * (1.0 + cluster_tol))
        if n >= 1 and vals[0] > cutoff:
            break
        if n >= MODE_CAP:
            capped = True
            log.warning("mode scan hit the cap n=%d; spectrum may be incomplete", MODE_CAP)
            break
        n += 1

    labels.sort(key=lambda t: (t[0], t[1]))
    entries = [SpectrumEntry(*t) for t in labels]
    positive = [e.tau for e in entries if e.tau > 0]
    tau1 = min(positive)
    hi = tau1 * (1.0 + cluster_tol)
    cluster = [e for e in entries if 0 < e.tau <= hi]
    multiplicity = sum(e.multiplicity for e in cluster)
    return TransmissionSpectrum(entries, tau1, multiplicity, cluster_tol,
                                modes_scanned=n + 1, capped=capped, cluster=cluster)


def tau1_bar(config: CircleConfig) -> float:
    """Normalized first eigenvalue, applying ``reduce_zero_weights`` first.

    Cheaper than :func:`transmission_spectrum`: only tracks tau_1.
    """
    config = reduce_zero_weights(config)
    best = math.inf
    for n in range(MODE_CAP + 1):
        vals = mode_eigenvalues(mode_problem(config, n))
        if n == 0:
            if len(vals) > 1:
                best = vals[1]
            continue
        if vals[0] >= best:
            break
        best = vals[0]
    return 2.0 * math.pi * best
