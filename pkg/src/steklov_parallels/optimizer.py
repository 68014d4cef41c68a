"""Maximization of the normalized first eigenvalue over circle configurations.

Spacings are searched as ``exp(x)`` and weights as a softmax, so every
candidate is an interior point: positive gaps, strictly positive weights
summing to one. The objective is the minimum of several eigenvalue branches
and is not differentiable where they cross (which is where the maxima sit),
so the search is Nelder-Mead with restarts from several seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .catenoid import derive_cylinder_data, find_symmetric_balanced
from .cylinder import DEFAULT_CLUSTER_TOL, CircleConfig, tau1_bar, transmission_spectrum

XATOL = 1e-10
FATOL = 1e-14
MAX_RESTARTS = 6


@dataclass
class OptimizationResult:
    config: CircleConfig
    value: float
    multiplicity: int
    trace: list[tuple[int, float]] = field(default_factory=list)
    seeds_used: int = 0

    @property
    def value_over_4pi(self) -> float:
        return self.value / (4.0 * math.pi)

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(), "value": self.value,
                "value_over_4pi": self.value_over_4pi, "multiplicity": self.multiplicity,
                "seeds_used": self.seeds_used}


def _softmax(y: np.ndarray) -> np.ndarray:
    e = np.exp(y - y.max())
    return e / e.sum()


class Parametrization:
    """Maps unconstrained vectors to configurations, optionally mirror-symmetric.

    Full space: ``N - 1`` log-spacings, then ``N - 1`` weight logits (the last
    logit is pinned to 0). Symmetric space keeps only the first half of each
    palindrome.
    """

    def __init__(self, N: int, symmetric: bool = False, spacings: tuple[float, ...] | None = None):
        self.N = N
        self.symmetric = symmetric
        self.fixed_spacings = spacings
        if symmetric:
            self.n_gap = N // 2
            self.n_logit = (N + 1) // 2 - 1
        else:
            self.n_gap = N - 1
            self.n_logit = N - 1
        if spacings is not None:
            self.n_gap = 0

    @property
    def dim(self) -> int:
        return self.n_gap + self.n_logit

    def _mirror(self, half: np.ndarray, length: int) -> np.ndarray:
        return np.concatenate([half, half[: length - len(half)][::-1]])

    def config(self, x: np.ndarray) -> CircleConfig:
        N = self.N
        if self.fixed_spacings is not None:
            gaps = np.asarray(self.fixed_spacings, dtype=float)
        else:
            g = np.exp(np.clip(x[: self.n_gap], -30.0, 30.0))
            gaps = self._mirror(g, N - 1) if self.symmetric else g
        logits = np.concatenate([x[self.n_gap:], [0.0]])
        if self.symmetric:
            logits = self._mirror(logits, N)
        w = _softmax(logits)
        return CircleConfig.from_masses(gaps, w)

    def encode(self, config: CircleConfig) -> np.ndarray:
        """Inverse of :meth:`config` (symmetric parts are averaged)."""
        gaps = np.log(np.asarray(config.spacings, dtype=float))
        logw = np.log(np.asarray(config.weights, dtype=float))
        if self.symmetric:
            gaps = 0.5 * (gaps + gaps[::-1])[: self.n_gap]
            logw = 0.5 * (logw + logw[::-1])[: self.n_logit + 1]
        logits = logw[:-1] - logw[-1]
        parts = [] if self.fixed_spacings is not None else [gaps]
        return np.concatenate(parts + [logits])

    def value(self, x: np.ndarray) -> float:
        return tau1_bar(self.config(x))


def _nelder_mead(param: Parametrization, x0: np.ndarray, step: float = 0.2) -> tuple[np.ndarray, float]:
    """Nelder-Mead with restarts from the incumbent until the value stops moving."""
    f = lambda x: -param.value(x)
    x, fx = np.asarray(x0, dtype=float), f(x0)
    for _ in range(MAX_RESTARTS):
        simplex = np.vstack([x] + [x + step * e for e in np.eye(len(x))])
        res = minimize(f, x, method="Nelder-Mead",
                       options={"initial_simplex": simplex, "xatol": XATOL, "fatol": FATOL,
                                "maxiter": 200 * len(x) + 2000, "maxfev": 400 * len(x) + 4000})
        improved = fx - res.fun
        if res.fun < fx:
            x, fx = res.x, res.fun
        step = max(step * 0.5, 1e-4)
        if improved <= 1e-13 * abs(fx):
            break
    return x, -fx


def _best(cands: list[tuple[float, CircleConfig]]) -> tuple[float, CircleConfig]:
    # largest value; ties broken by lexicographic config
    return max(cands, key=lambda c: (c[0], tuple(-v for v in c[1].spacings + c[1].weights)))


def _finish(config: CircleConfig, trace, seeds_used, cluster_tol) -> OptimizationResult:
    spec = transmission_spectrum(config, cluster_tol=cluster_tol)
    return OptimizationResult(config, spec.tau1_bar, spec.multiplicity, trace, seeds_used)


def _run_seeds(param: Parametrization, seeds: list[np.ndarray]) -> tuple[list, list]:
    cands, trace = [], []
    best = -math.inf
    for i, x0 in enumerate(seeds):
        x, v = _nelder_mead(param, x0)
        cands.append((float(v), param.config(x)))
        best = max(best, v)
        trace.append((i, float(best)))
    return cands, trace


def maximize_weights(spacings, seeds: int = 4, rng: np.random.Generator | None = None,
                     cluster_tol: float = DEFAULT_CLUSTER_TOL) -> OptimizationResult:
    """T_1(N, alpha): best weights for fixed gaps, from uniform plus ``seeds`` random starts."""
    spacings = tuple(float(s) for s in spacings)
    N = len(spacings) + 1
    rng = np.random.default_rng(0) if rng is None else rng
    if N == 1:
        return _finish(CircleConfig([], [1.0]), [(0, 4.0 * math.pi)], 1, cluster_tol)
    param = Parametrization(N, spacings=spacings)
    starts = [np.zeros(param.dim)] + [rng.normal(0.0, 0.7, param.dim) for _ in range(seeds)]
    cands, trace = _run_seeds(param, starts)
    value, config = _best(cands)
    return _finish(config, trace, len(starts), cluster_tol)


def geometry_seed(N: int) -> CircleConfig:
    """Cylinder data of the symmetric balanced catenoid stack of order N."""
    return derive_cylinder_data(find_symmetric_balanced(N)).config


def maximize_full(N: int, seeds: int = 4, symmetric: bool | None = None,
                  rng: np.random.Generator | None = None, use_geometry_seed: bool = True,
                  cluster_tol: float = DEFAULT_CLUSTER_TOL) -> OptimizationResult:
    """T_1(N) = sup over gaps and weights.

    Seeds: the balanced-catenoid configuration (unless disabled), the uniform
    configuration and ``seeds`` log-normal perturbations of it. With
    ``symmetric`` (default for N >= 3) the search runs over mirror-symmetric
    configurations and a final full-space pass starts from the winner.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    rng = np.random.default_rng(0) if rng is None else rng
    if N == 1:
        return _finish(CircleConfig([], [1.0]), [(0, 4.0 * math.pi)], 1, cluster_tol)
    if symmetric is None:
        symmetric = N >= 3
    param = Parametrization(N, symmetric=symmetric)
    uniform = CircleConfig([1.0] * (N - 1), [1.0 / N] * N)
    starts = []
    if use_geometry_seed:
        starts.append(param.encode(geometry_seed(N)))
    base = param.encode(uniform)
    starts.append(base)
    starts += [base + rng.normal(0.0, 0.5, param.dim) for _ in range(seeds)]
    cands, trace = _run_seeds(param, starts)
    value, config = _best(cands)
    if symmetric:
        full = Parametrization(N)
        x, v = _nelder_mead(full, full.encode(config), step=1e-3)
        cands.append((v, full.config(x)))
        value, config = _best(cands)
        trace.append((len(trace), value))
    return _finish(config, trace, len(starts), cluster_tol)


@dataclass
class CriticalityReport:
    tau1: float
    tau1_bar: float
    cluster: list[tuple[float, int, int]]
    multiplicity: int
    gap: float
    critical_like: bool

    def to_dict(self) -> dict:
        return {"tau1": self.tau1, "tau1_bar": self.tau1_bar,
                "cluster": [{"tau": t, "mode": m, "multiplicity": k} for t, m, k in self.cluster],
                "multiplicity": self.multiplicity, "gap": self.gap,
                "critical_like": self.critical_like}


def criticality_report(config: CircleConfig, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> CriticalityReport:
    """The tau_1 cluster, its multiplicity and the relative gap to the next eigenvalue.

    ``critical_like`` means one mode-0 value and one mode-1 pair share tau_1.
    """
    spec = transmission_spectrum(config, cluster_tol=cluster_tol)
    cluster = [(e.tau, e.mode, e.multiplicity) for e in spec.cluster]
    modes = sorted(m for _, m, _ in cluster)
    gap = spec.next_above() / spec.tau1 - 1.0
    return CriticalityReport(spec.tau1, spec.tau1_bar, cluster, spec.multiplicity, gap,
                             spec.multiplicity == 3 and modes == [0, 1])
