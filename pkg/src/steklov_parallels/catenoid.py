"""Balanced stacks of catenoids with flat caps in the unit ball.

Everything lives in the generating half-plane ``{(t, r): r > 0}``; the axis of
revolution is the t-axis. A catenary ``r(t) = a cosh((t - b) / a)`` meets the
unit circle at a right point P1 and a left point P2. Each point has a latitude
``beta`` (polar angle of the radius vector from the positive t-axis) and a
contact angle ``alpha`` between the inward tangent of the curve and the
circle's tangent. At P1 the circle tangent points towards (-1, 0); at P2 it is
the mirror image, pointing towards (1, 0), so a catenary symmetric about the
r-axis has equal contact angles at its two ends.

A balanced configuration of order N strings N - 1 catenaries through
latitudes ``beta_1 < ... < beta_N`` with equal contact angles on both sides of
every interior circle, plus two flat caps: ``alpha_1 = beta_1`` at the first
circle and ``alpha_N = pi - beta_N`` at the last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cylinder import CircleConfig
from .errors import BracketNotFound, DomainError, IterationCap, Tangent
from .numerics import Bracket, find_root

TANGENT_TOL = 1e-13
ROOT_TOL = 1e-15
SEQUENCE_CAP = 10_000
PRESCAN_SAMPLES = 2000
PRESCAN_MARGIN = 1e-4

_EXP_CAP = 300.0  # cosh(cap)**2 must stay finite


def _cosh(x: float) -> float:
    return math.cosh(min(max(x, -_EXP_CAP), _EXP_CAP))


def _sinh(x: float) -> float:
    return math.sinh(min(max(x, -_EXP_CAP), _EXP_CAP))


@dataclass(frozen=True)
class Catenary:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"catenary waist must be positive, got {self.a}")

    def s(self, t: float) -> float:
        """Conformal axial coordinate ``(t - b) / a``."""
        return (t - self.b) / self.a

    def r(self, t: float) -> float:
        return self.a * _cosh(self.s(t))

    def dr(self, t: float) -> float:
        return _sinh(self.s(t))

    def g(self, t: float) -> float:
        """``|(t, r(t))|^2 - 1``; negative inside the unit disk."""
        return t * t + self.r(t) ** 2 - 1.0

    def band_area(self, s_lo: float, s_hi: float) -> float:
        """Area of the surface of revolution between two s-values.

        With ``r = a cosh s`` and ``dt = a ds`` the area element is
        ``2 pi a^2 cosh^2 s ds``.
        """
        prim = lambda s: s + math.sinh(s) * math.cosh(s)
        return math.pi * self.a ** 2 * (prim(s_hi) - prim(s_lo))


@dataclass(frozen=True)
class AnglePair:
    beta: float
    alpha: float

    def valid(self) -> bool:
        return 0 < self.beta < math.pi and 0 < self.alpha < math.pi - self.beta


def circle_intersections(c: Catenary) -> tuple[float, float] | None:
    """Abscissae ``(t2, t1)``, ``t2 < t1``, where the catenary crosses the unit circle.

    ``g(t) = t^2 + r(t)^2 - 1`` is strictly convex: find its minimizer from
    ``g'(t) = 2t + a sinh(2s) = 0``, then bracket each side. Returns ``None``
    when the curve misses the open disk.

    Raises
    ------
    Tangent
        If the curve only touches the circle.
    """
    if c.a >= 1.0:
        return None
    dg = lambda t: 2.0 * t + c.a * _sinh(2.0 * c.s(t))
    # g' is increasing and g'(-1) < 0 < g'(1) whenever the minimizer can lie in (-1, 1)
    lo, hi = -1.0, 1.0
    d_lo, d_hi = dg(lo), dg(hi)
    if d_lo >= 0 or d_hi <= 0:
        return None
    t_min = find_root(dg, Bracket(lo, hi, d_lo, d_hi), tol=ROOT_TOL)
    g_min = c.g(t_min)
    if abs(g_min) < TANGENT_TOL:
        raise Tangent(f"{c} touches the unit circle at t = {t_min}")
    if g_min > 0:
        return None
    left = find_root(c.g, Bracket(-1.0, t_min, c.g(-1.0), g_min), tol=ROOT_TOL)
    right = find_root(c.g, Bracket(t_min, 1.0, g_min, c.g(1.0)), tol=ROOT_TOL)
    return left, right


def _angle(dx: float, dy: float, ux: float, uy: float) -> float:
    # angle between (dx, dy) and the unit vector (ux, uy)
    cross = dx * uy - dy * ux
    dot = dx * ux + dy * uy
    return math.atan2(abs(cross), dot)


def measure_angles(c: Catenary) -> tuple[AnglePair, AnglePair]:
    """Latitude and contact angle at the right (P1) and left (P2) intersections."""
    hit = circle_intersections(c)
    if hit is None:
        raise DomainError(f"{c} does not cross the unit circle")
    t2, t1 = hit
    b1 = math.atan2(c.r(t1), t1)
    # inward tangent (-1, -r') against the circle tangent (-sin b, cos b)
    a1 = _angle(-1.0, -c.dr(t1), -math.sin(b1), math.cos(b1))
    b2 = math.atan2(c.r(t2), t2)
    # inward tangent (1, r') against the mirrored circle tangent (sin b, -cos b)
    a2 = _angle(1.0, c.dr(t2), math.sin(b2), -math.cos(b2))
    return AnglePair(b1, a1), AnglePair(b2, a2)


def catenary_from_angles(p: AnglePair) -> Catenary:
    """The unique catenary whose right intersection has latitude and contact angle ``p``.

    The slope angle at P1 is ``psi = beta + alpha - pi/2``, so ``sinh s1 = tan psi``
    and ``a cosh s1 = sin beta`` give ``a = sin beta sin(beta + alpha)``.
    """
    if not 0 < p.beta < math.pi or not p.alpha > 0:
        raise DomainError(f"invalid angle pair {p}")
    if p.beta + p.alpha >= math.pi:
        raise DomainError(f"beta + alpha = {p.beta + p.alpha} >= pi: no catenary")
    psi = p.beta + p.alpha - 0.5 * math.pi
    s1 = math.asinh(math.tan(psi))
    a = math.sin(p.beta) * math.sin(p.beta + p.alpha)
    b = math.cos(p.beta) - a * s1
    return Catenary(a, b)


def advance(p: AnglePair) -> AnglePair:
    """Pair at the far (left) end of the catenary started from ``p``."""
    return measure_angles(catenary_from_angles(p))[1]


@dataclass
class Sequence:
    """Angle pairs of the shooting sequence started at ``(beta, beta)``.

    ``status`` is ``"overshoot"`` when the last pair has ``alpha + beta > pi``
    (no further catenary), ``"closed"`` when it hits ``pi`` within ``close_tol``
    (a flat cap completes the configuration) and ``"truncated"`` when
    ``max_pairs`` were produced first.
    """

    beta_init: float
    pairs: list[AnglePair]
    status: str

    @property
    def betas(self) -> list[float]:
        return [p.beta for p in self.pairs]

    @property
    def alphas(self) -> list[float]:
        return [p.alpha for p in self.pairs]

    @property
    def order(self) -> int:
        """N(beta) when the sequence ended, else a lower bound."""
        if self.status == "overshoot":
            return len(self.pairs) - 1
        return len(self.pairs)


def build_sequence(beta_init: float, max_pairs: int | None = None,
                   close_tol: float = 1e-12) -> Sequence:
    if not 0 < beta_init < 0.5 * math.pi:
        raise DomainError(f"initial latitude must lie in (0, pi/2), got {beta_init}")
    cap = SEQUENCE_CAP if max_pairs is None else max_pairs
    pairs = [AnglePair(beta_init, beta_init)]
    while True:
        p = pairs[-1]
        excess = p.alpha + p.beta - math.pi
        if excess > close_tol:
            return Sequence(beta_init, pairs, "overshoot")
        if excess >= -close_tol:
            return Sequence(beta_init, pairs, "closed")
        if len(pairs) >= cap:
            if max_pairs is None:
                raise IterationCap(f"no termination after {cap} pairs from beta = {beta_init}")
            return Sequence(beta_init, pairs, "truncated")
        pairs.append(advance(p))


def parity_residual(beta_init: float, N: int) -> float | None:
    """Symmetry defect of the sequence from ``beta_init`` for order ``N``.

    ``beta_{k+1} - pi/2`` for ``N = 2k + 1`` and ``beta_k + beta_{k+1} - pi``
    for ``N = 2k``; ``None`` if the sequence stops before pair ``k + 1``.
    """
    k = N // 2
    seq = build_sequence(beta_init, max_pairs=k + 1)
    if len(seq.pairs) < k + 1:
        return None
    b = seq.betas
    if N % 2:
        return b[k] - 0.5 * math.pi
    return b[k - 1] + b[k] - math.pi


@dataclass(frozen=True)
class Piece:
    catenary: Catenary
    t_range: tuple[float, float]
    s_range: tuple[float, float]

    @property
    def spacing(self) -> float:
        return self.s_range[1] - self.s_range[0]

    def area(self) -> float:
        return self.catenary.band_area(*self.s_range)


@dataclass
class BalancedConfiguration:
    latitudes: list[float]
    contact_angles: list[float]
    pieces: list[Piece]
    beta_init: float = math.nan
    residuals: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.latitudes)

    @property
    def cap_latitudes(self) -> tuple[float, float]:
        return self.latitudes[0], self.latitudes[-1]

    def to_dict(self) -> dict:
        derived = derive_cylinder_data(self)
        return {
            "N": self.N,
            "beta_init": self.beta_init,
            "latitudes": self.latitudes,
            "contact_angles": self.contact_angles,
            "catenaries": [
                {"a": p.catenary.a, "b": p.catenary.b, "t_range": list(p.t_range),
                 "s_range": list(p.s_range)}
                for p in self.pieces
            ],
            "area": configuration_area(self),
            "derived": {"spacings": list(derived.config.spacings),
                        "weights": list(derived.config.weights),
                        "mass": derived.total_mass},
            "residuals": self.residuals,
        }


def _assemble(beta_init: float, N: int) -> BalancedConfiguration:
    pairs = [AnglePair(beta_init, beta_init)]
    pieces = []
    for _ in range(N - 1):
        c = catenary_from_angles(pairs[-1])
        t2, t1 = circle_intersections(c)
        pieces.append(Piece(c, (t2, t1), (c.s(t2), c.s(t1))))
        pairs.append(advance(pairs[-1]))
    cfg = BalancedConfiguration([p.beta for p in pairs], [p.alpha for p in pairs], pieces,
                                beta_init)
    cfg.residuals = balance_residuals(cfg)
    return cfg


def balance_residuals(cfg: BalancedConfiguration) -> dict:
    """Re-measure every piece and report how far the balance conditions are off."""
    N = cfg.N
    b = cfg.latitudes
    out = {"cap_first": abs(cfg.contact_angles[0] - b[0]),
           "cap_last": abs(cfg.contact_angles[-1] - (math.pi - b[-1])),
           "interior": 0.0, "latitude": 0.0, "on_circle": 0.0,
           "symmetry": max(abs(b[i] + b[N - 1 - i] - math.pi) for i in range(N))}
    measured = [measure_angles(p.catenary) for p in cfg.pieces]
    for i, (right, left) in enumerate(measured):
        out["latitude"] = max(out["latitude"], abs(right.beta - b[i]), abs(left.beta - b[i + 1]))
        c = cfg.pieces[i].catenary
        for t in cfg.pieces[i].t_range:
            out["on_circle"] = max(out["on_circle"], abs(math.hypot(t, c.r(t)) - 1.0))
        if i == 0:
            out["cap_first"] = max(out["cap_first"], abs(right.alpha - b[0]))
        if i == len(measured) - 1:
            out["cap_last"] = max(out["cap_last"], abs(left.alpha - (math.pi - b[-1])))
    for i in range(1, len(measured)):
        out["interior"] = max(out["interior"], abs(measured[i - 1][1].alpha - measured[i][0].alpha))
    out["balance"] = max(out["cap_first"], out["cap_last"], out["interior"])
    return out


def double_disk() -> BalancedConfiguration:
    half = 0.5 * math.pi
    cfg = BalancedConfiguration([half], [half], [], half)
    cfg.residuals = {"balance": 0.0, "symmetry": 0.0, "cap_first": 0.0, "cap_last": 0.0,
                     "interior": 0.0, "latitude": 0.0, "on_circle": 0.0}
    return cfg


def _is_low(beta: float, N: int) -> bool:
    # True when beta lies below the symmetric solution for order N
    r = parity_residual(beta, N)
    return r is not None and r < 0


@lru_cache(maxsize=None)
def _shoot(N: int, samples: int) -> float:
    grid = np.linspace(PRESCAN_MARGIN, 0.5 * math.pi - PRESCAN_MARGIN, samples)
    low = [_is_low(float(x), N) for x in grid]
    # the predicate must read True...True False...False along the grid
    switches = sum(1 for u, v in zip(low, low[1:]) if u != v)
    if not low[0] or low[-1] or switches != 1:
        raise BracketNotFound(f"order {N}: sign pattern {switches} switches on {samples} samples")
    j = low.index(False)
    lo, hi = float(grid[j - 1]), float(grid[j])
    while hi - lo > 4 * np.finfo(float).eps * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _is_low(mid, N):
            lo = mid
        else:
            hi = mid
    r_lo, r_hi = parity_residual(lo, N), parity_residual(hi, N)
    if r_hi is None or r_lo is None or abs(r_hi) > 1e-9:
        # converged onto the edge where the sequence stops, not onto a root
        raise BracketNotFound(f"order {N}: bisection ended at a termination edge near {hi}")
    return lo if abs(r_lo) <= abs(r_hi) else hi


def find_symmetric_balanced(N: int, samples: int = PRESCAN_SAMPLES) -> BalancedConfiguration:
    """The symmetric balanced configuration of order ``N``.

    Shoots on the initial latitude: the sequence started from a smaller
    latitude stays longer, so "sequence reaches pair k+1 with negative parity
    residual" holds exactly on an initial interval. A grid scan checks that
    pattern and brackets the switch, bisection pins it down.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if N == 1:
        return double_disk()
    return _assemble(_shoot(N, samples), N)


def configuration_area(cfg: BalancedConfiguration) -> float:
    b1, bN = cfg.cap_latitudes
    caps = math.pi * math.sin(b1) ** 2 + math.pi * math.sin(bN) ** 2
    return caps + math.fsum(p.area() for p in cfg.pieces)


@dataclass(frozen=True)
class DerivedCylinderData:
    config: CircleConfig
    masses: tuple[float, ...]
    total_mass: float


def derive_cylinder_data(cfg: BalancedConfiguration) -> DerivedCylinderData:
    """Conformal cylinder picture of a balanced configuration.

    The catenoid over ``r = a cosh s`` has metric ``a^2 cosh^2 s (ds^2 + dtheta^2)``,
    so gap i is the s-extent of piece i. The boundary mass at circle i is
    ``4 pi sin(alpha_i) sin(beta_i)``: the two unit conormals add up to
    ``2 sin(alpha_i)`` times the position vector, over a circle of length
    ``2 pi sin(beta_i)``.
    """
    masses = tuple(4.0 * math.pi * math.sin(a) * math.sin(b)
                   for a, b in zip(cfg.contact_angles, cfg.latitudes))
    spacings = [p.spacing for p in cfg.pieces]
    return DerivedCylinderData(CircleConfig.from_masses(spacings, masses), masses,
                               math.fsum(masses))
