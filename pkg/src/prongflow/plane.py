"""The p-prong plane and its local-model maps.

Coordinates are ``(r, theta)_p`` with ``r`` the ordinary radius of the point
in the plane and ``theta in [0, p*pi)`` the angle of the p-fold circle
parametrization (the usual polar angle multiplied by p/2).  ``r = 0`` is a
legal point of the blown-up boundary circle; there the angle alone carries
the dynamics.

The maps implemented here:

* ``phi2``      -- the linear hyperbolic map (x, y) -> (x/2, 2y)
* ``phi1``      -- its projection to the 1-prong plane through w = z^2
* ``phi_pk``    -- the p-prong local model map with rotation k, computed
                   sector-wise through the p/2-power radial chart so that
                   the conjugacy pi_p o phi_p = phi1 o pi_p holds to
                   rounding error
* ``pi_p``      -- the p-fold branched covering z -> z^p
* ``project_stable_unstable`` -- leaf projections onto the quadrant's
                   bounding prongs

Scalar entry points operate on the small frozen dataclasses below; the
``*_arrays`` functions are the vectorized numpy cores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

# Radii below this are collapsed to the boundary circle (avoids underflow
# in r**(p/2) for large p).
R_FLOOR = 1e-300

# Absolute angular tolerance for prong membership (theta mod pi/2).
PRONG_TOL = 1e-12

PI = math.pi


@dataclass(frozen=True)
class ModelParams:
    """The pair (p, k) selecting a local model: p prongs, rotation k."""

    p: int
    k: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if not 0 <= self.k < self.p:
            raise ValueError(f"k must satisfy 0 <= k < p, got k={self.k}, p={self.p}")

    @property
    def g(self) -> int:
        """gcd(k, p): number of boundary orbits of each stability type."""
        return math.gcd(self.k, self.p)

    @property
    def q(self) -> int:
        """p / gcd(k, p): common period of the prongs."""
        return self.p // self.g


@dataclass(frozen=True)
class CartesianPoint:
    x: float
    y: float


@dataclass(frozen=True)
class ProngPoint:
    """A point of the p-prong plane in (r, theta)_p coordinates."""

    r: float
    theta: float
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if not (self.r >= 0 or math.isnan(self.r)):
            raise ValueError(f"r must be >= 0, got {self.r}")
        r = 0.0 if self.r < R_FLOOR else float(self.r)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", float(normalize_theta(self.theta, self.p)))

    @property
    def on_boundary(self) -> bool:
        return self.r == 0.0


@dataclass(frozen=True)
class ProngId:
    kind: str  # "stable" | "unstable"
    index: int

    def __post_init__(self):
        if self.kind not in ("stable", "unstable"):
            raise ValueError(f"kind must be 'stable' or 'unstable', got {self.kind}")

    @property
    def angle(self) -> float:
        base = 0.0 if self.kind == "stable" else 0.5 * PI
        return base + self.index * PI


# ---------------------------------------------------------------------------
# angle bookkeeping


def normalize_theta(theta, p):
    """Reduce theta to the canonical representative in [0, p*pi)."""
    span = p * PI
    t = np.mod(theta, span)
    # mod can return span itself through rounding of negative inputs
    return np.where(t >= span, t - span, t)


def circle_dist(theta1, theta2, p):
    """Distance on the circle R / (p*pi)Z."""
    span = p * PI
    d = np.abs(np.mod(theta1 - theta2, span))
    return np.minimum(d, span - d)


def sector_of(theta, p):
    """Index m of the closed angular sector [m*pi, (m+1)*pi] containing theta."""
    m = np.floor(np.asarray(theta) / PI).astype(int)
    return np.clip(m, 0, p - 1)


def quadrant_of(theta, p):
    """Index n in [0, 2p) of the quadrant theta in [n*pi/2, (n+1)*pi/2]."""
    n = np.floor(np.asarray(theta) / (0.5 * PI)).astype(int)
    return np.clip(n, 0, 2 * p - 1)


# ---------------------------------------------------------------------------
# sector chart (r, theta)_p  <->  phi2-plane


def to_cover_arrays(r, theta, m, p):
    """Map (r, theta)_p with theta in [m*pi, (m+1)*pi] to the phi2-plane.

    The image has polar coordinates (r**(p/2), theta - m*pi); composing with
    pi_2 recovers pi_p, which is what forces the p/2 power.
    """
    rho = np.asarray(r, dtype=float) ** (p / 2.0)
    alpha = np.asarray(theta, dtype=float) - m * PI
    return rho * np.cos(alpha), rho * np.sin(alpha)


def from_cover_arrays(u, v, m, p):
    """Inverse of ``to_cover_arrays``: upper-half-plane point back to (r, theta)_p."""
    rho = np.hypot(u, v)
    alpha = np.arctan2(v, u)
    r = rho ** (2.0 / p)
    return r, normalize_theta(m * PI + alpha, p)


def sector_chart(pt, direction: str, sector_m: int, p: Optional[int] = None):
    """Scalar chart between the p-prong plane and the phi2-plane.

    ``to_cover`` takes a ProngPoint with theta in [m*pi, (m+1)*pi] to a
    CartesianPoint of the phi2-plane; ``from_cover`` inverts it for cover
    points in the closed upper half-plane (the target p must be given).
    """
    if direction == "to_cover":
        if not isinstance(pt, ProngPoint):
            raise TypeError("to_cover expects a ProngPoint")
        lo, hi = sector_m * PI, (sector_m + 1) * PI
        if not (lo - PRONG_TOL <= pt.theta <= hi + PRONG_TOL):
            raise ValueError(
                f"theta={pt.theta} outside sector [{lo}, {hi}] (m={sector_m})"
            )
        u, v = to_cover_arrays(pt.r, pt.theta, sector_m, pt.p)
        return CartesianPoint(float(u), float(v))
    if direction == "from_cover":
        if not isinstance(pt, CartesianPoint):
            raise TypeError("from_cover expects a CartesianPoint")
        if p is None:
            raise ValueError("from_cover needs the target p")
        if pt.y < -PRONG_TOL:
            raise ValueError(f"cover point must lie in the closed upper half-plane: {pt}")
        r, theta = from_cover_arrays(pt.x, max(pt.y, 0.0), sector_m, p)
        return ProngPoint(float(r), float(theta), p)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# the maps


def phi2(pt: CartesianPoint, direction: str = "forward") -> CartesianPoint:
    """The hyperbolic model map of the 2-prong (regular) plane."""
    if direction == "forward":
        return CartesianPoint(0.5 * pt.x, 2.0 * pt.y)
    if direction == "inverse":
        return CartesianPoint(2.0 * pt.x, 0.5 * pt.y)
    raise ValueError(f"unknown direction {direction!r}")


def phi1_arrays(wx, wy, inverse=False):
    """phi1 on the w-plane: conjugate of phi2 under w = z^2 (root independent)."""
    z = np.sqrt(np.asarray(wx, dtype=float) + 1j * np.asarray(wy, dtype=float))
    if inverse:
        z2 = 2.0 * z.real + 0.5j * z.imag
    else:
        z2 = 0.5 * z.real + 2.0j * z.imag
    w2 = z2 * z2
    return w2.real, w2.imag


def phi1(w: CartesianPoint, direction: str = "forward") -> CartesianPoint:
    """The 1-prong model map, the projection of phi2 through pi_2."""
    x, y = phi1_arrays(w.x, w.y, inverse=(direction == "inverse"))
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    return CartesianPoint(float(x), float(y))


def boundary_angle_arrays(theta, p, k, inverse=False):
    """Continuous extension of phi_pk to the boundary circle r = 0.

    Sector-wise theta -> m*pi + atan(4 tan(theta - m*pi)) + k*pi, written
    with atan2 so the branch is continuous across the sector.
    """
    theta = normalize_theta(theta, p)
    if inverse:
        theta = normalize_theta(theta - k * PI, p)
    m = sector_of(theta, p)
    alpha = theta - m * PI
    if inverse:
        alpha2 = np.arctan2(np.sin(alpha), 4.0 * np.cos(alpha))
    else:
        alpha2 = np.arctan2(4.0 * np.sin(alpha), np.cos(alpha))
    out = m * PI + alpha2
    if not inverse:
        out = out + k * PI
    return normalize_theta(out, p)


def phi_pk_arrays(r, theta, p, k, inverse=False):
    """Vectorized phi_pk (or its inverse) on (r, theta)_p arrays.

    Interior points go through the sector chart, phi2, and back; the sector
    index is preserved because phi2 fixes the closed upper half-plane.
    Boundary points (r = 0) follow the blown-up circle map.
    """
    r = np.asarray(r, dtype=float)
    theta = normalize_theta(np.asarray(theta, dtype=float), p)
    scalar = r.ndim == 0
    r, theta = np.atleast_1d(r), np.atleast_1d(theta)

    th_work = normalize_theta(theta - k * PI, p) if inverse else theta
    m = sector_of(th_work, p)
    u, v = to_cover_arrays(r, th_work, m, p)
    if inverse:
        u, v = 2.0 * u, 0.5 * v
    else:
        u, v = 0.5 * u, 2.0 * v
    r2, th2 = from_cover_arrays(u, np.maximum(v, 0.0), m, p)
    if not inverse:
        th2 = normalize_theta(th2 + k * PI, p)

    boundary = r < R_FLOOR
    if np.any(boundary):
        th_b = boundary_angle_arrays(theta[boundary], p, k, inverse=inverse)
        r2 = np.where(boundary, 0.0, r2)
        th2 = np.asarray(th2)
        th2[boundary] = th_b
    if scalar:
        return float(r2[0]), float(th2[0])
    return r2, th2


def phi_pk(pt: ProngPoint, params: ModelParams, direction: str = "forward") -> ProngPoint:
    """The local model map phi_pk = phi_p o R_{k/p} on a single point."""
    if pt.p != params.p:
        raise ValueError(f"point lives in p={pt.p}, model has p={params.p}")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    r, theta = phi_pk_arrays(pt.r, pt.theta, params.p, params.k,
                             inverse=(direction == "inverse"))
    return ProngPoint(r, theta, params.p)


def phi_pk_iter_arrays(r, theta, p, k, n):
    """Apply phi_pk n times (n may be negative)."""
    inv = n < 0
    for _ in range(abs(int(n))):
        r, theta = phi_pk_arrays(r, theta, p, k, inverse=inv)
    return r, theta


def pi_p_arrays(r, theta, p):
    """The branched covering z -> z^p in (r, theta)_p coordinates."""
    rad = np.asarray(r, dtype=float) ** p
    ang = 2.0 * np.asarray(theta, dtype=float)
    return rad * np.cos(ang), rad * np.sin(ang)


def pi_p(pt: ProngPoint) -> CartesianPoint:
    x, y = pi_p_arrays(pt.r, pt.theta, pt.p)
    return CartesianPoint(float(x), float(y))


# ---------------------------------------------------------------------------
# prongs, quadrants, leaf projections


def prong_of(pt: ProngPoint) -> Optional[ProngId]:
    """ProngId of pt when it lies on a prong ray, else None."""
    rem = math.fmod(pt.theta, PI)
    if rem < PRONG_TOL or PI - rem < PRONG_TOL:
        return ProngId("stable", int(round(pt.theta / PI)) % pt.p)
    if abs(rem - 0.5 * PI) < PRONG_TOL:
        return ProngId("unstable", int(round((pt.theta - 0.5 * PI) / PI)) % pt.p)
    return None


def project_stable_unstable(pt: ProngPoint):
    """Leaf projections of pt onto the prongs bounding its quadrant.

    Returns (pi_s, pi_u, quadrant, prong): the stable-prong point on the
    same unstable leaf, the unstable-prong point on the same stable leaf,
    the quadrant index, and the ProngId when pt itself lies on a prong.
    """
    if pt.r <= 0.0:
        raise ValueError("leaf projections need r > 0")
    n = int(quadrant_of(pt.theta, pt.p))
    m = n // 2
    u, v = to_cover_arrays(pt.r, pt.theta, m, pt.p)
    u, v = float(u), float(v)
    p = pt.p
    if u >= 0.0:
        theta_s = m * PI
    else:
        theta_s = (m + 1) * PI
    pi_s = ProngPoint(abs(u) ** (2.0 / p), theta_s, p)
    pi_u = ProngPoint(max(v, 0.0) ** (2.0 / p), m * PI + 0.5 * PI, p)
    return pi_s, pi_u, n, prong_of(pt)


def prong_period(params: ModelParams, prong: Optional[ProngId] = None) -> int:
    """Smallest N with phi_pk^N mapping the prong into itself: p / gcd(k, p)."""
    return params.q
