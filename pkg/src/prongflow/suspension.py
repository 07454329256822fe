"""The mapping-torus flows of the local models and their blow-ups.

A point of the torus is a plane point plus a fiber coordinate s in [0, 1);
flowing by t applies phi_pk once per crossed fiber identification.  Points
with r = 0 live on the boundary torus of the blown-up model, where the
first return map is the Morse-Smale circle map of the prong angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import metrics
from .plane import (
    PI,
    ModelParams,
    ProngPoint,
    boundary_angle_arrays,
    phi_pk_iter_arrays,
    prong_of,
    quadrant_of,
    sector_of,
    to_cover_arrays,
)

DIST_CAP = 1.0       # global cap of the torus distance
_MAX_EXIT_ITER = 100_000


@dataclass(frozen=True)
class TorusPoint:
    plane: ProngPoint
    s: float

    def __post_init__(self):
        s = math.fmod(float(self.s), 1.0)
        if s < 0.0:
            s += 1.0
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class GammaPoint:
    """A point of the singular periodic orbit, labelled by its fiber."""

    s: float

    def __post_init__(self):
        s = math.fmod(float(self.s), 1.0)
        if s < 0.0:
            s += 1.0
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class StandardPolygonSpec:
    """The diamond neighborhood V_c: |u| <= c and |v| <= c in each quadrant chart."""

    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")


@dataclass(frozen=True)
class ExitWindow:
    """Closure of the maximal flow interval (t_minus, t_plus) spent inside V_c."""

    t_minus: float
    t_plus: float

    def __post_init__(self):
        if not (self.t_minus <= 0.0 <= self.t_plus):
            raise ValueError("exit window must contain 0")

    @property
    def interval(self):
        return (self.t_minus, self.t_plus)

    def grid(self, step: float = 1.0 / 64.0, span: float = 8.0):
        """Evaluation times: the step grid plus all integers plus the endpoints.

        Infinite endpoints are truncated to +-span.
        """
        lo = max(self.t_minus, -span)
        hi = min(self.t_plus, span)
        ts = np.arange(lo, hi + step / 2.0, step)
        ints = np.arange(math.ceil(lo), math.floor(hi) + 1.0)
        return np.unique(np.concatenate([ts, ints, [lo, hi]]))


# ---------------------------------------------------------------------------
# flow and distance


def flow(pt, t: float, params: ModelParams):
    """Time-t image under the unit-speed vertical flow of the mapping torus."""
    if isinstance(pt, GammaPoint):
        return GammaPoint(pt.s + t)
    if pt.plane.p != params.p:
        raise ValueError(f"point lives in p={pt.plane.p}, model has p={params.p}")
    total = pt.s + t
    n = math.floor(total)
    s_new = total - n
    if s_new >= 1.0:  # rounding at the fiber identification
        n += 1
        s_new = 0.0
    r, theta = phi_pk_iter_arrays(pt.plane.r, pt.plane.theta, params.p, params.k, n)
    return TorusPoint(ProngPoint(float(r), float(theta), params.p), s_new)


def _plane_dist(kind: str, r1, t1, r2, t2, p):
    if kind == "pol":
        return metrics.d_pol_arrays(r1, t1, r2, t2, p)
    if kind == "eucl":
        return metrics.d_eucl_arrays(r1, t1, r2, t2, p)
    raise ValueError(f"unknown metric kind {kind!r}")


def _one_sided(a: TorusPoint, b: TorusPoint, params: ModelParams, kind: str) -> float:
    base = b.s - a.s
    best = math.inf
    m0 = -round(base)
    for m in (m0 - 1, m0, m0 + 1):
        ds = base + m
        if abs(ds) > 0.5 + 1e-12:
            continue
        # the lift of b at height b.s + m carries plane coordinate phi^{-m}(b)
        rb, tb = phi_pk_iter_arrays(b.plane.r, b.plane.theta, params.p, params.k, -m)
        d = math.hypot(ds, float(_plane_dist(kind, a.plane.r, a.plane.theta, rb, tb, params.p)))
        best = min(best, d)
    return best


def dist_torus(a: TorusPoint, b: TorusPoint, params: ModelParams, metric: str = "pol") -> float:
    """Fiber-aligned symmetrized distance on the mapping torus, capped at 1.

    Restricted to a single fiber it equals the plane metric (below the cap).
    ``metric`` is "pol" or "eucl"; "eucl" rejects boundary points.
    """
    if a.plane.p != params.p or b.plane.p != params.p:
        raise ValueError("points do not match the model parameters")
    if metric == "eucl" and (a.plane.r == 0.0 or b.plane.r == 0.0):
        raise ValueError("the eucl metric does not extend to the boundary; use pol")
    if a == b:
        return 0.0
    d = 0.5 * (_one_sided(a, b, params, metric) + _one_sided(b, a, params, metric))
    return min(d, DIST_CAP)


def blow_down(pt: TorusPoint):
    """Collapse the boundary circle of each fiber to the singular orbit point."""
    if pt.plane.r == 0.0:
        return GammaPoint(pt.s)
    return pt


# ---------------------------------------------------------------------------
# boundary dynamics


def boundary_circle_map(params: ModelParams, inverse: bool = False):
    """The Morse-Smale circle map of the blown-up boundary, on theta in [0, p*pi)."""

    def step(theta):
        return boundary_angle_arrays(theta, params.p, params.k, inverse=inverse)

    return step


def boundary_orbit_census(params: ModelParams) -> dict:
    """Count periodic boundary orbits by iterating the circle map on prong angles.

    Repelling orbits pass through the stable-prong angles, attracting ones
    through the unstable-prong angles; both come in gcd(k, p) orbits of
    period p / gcd(k, p).
    """
    p = params.p
    step = boundary_circle_map(params)

    def census(base_angle: float):
        orbits = 0
        period = None
        seen = set()
        for i in range(p):
            if i in seen:
                continue
            orbits += 1
            j, n = i, 0
            while True:
                theta = float(step(base_angle + j * PI))
                j = int(round((theta - base_angle) / PI)) % p
                n += 1
                seen.add(j)
                if j == i:
                    break
                if n > p:
                    raise RuntimeError("prong angle escaped the prong set")
            period = n
        return orbits, period

    repelling, period_r = census(0.0)
    attracting, period_a = census(0.5 * PI)
    if period_r != period_a:
        raise RuntimeError("attracting and repelling periods disagree")
    return {"attracting": attracting, "repelling": repelling, "period": period_r}


# ---------------------------------------------------------------------------
# standard polygons and exit windows


def cover_coords(pt: ProngPoint):
    """Signed quadrant-chart coordinates (u, v) of a plane point."""
    m = int(sector_of(pt.theta, pt.p))
    u, v = to_cover_arrays(pt.r, pt.theta, m, pt.p)
    return float(u), float(v)


def in_polygon(pt: ProngPoint, spec: StandardPolygonSpec) -> bool:
    u, v = cover_coords(pt)
    return abs(u) <= spec.c and abs(v) <= spec.c


def exit_window(pt: TorusPoint, spec: StandardPolygonSpec, params: ModelParams) -> ExitWindow:
    """Maximal flow window around 0 whose plane iterates stay inside V_c.

    A side is infinite exactly when the point lies on the corresponding
    invariant leaf of the singular orbit (a prong ray); the singular orbit
    itself is rejected.
    """
    plane = pt.plane
    if plane.r == 0.0:
        raise ValueError("exit windows are defined for interior points (r > 0)")
    if plane.p != params.p:
        raise ValueError("point does not match the model parameters")
    if not in_polygon(plane, spec):
        raise ValueError("point lies outside the polygon neighborhood V_c")

    prong = prong_of(plane)

    def first_exit(direction: int) -> float:
        r, theta = plane.r, plane.theta
        for n in range(1, _MAX_EXIT_ITER):
            r, theta = phi_pk_iter_arrays(r, theta, params.p, params.k, direction)
            if not in_polygon(ProngPoint(float(r), float(theta), params.p), spec):
                return float(n)
        raise RuntimeError("no exit found; point is numerically on an invariant leaf")

    t_plus = math.inf if (prong is not None and prong.kind == "stable") else first_exit(+1)
    t_minus = -math.inf if (prong is not None and prong.kind == "unstable") else -first_exit(-1)
    return ExitWindow(t_minus=t_minus, t_plus=t_plus)


def orbit_trace(pt: TorusPoint, params: ModelParams, times) -> list:
    """Rows (t, r, theta, s, u, v, quadrant) along the orbit, for export."""
    rows = []
    for t in times:
        q = flow(pt, float(t), params)
        u, v = cover_coords(q.plane)
        rows.append((
            float(t), q.plane.r, q.plane.theta, q.s, u, v,
            int(quadrant_of(q.plane.theta, params.p)),
        ))
    return rows
