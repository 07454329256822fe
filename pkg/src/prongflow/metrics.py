"""Two distances on the punctured / blown-up p-prong plane.

* ``d_pol``  -- flat cylinder metric dr^2 + dtheta^2, the metric of the
  blow-up chart.  Extends to r = 0.
* ``d_eucl`` -- geodesic distance of the cone metric dr^2 + r^2 dtheta^2
  of total angle p*pi.  For p = 2 this is the ordinary planar distance.

The apex rule for ``d_eucl`` (path through the cone point once the angular
gap exceeds pi) coincides with the flat-sector distance on every quadrant,
which is the only place the comparison arguments need it.
"""

from __future__ import annotations

import numpy as np

from .plane import PI, ProngPoint, circle_dist, normalize_theta

_QUAD_TOL = 1e-9  # slack for quadrant base-angle checks


def _check_pair(a: ProngPoint, b: ProngPoint):
    if a.p != b.p:
        raise ValueError(f"points live in different models: p={a.p} vs p={b.p}")


def d_pol_arrays(r1, t1, r2, t2, p):
    dr = np.asarray(r1, dtype=float) - np.asarray(r2, dtype=float)
    dth = circle_dist(t1, t2, p)
    return np.hypot(dr, dth)


def d_eucl_arrays(r1, t1, r2, t2, p):
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    dth = circle_dist(t1, t2, p)
    # law of cosines in the developed cone, written in the cancellation-free
    # form (r1 - r2)^2 + 4 r1 r2 sin^2(dth / 2); apex path beyond gap pi
    s = np.sin(0.5 * dth)
    flat = np.sqrt((r1 - r2) ** 2 + 4.0 * r1 * r2 * s * s)
    return np.where(dth <= PI, flat, r1 + r2)


def d_pol(a: ProngPoint, b: ProngPoint) -> float:
    """Flat-cylinder distance; legal on boundary points (r = 0)."""
    _check_pair(a, b)
    if a == b:
        return 0.0
    return float(d_pol_arrays(a.r, a.theta, b.r, b.theta, a.p))


def d_eucl(a: ProngPoint, b: ProngPoint) -> float:
    """Cone geodesic distance of total angle p*pi."""
    _check_pair(a, b)
    if a == b:
        return 0.0
    return float(d_eucl_arrays(a.r, a.theta, b.r, b.theta, a.p))


def comparison_constant(R: float) -> float:
    """C(R) with d_eucl <= C(R) * d_pol on the disk {r <= R}.

    On the flat branch 1 - cos(dth) <= dth^2 / 2 gives the factor max(1, R);
    on the apex branch r1 + r2 <= 2R <= (2R/pi) * dth since dth > pi.
    """
    return max(1.0, R, 2.0 * R / PI)


def quadrant_isometry(p: int, q: int, theta0: float, theta1: float):
    """The radius-preserving map between quadrants of the p- and q-prong planes.

    theta0, theta1 are the quadrant base angles (multiples of pi/2).  The
    returned map sends (r, theta)_p with theta in [theta0, theta0 + pi/2]
    to (r, theta + theta1 - theta0)_q and preserves both distances there.
    """
    for name, val, span in (("theta0", theta0, p), ("theta1", theta1, q)):
        ratio = val / (0.5 * PI)
        if abs(ratio - round(ratio)) > _QUAD_TOL:
            raise ValueError(f"{name}={val} is not a multiple of pi/2")
        if not -_QUAD_TOL <= val <= span * PI + _QUAD_TOL:
            raise ValueError(f"{name}={val} is not a quadrant base angle for p={span}")

    shift = theta1 - theta0

    def iso(pt: ProngPoint) -> ProngPoint:
        if pt.p != p:
            raise ValueError(f"expected a point of the {p}-prong plane, got p={pt.p}")
        rel = pt.theta - theta0
        if not -_QUAD_TOL <= rel <= 0.5 * PI + _QUAD_TOL:
            raise ValueError(f"theta={pt.theta} outside quadrant [{theta0}, {theta0 + PI/2}]")
        return ProngPoint(pt.r, normalize_theta(pt.theta + shift, q), q)

    return iso


def noneq_witness(p: int, n: int):
    """Pairs that are d_eucl-close but d_pol-separated near the origin.

    Returns (z, z', eps) with d_pol(z, z') = p*pi/2 >= eps while
    d_eucl(z, z') <= 2/n.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    z = ProngPoint(1.0 / n, 0.0, p)
    zp = ProngPoint(1.0 / n, p * PI / 2.0, p)
    return z, zp, p * PI / 2.0
