"""Narrative demo: orbits of the p-prong plane map and its suspension.

Walks one interior orbit and one boundary orbit of the blown-up model,
printing the quantities a plot would show: radii, sector angles, and the
quadrant-chart coordinates (u = stable, v = unstable).

Run:  python3 demos/orbit_portrait.py
"""

import numpy as np

from prongflow import (
    ModelParams,
    ProngPoint,
    TorusPoint,
    boundary_orbit_census,
    flow,
    orbit_trace,
)

params = ModelParams(3, 1)
print(f"model: p={params.p}, k={params.k}  "
      f"(gcd={params.g}, prong period={params.q})")

print("\ninterior orbit from (r, theta) = (1, pi/4), fiber s = 0:")
pt = TorusPoint(ProngPoint(1.0, np.pi / 4, params.p), 0.0)
rows = orbit_trace(pt, params, np.arange(0.0, 6.0, 1.0))
print(f"{'t':>4} {'r':>9} {'theta':>9} {'u':>10} {'v':>10}  quadrant")
for t, r, theta, s, u, v, quad in rows:
    print(f"{t:4.0f} {r:9.5f} {theta:9.5f} {u:10.6f} {v:10.6f}  {quad}")
print("u halves and v doubles per unit time, while theta picks up the")
print("k*pi rotation; the orbit escapes along an unstable prong.")

print("\nboundary orbit from (r=0, theta=0.3):")
bpt = TorusPoint(ProngPoint(0.0, 0.3, params.p), 0.0)
for n in range(9):
    q = flow(bpt, float(n), params)
    print(f"  t={n}: theta = {q.plane.theta:.6f}")
print("the angle converges to an attracting (unstable-prong) angle of the")
print("Morse-Smale boundary circle map.")

print("\nboundary orbit census:", boundary_orbit_census(params))
