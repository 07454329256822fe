"""Dehn-Fried surgery arithmetic on the boundary torus of a blown-up model.

The homology basis is fixed through the straightened flat model

    T_{p,k} = R^2_{(u,t)} / < (1, 0), (k/p, 1) >

with mu = [(1, 0)] the fiber circle class (collapsed by the trivial
blow-down) and nu = [(k/p, 1)] the section class.  Boundary periodic
orbits are vertical lines; one closes after q = p/gcd(k, p) fundamental
domains and represents sigma0 = (-k/g, q).

A surgery class sigma = (a, b) produces a circle K * gcd(k, p)-prong
singularity, with K the intersection number of a foliation leaf with a
boundary orbit.  Three independent computations of the prong count are
provided: the basis formula |a p + b k|, the determinant |det(sigma,
sigma0)| * g, and a geometric crossing count on the flat torus.

All torus combinatorics are done in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .plane import ModelParams


@dataclass(frozen=True)
class HomologyClass:
    """Integer pair (a, b) in the (mu, nu) basis of the boundary torus."""

    a: int
    b: int

    @property
    def indivisible(self) -> bool:
        return math.gcd(abs(self.a), abs(self.b)) == 1

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(-self.a, -self.b)

    def det(self, other: "HomologyClass") -> int:
        return self.a * other.b - self.b * other.a


@dataclass(frozen=True)
class SurgeryVerdict:
    K: int
    g: int
    p_new: int
    expansive: bool
    sigma0: HomologyClass

    def to_record(self, sigma: HomologyClass, params: ModelParams) -> dict:
        return {
            "p": params.p,
            "k": params.k,
            "sigma": [sigma.a, sigma.b],
            "sigma0": [self.sigma0.a, self.sigma0.b],
            "K": self.K,
            "g": self.g,
            "p_new": self.p_new,
            "expansive": self.expansive,
        }


@dataclass(frozen=True)
class LeafCurve:
    """A closed leaf of the good foliation, as a segment in the lifted flat model.

    ``vertices`` are lift coordinates (u, t); the curve closes through the
    lattice identification.  For admissible classes a single straight
    segment suffices.
    """

    vertices: Tuple[Tuple[Fraction, Fraction], ...]
    sigma: HomologyClass
    params: ModelParams

    @property
    def displacement(self) -> Tuple[Fraction, Fraction]:
        (u0, t0), (u1, t1) = self.vertices[0], self.vertices[-1]
        return u1 - u0, t1 - t0

    def is_transverse(self) -> bool:
        """No segment tangent parallel to the suspension direction (0, 1)."""
        for (u0, _), (u1, _) in zip(self.vertices, self.vertices[1:]):
            if u1 == u0:
                return False
        return True

    def is_simple(self) -> bool:
        """No self-intersection on the torus: no interior lattice multiple."""
        du, dt = self.displacement
        p, k = self.params.p, self.params.k
        b_max = int(abs(dt)) + 1
        for n in range(-b_max, b_max + 1):
            # lattice point m*(1,0) + n*(k/p,1) on the open segment (0, w)?
            if dt != 0:
                lam = Fraction(n) / dt
            else:
                if n != 0:
                    continue
                lam = None
            if lam is not None:
                if not 0 < lam < 1:
                    continue
                m = lam * du - Fraction(n * k, p)
                if m.denominator == 1:
                    return False
            else:
                # horizontal curve: interior points m*(1,0) with 0 < m/du < 1
                for m in range(-abs(int(du)), abs(int(du)) + 1):
                    if m != 0 and 0 < Fraction(m) / du < 1:
                        return False
        return True

    def winding_class(self) -> HomologyClass:
        """Recover (a, b) from the lift displacement in the lattice basis."""
        du, dt = self.displacement
        b = dt
        a = du - b * Fraction(self.params.k, self.params.p)
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("curve displacement is not a lattice class")
        return HomologyClass(int(a), int(b))


# ---------------------------------------------------------------------------
# arithmetic


def sigma0(params: ModelParams) -> HomologyClass:
    """Class of a boundary periodic orbit: vertical line closing after q lifts."""
    return HomologyClass(-params.k // params.g, params.q)


def admissible(sigma: HomologyClass, params: ModelParams) -> bool:
    s0 = sigma0(params)
    return sigma.indivisible and sigma != s0 and sigma != -s0


def surgery_verdict(sigma: HomologyClass, params: ModelParams) -> SurgeryVerdict:
    """Prong count and expansivity after surgery along the class sigma."""
    if not admissible(sigma, params):
        raise ValueError(f"inadmissible surgery class {sigma} for (p,k)=({params.p},{params.k})")
    g = params.g
    p_new = abs(sigma.a * params.p + sigma.b * params.k)
    K = p_new // g
    if K * g != p_new:
        raise AssertionError("p_new is not a multiple of gcd(k, p)")
    return SurgeryVerdict(K=K, g=g, p_new=p_new, expansive=(p_new != 1),
                          sigma0=sigma0(params))


# ---------------------------------------------------------------------------
# leaves and geometric intersection counts


def leaf_curve(sigma: HomologyClass, params: ModelParams) -> LeafCurve:
    """A simple closed transverse representative of sigma in the flat model.

    The straight segment in direction a*(1,0) + b*(k/p,1); the vertical
    direction only occurs for sigma parallel to sigma0, which is
    inadmissible, so it is reported as an error.
    """
    if not admissible(sigma, params):
        raise ValueError(f"inadmissible surgery class {sigma}")
    du = Fraction(sigma.a) + Fraction(sigma.b * params.k, params.p)
    dt = Fraction(sigma.b)
    if du == 0:
        raise ValueError(f"class {sigma} has no transverse straight representative")
    curve = LeafCurve(vertices=((Fraction(0), Fraction(0)), (du, dt)),
                      sigma=sigma, params=params)
    if not curve.is_transverse():
        raise ValueError(f"representative of {sigma} is not transverse")
    if not curve.is_simple():
        raise ValueError(f"representative of {sigma} is not simple")
    if curve.winding_class() != sigma:
        raise AssertionError("leaf curve does not realize the requested class")
    return curve


def brute_force_K(sigma: HomologyClass, params: ModelParams) -> int:
    """Geometric count of leaf / boundary-orbit intersections in the flat model.

    The lifts of a vertical periodic orbit are the lines u in u0 + (g/p) Z;
    one leaf period crosses each line at most once, so the count is the
    number of grid lines met by the u-span of the leaf lift.
    """
    curve = leaf_curve(sigma, params)
    du, _ = curve.displacement
    spacing = Fraction(params.g, params.p)
    # generic offset, avoids endpoint coincidences
    u0 = spacing * Fraction(3, 7)
    lo, hi = (Fraction(0), du) if du > 0 else (du, Fraction(0))
    j_min = math.floor((lo - u0) / spacing) + 1
    j_max = math.ceil((hi - u0) / spacing) - 1
    count = 0
    for j in range(j_min, j_max + 1):
        if lo < u0 + j * spacing < hi:
            count += 1
    return count


# ---------------------------------------------------------------------------
# the surgered local model


def _vertical_return(u_star: Fraction, t_star: Fraction, du: Fraction, dt: Fraction,
                     params: ModelParams) -> Tuple[Fraction, Fraction]:
    """First hit of the leaf (all lattice translates) above (u_star, t_star).

    A translate by m*(1,0) + n*(k/p, 1) meets the vertical line u = u_star at
    t = c*(u_star - m - n*k/p) + n with c = dt/du; for fixed n the minimum
    above t_star over m is a single exact remainder.  Returns (t_hit,
    lambda) with lambda the leaf parameter of the hit.
    """
    p, k = params.p, params.k
    if dt == 0:
        # horizontal leaf: every translate t = n covers all of u
        t_hit = Fraction(math.floor(t_star)) + 1
        lam = (u_star - Fraction(t_hit * k, p)) / du
        return t_hit, lam
    c = dt / du
    span = 2 * (params.q + p + int(abs(dt)) + int(abs(du)) + 4)
    best: Optional[Tuple[Fraction, Fraction, int]] = None
    step = abs(c)
    for n in range(-span, span + 1):
        A = c * (u_star - Fraction(n * k, p)) + n
        rem = (A - t_star) % step
        t_hit = t_star + (rem if rem > 0 else step)
        if best is None or t_hit < best[0]:
            lam = (t_hit - n) / dt
            best = (t_hit, lam, n)
    assert best is not None
    return best[0], best[1]


def surgered_local_model(sigma: HomologyClass, params: ModelParams,
                         estimate_rotation: bool = True) -> ModelParams:
    """Local model parameters at the surgered orbit.

    The prong count is exact (Remark-3.12 arithmetic).  The rotation is a
    combinatorial estimate from the marker successor map on the leaf: the
    p' stable-prong markers are the leaf's crossings with the vertical
    prong lines u in (1/p) Z, and flowing a marker vertically to its next
    leaf hit shifts the marker index by a constant, taken as k'.
    """
    verdict = surgery_verdict(sigma, params)
    p_new = verdict.p_new
    if p_new < 2:
        raise ValueError("surgery produces a 1-prong singularity: no local model")
    if not estimate_rotation:
        return ModelParams(p_new, 0)

    curve = leaf_curve(sigma, params)
    du, dt = curve.displacement
    # markers: crossings with u = j/p, at leaf parameter lam_j = j / (p*du)
    sign = 1 if du > 0 else -1
    shifts = set()
    for idx in range(p_new):
        j = sign * idx
        lam = Fraction(j, params.p) / du
        u_star = Fraction(j, params.p)
        t_star = lam * dt
        _, lam_hit = _vertical_return(u_star, t_star, du, dt, params)
        frac_pos = (lam_hit % 1) * p_new
        if frac_pos.denominator != 1:
            raise AssertionError("vertical return did not land on a marker")
        shifts.add((int(frac_pos) - idx) % p_new)
    if len(shifts) != 1:
        raise AssertionError(f"successor map is not a cyclic shift: {sorted(shifts)}")
    return ModelParams(p_new, shifts.pop())


def inverse_surgery_search(sigma: HomologyClass, params: ModelParams,
                           bound: int = 50) -> Optional[HomologyClass]:
    """First class (by |a|+|b|, then lexicographic) undoing the prong count.

    Searches classes on the surgered model whose own verdict restores the
    original prong count p; existence at this combinatorial level mirrors
    the inverse-surgery statement.
    """
    if not surgery_verdict(sigma, params).expansive:
        raise ValueError("inverse surgery is only defined after an expansive surgery")
    model2 = surgered_local_model(sigma, params, estimate_rotation=True)
    candidates: List[Tuple[int, int, int]] = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            candidates.append((abs(a) + abs(b), a, b))
    candidates.sort()
    for _, a, b in candidates:
        cand = HomologyClass(a, b)
        if not admissible(cand, model2):
            continue
        if surgery_verdict(cand, model2).p_new == params.p:
            return cand
    return None


def scan_classes(params: ModelParams, box: int):
    """All admissible classes with |a|, |b| <= box, with their verdicts."""
    rows = []
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            cand = HomologyClass(a, b)
            if admissible(cand, params):
                rows.append((cand, surgery_verdict(cand, params)))
    return rows
