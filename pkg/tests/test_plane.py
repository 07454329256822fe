"""Unit tests for the p-prong plane maps."""

import math

import numpy as np
import pytest

from prongflow.plane import (
    PI,
    CartesianPoint,
    ModelParams,
    ProngPoint,
    boundary_angle_arrays,
    circle_dist,
    phi1,
    phi2,
    phi_pk,
    phi_pk_arrays,
    phi_pk_iter_arrays,
    pi_p,
    pi_p_arrays,
    project_stable_unstable,
    prong_of,
    prong_period,
    sector_chart,
)

RNG = np.random.default_rng(20260823)


def test_model_params_validation():
    assert ModelParams(4, 2).g == 2
    assert ModelParams(4, 2).q == 2
    assert ModelParams(5, 2).q == 5
    with pytest.raises(ValueError):
        ModelParams(0, 0)
    with pytest.raises(ValueError):
        ModelParams(3, 3)
    with pytest.raises(ValueError):
        ModelParams(3, -1)


def test_prong_point_normalization():
    pt = ProngPoint(1.0, 3 * PI + 0.5, 3)
    assert pt.theta == pytest.approx(0.5)
    pt = ProngPoint(1.0, -0.5, 2)
    assert pt.theta == pytest.approx(2 * PI - 0.5)
    assert ProngPoint(1e-320, 1.0, 2).r == 0.0
    assert ProngPoint(0.0, 1.0, 2).on_boundary
    with pytest.raises(ValueError):
        ProngPoint(-1.0, 0.0, 2)


def test_phi2_examples():
    out = phi2(CartesianPoint(1.0, 1.0), "forward")
    assert (out.x, out.y) == (0.5, 2.0)
    out = phi2(CartesianPoint(0.0, 0.0), "forward")
    assert (out.x, out.y) == (0.0, 0.0)
    out = phi2(CartesianPoint(0.5, 2.0), "inverse")
    assert (out.x, out.y) == (1.0, 1.0)


def test_phi1_examples():
    out = phi1(CartesianPoint(1.0, 0.0))
    assert out.x == pytest.approx(0.25) and abs(out.y) < 1e-15
    out = phi1(CartesianPoint(-1.0, 0.0))
    assert out.x == pytest.approx(-4.0) and abs(out.y) < 1e-12
    out = phi1(CartesianPoint(0.0, 0.0))
    assert (out.x, out.y) == (0.0, 0.0)


def test_phi1_root_independent():
    # phi1 must not depend on the branch of the square root
    w = RNG.normal(size=200) + 1j * RNG.normal(size=200)
    for wi in w:
        out = phi1(CartesianPoint(wi.real, wi.imag))
        zeta = np.sqrt(complex(wi))
        img = (complex(zeta.real / 2, 2 * zeta.imag)) ** 2
        assert math.hypot(out.x - img.real, out.y - img.imag) < 1e-12 * (1 + abs(img))


def test_sector_chart_examples():
    out = sector_chart(ProngPoint(1.0, PI / 4, 3), "to_cover", 0)
    assert out.x == pytest.approx(math.sqrt(2) / 2)
    assert out.y == pytest.approx(math.sqrt(2) / 2)
    out = sector_chart(ProngPoint(0.7, 1.1, 2), "to_cover", 0)
    assert out.x == pytest.approx(0.7 * math.cos(1.1))
    assert out.y == pytest.approx(0.7 * math.sin(1.1))
    back = sector_chart(CartesianPoint(0.5, 0.0), "from_cover", 0, p=3)
    assert back.r == pytest.approx(0.5 ** (2.0 / 3.0))
    assert back.theta == pytest.approx(0.0)


def test_sector_chart_round_trip():
    for p in (1, 2, 3, 5, 8):
        r = RNG.uniform(0.1, 10.0, 100)
        for m in range(p):
            th = RNG.uniform(m * PI, (m + 1) * PI, 100)
            for ri, ti in zip(r, th):
                pt = ProngPoint(float(ri), float(ti), p)
                cov = sector_chart(pt, "to_cover", m)
                back = sector_chart(cov, "from_cover", m, p=p)
                assert abs(back.r - pt.r) < 1e-9 * (1 + pt.r)
                assert circle_dist(back.theta, pt.theta, p) < 1e-9


def test_phi_pk_examples():
    out = phi_pk(ProngPoint(1.0, 0.0, 3), ModelParams(3, 0))
    assert out.r == pytest.approx(2.0 ** (-2.0 / 3.0))
    assert out.theta == pytest.approx(0.0)
    out = phi_pk(ProngPoint(1.0, PI / 2, 3), ModelParams(3, 1))
    assert out.r == pytest.approx(2.0 ** (2.0 / 3.0))
    assert out.theta == pytest.approx(3 * PI / 2)
    out = phi_pk(ProngPoint(1.0, PI / 4, 3), ModelParams(3, 0))
    rho = math.sqrt(17.0 / 8.0)
    assert out.r == pytest.approx(rho ** (2.0 / 3.0), rel=1e-12)
    assert out.theta == pytest.approx(math.atan(4.0), rel=1e-12)


def test_phi_pk_inverse_round_trip():
    for p, k in ((1, 0), (2, 1), (3, 2), (5, 2), (8, 3)):
        r = RNG.uniform(0.01, 100.0, 500)
        th = RNG.uniform(0.0, p * PI, 500)
        r2, t2 = phi_pk_arrays(r, th, p, k)
        r3, t3 = phi_pk_arrays(r2, t2, p, k, inverse=True)
        assert np.abs(r3 - r).max() < 1e-9 * (1 + r.max())
        assert circle_dist(t3, th, p).max() < 1e-9


def test_conjugacy_with_phi1():
    # pi_p o phi_p = phi1 o pi_p
    for p in (1, 2, 3, 5, 8):
        r = 10.0 ** RNG.uniform(-3, 3, 400)
        th = RNG.uniform(0.0, p * PI, 400)
        r2, t2 = phi_pk_arrays(r, th, p, 0)
        lhs_x, lhs_y = pi_p_arrays(r2, t2, p)
        wx, wy = pi_p_arrays(r, th, p)
        rhs = [phi1(CartesianPoint(float(a), float(b))) for a, b in zip(wx, wy)]
        rhs_x = np.array([q.x for q in rhs])
        rhs_y = np.array([q.y for q in rhs])
        scale = np.hypot(rhs_x, rhs_y) + 1e-300
        assert (np.hypot(lhs_x - rhs_x, lhs_y - rhs_y) / scale).max() < 1e-9


def test_pi_p_examples():
    out = pi_p(ProngPoint(1.0, 0.0, 3))
    assert (out.x, out.y) == (1.0, 0.0)
    out = pi_p(ProngPoint(2.0 ** (-2.0 / 3.0), 0.0, 3))
    assert out.x == pytest.approx(0.25)
    out = pi_p(ProngPoint(1.0, PI / 2, 1))
    assert out.x == pytest.approx(-1.0) and abs(out.y) < 1e-12


def test_boundary_angle_map():
    # k=0 fixed points at prong angles with multipliers 4 and 1/4
    for p in (2, 3, 7):
        for m in range(p):
            for base, mult in ((0.0, 4.0), (0.5 * PI, 0.25)):
                th = m * PI + base
                img = float(boundary_angle_arrays(th, p, 0))
                assert circle_dist(img, th, p) < 1e-12
                h = 1e-7
                der = circle_dist(float(boundary_angle_arrays(th + h, p, 0)), img, p) / h
                assert der == pytest.approx(mult, rel=1e-5)
    # p=3, k=1: theta=0 has period 3, no fixed point
    th = 0.0
    params = ModelParams(3, 1)
    seen = []
    for _ in range(3):
        th = float(boundary_angle_arrays(th, 3, 1))
        seen.append(th)
    assert circle_dist(seen[-1], 0.0, 3) < 1e-12
    assert circle_dist(seen[0], 0.0, 3) > 0.1


def test_boundary_preserved_and_inverse():
    for p, k in ((2, 1), (4, 2), (5, 3)):
        th = RNG.uniform(0, p * PI, 200)
        fwd = boundary_angle_arrays(th, p, k)
        back = boundary_angle_arrays(fwd, p, k, inverse=True)
        assert circle_dist(back, th, p).max() < 1e-9
        r, t2 = phi_pk_arrays(np.zeros_like(th), th, p, k)
        assert np.all(r == 0.0)
        assert circle_dist(t2, fwd, p).max() < 1e-12


def test_project_stable_unstable():
    pi_s, pi_u, quad, prong = project_stable_unstable(
        ProngPoint(math.hypot(3, 5), math.atan2(5, 3), 2))
    assert pi_s.r == pytest.approx(3.0) and pi_s.theta == pytest.approx(0.0)
    assert pi_u.r == pytest.approx(5.0) and pi_u.theta == pytest.approx(PI / 2)
    assert quad == 0

    _, _, _, prong = project_stable_unstable(ProngPoint(1.0, 0.0, 2))
    assert prong is not None and prong.kind == "stable" and prong.index == 0

    pi_s, pi_u, _, _ = project_stable_unstable(ProngPoint(1.0, PI / 4, 3))
    assert pi_s.r == pytest.approx((math.sqrt(2) / 2) ** (2.0 / 3.0))
    assert pi_s.theta == pytest.approx(0.0)
    assert pi_u.r == pytest.approx((math.sqrt(2) / 2) ** (2.0 / 3.0))
    assert pi_u.theta == pytest.approx(PI / 2)


def test_projection_equivariance():
    # pi_s o phi = phi o pi_s on orbit segments staying in one quadrant family
    params = ModelParams(3, 0)
    for _ in range(50):
        pt = ProngPoint(float(RNG.uniform(0.5, 2.0)),
                        float(RNG.uniform(0.05, 0.45) * PI), 3)
        pi_s, pi_u, _, _ = project_stable_unstable(pt)
        img = phi_pk(pt, params)
        pi_s2, pi_u2, _, _ = project_stable_unstable(img)
        exp_s = phi_pk(pi_s, params)
        exp_u = phi_pk(pi_u, params)
        assert abs(pi_s2.r - exp_s.r) < 1e-9
        assert abs(pi_u2.r - exp_u.r) < 1e-9


def test_prong_rates_and_period():
    # stable prong radius contracts by exactly 2^{-2/p} per iterate
    for p in (2, 3, 5):
        out, _ = phi_pk_arrays(1.0, 0.0, p, 0)
        assert float(out) == pytest.approx(2.0 ** (-2.0 / p), rel=1e-12)
        out, _ = phi_pk_arrays(1.0, 0.5 * PI, p, 0)
        assert float(out) == pytest.approx(2.0 ** (2.0 / p), rel=1e-12)
    assert prong_period(ModelParams(4, 2)) == 2
    assert prong_period(ModelParams(3, 0)) == 1
    assert prong_period(ModelParams(5, 2)) == 5


def test_prong_of_classification():
    assert prong_of(ProngPoint(1.0, 0.0, 3)).kind == "stable"
    assert prong_of(ProngPoint(1.0, PI / 2, 3)).kind == "unstable"
    assert prong_of(ProngPoint(1.0, PI + PI / 2, 3)).index == 1
    assert prong_of(ProngPoint(1.0, 0.3, 3)) is None


def test_iter_arrays_matches_repeats():
    r, th = 1.3, 2.1
    params = ModelParams(3, 2)
    rr, tt = r, th
    for _ in range(5):
        rr, tt = phi_pk_arrays(rr, tt, 3, 2)
    r5, t5 = phi_pk_iter_arrays(r, th, 3, 2, 5)
    assert float(r5) == pytest.approx(float(rr), rel=1e-12)
    assert circle_dist(float(t5), float(tt), 3) < 1e-12
    r0, t0 = phi_pk_iter_arrays(r5, t5, 3, 2, -5)
    assert float(r0) == pytest.approx(r, rel=1e-9)
