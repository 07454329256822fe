"""Unit tests for the exact surgery arithmetic."""

import pytest

from prongflow.plane import ModelParams
from prongflow.surgery import (
    HomologyClass,
    admissible,
    brute_force_K,
    inverse_surgery_search,
    leaf_curve,
    scan_classes,
    sigma0,
    surgered_local_model,
    surgery_verdict,
)


def test_sigma0_examples():
    assert sigma0(ModelParams(2, 0)) == HomologyClass(0, 1)
    assert sigma0(ModelParams(2, 1)) == HomologyClass(-1, 2)
    assert sigma0(ModelParams(4, 2)) == HomologyClass(-1, 2)
    assert sigma0(ModelParams(6, 4)) == HomologyClass(-2, 3)


def test_admissibility():
    params = ModelParams(2, 0)
    assert admissible(HomologyClass(1, 0), params)
    assert not admissible(HomologyClass(0, 1), params)    # sigma0 itself
    assert not admissible(HomologyClass(0, -1), params)   # -sigma0
    assert not admissible(HomologyClass(2, 4), params)    # divisible
    params = ModelParams(2, 1)
    assert not admissible(HomologyClass(-1, 2), params)
    assert not admissible(HomologyClass(1, -2), params)  # -sigma0
    assert admissible(HomologyClass(0, 1), params)


def test_verdict_examples():
    v = surgery_verdict(HomologyClass(0, 1), ModelParams(2, 1))
    assert (v.K, v.g, v.p_new, v.expansive) == (1, 1, 1, False)
    v = surgery_verdict(HomologyClass(1, 0), ModelParams(2, 0))
    assert (v.K, v.g, v.p_new, v.expansive) == (1, 2, 2, True)
    v = surgery_verdict(HomologyClass(1, -4), ModelParams(2, 1))
    assert (v.p_new, v.expansive) == (2, True)
    with pytest.raises(ValueError):
        surgery_verdict(HomologyClass(0, 1), ModelParams(2, 0))


def test_verdict_record():
    params = ModelParams(2, 1)
    sig = HomologyClass(1, -4)
    rec = surgery_verdict(sig, params).to_record(sig, params)
    assert rec == {"p": 2, "k": 1, "sigma": [1, -4], "sigma0": [-1, 2],
                   "K": 2, "g": 1, "p_new": 2, "expansive": True}


def test_brute_force_oracle_sweep():
    """K from basis formula == |det(sigma, sigma0)| == geometric count."""
    for p in range(2, 9):
        for k in range(p):
            params = ModelParams(p, k)
            s0 = sigma0(params)
            for a in range(-10, 11):
                for b in range(-10, 11):
                    sig = HomologyClass(a, b)
                    if not admissible(sig, params):
                        continue
                    v = surgery_verdict(sig, params)
                    assert v.K == abs(sig.det(s0))
                    assert v.p_new == v.K * v.g == abs(a * p + b * k)
                    try:
                        geo = brute_force_K(sig, params)
                    except ValueError:
                        # no transverse straight representative: du == 0,
                        # only possible when p_new == 0, never admissible here
                        assert a * p + b * k == 0
                        continue
                    assert geo == v.K


def test_leaf_curve_properties():
    params = ModelParams(3, 0)
    curve = leaf_curve(HomologyClass(2, 1), params)
    assert curve.is_transverse()
    assert curve.is_simple()
    assert curve.winding_class() == HomologyClass(2, 1)
    with pytest.raises(ValueError):
        leaf_curve(HomologyClass(2, 4), params)  # divisible


def test_surgered_local_model():
    assert surgered_local_model(HomologyClass(1, 0), ModelParams(2, 0)) == \
        ModelParams(2, 0)
    assert surgered_local_model(HomologyClass(1, -4), ModelParams(2, 1)).p == 2
    with pytest.raises(ValueError):
        surgered_local_model(HomologyClass(0, 1), ModelParams(2, 1))  # p_new = 1
    m = surgered_local_model(HomologyClass(2, 1), ModelParams(3, 0))
    assert m.p == 6
    assert surgered_local_model(HomologyClass(2, 1), ModelParams(3, 0),
                                estimate_rotation=False) == ModelParams(6, 0)


def test_inverse_surgery_round_trip():
    cases = [
        (ModelParams(2, 0), HomologyClass(1, 0)),
        (ModelParams(2, 1), HomologyClass(1, -4)),
        (ModelParams(3, 0), HomologyClass(2, 1)),
        (ModelParams(4, 2), HomologyClass(1, 1)),
    ]
    for params, sig in cases:
        inv = inverse_surgery_search(sig, params)
        assert inv is not None
        model2 = surgered_local_model(sig, params)
        assert surgery_verdict(inv, model2).p_new == params.p
    with pytest.raises(ValueError):
        inverse_surgery_search(HomologyClass(0, 1), ModelParams(2, 1))


def test_scan_classes():
    rows = scan_classes(ModelParams(2, 1), 2)
    classes = {(s.a, s.b) for s, _ in rows}
    assert (0, 1) in classes
    assert (-1, 2) not in classes  # sigma0
    for s, v in rows:
        assert v.p_new == abs(2 * s.a + s.b)
    # degenerate: box 1 on (2,0) still has admissible classes
    rows = scan_classes(ModelParams(2, 0), 1)
    assert all(admissible(s, ModelParams(2, 0)) for s, _ in rows)
