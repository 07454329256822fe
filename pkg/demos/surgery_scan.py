"""Narrative demo: surgery arithmetic on the boundary torus.

Scans surgery classes on a base model, shows which ones destroy
expansivity (1-prong verdicts), cross-checks the prong count three ways,
and undoes one surgery with the inverse search.

Run:  python3 demos/surgery_scan.py
"""

from prongflow import (
    HomologyClass,
    ModelParams,
    brute_force_K,
    inverse_surgery_search,
    scan_classes,
    sigma0,
    surgered_local_model,
    surgery_verdict,
)

params = ModelParams(2, 1)
print(f"base model: p={params.p}, k={params.k};  sigma0 = "
      f"({sigma0(params).a}, {sigma0(params).b})")

print("\nadmissible classes with |a|,|b| <= 2:")
print(f"{'sigma':>10} {'K':>3} {'p_new':>6}  verdict")
for sig, v in sorted(scan_classes(params, 2), key=lambda t: (t[0].a, t[0].b)):
    word = "expansive" if v.expansive else "NON-expansive (1-prong)"
    print(f"  ({sig.a:2d},{sig.b:2d}) {v.K:3d} {v.p_new:6d}  {word}")

sig = HomologyClass(1, -4)
v = surgery_verdict(sig, params)
print(f"\ncross-check for sigma = ({sig.a},{sig.b}):")
print(f"  |a p + b k| / g      = {v.p_new // v.g}")
print(f"  |det(sigma, sigma0)| = {abs(sig.det(sigma0(params)))}")
print(f"  geometric crossings  = {brute_force_K(sig, params)}")

model2 = surgered_local_model(sig, params)
print(f"\nsurgered local model: p'={model2.p}, k' estimate={model2.k}")
inv = inverse_surgery_search(sig, params)
print(f"inverse surgery class on the new model: ({inv.a}, {inv.b})")
check = surgery_verdict(inv, model2)
print(f"  its verdict restores p_new = {check.p_new} (original p = {params.p})")
