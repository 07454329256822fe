"""prongflow: a computational laboratory for pseudo-hyperbolic local models.

The package implements the p-prong plane maps, their mapping-torus
suspensions with blow-up/blow-down of the singular orbit, the exact
surgery arithmetic on the boundary torus, and a sample-based verification
harness for the quantitative closeness and expansivity statements.
"""

from .metrics import comparison_constant, d_eucl, d_pol, noneq_witness, quadrant_isometry
from .plane import (
    CartesianPoint,
    ModelParams,
    ProngId,
    ProngPoint,
    phi1,
    phi2,
    phi_pk,
    pi_p,
    project_stable_unstable,
    prong_of,
    prong_period,
    sector_chart,
)
from .suspension import (
    DIST_CAP,
    ExitWindow,
    GammaPoint,
    StandardPolygonSpec,
    TorusPoint,
    blow_down,
    boundary_circle_map,
    boundary_orbit_census,
    dist_torus,
    exit_window,
    flow,
    orbit_trace,
)
from .surgery import (
    HomologyClass,
    LeafCurve,
    SurgeryVerdict,
    admissible,
    brute_force_K,
    inverse_surgery_search,
    leaf_curve,
    scan_classes,
    sigma0,
    surgered_local_model,
    surgery_verdict,
)
from .verify import (
    EstimateReport,
    SampleConfig,
    estimate_closeness_moduli,
    estimate_lemma45,
    one_prong_witness,
    run_suite,
    sample_O_MN,
    separation_estimate,
    stable_convergence_check,
)

__version__ = "0.1.0"

__all__ = [
    "CartesianPoint", "DIST_CAP", "EstimateReport", "ExitWindow", "GammaPoint",
    "HomologyClass", "LeafCurve", "ModelParams", "ProngId", "ProngPoint",
    "SampleConfig", "StandardPolygonSpec", "SurgeryVerdict", "TorusPoint",
    "admissible", "blow_down", "boundary_circle_map", "boundary_orbit_census",
    "brute_force_K", "comparison_constant", "d_eucl", "d_pol", "dist_torus",
    "estimate_closeness_moduli", "estimate_lemma45", "exit_window", "flow",
    "inverse_surgery_search", "leaf_curve", "noneq_witness", "one_prong_witness",
    "orbit_trace", "phi1", "phi2", "phi_pk", "pi_p", "project_stable_unstable",
    "prong_of", "prong_period", "quadrant_isometry", "run_suite", "sample_O_MN",
    "scan_classes", "sector_chart", "separation_estimate", "sigma0",
    "stable_convergence_check", "surgered_local_model", "surgery_verdict",
]
