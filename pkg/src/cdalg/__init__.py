"""cdalg: a computational laboratory for Cayley-Dickson algebras.

Exact and floating-point doubling arithmetic at any level, minimal
polynomials and the radius, a catalog of subnorms (continuous and
constructed-discontinuous), Gelfand-limit experiments, stability and
radial-dominance checkers, and structural probes, all scriptable through
a config-driven command line (``cdalg run | bench | probe``).
"""

from .core import (
    Element,
    ScaledPower,
    conjugate,
    embed,
    euclidean_norm,
    multiply,
    norm_squared,
    power,
    power_scaled,
    scale,
    scaled_power_sequence,
)
from .gelfand import (
    ConvergenceReport,
    check_limit,
    claimed_limit,
    gelfand_sequence,
    pow2_grid,
    violation_scan,
)
from .spectral import MinimalPoly, minimal_polynomial, radius, radius_homogeneity_check
from .stability import (
    GrowthWitness,
    PowerEquationReport,
    StabilityVerdict,
    analytic_stability,
    dominance_angle_scan,
    power_equation_check,
    radial_dominance_search,
    stability_witness_search,
    strong_stability_search,
)
from .structure import (
    ProbeReport,
    ProbeWitness,
    alternativity_probe,
    multiplicativity_probe,
    power_equation_nonnegativity_demo,
    sqrt,
    zero_divisor_pair,
)
from .subnorms import (
    EUCLID,
    CauchyExp,
    Generator,
    PhiSpec,
    PNorm,
    ScaledSubspace,
    SubnormSpec,
    SymbolicAngle,
    WeightedL1,
    WeightedSup,
    angle_power,
    equivalence_constants,
    evaluate,
    from_polar,
    phi_eval,
    polar_power,
)

__version__ = "0.1.0"

__all__ = [
    "Element",
    "ScaledPower",
    "conjugate",
    "embed",
    "euclidean_norm",
    "multiply",
    "norm_squared",
    "power",
    "power_scaled",
    "scale",
    "scaled_power_sequence",
    "MinimalPoly",
    "minimal_polynomial",
    "radius",
    "radius_homogeneity_check",
    "EUCLID",
    "CauchyExp",
    "Generator",
    "PhiSpec",
    "PNorm",
    "ScaledSubspace",
    "SubnormSpec",
    "SymbolicAngle",
    "WeightedL1",
    "WeightedSup",
    "angle_power",
    "equivalence_constants",
    "evaluate",
    "from_polar",
    "phi_eval",
    "polar_power",
    "ConvergenceReport",
    "check_limit",
    "claimed_limit",
    "gelfand_sequence",
    "pow2_grid",
    "violation_scan",
    "GrowthWitness",
    "PowerEquationReport",
    "StabilityVerdict",
    "analytic_stability",
    "dominance_angle_scan",
    "power_equation_check",
    "radial_dominance_search",
    "stability_witness_search",
    "strong_stability_search",
    "ProbeReport",
    "ProbeWitness",
    "alternativity_probe",
    "multiplicativity_probe",
    "power_equation_nonnegativity_demo",
    "sqrt",
    "zero_divisor_pair",
    "__version__",
]
