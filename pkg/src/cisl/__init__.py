"""Numerical laboratory for conformally invariant spaces of analytic
functions on the unit disc.

The package certifies norms and extremal constants from below on
refining grids, probes integration, companion, and multiplier operators
for boundedness between derivative-area and aperture-type spaces, and
runs statement-level verification suites that grade the numerical
consequences of the implemented theory.
"""

from .carleson import (DensityMeasure, box_mass, carleson_constant,
                       density_from)
from .funcs import (BlaschkeProduct, CoefficientSeries, Constant,
                    DEEPEST_PARAM_MODULUS, DomainError, GapSeries,
                    LacunaryCoefficients, MAX_PARAM_MODULUS, Monomial,
                    Polynomial, Primitive, ProductExpr, make_atom,
                    series_multiply, taylor, value_at)
from .gapseries import (AgwResult, SeriesVerdict, agw_construct,
                        divergence_scan, lacunary_membership, m2_gap_sq,
                        product_energy_scan)
from .harness import (REGISTRY, SuiteConfig, TheoremVerdict, registry_ids,
                      run_suite, verify)
from .norms import (ConstantReport, MobiusGrid, SpaceSpec, log_q_constant,
                    norm_value, parse_space, seminorm)
from .operators import (DerivativeExpr, ProbeReport, ProbeThresholds,
                        apply_operator, classify_ratio_trend, companion,
                        divide_inner, h_infty_diagnostic, multiplier,
                        operator_image, probe_boundedness, toeplitz_conj,
                        volterra, witness_identity_deviation)
from .quad import DiscScheme, RadialSchedule, integral_mean, radial_energy

__version__ = "0.1.0"

__all__ = [
    "AgwResult",
    "BlaschkeProduct",
    "CoefficientSeries",
    "Constant",
    "ConstantReport",
    "DEEPEST_PARAM_MODULUS",
    "DensityMeasure",
    "DerivativeExpr",
    "DiscScheme",
    "DomainError",
    "GapSeries",
    "LacunaryCoefficients",
    "MAX_PARAM_MODULUS",
    "MobiusGrid",
    "Monomial",
    "Polynomial",
    "Primitive",
    "ProbeReport",
    "ProbeThresholds",
    "ProductExpr",
    "REGISTRY",
    "RadialSchedule",
    "SeriesVerdict",
    "SpaceSpec",
    "SuiteConfig",
    "TheoremVerdict",
    "agw_construct",
    "apply_operator",
    "box_mass",
    "carleson_constant",
    "classify_ratio_trend",
    "companion",
    "density_from",
    "divergence_scan",
    "divide_inner",
    "h_infty_diagnostic",
    "integral_mean",
    "lacunary_membership",
    "log_q_constant",
    "m2_gap_sq",
    "make_atom",
    "multiplier",
    "norm_value",
    "operator_image",
    "parse_space",
    "probe_boundedness",
    "product_energy_scan",
    "radial_energy",
    "registry_ids",
    "run_suite",
    "seminorm",
    "series_multiply",
    "taylor",
    "toeplitz_conj",
    "value_at",
    "verify",
    "witness_identity_deviation",
]
