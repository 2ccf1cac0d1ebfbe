"""Analytic function arithmetic, disc-space norms, and operator criteria.

Truncated power series with certified tails form the function class;
on top of them sit Hardy-type norms, the weighted composition and
integral operator families, a Carleson-type boundedness and compactness
criterion evaluated by dyadic sweeps, and a catalog-driven verification
harness with a CLI front end.
"""

from . import errors
from .boundary import BoundaryGrid, boundary_samples, boundary_sup, default_grid
from .carleson import (BoundednessReport, CompactnessReport, CriterionReport,
                       CriterionSpec, compactness_trace, composition_report,
                       criterion_sup, criterion_value, multiplication_report,
                       s2p_boundedness_report)
from .corpus import (CatalogCase, build_catalog, cases_for_role, seeded_polynomials,
                     standard_corpus, wcomp_cases)
from .operators import (Composition, ExpansionTriple, Integral, Multiplication,
                        Volterra, WeightedComposition, apply, default_test_family,
                        expansion_weights, operator_from_json, operator_to_json,
                        opnorm_lower_bound, opnorm_matrix_p2,
                        second_derivative_expansion)
from .series import (AnalyticFunction, Kernel, Poly, Product, Scale, Sum,
                     antiderivative, compose, derivative, evaluate, expand,
                     multiply, spec_from_json, spec_to_json)
from .spaces import (GrowthProfile, NormParams, growth_profile, hp_norm,
                     integral_mean, s2p_norm, sp_norm, space_norm)
from .verify import VerificationReport, compare_reports, run_verification

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction", "Poly", "Kernel", "Sum", "Product", "Scale",
    "expand", "evaluate", "derivative", "antiderivative", "multiply", "compose",
    "spec_to_json", "spec_from_json",
    "BoundaryGrid", "default_grid", "boundary_samples", "boundary_sup",
    "NormParams", "integral_mean", "hp_norm", "sp_norm", "s2p_norm",
    "space_norm", "GrowthProfile", "growth_profile",
    "WeightedComposition", "Composition", "Multiplication", "Volterra", "Integral",
    "apply", "ExpansionTriple", "expansion_weights", "second_derivative_expansion",
    "opnorm_lower_bound", "opnorm_matrix_p2", "default_test_family",
    "operator_to_json", "operator_from_json",
    "CriterionSpec", "CriterionReport", "criterion_value", "criterion_sup",
    "BoundednessReport", "CompactnessReport", "s2p_boundedness_report",
    "composition_report", "multiplication_report", "compactness_trace",
    "CatalogCase", "build_catalog", "cases_for_role", "wcomp_cases",
    "seeded_polynomials", "standard_corpus",
    "VerificationReport", "run_verification", "compare_reports",
    "errors",
]
