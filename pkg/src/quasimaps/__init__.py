"""Quasimap invariants of GIT quotients through Jeffrey-Kirwan residues."""

from .errors import QuasimapError
from .git_model import (Cone, DualTorusPoint, GitPresentation, anticanonical, chamber,
                        enumerate_effective_degrees, enumerate_lifts, enumerate_splittings,
                        is_effective, is_positive, is_semi_positive, load_presentation,
                        validate_insertion)
from .invariants import (InvariantRequest, InvariantResult, d_factor, equivariant_invariant,
                         generating_series_truncated, integral, invariant,
                         nonequivariant_integrand, nonequivariant_invariant, root_factor,
                         toric_dimension_actual, virtual_dimension, z_integrand)
from .jk import jk_at_point, jk_homogeneous, partial_fraction_reduce
from .presets import build, grassmannian, product_projective, projective
from .ratfun import (AffineForm, ArrangementFraction, Polynomial, ScalarZ, parse_polynomial,
                     unit_expand)
from .vafa_intriligator import (jacobian_dA, p_map, sigma_shift, solve_fiber, vi_sum,
                                vi_vs_series_check)

__version__ = "0.1.0"

__all__ = [
    "QuasimapError", "Cone", "DualTorusPoint", "GitPresentation", "anticanonical", "chamber",
    "enumerate_effective_degrees", "enumerate_lifts", "enumerate_splittings", "is_effective",
    "is_positive", "is_semi_positive", "load_presentation", "validate_insertion",
    "InvariantRequest", "InvariantResult", "d_factor", "equivariant_invariant",
    "generating_series_truncated", "integral", "invariant", "nonequivariant_integrand",
    "nonequivariant_invariant", "root_factor", "toric_dimension_actual", "virtual_dimension",
    "z_integrand", "jk_at_point", "jk_homogeneous", "partial_fraction_reduce", "build",
    "grassmannian", "product_projective", "projective", "AffineForm", "ArrangementFraction",
    "Polynomial", "ScalarZ", "parse_polynomial", "unit_expand", "jacobian_dA", "p_map",
    "sigma_shift", "solve_fiber", "vi_sum", "vi_vs_series_check",
]
