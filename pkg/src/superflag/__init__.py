"""Exact flag-domain classification for real forms of classical Lie supergroups."""

from .rootspace import Root, Weight, graded_sum, inner
from .algebra import (
    Exceptional,
    Family,
    FlagType,
    build_roots,
    symmetry_profile,
    validate_flag_type,
)
from .parabolic import FlagConvention, PhiSets, phi_sets, xi_from_flag
from .realform import RealForm, apply_tau, associated_real_form, catalog, lookup
from .classify import classify, enumerate_flag_types, odd_codimension, table
from .matrixoracle import codim_oracle, stabilizer_phi
from .superfun import H0Descriptor, h0_flag_domain, h0_flag_supermanifold
from .dft import dft_case, dft_report, rho

__version__ = "0.1.0"

__all__ = [
    "Root", "Weight", "graded_sum", "inner",
    "Exceptional", "Family", "FlagType", "build_roots", "symmetry_profile",
    "validate_flag_type",
    "FlagConvention", "PhiSets", "phi_sets", "xi_from_flag",
    "RealForm", "apply_tau", "associated_real_form", "catalog", "lookup",
    "classify", "enumerate_flag_types", "odd_codimension", "table",
    "codim_oracle", "stabilizer_phi",
    "H0Descriptor", "h0_flag_domain", "h0_flag_supermanifold",
    "dft_case", "dft_report", "rho",
]
