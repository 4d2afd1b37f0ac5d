"""Exact product-form analysis for conservative stochastic reaction networks."""

from .classify import (
    Certificate,
    CertificateKind,
    ClassificationReport,
    Verdict,
    classify,
    complex_balance,
    verify_certificate,
    witness_check,
)
from .kernel import KernelVector, MasterMatrix, kernel_vector, level_kernel, master_matrix, stationary_eval
from .network import Reaction, ReactionNetwork
from .oracle import exact_stationary, product_form_fit, relation_residuals, shape_classify
from .parser import ParseError, parse_network, read_network, render_network
from .poly import RateAssignment, RatePoly
from .relations import ideal_level, relation_to_rate_poly, stabilization_scan
from .statespace import components_at_level, enumerate_component, index_profile
from .structure import analyze_structure

__all__ = [
    "Certificate", "CertificateKind", "ClassificationReport", "KernelVector", "MasterMatrix",
    "ParseError", "RateAssignment", "RatePoly", "Reaction", "ReactionNetwork", "Verdict",
    "analyze_structure", "classify", "complex_balance", "components_at_level", "enumerate_component",
    "exact_stationary", "ideal_level", "index_profile", "kernel_vector", "level_kernel", "master_matrix",
    "parse_network", "product_form_fit", "read_network", "relation_residuals", "relation_to_rate_poly",
    "render_network", "shape_classify", "stabilization_scan", "stationary_eval", "verify_certificate",
    "witness_check",
]
