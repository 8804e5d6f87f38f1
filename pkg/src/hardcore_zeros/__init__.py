"""Zeros of the multivariate independence polynomial on claw-free and
subdivided-claw-free graphs: exact evaluation, class recognition, zero-free
region predicates, instance certificates and zero-accumulating families."""

from .certify import Certificate, StructuralViolation, certify_clawfree, certify_sttt
from .gaussian import GaussianRational
from .graph import Graph, GraphError, build_graph
from .indpoly import poly_roots, univariate_coeffs, z_brute, z_eval
from .regions import RegionSpec, in_halfplane, in_parabola

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "GaussianRational",
    "Graph",
    "GraphError",
    "RegionSpec",
    "StructuralViolation",
    "build_graph",
    "certify_clawfree",
    "certify_sttt",
    "in_halfplane",
    "in_parabola",
    "poly_roots",
    "univariate_coeffs",
    "z_brute",
    "z_eval",
]
