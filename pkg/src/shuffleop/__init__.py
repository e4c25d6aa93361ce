"""Groebner bases, dimensions and identity certificates for binary shuffle operads."""

__version__ = "0.1.0"

from .groebner import ArityError, GroebnerBasis, common_multiples, complete, dims, normal_form
from .order import MonomialOrder, Ordering
from .poisder import PoisElement, is_zero, tau_expand
from .poly import Polynomial, poly_add, poly_normalize, poly_scale
from .presentations import Presentation, SourceError, builtin, identity_library, lookup_identity, parse
from .rewriting import Occurrence, RewriteRule, find_divisor_embeddings
from .symmetrize import IdentityExpr, SymbolicOp, multilinear_orbit, to_shuffle
from .trees import (ShuffleGenerator, enumerate_monomials, parse_tree, render, shuffle_compose,
                    validate_shuffle)
from .verify import Verdict, check_certificate, verify_identity

__all__ = [
    "ArityError", "GroebnerBasis", "common_multiples", "complete", "dims", "normal_form",
    "MonomialOrder", "Ordering", "PoisElement", "is_zero", "tau_expand", "Polynomial",
    "poly_add", "poly_normalize", "poly_scale", "Presentation", "SourceError", "builtin",
    "identity_library", "lookup_identity", "parse", "Occurrence", "RewriteRule",
    "find_divisor_embeddings", "IdentityExpr", "SymbolicOp", "multilinear_orbit", "to_shuffle",
    "ShuffleGenerator", "enumerate_monomials", "parse_tree", "render", "shuffle_compose",
    "validate_shuffle", "Verdict", "check_certificate", "verify_identity",
]
