"""Genus fields and Hilbert genus fields of imaginary cyclic quartic fields
K = Q(sqrt(-a*eps_p*sqrt(p))), computed in exact integer arithmetic."""

from .errors import (
    CapExhausted,
    HilbGenusError,
    InvalidInput,
    NormalizationFailed,
    PrimitivityViolated,
)
from .fieldcase import CaseProfile, SquareClass, genus_field, resolve
from .hilbert import HilbertGenusReport, alpha_star, hilbert_genus, predicted_rank
from .normeq import NormSolution, solve_norm_equation, solve_two_rep
from .quadfield import QuadElem, class_number, fundamental_unit, lambda_exponent
from .verify import independence_check, square_class_vector, unramified_check

__all__ = [
    "CapExhausted",
    "CaseProfile",
    "HilbGenusError",
    "HilbertGenusReport",
    "InvalidInput",
    "NormSolution",
    "NormalizationFailed",
    "PrimitivityViolated",
    "QuadElem",
    "SquareClass",
    "alpha_star",
    "class_number",
    "fundamental_unit",
    "genus_field",
    "hilbert_genus",
    "independence_check",
    "lambda_exponent",
    "predicted_rank",
    "resolve",
    "solve_norm_equation",
    "solve_two_rep",
    "square_class_vector",
    "unramified_check",
]
