"""Exact computations in code algebras built from binary linear codes."""

from __future__ import annotations

from .algebra import (
    CodeAlgebra,
    Element,
    LinearMap,
    StructureParams,
    build_algebra,
    constant_params,
    identity_element,
    is_nondegenerate,
)
from .codes import LinearCode, code_from_generators, dual_code, extended_hamming_code
from .errors import AnalysisError, CodeAlgebraError
from .form import GramForm, frobenius_form
from .group import full_group, miyamoto_group
from .scalar import ExactScalar, format_scalar, parse_scalar, sqrt_in_field
from .smap import small_idempotents, smap_idempotent
from .spectral import FusionLaw, eigen_decompose, fusion_law, jordan_law
from .structure import is_simple

__all__ = [
    "AnalysisError",
    "CodeAlgebra",
    "CodeAlgebraError",
    "Element",
    "ExactScalar",
    "FusionLaw",
    "GramForm",
    "LinearCode",
    "LinearMap",
    "StructureParams",
    "build_algebra",
    "code_from_generators",
    "constant_params",
    "dual_code",
    "eigen_decompose",
    "extended_hamming_code",
    "format_scalar",
    "frobenius_form",
    "full_group",
    "fusion_law",
    "identity_element",
    "is_nondegenerate",
    "is_simple",
    "jordan_law",
    "miyamoto_group",
    "parse_scalar",
    "small_idempotents",
    "smap_idempotent",
    "sqrt_in_field",
]
