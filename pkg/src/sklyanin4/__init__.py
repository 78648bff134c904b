"""Exact verification of the four-dimensional Sklyanin algebra and its cocycle twist."""

from .ncalg import NcTensor, QuadAlgebra, hilbert_dims, koszul_dual
from .scalars import QQ, FieldElem, Tower, ZeroDivisor, adjoin_root, sqrt_adjoin
from .sklyanin import Params, central_elements, derived_constants, make_params, q_relations, qtilde_relations
from .twist import quaternion_basis, twist_algebra, cocycle_from_matrix_basis, SKLYANIN_CHARS
from .geometry import CurveE, ProjPoint, sample_point
from .pointscheme import build_point_family, verify_point_scheme
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "NcTensor", "QuadAlgebra", "hilbert_dims", "koszul_dual",
    "QQ", "FieldElem", "Tower", "ZeroDivisor", "adjoin_root", "sqrt_adjoin",
    "Params", "central_elements", "derived_constants", "make_params", "q_relations",
    "qtilde_relations", "quaternion_basis", "twist_algebra", "cocycle_from_matrix_basis",
    "SKLYANIN_CHARS", "CurveE", "ProjPoint", "sample_point", "build_point_family",
    "verify_point_scheme", "Report",
]
