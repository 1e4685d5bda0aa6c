"""Exact computations for relative Rota-Baxter Leibniz algebras."""

from .cohomology import Cochain, CochainSpace, cohomology, differential_matrix
from .deformation import InfDeformation, classify_inf_deformations, deformation_of_cocycle
from .extension import AbelianExtension, build_extension, extract_cocycle
from .leibniz import LeibnizAlgebra, LeibnizRep, check_leibniz, check_rep
from .multimap import MultiMap, SpaceSpec, balavoine
from .rrb import RRBLeibniz, RRBRep, check_rrb, check_rrb_rep

__version__ = "0.1.0"

__all__ = [
    "LeibnizAlgebra", "LeibnizRep", "check_leibniz", "check_rep", "MultiMap", "SpaceSpec", "balavoine",
    "RRBLeibniz", "RRBRep", "check_rrb", "check_rrb_rep", "Cochain", "CochainSpace", "cohomology",
    "differential_matrix", "InfDeformation", "classify_inf_deformations", "deformation_of_cocycle",
    "AbelianExtension", "build_extension", "extract_cocycle",
]
