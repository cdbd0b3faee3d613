"""Exact Severi degrees and Gromov-Witten invariants of rational ruled surfaces."""

__version__ = "0.1.0"

from .seqcomb import TangencySeq, ZERO, e, enumerate_leq, enumerate_weight
from .surface import DivClass, SurfaceModel
from .engine import ALL, IRREDUCIBLE, ResourceLimitError, SeveriEngine, SeveriKey
from .gw import GwQuery, gw_invariant, reduce_class

__all__ = [
    "TangencySeq",
    "ZERO",
    "e",
    "enumerate_leq",
    "enumerate_weight",
    "DivClass",
    "SurfaceModel",
    "ALL",
    "IRREDUCIBLE",
    "ResourceLimitError",
    "SeveriEngine",
    "SeveriKey",
    "GwQuery",
    "gw_invariant",
    "reduce_class",
    "__version__",
]
