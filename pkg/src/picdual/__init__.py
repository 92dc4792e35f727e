"""Exact Pontrjagin duality, Picard-stack classes and topological T-duality data."""

from __future__ import annotations

from .fgab import FgAb, FgAbMap, ext1, hom, smith_normal_form, tensor, tor
from .lca import FtLca, admissible, dual
from .extensions import Extension, baer_sum, class_of, from_class
from .complexes import TwoTerm, rhom, rhom_via_resolution
from .groupcohomology import cohomology_Z, cohomology_table, homology, kcomplex_cohomology
from .simplicial import CohRing, SimplicialComplex, ring_of
from .picard import ExtBackend, PicClass, dual_pic, is_dualizable
from .tduality import ChernClass, HFlux, PairClass, enumerate_duals, exists_tdual, filtration_model, q_group

__version__ = "0.1.0"

__all__ = [
    "FgAb",
    "FgAbMap",
    "ext1",
    "hom",
    "smith_normal_form",
    "tensor",
    "tor",
    "FtLca",
    "admissible",
    "dual",
    "Extension",
    "baer_sum",
    "class_of",
    "from_class",
    "TwoTerm",
    "rhom",
    "rhom_via_resolution",
    "cohomology_Z",
    "cohomology_table",
    "homology",
    "kcomplex_cohomology",
    "CohRing",
    "SimplicialComplex",
    "ring_of",
    "ExtBackend",
    "PicClass",
    "dual_pic",
    "is_dualizable",
    "ChernClass",
    "HFlux",
    "PairClass",
    "enumerate_duals",
    "exists_tdual",
    "filtration_model",
    "q_group",
]
