"""facelab: face numbers and Stanley-Reisner algebra of homology manifolds with boundary."""
from __future__ import annotations

__version__ = "0.1.0"

from .complex import SimplicialComplex, from_facets, parse_sc, read_sc, simplex_boundary, write_sc
from .enumerative import (
    check_g_theorems,
    check_kuhnel_bounds,
    check_weighted_betti,
    g_tilde,
    h_bar_dprime,
    h_dprime_closed,
    h_dprime_completion,
    h_prime,
    h_vector,
    is_M_vector,
    minimal_g2,
    minimal_g_tilde2,
    prime_vectors,
)
from .errors import FacelabError
from .fields import FieldSpec, as_field_spec
from .homology import betti, euler
from .manifold import classify, completion, interior_faces, is_i_stacked
from .oracle import gorenstein_check, lefschetz_maps_check, reduce, wlp_check
from .surgery import (
    GlueMap,
    barycentric_subdivision,
    connected_sum,
    cut_along_missing_facet,
    decompose_minimal_g2,
    decompose_minimal_g_tilde2,
    handle_addition,
    missing_facets,
    pl_handle_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
