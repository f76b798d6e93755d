"""Exact computations with squarefree modules, free complexes, the
Alexander-duality functor AD and degree triplets of pure complexes."""

from .exactcore import RatMatrix, binom, nullspace, primitive_vector, rank, transition_matrix
from .freecomplex import (
    FreeSqComplex,
    cohomology,
    dualize,
    homology,
    homology_dims,
    invariants,
    minimalize,
    singly_graded_profile,
    strands,
    translate,
    validate,
)
from .functors import SqModuleComplex, ad, ad_betti_shortcut, ad_power, alexander_termwise, resolve_complex, resolve_module
from .sqmodule import SqModule, ell_complex, standard_module, tor_betti
from .tensorranks import construction_betti, pinching_weights, term_rank
from .triplets import (
    DegreeTriplet,
    derive_params,
    enumerate_balanced,
    herzog_kuhl,
    is_balanced,
    reduce,
    reduced_system,
    full_system,
    render_triangle,
    solve_betti,
)

__version__ = "0.1.0"

__all__ = [
    "RatMatrix",
    "binom",
    "nullspace",
    "primitive_vector",
    "rank",
    "transition_matrix",
    "FreeSqComplex",
    "cohomology",
    "dualize",
    "homology",
    "homology_dims",
    "invariants",
    "minimalize",
    "singly_graded_profile",
    "strands",
    "translate",
    "validate",
    "SqModuleComplex",
    "ad",
    "ad_betti_shortcut",
    "ad_power",
    "alexander_termwise",
    "resolve_complex",
    "resolve_module",
    "SqModule",
    "ell_complex",
    "standard_module",
    "tor_betti",
    "construction_betti",
    "pinching_weights",
    "term_rank",
    "DegreeTriplet",
    "derive_params",
    "enumerate_balanced",
    "herzog_kuhl",
    "is_balanced",
    "reduce",
    "reduced_system",
    "full_system",
    "render_triangle",
    "solve_betti",
]
