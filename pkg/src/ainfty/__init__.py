"""Exact Hochschild/Harrison cohomology and A-infinity structures as twisting cochains."""

from .ainf import (
    AInfMorphism,
    AInfStructure,
    BarComplex,
    BarMorphism,
    InternalConsistencyError,
    Trivialization,
    TwistingCochain,
    bar_differential,
    bar_morphism,
    compose,
    equivalence_residuals,
    first_failure,
    morphism_residuals,
    perturb,
    stasheff_residuals,
    structure_to_twisting,
    transport,
    trivialize,
    twisting_to_structure,
)
from .cochains import (
    AlgebraError,
    Cochain,
    GradedAlgebra,
    GradedBimodule,
    coboundary,
    cup,
    cup1,
    cup1_multi,
    is_harrison,
    restrict_to_shuffles,
)
from .cohomology import (
    HARRISON,
    HOCHSCHILD,
    CohomologyClass,
    NotACocycleError,
    cochain_basis,
    cocycle_basis,
    cohomology_dim,
    solve_coboundary,
)
from .graded import QQ, FieldSpec, GradedSpace, koszul_sign, parity_sign
from .linalg import backend
from .tensor import ch_dimension, deconcatenate, projection, shuffle_product, shuffle_subspace_basis

__version__ = "0.1.0"
