"""Reduced spaces of multi-particle subspaces and frustration-free Hamiltonians.

A subspace of a multi-particle Hilbert space maps to the ranges of its
k-particle marginals; :func:`reduce` computes that vector and :func:`mpi`
the largest subspace with a given vector.  Vectors form a join-semilattice
under componentwise sum, dual to k-local frustration-free Hamiltonians.
"""
from .errors import (
    DegeneracyError,
    InvalidArgument,
    MeetUndefined,
    SearchExhausted,
    Unsupported,
)
from .ffham import (
    LocalHamiltonian,
    from_rsv,
    ground_space,
    is_frustration_free,
    is_irreducible_ground_space,
    is_minimal_ground_space,
    meet,
    qubit2_product_ground_search,
    to_rsv,
)
from .hilbert import SystemShape, embed_permutation, enumerate_subsets, partial_trace
from .kernels import BACKEND
from .reduced import (
    ReducedSpaceVector,
    eq,
    join,
    leq,
    lt,
    member_theta,
    mpi,
    reduce,
    reduce_state,
)
from .search import SearchBudget
from .semilattice import (
    AnalysisVerdict,
    decompose_irreducibles,
    is_atom,
    is_join_irreducible,
    join_prime_witness,
)
from .subspace import Subspace, contains, equals, intersect, sum_

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AnalysisVerdict",
    "DegeneracyError",
    "InvalidArgument",
    "LocalHamiltonian",
    "MeetUndefined",
    "ReducedSpaceVector",
    "SearchBudget",
    "SearchExhausted",
    "Subspace",
    "SystemShape",
    "Unsupported",
    "contains",
    "decompose_irreducibles",
    "embed_permutation",
    "enumerate_subsets",
    "eq",
    "equals",
    "from_rsv",
    "ground_space",
    "intersect",
    "is_atom",
    "is_frustration_free",
    "is_irreducible_ground_space",
    "is_join_irreducible",
    "is_minimal_ground_space",
    "join",
    "join_prime_witness",
    "leq",
    "lt",
    "meet",
    "member_theta",
    "mpi",
    "partial_trace",
    "qubit2_product_ground_search",
    "reduce",
    "reduce_state",
    "sum_",
    "to_rsv",
]
