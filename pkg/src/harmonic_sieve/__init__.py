"""Multiregister Fourier-measurement toolkit for small finite groups.

Builds explicit group tables, character tables, and irreducible matrices;
detects missing harmonics of subgroups; and numerically certifies the
per-subset projector identities, pairwise subspace independence, the span
lower bound, and the control-register kickback measurement.
"""

from .characters import (
    CharacterTable,
    PlancherelDistribution,
    character_table,
    plancherel,
    tensor_decompose,
)
from .errors import (
    GroupSpecError,
    HarmonicSieveError,
    InvalidActionError,
    NumericalFailureError,
    ResourceLimitError,
    UnsupportedFamilyError,
)
from .groups import (
    Cyclic,
    Dihedral,
    DirectProduct,
    ElementaryAbelian2,
    GroupSpec,
    GroupTable,
    PermGens,
    SubgroupHandle,
    Symmetric,
    all_subgroups,
    build_group,
    conjugate_subgroup,
    is_normal,
    is_transitive,
    left_cosets,
    subgroup_closure,
    subgroup_from_members,
    verify_group_axioms,
)
from .harmonics import (
    ConditionReport,
    HarmonicReport,
    find_missing_harmonics,
    normal_subgroups,
    sufficient_conditions,
)
from .kickback import (
    KickbackCircuit,
    KickbackOutcome,
    build_kickback,
    controlled_g_action,
    kickback_measure,
    outcome_probability,
    verify_intertwining,
)
from .multiregister import (
    CosetStateEnsemble,
    MeasurementStats,
    MultiRegisterSpace,
    PerSigmaTable,
    SpanData,
    SubsetProjector,
    build_coset_state,
    nonempty_subsets,
    pairwise_trace,
    per_sigma_decomposition,
    simulate_measurement,
    span_bound,
    span_data,
    span_dimension,
    subset_projector,
    verify_annihilation,
)
from .representations import (
    IrrepMatrices,
    RegularRep,
    all_irrep_matrices,
    fourier_matrix,
    irrep_matrices,
    isotypic_projector,
    rank_of_projector,
    regular_representation,
    subgroup_average,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
