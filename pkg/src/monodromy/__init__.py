"""Monodromy groups of branched covers of the sphere, the surfaces of their
normalizations, and exact homological checks on suspensions."""

from .cover import (
    BranchData,
    CoverInvariants,
    chi_domain,
    compose_winding_covers,
    cover_invariants,
    enumerate_branch_data,
    euler_characteristic_normalization,
    genus_normalization,
    is_normal_cover,
    local_orders,
    monodromy_group,
    search_tower_piece,
    validate,
)
from .obstructions import (
    domain_cover_obstruction,
    suspension_manifold_verdict,
    wilder_obstruction,
)
from .perm import (
    Permutation,
    PermGroup,
    compose,
    cycle_type,
    element_order,
    generate_group,
    is_normal_subgroup,
    is_transitive,
    point_stabilizer,
)
from .simplicial import (
    HomologyProfile,
    SimplicialComplex,
    SubcomplexPair,
    cone,
    homology,
    relative_cohomology,
    suspension,
    vertex_link,
)
from .surfaces import normalization_surface, surface

__version__ = "0.1.0"
