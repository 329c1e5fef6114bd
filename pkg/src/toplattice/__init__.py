"""Finite-scale laboratory for lattices of group topologies.

On a finite group, group topologies are exactly the normal subgroups
(reverse-inclusion ordered); this package builds those lattices, checks the
classical lattice laws on them with exhaustive sweeps, realizes character
duality for abelian groups, and enumerates full topology lattices on small
point sets.
"""

from .config import Caps, DEFAULT_CAPS, caps_from_env
from .errors import (
    InvalidArgumentError,
    InvalidIntervalError,
    NotALatticeError,
    NotAPosetError,
    PreconditionError,
    ResourceLimitError,
    ToplatticeError,
)
from .groups import (
    FiniteGroup,
    GroupHomomorphism,
    SubgroupSet,
    all_normal_subgroups,
    all_subgroups,
    are_isomorphic_groups,
    center,
    commutator_subgroup,
    coprime_component,
    direct_product,
    exponent_and_element_orders,
    is_normal,
    make_cyclic,
    make_dihedral,
    make_elementary_abelian,
    make_heisenberg,
    make_quaternion,
    make_symmetric,
    nilpotency_class,
    quotient,
    subgroup_generated,
)
from .lattices import (
    Chain,
    CheckResult,
    FiniteLattice,
    are_isomorphic,
    build_lattice,
    enumerate_lattices,
    has_birkhoff,
    has_dual_birkhoff,
    interval,
    is_distributive,
    is_dually_semimodular,
    is_modular,
    is_refinable,
    is_semimodular,
    jordan_holder_check,
    k_maximal_elements,
    lattice_to_dot,
    maximal_chains,
    product_lattice,
    refines,
)
from .topologies import (
    GroupTopology,
    TopologyLattice,
    analyze,
    decompose_product_topology,
    join_topologies,
    meet_topologies,
    prodanov_lattice,
    quotient_topology,
    restrict,
    saturate,
    topology_lattice,
    verify_cover_transfer,
    verify_meet_basis,
    verify_merzon,
    verify_product_decomposition,
    verify_quotient_meet,
    verify_restriction_join,
    verify_saturation_join,
    verify_semimodular_transfer,
)
from .pontryagin import (
    NeighborhoodFamily,
    check_conditions,
    generate_topology,
    verify_pontryagin_roundtrip,
)
from .duality import (
    Character,
    DualGroup,
    annihilator,
    comfort_ross_map,
    dual_annihilator,
    dual_group,
)
from .settop import (
    SetTopology,
    brute_force_topologies,
    embed_group_topologies,
    enumerate_topologies,
    top_join,
    top_meet,
    verify_classical_facts,
)
from .corpus import CorpusEntry, CorpusSpec, default_corpus, parse_group_spec

__version__ = "0.1.0"
