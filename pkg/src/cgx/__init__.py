"""Exact-arithmetic character invariants of finite convex geometries."""

from .characters import ETA, PHI, PHI_PRIME, ZETA, antipode_eval, bar, convolve, is_odd_on
from .closure import (
    ClosureOperator,
    ConvexGeometry,
    direct_sum,
    discrete_geometry,
    empty_operator,
    from_closed_labels,
    is_convex_geometry,
    validate,
)
from .corpus import enumerate_corpus, enumerate_geometries, standard_ground
from .ground import (
    GroundSet,
    IntegerComposition,
    LinearOrder,
    SetComposition,
    composition_type,
    descent_set,
    peak_set,
    tits_product,
)
from .invariants import (
    AbPolynomial,
    CdPolynomial,
    FlagVector,
    RationalPolynomial,
    ab_index,
    cd_index,
    count_functions,
    enumerate_functions,
    eval_poly,
    ex_vector,
    flag_f,
    flag_h,
    interior_membership,
    poly_invariant,
)
from .io import generate, load_geometry, parse_geometry, save_geometry, serialize_geometry
from .lattice import ClosedSetLattice, chief_chains, geometric_chief_condition
from .posets import Poset, acyclic_join, enumerate_posets, ideals, linear_extensions, to_convex_geometry
from .supersolvable import (
    SupersolvabilityReport,
    analyze,
    maximal_convex_subposets,
    supersolvable_geometric,
    verify_descent_theorem,
    verify_peak_theorem,
)

__version__ = "0.1.0"
