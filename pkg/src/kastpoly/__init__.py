"""Kasteleyn and q-Kasteleyn matrices of planar bipartite graphs, their singular
polynomials, and enumeration checks of the coefficient identities."""

from .cohomology import (
    Cocycle,
    Label,
    VertexPotential,
    area,
    evaluate,
    gauge_transform,
    kasteleyn_class,
    kasteleyn_q_class,
    relative_class,
    restrict,
    zero_class,
)
from .exactalg import GaussLaurent, Poly, charpoly, expand_factored, hermitian_eigenvalues, minor_sum, strip_zero_roots
from .graph import (
    BalancedSubgraph,
    Cycle,
    GraphInputError,
    PlanarGraph,
    aztec_diamond,
    balanced_subgraphs,
    from_ascii,
    fundamental_cycles,
    interior_vertex_count,
    parse_graph,
    rectangle_grid,
)
from .matchings import Matching, PipeSystem, delta, enumerate_matchings, permutation_parity, pipe_systems
from .singular import (
    KasteleynMatrix,
    VerificationReport,
    VerifyLimits,
    build_matrix,
    coeff_by_pipes,
    coeff_by_subgraphs,
    singular_polynomial,
    verify_identities,
)

__version__ = "0.1.0"
