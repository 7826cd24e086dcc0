"""specx: spectral-radius extremal certification for graphs and digraphs
with given essential connectivity."""

from .connectivity import (
    CutCertificate,
    SccOrdering,
    components,
    condensation_ordering,
    edge_connectivity,
    essential_connectivity,
    essential_connectivity_digraph,
    strongly_connected_components,
    vertex_connectivity,
)
from .families import (
    DigraphFamilyParams,
    UndirectedFamilyParams,
    build_digraph_extremal,
    build_join_family,
    build_undirected_extremal,
    digraph_extremal_radius,
    digraph_quotient_char_poly,
    parse_family_spec,
    radius_discriminant,
    radius_discriminant_max,
    undirected_extremal_radius,
)
from .formats import (
    parse_digraph6,
    parse_edge_list,
    parse_graph6,
    write_digraph6,
    write_dot,
    write_graph6,
)
from .graphs import (
    Digraph,
    Graph,
    Isomorphism,
    canonical_form,
    complete_digraph,
    complete_graph,
    cycle_graph,
    digraph_join,
    digraph_union,
    disjoint_union,
    empty_graph,
    is_isomorphic,
    is_isomorphic_digraph,
    join,
    path_graph,
)
from .quotient import (
    EquitablePartition,
    coarsest_equitable_refinement,
    is_equitable,
    quotient_matrix,
    verify_eigen_inclusion,
)
from .spectral import (
    LaplacianSpectrum,
    SpectralResult,
    algebraic_connectivity,
    laplacian_spectrum,
    real_poly_largest_root,
    spectral_radius,
    spectral_radius_digraph,
)
from .verifier import (
    VerificationReport,
    check_clique_concentration,
    check_perron_order,
    check_rotation_increase,
    enumerate_connected_graphs,
    enumerate_strong_digraphs,
    rotate_edges,
    verify_digraph,
    verify_undirected,
)

__version__ = "0.1.0"
