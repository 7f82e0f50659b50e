"""Grid-labelled graphs as quantum states.

Interprets signed, signless, weighted, hybrid, and hypergraph grid states as
density matrices, decides graphical entanglement criteria, runs graph-surgery
entanglement proofs, and cross-checks every graphical verdict with exact and
numeric linear algebra.
"""

from .graphs import (
    Bipartition,
    Component,
    DimensionError,
    Edge,
    EdgeError,
    EdgeKind,
    GraphError,
    GridGraph,
    Hypergraph,
    RepresentabilityError,
    Vertex,
    bipartition_of,
    cross_hatch,
    embed_compose,
    hypergraph_to_graph,
    new_grid,
    new_hypergrid,
    signed_coloring,
    tile_compose,
)
from .linalg import (
    ExactMatrix,
    IncidenceMatrix,
    adjacency_matrix,
    degree_matrix,
    hypergraph_laplacian,
    in_kernel,
    incidence,
    jacobi_eigenvalues,
    kernel_basis,
    kernels_coincide,
    laplacian,
    min_eigenvalue_symmetric,
    offset_matrix,
    rank,
)
from .states import (
    DensityMatrix,
    PptVerdict,
    ProductVector,
    ZeroTraceError,
    density_of_graph,
    density_of_hypergraph,
    laplacian_transpose_identity_check,
    matrix_partial_transpose,
    partial_transpose_matrix,
    ppt_verdict,
    product_vector_range_search,
    unitary_inequivalence_witness,
)
from .criteria import (
    CriterionReport,
    HybridClass,
    InterpretationError,
    classify_hybrid,
    criterion_report,
    degree_equal,
    hypergraph_criterion_report,
)
from .surgery import (
    ProofTree,
    ProxyTrace,
    SurgeryError,
    SurgeryStep,
    col_surgery,
    format_trace,
    isolated_vertices,
    prove_entangled,
    proxy_graph,
    row_surgery,
    surgery_step_is_sound,
    surgery_trace,
)
from .formats import (
    SpecError,
    SpecSemanticError,
    SpecSyntaxError,
    analyze,
    emit_matrix,
    parse_spec,
    print_spec,
    render,
    spec_digest,
)

__version__ = "0.1.0"
