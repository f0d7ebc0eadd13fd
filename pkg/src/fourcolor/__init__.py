"""Four-coloring of embedded planar graphs by elimination and Kempe-chain reinsertion."""

from .colorer import (
    BranchFailure,
    CaseTag,
    ColorOutcome,
    FailureReport,
    RecoveryPolicy,
    StepRecord,
    color_base,
    four_color,
    neighbor_color_set,
    reinsert_and_color,
)
from .errors import (
    AsymmetryError,
    ConsistencyError,
    DomainError,
    DuplicateNeighborError,
    EmbeddingError,
    FourColorError,
    GraphSyntaxError,
    NonPlanarEvidence,
    StructureError,
)
from .generators import GenSpec, apollonian, apollonian_flipped, generate, named
from .graph import (
    Coloring,
    EliminationStep,
    EmbeddedGraph,
    EmbeddingReport,
    connected_components,
    from_faces,
    validate_embedding,
    verify_coloring,
)
from .kempe import ColorPair, KempeChain, KempeComponent, component, find_chain, swap_component
from .oracle import OracleResult, chromatic_number_upto, exact_k_coloring
from .reduction import DegreeAudit, EliminationSequence, degree_audit, elimination_sequence, find_reducible_vertex

__version__ = "0.1.0"
