"""Memory-efficient palette-based graph coloring for Pauli-string clique partitioning.

The engine colors huge dense graphs without ever materializing them: the
graph is an implicit complement oracle over a Pauli set (or an explicit
CSR graph), and each iteration touches only the sparse conflict subgraph
induced by random per-vertex color lists.
"""

from .baseline import GreedyResult, greedy_color
from .conflict import ConflictGraph, build, build_reference, lists_intersect
from .driver import (
    ColorLists,
    ColoringResult,
    IterationPlan,
    IterationRecord,
    PaletteParams,
    UNCOLORED,
    assign_random_lists,
    color_unconflicted,
    plan_iteration,
    run,
)
from .generate import gnp_graph, pauli_file_text, random_pauli_strings
from .graph import (
    DegreeStats,
    EdgeOracleView,
    ExplicitGraph,
    degree_stats,
    graph_view,
    load_edge_list,
    load_mtx,
    pauli_view,
)
from .list_coloring import (
    ConflictColoringOutcome,
    color_conflict_graph,
    color_dynamic,
    color_static,
)
from .pauli import (
    EncodedPauli,
    PauliSet,
    anticommutes_chars,
    anticommutes_fast,
    anticommutes_oracle,
    complement_edge,
    decode,
    encode,
    parse_pauli_text,
)
from .tuner import (
    PredictorModel,
    SweepRecord,
    TrainingPoint,
    build_training_points,
    predict,
    select_optimal,
    sweep,
    train,
)
from .validation import (
    ValidationReport,
    partition_export,
    partition_groups,
    validate,
    verify_palette_discipline,
)

__version__ = "0.1.0"
