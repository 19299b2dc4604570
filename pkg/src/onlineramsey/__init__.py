"""Builder-vs-Painter online Ramsey game workbench."""

from .builders import (
    ForcedEdgeBuilder,
    NaiveBuilder,
    PaperStrategyParams,
    PipelineBuilder,
    make_builder,
)
from .engine import (
    GameConfig,
    GameState,
    GameStatus,
    StrategyReport,
    Transcript,
    play,
    replay,
)
from .graph import (
    BichromaticGraph,
    Color,
    IncidenceGraph,
    IncidenceSide,
    PartitionLayout,
    ReducedGraph,
    are_independent,
    find_mono_clique,
    incidence_graph,
    incremental_clique_check,
    is_color_balanced,
    red_density,
    reduced_graph,
)
from .painters import make_painter, painter_pool
from .solver import ExactSolver, SolverResult, brute_value, canonical_code, savings_of, solve_from

__version__ = "0.1.0"

__all__ = [
    "BichromaticGraph",
    "Color",
    "ExactSolver",
    "ForcedEdgeBuilder",
    "GameConfig",
    "GameState",
    "GameStatus",
    "IncidenceGraph",
    "IncidenceSide",
    "NaiveBuilder",
    "PaperStrategyParams",
    "PartitionLayout",
    "PipelineBuilder",
    "ReducedGraph",
    "SolverResult",
    "StrategyReport",
    "Transcript",
    "are_independent",
    "brute_value",
    "canonical_code",
    "find_mono_clique",
    "incidence_graph",
    "incremental_clique_check",
    "is_color_balanced",
    "make_builder",
    "make_painter",
    "painter_pool",
    "play",
    "red_density",
    "reduced_graph",
    "replay",
    "savings_of",
    "solve_from",
]
