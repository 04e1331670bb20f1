"""Workbench for cover feasibility, tree ranks and the dimension game on
finite metric spaces with exact integer metrics."""

from .covers import (
    BrickCover,
    CoverReport,
    GlueResult,
    SCover,
    SetFamily,
    TransportResult,
    brick_cover,
    check_s_cover,
    covers_equal,
    fiber_compose,
    finite_sum_cover,
    glue_covers,
    make_cover,
    trace_cover,
    transport_cover,
)
from .errors import (
    AsdimlabError,
    BudgetExhaustedError,
    HullCoverageError,
    InvalidInputError,
    MetricError,
    ResourceLimitError,
    SpaceMismatchError,
)
from .game import (
    Game,
    GameConfig,
    a_respond,
    b_move,
    is_stabilized,
    minimal_k,
    new_game,
    play_script,
    validate_transcript,
)
from .oracles import SUITE_NAMES, SuiteReport, exhaustive_cover_oracle, run_all, run_suite
from .solver import (
    SeqDimension,
    SolveResult,
    UniformSolveResult,
    family_solve_uniform,
    iter_exact_solutions,
    seq_dimension,
    solve_s_cover,
)
from .spaces import (
    CoarseMap,
    ControlPair,
    FiniteMetricSpace,
    StepFunction,
    build_asymptotic_sum,
    build_cup_c_space,
    build_grid_space,
    check_coarse_embedding,
    from_matrix,
    greedy_r_net,
    interval_space,
    subspace,
    validate_metric,
)
from .trees import (
    EmpiricalTreeConfig,
    FinTree,
    OrdSet,
    canonical_increasing_embed,
    check_t_embedding,
    embed_tree,
    empirical_dim_tree,
    kb_compare,
    kb_sorted,
    node_levels,
    node_ranks_recursive,
    ord_set,
    ord_set_from,
    rank_levels,
    rank_recursive,
    restrict,
    subtree_matrix,
    ta_tree,
    tree_from_sequences,
)

__version__ = "0.1.0"
