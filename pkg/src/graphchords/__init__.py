"""Exact chord-set solvers on metric graphs.

Subsets of prescribed measure with zero integral are found constructively:
interval and circle chords by exact piecewise-linear root finding, graph
chords through double covers by semi-simple closed paths and homotopies in
the space of connected subsets, plus the dot-crossing parity game whose
winner guarantee is the circle chord theorem in combinatorial form.
"""

from .double_cover import (
    ClosedPath,
    compute_double_cover,
    euler_circuit,
    is_semi_simple,
    verify_double_cover,
)
from .errors import ChordError, PreconditionError, SolverInternalError
from .game import (
    CircleBoard,
    GameConfig,
    GameState,
    GraphBoard,
    LossWitness,
    apply_move,
    detect_loss,
    legal_moves,
    new_game,
    winner_guarantee_check,
)
from .graph_chords import (
    arc_on_semi_simple,
    chord_membership_evidence,
    discretized_zero_subset,
    euler_chord_solve,
    graph_chord_solve,
)
from .interval_chords import (
    Interval,
    LineStepFunction,
    PeriodicPL,
    chord_of_periodic,
    find_arc_chord_circle,
    find_common_chord,
    find_common_chord_k,
    find_fixed_window,
    horizontal_chord,
    necklace_split,
)
from .metric_graph import (
    ConnSubset,
    EdgeSegment,
    GraphPoint,
    MetricGraph,
    hull,
    measure,
    metric_d,
    metric_d_xr,
    segments_connected,
    set_distance,
)
from .partitions import (
    PartitionCertificate,
    construct_partition_1k,
    construct_partition_euler,
    verify_partition,
)
from .step_functions import StepFunction, integral_graph, integral_path, integral_subset
from .subset_space import (
    MoveSchedule,
    PairedMove,
    TipMove,
    connect_in_xr,
    find_zero_along,
    retraction_schedule,
    split_against,
)

__version__ = "0.1.0"
