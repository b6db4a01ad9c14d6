"""Total-delay runway scheduling.

Single-runway sequencing by incremental insertion with bounded reordering,
dual-runway scheduling by per-task optima plus bounded interleaving search,
exact desk-scale oracles, an LP exporter, and a benchmark harness.
"""

__version__ = "0.1.0"

from .bench import BenchRow, GenSpec, generate_instance, run_benchmark, write_report
from .dual_runway import (
    BlockCatalog,
    bounded_block_search,
    build_block_catalog,
    load_or_build_catalog,
    match_landings_to_takeoffs,
    match_takeoffs_to_landings,
    reinsert_spill,
    solve_dual_runway,
    tail_exchange_test,
)
from .errors import (
    ContractViolationError,
    HorizonRequiredError,
    InfeasibleInstanceError,
    InfeasibleOrderError,
    InstanceFormatError,
    ModelMismatchError,
    OracleCapError,
    PremiseError,
    RunwaySchedError,
)
from .mip_export import export_mip
from .model import (
    Aircraft,
    Block,
    BlockKind,
    Instance,
    Interruption,
    OperationTask,
    RunwayMode,
    Schedule,
    SeparationModel,
    SequenceDiagnostics,
    WakeClass,
    apply_interruption,
    default_separation_model,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    save_instance,
    schedule_to_dict,
    separation_matrix,
    y_lookup,
)
from .oracle import OracleResult, brute_force_optimum, dominance_dp_optimum
from .scheduling import (
    analyze_sequence,
    decompose_blocks,
    forward_schedule,
    total_delay,
)
from .single_runway import (
    ContextPattern,
    InsertionCandidate,
    MergeVerdict,
    RelocationDelta,
    best_insertion,
    build_context_patterns,
    insertion_shift_bound,
    monotone_merge_compare,
    monotone_optimal_check,
    relocation_delta,
    reorder_and_insert,
    solve_single_runway,
    sort_by_scheduled,
)
from .solving import SearchBounds, Solution, SolverConfig, SolverStats
from .validation import PredicateResult, ValidationReport, validate_separation_model

__all__ = [name for name in dir() if not name.startswith("_")]
