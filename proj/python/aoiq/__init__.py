"""Average age-of-information analysis for bufferless status-update systems
with multi-threshold preemption policies."""

from ._core import (
    AlwaysPreemptReport,
    AoiReport,
    CycleOffsets,
    DelayModel,
    DominanceReport,
    EvaluationScenario,
    HazardProfile,
    OptResult,
    PolicyKind,
    PreemptionPolicy,
    ResetDistribution,
    SimStats,
    average_aoi,
    check_always_preempt,
    check_deterministic_dominance,
    confidence_interval,
    cycle_offsets,
    grid_optimize,
    hazard_profile,
    moments_tau,
    moments_tau_truncated,
    reset_matrix,
    simulate,
    tail_tau,
)

__all__ = [
    "AlwaysPreemptReport",
    "AoiReport",
    "CycleOffsets",
    "DelayModel",
    "DominanceReport",
    "EvaluationScenario",
    "HazardProfile",
    "OptResult",
    "PolicyKind",
    "PreemptionPolicy",
    "ResetDistribution",
    "SimStats",
    "average_aoi",
    "check_always_preempt",
    "check_deterministic_dominance",
    "confidence_interval",
    "cycle_offsets",
    "grid_optimize",
    "hazard_profile",
    "moments_tau",
    "moments_tau_truncated",
    "reset_matrix",
    "simulate",
    "tail_tau",
]
