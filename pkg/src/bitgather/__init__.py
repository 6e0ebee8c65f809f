"""Bit-budget correlation models, polling-schedule search, and gathering
simulation for sensor networks."""

from .codec import Codeword, Reading, correctness_radius, decode, encode
from .correlation import (
    ConditioningRule,
    GaussianDecayModel,
    ModelSpec,
    PowerLawModel,
    conditioned_bits,
    pairwise_bits,
)
from .schedule import (
    EXHAUSTIVE_LIMIT,
    BitReport,
    InfeasibleError,
    ScheduleStats,
    budget_matrix,
    evaluate,
    optimize,
    schedule_stats,
)
from .simulator import (
    GatherResult,
    SensorField,
    fidelity_sweep,
    gather,
    generate_field,
)
from .topology import Topology, TopologyError, load_topology

__all__ = [
    "BitReport",
    "Codeword",
    "ConditioningRule",
    "EXHAUSTIVE_LIMIT",
    "GatherResult",
    "GaussianDecayModel",
    "InfeasibleError",
    "ModelSpec",
    "PowerLawModel",
    "Reading",
    "ScheduleStats",
    "SensorField",
    "Topology",
    "TopologyError",
    "budget_matrix",
    "conditioned_bits",
    "correctness_radius",
    "decode",
    "encode",
    "evaluate",
    "fidelity_sweep",
    "gather",
    "generate_field",
    "load_topology",
    "optimize",
    "pairwise_bits",
    "schedule_stats",
]
