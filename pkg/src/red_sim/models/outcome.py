# src/red_sim/models/outcome.py
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .state import PureBipartiteState

OutcomeIndices = Tuple[Tuple[int, int], ...]

IMPOSSIBLE_PROBABILITY = 1e-14


@dataclass(frozen=True)
class SwapOutcome:
    """One measurement result of a swap or chain of swaps."""
    outcome_indices: OutcomeIndices
    probability: float
    state: Optional[PureBipartiteState]
    normalization: float

    @property
    def possible(self) -> bool:
        return self.state is not None

    @property
    def label(self) -> str:
        return ",".join(f"{r}{h}" for r, h in self.outcome_indices) or "-"


@dataclass(frozen=True)
class OutcomeResidual:
    """Both sides of a relation evaluated for one outcome."""
    outcome_indices: OutcomeIndices
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


@dataclass
class RelationReport:
    """Per-outcome residuals of one relation for one input."""
    relation: str
    outcomes: List[OutcomeResidual] = field(default_factory=list)
    skipped: int = 0
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max((o.residual for o in self.outcomes), default=0.0)

    def within(self, tolerance: float) -> bool:
        return self.max_residual <= tolerance


@dataclass
class CapacityCaseReport:
    """Dense-coding capacities of two resources and of every swapped outcome."""
    case: str
    capacity_12: float
    capacity_23: float
    outcome_capacities: Dict[Tuple[int, int], float]
    outcome_probabilities: Dict[Tuple[int, int], float]
    relation_holds: bool
    strict: bool
    aligned_bound_holds: bool
    average_capacity: float
    average_bound_holds: bool

    @property
    def max_outcome_capacity(self) -> float:
        return max(self.outcome_capacities.values())

    @property
    def bound(self) -> float:
        return max(self.capacity_12, self.capacity_23)


@dataclass
class ChainCapacityReport:
    """Capacities of every link of a qudit chain and of every end-to-end outcome."""
    case: str
    link_capacities: List[float]
    outcome_capacities: Dict[OutcomeIndices, float]
    outcome_probabilities: Dict[OutcomeIndices, float]
    bound: float
    relation_holds: bool
    aligned_bound_holds: bool
    average_capacity: float

    @property
    def max_outcome_capacity(self) -> float:
        return max(self.outcome_capacities.values())


@dataclass
class SuiteResult:
    """Outcome of one randomized verification suite."""
    name: str
    trials: int
    tolerance: float
    max_residual: float = 0.0
    failures: int = 0
    offending: List[Dict] = field(default_factory=list)
    stats: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, residual: float, inputs: Optional[Dict] = None, limit: int = 5) -> bool:
        """Track one residual; returns False (and keeps the inputs) when it exceeds tolerance."""
        self.max_residual = max(self.max_residual, float(residual))
        if residual <= self.tolerance:
            return True
        self.failures += 1
        if inputs is not None and len(self.offending) < limit:
            self.offending.append(dict(inputs, residual=float(residual)))
        return False
