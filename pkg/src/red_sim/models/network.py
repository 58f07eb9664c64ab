# src/red_sim/models/network.py
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..exceptions.errors import NetworkError
from .outcome import OutcomeIndices
from .state import PureBipartiteState

METRICS = ('fidelity', 'capacity')


@dataclass(frozen=True)
class NetworkEdge:
    """A pure entangled link between two nodes."""
    endpoint_a: str
    endpoint_b: str
    resource: PureBipartiteState
    label: str = ''

    @property
    def key(self) -> Tuple[str, str]:
        return tuple(sorted((self.endpoint_a, self.endpoint_b)))

    def oriented(self, start: str) -> PureBipartiteState:
        """Resource with its left subsystem at ``start``."""
        if start == self.endpoint_a:
            return self.resource
        if start == self.endpoint_b:
            return PureBipartiteState(self.resource.amp.T)
        raise NetworkError(f"Node '{start}' is not an endpoint of edge '{self.label or self.key}'")


@dataclass(frozen=True)
class NetworkGraph:
    """Nodes and entangled links; immutable once loaded."""
    nodes: Tuple[str, ...]
    edges: Tuple[NetworkEdge, ...]

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise NetworkError("Duplicate node identifiers")
        dims = set()
        for k, edge in enumerate(self.edges):
            name = edge.label or f"edges[{k}]"
            for endpoint in (edge.endpoint_a, edge.endpoint_b):
                if endpoint not in known:
                    raise NetworkError(f"Edge '{name}' references unknown node '{endpoint}'")
            if edge.endpoint_a == edge.endpoint_b:
                raise NetworkError(f"Edge '{name}' is a self-loop on '{edge.endpoint_a}'")
            if edge.resource.dim_left != edge.resource.dim_right:
                raise NetworkError(f"Edge '{name}' has unequal local dimensions {edge.resource.dims}")
            dims.add(edge.resource.dim_left)
        if len(dims) > 1:
            raise NetworkError(f"Links of mixed dimension {sorted(dims)} in one network")

    @property
    def dim(self) -> int:
        return self.edges[0].resource.dim_left if self.edges else 2

    @property
    def is_qubit(self) -> bool:
        return self.dim == 2

    def has_node(self, node: str) -> bool:
        return node in self.nodes


@dataclass(frozen=True)
class EdgeScore:
    """Per-link figures used by the router."""
    concurrence: float
    fidelity_term: float
    capacity: float

    @property
    def fidelity(self) -> float:
        return (2.0 + self.fidelity_term) / 3.0


@dataclass(frozen=True)
class PathOutcome:
    """One end-to-end outcome of a simulated path."""
    outcome_indices: OutcomeIndices
    probability: float
    concurrence: Optional[float]
    fidelity: Optional[float]
    capacity: Optional[float]
    theorem_residual: Optional[float]


@dataclass
class RouteReport:
    """Chosen path, its heuristic score and the exact simulation of the path."""
    path: List[str]
    metric: str
    heuristic_score: float
    edge_labels: List[str] = field(default_factory=list)
    edge_scores: List[EdgeScore] = field(default_factory=list)
    outcomes: List[PathOutcome] = field(default_factory=list)
    predicted_vs_simulated: Optional[float] = None

    @property
    def hops(self) -> int:
        return len(self.path) - 1

    @property
    def total_probability(self) -> float:
        return sum(o.probability for o in self.outcomes)

    def _possible(self, attr: str) -> List[Tuple[float, float]]:
        return [(o.probability, getattr(o, attr)) for o in self.outcomes if getattr(o, attr) is not None]

    def best(self, attr: str) -> Optional[float]:
        values = [v for _, v in self._possible(attr)]
        return max(values) if values else None

    def average(self, attr: str) -> Optional[float]:
        pairs = self._possible(attr)
        return sum(p * v for p, v in pairs) if pairs else None

    @property
    def max_theorem_residual(self) -> Optional[float]:
        return self.best('theorem_residual')

    def summary(self) -> Dict[str, Optional[float]]:
        return {
            'best_fidelity': self.best('fidelity'),
            'average_fidelity': self.average('fidelity'),
            'best_capacity': self.best('capacity'),
            'average_capacity': self.average('capacity'),
            'max_theorem_residual': self.max_theorem_residual,
        }
