# src/red_sim/core/routing.py
"""Route search over a network of pure entangled links.

The fidelity metric maximizes the product of link concurrences as an
additive shortest path over weights -log C. The capacity metric maximizes
the smallest link capacity along the path. Chosen paths are always
simulated exactly so the heuristic can be audited per outcome.
"""
import math
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from ..exceptions.errors import NetworkError, UnreachableError, ValidationError
from ..logging.logger import get_logger
from ..models.network import METRICS, EdgeScore, NetworkEdge, NetworkGraph, PathOutcome, RouteReport
from ..models.state import PureBipartiteState
from ..utils.filesystem import read_document
from ..utils.serialization import parse_network_document
from .bases import basis_for_link
from .measures import concurrence, dense_coding_capacity_pure, teleportation_fidelity_pure
from .quantum import schmidt_decompose
from .relations import verify_chain_relation, verify_theorem_II
from .swap import Params, chain_swap_simultaneous

logger = get_logger(__name__)

ZERO_CONCURRENCE = 1e-12
TIE_TOLERANCE = 1e-12

PathScore = Tuple[List[str], float]


def load_network(source: Union[str, Path, dict]) -> NetworkGraph:
    """Load a network from a JSON file path or an already parsed document."""
    if isinstance(source, dict):
        return parse_network_document(source)
    return parse_network_document(read_document(source), str(source))


def score_edge(edge: Union[NetworkEdge, PureBipartiteState]) -> EdgeScore:
    """Concurrence, 3F - 2 (equal to C for a pure link) and dense-coding capacity."""
    state = edge.resource if isinstance(edge, NetworkEdge) else edge
    c = concurrence(state)
    return EdgeScore(
        concurrence=c,
        fidelity_term=3.0 * teleportation_fidelity_pure(c) - 2.0 if state.dims == (2, 2) else c,
        capacity=dense_coding_capacity_pure(state, state.dim_left),
    )


def _check_metric(metric: str) -> None:
    if metric not in METRICS:
        raise ValidationError(f"Unknown metric '{metric}', expected one of {', '.join(METRICS)}")


def _check_endpoints(graph: NetworkGraph, source: str, target: str) -> None:
    for node in (source, target):
        if not graph.has_node(node):
            raise NetworkError(f"Unknown node '{node}'")
    if source == target:
        raise ValidationError("Source and target must differ")


def build_routing_graph(graph: NetworkGraph, metric: str = 'fidelity') -> nx.Graph:
    """Simple graph of the usable links, keeping the best parallel edge for ``metric``."""
    _check_metric(metric)
    g = nx.Graph()
    g.add_nodes_from(graph.nodes)
    pruned = 0
    for edge in graph.edges:
        score = score_edge(edge)
        if score.concurrence <= ZERO_CONCURRENCE:
            pruned += 1
            continue
        key = score.concurrence if metric == 'fidelity' else score.capacity
        u, v = edge.endpoint_a, edge.endpoint_b
        if g.has_edge(u, v) and g[u][v]['key'] >= key:
            continue
        g.add_edge(u, v, edge=edge, score=score, key=key,
                   weight=max(0.0, -math.log(score.concurrence)), capacity=score.capacity)
    if pruned:
        logger.info(f"Pruned {pruned} zero-concurrence link(s)")
    return g


def _path_edges(g: nx.Graph, path: Sequence[str]) -> List[NetworkEdge]:
    return [g[u][v]['edge'] for u, v in zip(path, path[1:])]


def path_heuristic(g: nx.Graph, path: Sequence[str], metric: str) -> float:
    """Product of concurrences (fidelity) or smallest capacity (capacity) along ``path``."""
    scores = [g[u][v]['score'] for u, v in zip(path, path[1:])]
    if metric == 'fidelity':
        return float(np.prod([s.concurrence for s in scores]))
    return float(min(s.capacity for s in scores))


def _tie_break(paths: Sequence[List[str]]) -> List[str]:
    return min(paths, key=lambda p: (len(p), tuple(p)))


def enumerate_paths(graph: NetworkGraph, source: str, target: str,
                    metric: str = 'fidelity') -> List[PathScore]:
    """Every simple path over usable links with its heuristic, best first."""
    _check_endpoints(graph, source, target)
    g = build_routing_graph(graph, metric)
    scored = [(list(p), path_heuristic(g, p, metric)) for p in nx.all_simple_paths(g, source, target)]
    return sorted(scored, key=lambda item: (-item[1], len(item[0]), tuple(item[0])))


def best_by_enumeration(graph: NetworkGraph, source: str, target: str,
                        metric: str = 'fidelity') -> Optional[PathScore]:
    """Exhaustive reference answer with the same tie rule as ``best_path``."""
    scored = enumerate_paths(graph, source, target, metric)
    if not scored:
        return None
    top = scored[0][1]
    ties = [p for p, score in scored if score >= top - TIE_TOLERANCE * max(1.0, abs(top))]
    return _tie_break(ties), top


def _fidelity_route(g: nx.Graph, source: str, target: str) -> List[str]:
    candidates, best = [], None
    for path in nx.shortest_simple_paths(g, source, target, weight='weight'):
        cost = nx.path_weight(g, path, weight='weight')
        if best is None:
            best = cost
        elif cost > best + TIE_TOLERANCE:
            break
        candidates.append(path)
    return _tie_break(candidates)


def _capacity_route(g: nx.Graph, source: str, target: str) -> List[str]:
    tree = nx.maximum_spanning_tree(g, weight='capacity')
    tree_path = nx.shortest_path(tree, source, target)
    bottleneck = min(g[u][v]['capacity'] for u, v in zip(tree_path, tree_path[1:]))
    wide = nx.Graph()
    wide.add_nodes_from(g.nodes)
    wide.add_edges_from(
        (u, v) for u, v, c in g.edges(data='capacity') if c >= bottleneck - TIE_TOLERANCE
    )
    return _tie_break([list(p) for p in nx.all_shortest_paths(wide, source, target)])


def choose_path(graph: NetworkGraph, source: str, target: str,
                metric: str = 'fidelity') -> PathScore:
    """Route maximizing ``metric`` and its heuristic score, without simulation.

    Ties go to fewer hops, then to the lexicographically smaller node list.
    Raises UnreachableError when no path of non-zero concurrence links exists.
    """
    _check_metric(metric)
    _check_endpoints(graph, source, target)
    return _route(build_routing_graph(graph, metric), source, target, metric)


def _route(g: nx.Graph, source: str, target: str, metric: str) -> PathScore:
    if not nx.has_path(g, source, target):
        raise UnreachableError(f"No path of entangled links from '{source}' to '{target}'")
    path = _fidelity_route(g, source, target) if metric == 'fidelity' else _capacity_route(g, source, target)
    return path, path_heuristic(g, path, metric)


def best_path(graph: NetworkGraph, source: str, target: str, metric: str = 'fidelity',
              node_params: Optional[Tuple[float, float]] = None) -> RouteReport:
    """Pick the route maximizing ``metric`` and simulate it end to end.

    ``node_params`` sets (n, m) at every intermediate node of a qubit path.
    """
    _check_metric(metric)
    _check_endpoints(graph, source, target)
    g = build_routing_graph(graph, metric)
    path, heuristic = _route(g, source, target, metric)
    params = [tuple(node_params)] * (len(path) - 2) if node_params is not None else None
    logger.debug(f"Route {'-'.join(path)} chosen by {metric}")
    report = simulate_path(graph, path, params, edges=_path_edges(g, path))
    report.metric = metric
    report.heuristic_score = heuristic
    return report


def _edges_for_path(graph: NetworkGraph, path: Sequence[str]) -> List[NetworkEdge]:
    edges = []
    for u, v in zip(path, path[1:]):
        links = [e for e in graph.edges if {e.endpoint_a, e.endpoint_b} == {u, v}]
        if not links:
            raise NetworkError(f"No link between '{u}' and '{v}'")
        edges.append(max(links, key=lambda e: score_edge(e).concurrence))
    return edges


def simulate_path(graph: NetworkGraph, path: Sequence[str], params: Optional[Params] = None,
                  edges: Optional[Sequence[NetworkEdge]] = None) -> RouteReport:
    """Exact end-to-end outcomes of swapping every intermediate node of ``path``.

    Qubit paths are measured in the general basis with ``params`` (default
    n = m = 1) and carry fidelity and chain fidelity-relation residuals. Qudit paths are
    measured in the qudit Bell basis; fidelity is not defined for them.
    """
    path = list(path)
    if len(path) < 2 or len(set(path)) != len(path):
        raise ValidationError(f"Path must list at least two distinct nodes, got {path}")
    for node in path:
        if not graph.has_node(node):
            raise NetworkError(f"Unknown node '{node}'")
    edges = list(edges) if edges is not None else _edges_for_path(graph, path)
    states = [edge.oriented(u) for edge, u in zip(edges, path)]
    scores = [score_edge(edge) for edge in edges]
    heuristic = float(np.prod([s.concurrence for s in scores]))
    report = RouteReport(path=path, metric='fidelity', heuristic_score=heuristic,
                         edge_labels=[e.label for e in edges], edge_scores=scores)
    qubit = graph.is_qubit
    d = graph.dim

    if len(states) == 1:
        state = states[0]
        c = scores[0].concurrence
        report.outcomes.append(PathOutcome(
            outcome_indices=(), probability=1.0, concurrence=c,
            fidelity=teleportation_fidelity_pure(c) if qubit else None,
            capacity=scores[0].capacity,
            theorem_residual=0.0 if qubit else None,
        ))
        report.predicted_vs_simulated = 0.0
        return report

    if qubit:
        outcomes = chain_swap_simultaneous(states, params)
        theorem = {o.outcome_indices: o.residual for o in verify_theorem_II(states, params).outcomes}
        report.predicted_vs_simulated = verify_chain_relation(states, params).max_residual
    else:
        if params is not None:
            logger.warning("Entangling parameters ignored on a qudit path, using the Bell basis")
        bases = [basis_for_link(d)] * (len(states) - 1)
        outcomes = chain_swap_simultaneous(states, bases=bases)
        theorem = {}

    for outcome in outcomes:
        if not outcome.possible:
            report.outcomes.append(PathOutcome(outcome.outcome_indices, outcome.probability,
                                               None, None, None, None))
            continue
        c = concurrence(outcome.state)
        report.outcomes.append(PathOutcome(
            outcome_indices=outcome.outcome_indices,
            probability=outcome.probability,
            concurrence=c,
            fidelity=teleportation_fidelity_pure(c) if qubit else None,
            capacity=dense_coding_capacity_pure(outcome.state, d),
            theorem_residual=theorem.get(outcome.outcome_indices),
        ))

    if not qubit:
        maximal = all(schmidt_decompose(s).is_uniform() for s in states)
        report.predicted_vs_simulated = (
            max(abs(o.concurrence - heuristic) for o in report.outcomes if o.concurrence is not None)
            if maximal else None
        )
    return report
