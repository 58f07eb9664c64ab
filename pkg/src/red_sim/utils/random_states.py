# src/red_sim/utils/random_states.py
"""Seeded generators for random resources and measurement parameters.

Amplitudes come from a rotation-invariant complex normal distribution and
are then normalized; Schmidt spectra are uniform on the probability simplex.
"""
from itertools import combinations
from typing import List, Tuple

import numpy as np
from scipy.stats import unitary_group

from ..models.network import NetworkEdge, NetworkGraph
from ..models.state import PureBipartiteState, SchmidtForm


def make_rng(seed=None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_state(rng: np.random.Generator, dim_left: int = 2,
                 dim_right: int = None) -> PureBipartiteState:
    dim_right = dim_left if dim_right is None else dim_right
    amp = rng.standard_normal((dim_left, dim_right)) + 1j * rng.standard_normal((dim_left, dim_right))
    return PureBipartiteState.normalized(amp)


def random_spectrum(rng: np.random.Generator, d: int) -> SchmidtForm:
    """Schmidt coefficients sqrt(p) with p uniform on the simplex."""
    probabilities = rng.dirichlet(np.ones(d))
    return SchmidtForm.from_coefficients(np.sqrt(probabilities))


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random d x d unitary."""
    return unitary_group.rvs(d, random_state=rng)


def random_params(rng: np.random.Generator, count: int = 1) -> List[Tuple[float, float]]:
    """Entangling parameters (n, m) drawn from (0, 1]."""
    return [(float(1.0 - rng.random()), float(1.0 - rng.random())) for _ in range(count)]


def maximal_spectrum(d: int) -> SchmidtForm:
    return SchmidtForm.from_coefficients(np.full(d, 1.0 / np.sqrt(d)))


def rotated(sf: SchmidtForm, rng: np.random.Generator) -> PureBipartiteState:
    """The diagonal state of ``sf`` under independent Haar-random local unitaries."""
    d = sf.dim
    return sf.diagonal_state().local_transform(random_unitary(rng, d), random_unitary(rng, d))


def random_network(rng: np.random.Generator, n_nodes: int, edge_probability: float = 0.5,
                   d: int = 2) -> NetworkGraph:
    """Random graph of pure links: mostly random states, some maximal, some product."""
    nodes = tuple(f"n{k}" for k in range(n_nodes))
    edges = []
    for a, b in combinations(nodes, 2):
        if rng.random() >= edge_probability:
            continue
        kind = rng.random()
        if kind < 0.2:
            state = maximal_spectrum(d).diagonal_state()
        elif kind < 0.3:
            state = PureBipartiteState.from_schmidt(np.eye(d)[0])
        else:
            state = random_state(rng, d)
        edges.append(NetworkEdge(a, b, state, f"{a}-{b}"))
    return NetworkGraph(nodes, tuple(edges))
