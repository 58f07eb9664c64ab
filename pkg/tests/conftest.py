# tests/conftest.py
import json
import tempfile
from pathlib import Path

import numpy as np
import pytest

from red_sim.config.settings import get_settings
from red_sim.models.network import NetworkEdge, NetworkGraph
from red_sim.models.state import PureBipartiteState, SchmidtForm
from red_sim.utils.random_states import random_network

SQRT_HALF = 1 / np.sqrt(2)


@pytest.fixture
def temp_dir():
    """Provide a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)

@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep settings and log files out of the real home directory."""
    monkeypatch.setenv('HOME', str(tmp_path))
    monkeypatch.delenv('RED_SIM_CONFIG', raising=False)
    get_settings.cache_clear()
    yield tmp_path
    get_settings.cache_clear()

@pytest.fixture
def rng():
    return np.random.default_rng(20240601)

@pytest.fixture
def bell():
    return PureBipartiteState.from_schmidt([SQRT_HALF, SQRT_HALF])

@pytest.fixture
def product():
    return PureBipartiteState.from_schmidt([1.0, 0.0])

@pytest.fixture
def partial():
    """lambda = (sqrt 0.8, sqrt 0.2)."""
    return PureBipartiteState.from_schmidt([np.sqrt(0.8), np.sqrt(0.2)])

@pytest.fixture
def maximal_qutrit():
    return SchmidtForm.from_coefficients(np.full(3, 1 / np.sqrt(3)))


def state_doc(state: PureBipartiteState) -> dict:
    return {
        'dims': list(state.dims),
        'amp': [[[float(v.real), float(v.imag)] for v in row] for row in state.amp],
    }

def write_json(path: Path, document) -> Path:
    path.write_text(json.dumps(document, indent=2), encoding='utf-8')
    return path


@pytest.fixture
def bell_swap_file(temp_dir, bell):
    """Two Bell links, no basis parameters."""
    return write_json(temp_dir / 'bell_swap.json', {'states': [state_doc(bell), state_doc(bell)]})

@pytest.fixture
def qutrit_swap_file(temp_dir):
    coeffs = np.sqrt([0.5, 0.3, 0.2])
    state = PureBipartiteState.from_schmidt(coeffs)
    return write_json(temp_dir / 'qutrit_swap.json',
                      {'states': [state_doc(state), state_doc(state)], 'basis': 'bell'})

@pytest.fixture
def chain_file(temp_dir, bell, partial):
    return write_json(temp_dir / 'chain.json', {
        'states': [state_doc(bell), state_doc(partial), state_doc(bell)],
        'params': [{'n': 0.7, 'm': 0.4}, {'n': 1.0, 'm': 0.5}],
    })

@pytest.fixture
def triangle_document(bell):
    """Direct A-C link with concurrence 0.5 against two Bell hops via B."""
    half = PureBipartiteState.from_schmidt(np.sqrt([(1 + np.sqrt(0.75)) / 2, (1 - np.sqrt(0.75)) / 2]))
    return {
        'nodes': ['A', 'B', 'C'],
        'states': {'bell': state_doc(bell)},
        'edges': [
            {'endpoint_a': 'A', 'endpoint_b': 'C', 'resource': state_doc(half), 'label': 'direct'},
            {'endpoint_a': 'A', 'endpoint_b': 'B', 'resource': 'bell', 'label': 'ab'},
            {'endpoint_a': 'B', 'endpoint_b': 'C', 'resource': 'bell', 'label': 'bc'},
        ],
    }

@pytest.fixture
def triangle_file(temp_dir, triangle_document):
    return write_json(temp_dir / 'triangle.json', triangle_document)

@pytest.fixture
def disconnected_document(bell, product):
    return {
        'nodes': ['A', 'B', 'C'],
        'edges': [
            {'endpoint_a': 'A', 'endpoint_b': 'B', 'resource': state_doc(bell), 'label': 'ab'},
            {'endpoint_a': 'B', 'endpoint_b': 'C', 'resource': state_doc(product), 'label': 'bc'},
        ],
    }

@pytest.fixture
def small_graphs(bell, partial, product, triangle_document):
    """Graphs with at most 8 nodes: hand-built shapes plus seeded random ones."""
    from red_sim.utils.serialization import parse_network_document

    graphs = [parse_network_document(triangle_document)]
    line = ('a', 'b', 'c', 'd')
    graphs.append(NetworkGraph(line, tuple(
        NetworkEdge(u, v, bell, f"{u}{v}") for u, v in zip(line, line[1:])
    )))
    ring = tuple(f"r{k}" for k in range(6))
    graphs.append(NetworkGraph(ring, tuple(
        NetworkEdge(ring[k], ring[(k + 1) % 6], partial if k % 2 else bell, f"ring{k}") for k in range(6)
    )))
    star = ('hub', 's1', 's2', 's3', 's4')
    graphs.append(NetworkGraph(star, tuple(
        NetworkEdge('hub', leaf, partial, f"hub-{leaf}") for leaf in star[1:]
    ) + (NetworkEdge('s1', 's4', product, 'dead'),)))

    rng = np.random.default_rng(7)
    while len(graphs) < 24:
        graph = random_network(rng, int(rng.integers(3, 9)), float(rng.uniform(0.35, 0.8)))
        if graph.edges:
            graphs.append(graph)
    return graphs
