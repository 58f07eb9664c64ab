# tests/test_performance.py
import time

import pytest

from red_sim.core.relations import verify_qubit_relation, verify_theorem_II
from red_sim.core.routing import choose_path
from red_sim.exceptions.errors import UnreachableError
from red_sim.utils.random_states import make_rng, random_network, random_params, random_state


class TestPerformance:
    @pytest.mark.slow
    def test_qubit_relation_throughput(self):
        """A thousand random pairs verify within seconds."""
        rng = make_rng(1)
        start_time = time.time()
        for _ in range(1000):
            (n, m), = random_params(rng)
            assert verify_qubit_relation(random_state(rng), random_state(rng), n, m).within(1e-9)
        duration = time.time() - start_time

        assert duration < 5

    @pytest.mark.slow
    def test_three_swap_chains(self):
        rng = make_rng(2)
        start_time = time.time()
        for _ in range(200):
            states = [random_state(rng) for _ in range(4)]
            assert verify_theorem_II(states, random_params(rng, 3)).within(1e-9)
        duration = time.time() - start_time

        assert duration < 30

    @pytest.mark.slow
    def test_routing_larger_graph(self):
        rng = make_rng(3)
        graph = random_network(rng, 60, 0.1)
        start_time = time.time()
        for target in graph.nodes[1:20]:
            try:
                choose_path(graph, graph.nodes[0], target)
            except UnreachableError:
                continue
        duration = time.time() - start_time

        assert duration < 10
