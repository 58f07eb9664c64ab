# tests/test_integration.py
import json

import numpy as np
import pytest
from click.testing import CliRunner

from red_sim.cli.main import cli
from red_sim.core.bases import build_general_qubit_basis
from red_sim.core.measures import concurrence_two_qubit, teleportation_fidelity_mixed
from red_sim.core.routing import best_path, load_network
from red_sim.core.swap import chain_swap_sequential, swap_once
from red_sim.utils.filesystem import read_document
from red_sim.utils.serialization import parse_swap_document


class TestIntegration:
    @pytest.mark.integration
    def test_swap_file_to_relations(self, chain_file):
        """Chain file read from disk, swapped hop by hop, checked against the closed relation."""
        swap_input = parse_swap_document(read_document(chain_file), str(chain_file))
        states, params = swap_input.states, swap_input.params
        outcomes = chain_swap_sequential(states, params)
        assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-12

        c_product = np.prod([concurrence_two_qubit(s) for s in states])
        for outcome in outcomes:
            f_product = np.prod([n if h == 0 else m for (n, m), (_, h) in zip(params, outcome.outcome_indices)])
            expected = f_product / (4 * outcome.normalization) * c_product
            assert abs(concurrence_two_qubit(outcome.state) - expected) < 1e-9

    @pytest.mark.integration
    def test_fidelity_relation_on_degraded_links(self, partial):
        basis = build_general_qubit_basis(0.6, 0.9)
        term = 3 * teleportation_fidelity_mixed(partial.projector()) - 2
        for outcome in swap_once(partial, partial, basis):
            r, h = outcome.outcome_indices[0]
            lhs = 3 * teleportation_fidelity_mixed(outcome.state.projector()) - 2
            rhs = basis.f_factor(r, h) / (2 * outcome.normalization) * term * term
            assert abs(lhs - rhs) < 1e-9

    @pytest.mark.integration
    def test_route_report_matches_cli(self, triangle_file):
        report = best_path(load_network(triangle_file), 'A', 'C')
        result = CliRunner().invoke(cli, ['route', '-i', str(triangle_file), '--source', 'A',
                                          '--target', 'C', '--format', 'json'])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload['path'] == report.path
        assert payload['probability_sum'] == pytest.approx(report.total_probability, abs=1e-11)
        assert len(payload['outcomes']) == len(report.outcomes)

    @pytest.mark.integration
    def test_verify_writes_report(self, temp_dir):
        target = temp_dir / 'verify.txt'
        result = CliRunner().invoke(cli, ['verify', '--trials', '5', '--quiet', '--suite', 'theorem-I',
                                          '-o', str(target)])
        assert result.exit_code == 0
        text = target.read_text(encoding='utf-8')
        assert 'passed: yes' in text
        assert 'theorem-I' in text
