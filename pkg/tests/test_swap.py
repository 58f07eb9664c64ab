# tests/test_swap.py
import numpy as np
import pytest

from red_sim.core.bases import build_general_qubit_basis, build_qudit_bell_basis
from red_sim.core.measures import concurrence, concurrence_two_qubit
from red_sim.core.swap import (
    canonicalize_local,
    chain_closed_form,
    chain_swap_sequential,
    chain_swap_simultaneous,
    outcome_map,
    qubit_closed_form,
    qudit_closed_form,
    resolve_bases,
    swap_once,
)
from red_sim.exceptions.errors import DimensionError, ValidationError
from red_sim.models.state import PureBipartiteState
from red_sim.utils.random_states import random_params, random_spectrum, random_state


def same_ray(a, b, tol=1e-10):
    return abs(abs(a.overlap(b)) - 1.0) < tol


class TestSwapOnce:
    @pytest.mark.swap
    def test_bell_pair_in_bell_basis(self, bell):
        outcomes = swap_once(bell, bell, build_general_qubit_basis(1.0, 1.0))
        assert len(outcomes) == 4
        for outcome in outcomes:
            assert abs(outcome.probability - 0.25) < 1e-12
            assert abs(outcome.normalization - 0.5) < 1e-12
            assert abs(concurrence_two_qubit(outcome.state) - 1.0) < 1e-12

    @pytest.mark.swap
    def test_probabilities_complete(self, rng):
        for _ in range(20):
            (n, m), = random_params(rng)
            outcomes = swap_once(random_state(rng), random_state(rng), build_general_qubit_basis(n, m))
            assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-12

    @pytest.mark.swap
    def test_impossible_outcomes_carry_no_state(self, product):
        outcomes = outcome_map(swap_once(product, product, build_general_qubit_basis()))
        assert outcomes[((0, 0),)].possible
        assert abs(outcomes[((0, 0),)].probability - 0.5) < 1e-12
        assert not outcomes[((0, 1),)].possible
        assert outcomes[((1, 1),)].state is None

    @pytest.mark.swap
    def test_dimension_mismatch(self, bell, maximal_qutrit):
        with pytest.raises(DimensionError):
            swap_once(bell, maximal_qutrit.diagonal_state(), build_general_qubit_basis())

    @pytest.mark.swap
    def test_matches_qubit_closed_form(self, rng):
        for _ in range(30):
            s12, s23 = random_state(rng), random_state(rng)
            (n, m), = random_params(rng)
            basis = build_general_qubit_basis(n, m)
            for outcome in swap_once(s12, s23, basis):
                r, h = outcome.outcome_indices[0]
                state, norm = qubit_closed_form(s12, s23, basis, r, h)
                assert abs(norm - outcome.normalization) < 1e-12
                assert same_ray(state, outcome.state)

    @pytest.mark.swap
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_matches_qudit_closed_form(self, rng, d):
        sf12, sf23 = random_spectrum(rng, d), random_spectrum(rng, d)
        outcomes = swap_once(sf12.diagonal_state(), sf23.diagonal_state(), build_qudit_bell_basis(d))
        for outcome in outcomes:
            r, h = outcome.outcome_indices[0]
            state, norm = qudit_closed_form(sf12, sf23, r, h)
            assert abs(norm - outcome.normalization) < 1e-12
            assert same_ray(state, outcome.state)

    @pytest.mark.swap
    def test_maximal_qutrits_stay_maximal(self, maximal_qutrit):
        state = maximal_qutrit.diagonal_state()
        for outcome in swap_once(state, state, build_qudit_bell_basis(3)):
            assert abs(outcome.probability - 1 / 9) < 1e-12
            assert abs(concurrence(outcome.state) - 1.0) < 1e-12


class TestChains:
    @pytest.mark.swap
    def test_single_swap_chain_matches_swap_once(self, rng):
        s12, s23 = random_state(rng), random_state(rng)
        params = random_params(rng)
        chain = outcome_map(chain_swap_simultaneous([s12, s23], params))
        for outcome in swap_once(s12, s23, build_general_qubit_basis(*params[0])):
            other = chain[outcome.outcome_indices]
            assert abs(other.probability - outcome.probability) < 1e-12
            assert same_ray(other.state, outcome.state)

    @pytest.mark.swap
    def test_three_bell_links(self, bell):
        outcomes = chain_swap_simultaneous([bell, bell, bell])
        assert len(outcomes) == 16
        for outcome in outcomes:
            assert abs(outcome.probability - 1 / 16) < 1e-12
            assert abs(concurrence_two_qubit(outcome.state) - 1.0) < 1e-12

    @pytest.mark.swap
    @pytest.mark.parametrize("g", [2, 3])
    def test_sequential_agrees_with_simultaneous(self, rng, g):
        states = [random_state(rng) for _ in range(g + 1)]
        params = random_params(rng, g)
        simultaneous = outcome_map(chain_swap_simultaneous(states, params))
        sequential = chain_swap_sequential(states, params)
        assert len(sequential) == 4 ** g
        for outcome in sequential:
            other = simultaneous[outcome.outcome_indices]
            assert abs(outcome.probability - other.probability) < 1e-12
            assert abs(outcome.normalization - other.normalization) < 1e-12
            assert same_ray(outcome.state, other.state)

    @pytest.mark.swap
    def test_matches_chain_closed_form(self, rng):
        states = [random_state(rng) for _ in range(3)]
        params = random_params(rng, 2)
        for outcome in chain_swap_simultaneous(states, params):
            state, norm = chain_closed_form(states, params, outcome.outcome_indices)
            assert abs(norm - outcome.normalization) < 1e-12
            assert same_ray(state, outcome.state)

    @pytest.mark.swap
    def test_qudit_chain(self, rng):
        spectra = [random_spectrum(rng, 3) for _ in range(3)]
        states = [sf.diagonal_state() for sf in spectra]
        bases = [build_qudit_bell_basis(3)] * 2
        outcomes = chain_swap_simultaneous(states, bases=bases)
        assert len(outcomes) == 81
        assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-12

    @pytest.mark.swap
    def test_impossible_branches_propagate(self, product):
        outcomes = chain_swap_sequential([product, product, product])
        assert abs(sum(o.probability for o in outcomes) - 1.0) < 1e-12
        assert sum(o.possible for o in outcomes) == 4


class TestResolveBases:
    @pytest.mark.swap
    def test_needs_two_links(self, bell):
        with pytest.raises(ValidationError):
            resolve_bases([bell])

    @pytest.mark.swap
    def test_param_count(self, bell):
        with pytest.raises(ValidationError):
            resolve_bases([bell, bell, bell], [(1.0, 1.0)])

    @pytest.mark.swap
    def test_params_need_qubits(self, maximal_qutrit):
        state = maximal_qutrit.diagonal_state()
        with pytest.raises(DimensionError):
            resolve_bases([state, state], [(1.0, 1.0)])

    @pytest.mark.swap
    def test_defaults_to_bell(self, bell):
        bases = resolve_bases([bell, bell])
        assert bases[0].n == 1.0 and bases[0].m == 1.0


class TestCanonicalize:
    @pytest.mark.swap
    def test_diagonal_representative(self, rng):
        state = random_state(rng, 3)
        sf, diagonal = canonicalize_local(state)
        assert np.allclose(np.diag(diagonal.amp).real, sf.coeffs, atol=1e-12)

    @pytest.mark.swap
    def test_rectangular_state_is_padded(self):
        state = PureBipartiteState.normalized(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
        sf, diagonal = canonicalize_local(state)
        assert diagonal.dims == (3, 3)
        assert np.allclose(np.diag(diagonal.amp).real, [1 / np.sqrt(2), 1 / np.sqrt(2), 0.0], atol=1e-12)

    @pytest.mark.swap
    def test_diagonal_state_keeps_identity_rotations(self):
        state = PureBipartiteState.from_schmidt(np.sqrt([0.6, 0.3, 0.1]))
        sf, diagonal = canonicalize_local(state)
        assert np.array_equal(sf.left_unitary, np.eye(3))
        assert np.array_equal(sf.right_unitary, np.eye(3))
        assert np.allclose(diagonal.amp, state.amp, atol=1e-15)

    @pytest.mark.swap
    def test_phased_diagonal_state(self):
        state = PureBipartiteState(np.diag([np.sqrt(0.2) * np.exp(0.7j), np.sqrt(0.8)]))
        sf, diagonal = canonicalize_local(state)
        assert np.allclose(sf.coeffs, np.sqrt([0.8, 0.2]), atol=1e-15)
        assert np.allclose(sf.reconstruct(), state.amp, atol=1e-15)
        assert np.allclose(diagonal.amp, np.diag(np.sqrt([0.8, 0.2])), atol=1e-15)

    @pytest.mark.swap
    @pytest.mark.parametrize("h", [0, 1, 2])
    def test_swapped_qudit_state_coefficients(self, rng, h):
        """Shifted, phased swap output diagonalizes to sorted lambda_i mu_(i+h) / sqrt(N)."""
        for _ in range(20):
            sf12, sf23 = random_spectrum(rng, 3), random_spectrum(rng, 3)
            state, norm = qudit_closed_form(sf12, sf23, 1, h)
            shifted = sf23.coeffs[(np.arange(3) + h) % 3]
            expected = np.sort(sf12.coeffs * shifted / np.sqrt(norm))[::-1]
            sf, diagonal = canonicalize_local(state)
            assert np.allclose(sf.coeffs, expected, atol=1e-12)
            assert np.allclose(sf.reconstruct(), state.amp, atol=1e-12)
            assert abs(concurrence(diagonal) - concurrence(state)) < 1e-12

    @pytest.mark.swap
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_concurrence_is_unchanged(self, rng, d):
        for _ in range(50):
            state = random_state(rng, d)
            _, diagonal = canonicalize_local(state)
            assert abs(concurrence(diagonal) - concurrence(state)) < 1e-12
