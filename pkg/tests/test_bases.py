# tests/test_bases.py
import numpy as np
import pytest

from red_sim.core.bases import (
    basis_for_link,
    build_general_qubit_basis,
    build_qudit_bell_basis,
    computational_from_bell,
)
from red_sim.exceptions.errors import DimensionError, ValidationError
from red_sim.models.basis import GeneralQubitBasis, QuditBellBasis


class TestGeneralQubitBasis:
    @pytest.mark.quantum
    @pytest.mark.parametrize("n,m", [(1.0, 1.0), (0.3, 0.8), (0.0, 0.5), (0.7, 0.0), (0.0, 0.0)])
    def test_orthonormal(self, n, m):
        basis = build_general_qubit_basis(n, m)
        assert np.allclose(basis.gram(), np.eye(4), atol=1e-12)

    @pytest.mark.quantum
    def test_bell_basis_recovered(self):
        basis = build_general_qubit_basis(1.0, 1.0)
        s = 1 / np.sqrt(2)
        assert np.allclose(basis.vector(0, 0), [[s, 0], [0, s]], atol=1e-15)
        assert np.allclose(basis.vector(1, 0), [[s, 0], [0, -s]], atol=1e-15)
        assert np.allclose(basis.vector(0, 1), [[0, s], [s, 0]], atol=1e-15)
        assert np.allclose(basis.vector(1, 1), [[0, s], [-s, 0]], atol=1e-15)
        assert np.allclose(basis.weights, 2.0)

    @pytest.mark.quantum
    def test_weights_and_f_factors(self):
        basis = build_general_qubit_basis(0.4, 0.9)
        assert basis.b_factor(0, 0) == pytest.approx(1 + 0.4 ** 2)
        assert basis.b_factor(1, 1) == pytest.approx(1 + 0.9 ** 2)
        assert basis.f_factor(1, 0) == 0.4
        assert basis.f_factor(0, 1) == 0.9

    @pytest.mark.quantum
    def test_zero_parameter_gives_product_vectors(self):
        basis = build_general_qubit_basis(0.0, 1.0)
        assert not basis.is_entangling(0, 0)
        assert not basis.is_entangling(1, 0)
        assert basis.is_entangling(0, 1)

    @pytest.mark.quantum
    @pytest.mark.parametrize("n,m", [(1.2, 0.5), (-0.1, 0.5), (0.5, 2.0)])
    def test_rejects_out_of_range(self, n, m):
        with pytest.raises(ValidationError):
            build_general_qubit_basis(n, m)

    @pytest.mark.quantum
    def test_rejects_complex_parameters(self):
        with pytest.raises(ValidationError, match="real"):
            build_general_qubit_basis(0.5 + 0.1j, 1.0)

    @pytest.mark.quantum
    def test_outcome_order(self):
        basis = build_general_qubit_basis()
        assert list(basis.outcomes()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


class TestQuditBellBasis:
    @pytest.mark.quantum
    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_orthonormal(self, d):
        basis = build_qudit_bell_basis(d)
        assert np.allclose(basis.gram(), np.eye(d * d), atol=1e-12)
        assert all(basis.is_entangling(r, h) for r, h in basis.outcomes())

    @pytest.mark.quantum
    def test_matches_qubit_bell_basis_at_d2(self):
        qudit = build_qudit_bell_basis(2)
        qubit = build_general_qubit_basis(1.0, 1.0)
        assert np.allclose(qudit.vectors, qubit.vectors, atol=1e-12)

    @pytest.mark.quantum
    @pytest.mark.parametrize("d", [1, 0, 2.5])
    def test_rejects_bad_dimension(self, d):
        with pytest.raises(DimensionError):
            build_qudit_bell_basis(d)

    @pytest.mark.quantum
    def test_computational_inversion(self):
        basis = build_qudit_bell_basis(3)
        for i in range(3):
            for j in range(3):
                expected = np.zeros((3, 3))
                expected[i, j] = 1.0
                assert np.allclose(computational_from_bell(basis, i, j), expected, atol=1e-12)

    @pytest.mark.quantum
    def test_basis_for_link(self):
        assert isinstance(basis_for_link(2, 0.5, 0.5), GeneralQubitBasis)
        assert isinstance(basis_for_link(4), QuditBellBasis)
