# src/red_sim/core/measures.py
"""Entanglement and capacity functionals: concurrence, sub-concurrences,
teleportation fidelity and dense-coding capacity."""
from typing import Optional, Union

import numpy as np

from ..exceptions.errors import DimensionError, ValidationError
from ..models.bloch import BlochForm
from ..models.state import DensityMatrix, PureBipartiteState, SchmidtForm
from .quantum import partial_trace, reduced_state, schmidt_decompose, spectrum_entropy, von_neumann_entropy

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

CLASSICAL_FIDELITY = 2.0 / 3.0


def concurrence_two_qubit(state: PureBipartiteState) -> float:
    """2 |det(amp)|, equal to 2 lambda_0 lambda_1."""
    if state.dims != (2, 2):
        raise DimensionError(f"Two-qubit concurrence needs a 2x2 state, got {state.dims}")
    value = 2.0 * abs(np.linalg.det(state.amp))
    return float(min(value, 1.0))


def _resolve_dim(sf: SchmidtForm, d: Optional[int]) -> int:
    d = sf.dim if d is None else int(d)
    if d < 2:
        raise DimensionError(f"Dimension must be >= 2, got {d}")
    if d < sf.dim:
        raise DimensionError(f"Dimension {d} smaller than the Schmidt rank bound {sf.dim}")
    return d


def concurrence_qudit(sf: SchmidtForm, d: Optional[int] = None) -> float:
    """sqrt((2d/(d-1)) sum_{i<j} lambda_i^2 lambda_j^2)."""
    d = _resolve_dim(sf, d)
    p = sf.probabilities
    pair_sum = np.sum(np.triu(np.outer(p, p), k=1))
    return float(np.sqrt(max(2.0 * d / (d - 1) * pair_sum, 0.0)))


def sub_concurrence(sf: SchmidtForm, i: int, j: int, d: Optional[int] = None) -> float:
    """Concurrence carried by the Schmidt pair (i, j): sqrt(2d/(d-1)) lambda_i lambda_j."""
    d = _resolve_dim(sf, d)
    if not 0 <= i < j < d:
        raise ValidationError(f"Sub-concurrence needs 0 <= i < j < d, got ({i}, {j}) with d={d}")
    lam = np.zeros(d)
    lam[:sf.dim] = sf.coeffs
    return float(np.sqrt(2.0 * d / (d - 1)) * lam[i] * lam[j])


def concurrence(state: PureBipartiteState) -> float:
    """Concurrence of any pure bipartite state, qubit formula when 2x2."""
    if state.dims == (2, 2):
        return concurrence_two_qubit(state)
    return concurrence_qudit(schmidt_decompose(state), max(state.dims))


def teleportation_fidelity_pure(c: float) -> float:
    """(2 + C) / 3 for a pure two-qubit resource."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise ValidationError(f"Concurrence must lie in [0, 1], got {c}")
    return (2.0 + min(max(c, 0.0), 1.0)) / 3.0


def bloch_form(rho: DensityMatrix) -> BlochForm:
    """Pauli expectations r_i = Tr[rho s_i x I], s_i = Tr[rho I x s_i], t_ij = Tr[rho s_i x s_j]."""
    if rho.dim != 4:
        raise DimensionError(f"Bloch form needs a two-qubit density matrix, got dim {rho.dim}")
    identity = np.eye(2)
    r_vec = np.array([np.trace(rho.rho @ np.kron(s, identity)).real for s in PAULI])
    s_vec = np.array([np.trace(rho.rho @ np.kron(identity, s)).real for s in PAULI])
    T = np.array([[np.trace(rho.rho @ np.kron(a, b)).real for b in PAULI] for a in PAULI])
    return BlochForm(r_vec, s_vec, T)


def teleportation_fidelity_mixed(rho: DensityMatrix) -> float:
    """(1/2)[1 + (1/3) sum_i sqrt(u_i)], u_i eigenvalues of T^dagger T."""
    form = bloch_form(rho)
    return float(0.5 * (1.0 + np.sum(form.correlation_singular_values()) / 3.0))


def is_useful_for_teleportation(fidelity: float) -> bool:
    """Beats the classical limit 2/3."""
    return fidelity > CLASSICAL_FIDELITY + 1e-12


def werner_state(p: float) -> DensityMatrix:
    """p |Phi+><Phi+| + (1 - p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"Werner mixing must lie in [0, 1], got {p}")
    phi_plus = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = p * np.outer(phi_plus, phi_plus.conj()) + (1 - p) * np.eye(4) / 4
    return DensityMatrix(rho, dims=(2, 2))


def dense_coding_capacity_mixed(rho_ab: DensityMatrix, d: int) -> float:
    """log2 d + S(rho_B) - S(rho_AB), in bits."""
    if rho_ab.dim != d * d:
        raise DimensionError(f"Capacity needs a state on H_{d} x H_{d}, got dim {rho_ab.dim}")
    rho_b = partial_trace(rho_ab, keep='B', dims=(d, d))
    return float(np.log2(d) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho_ab))


def entanglement_entropy(state: Union[PureBipartiteState, SchmidtForm]) -> float:
    """Entropy of either reduced state of a pure state, in bits."""
    if isinstance(state, SchmidtForm):
        return spectrum_entropy(state.probabilities)
    return von_neumann_entropy(reduced_state(state, keep='B'))


def dense_coding_capacity_pure(state: Union[PureBipartiteState, SchmidtForm],
                               d: Optional[int] = None) -> float:
    """log2 d + E, with E the entanglement entropy."""
    if d is None:
        d = state.dim if isinstance(state, SchmidtForm) else max(state.dims)
    return float(np.log2(d) + entanglement_entropy(state))
