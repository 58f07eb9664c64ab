# src/red_sim/core/quantum.py
"""Pure bipartite states and small density matrices: products, projections,
partial traces, Schmidt decomposition and entropies."""
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.stats import entropy as shannon_entropy

from ..exceptions.errors import DimensionError, ValidationError
from ..models.outcome import IMPOSSIBLE_PROBABILITY
from ..models.state import DensityMatrix, PureBipartiteState, SchmidtForm

EIGENVALUE_CLAMP = 1e-12

SIDES = ('A', 'B')


def tensor(a: PureBipartiteState, b: PureBipartiteState) -> np.ndarray:
    """Joint four-party amplitudes T[i, j, p, q] = a.amp[i, j] * b.amp[p, q]."""
    return np.einsum('ij,pq->ijpq', a.amp, b.amp)


def schmidt_decompose(state: PureBipartiteState) -> SchmidtForm:
    """Singular value decomposition of the amplitude matrix.

    Phases live in the local unitaries; coefficients come out real,
    non-negative and descending.
    """
    left, coeffs, right_h = np.linalg.svd(state.amp)
    coeffs = np.clip(coeffs, 0.0, None)
    coeffs = coeffs / np.linalg.norm(coeffs)
    return SchmidtForm(coeffs, left, right_h.T)


def bipartite_dims(rho: DensityMatrix, dims: Optional[Tuple[int, int]] = None) -> Tuple[int, int]:
    dims = tuple(dims) if dims else rho.dims
    if len(dims) != 2:
        raise DimensionError("Bipartite dimensions (d_A, d_B) are required")
    if dims[0] * dims[1] != rho.dim:
        raise DimensionError(f"Dimensions {dims} do not factor a {rho.dim}x{rho.dim} matrix")
    return dims


def partial_trace(rho: DensityMatrix, keep: str = 'B',
                  dims: Optional[Tuple[int, int]] = None) -> DensityMatrix:
    """Reduced density matrix of side ``keep`` ('A' or 'B')."""
    if keep not in SIDES:
        raise ValidationError(f"keep must be one of {SIDES}, got {keep!r}")
    d_a, d_b = bipartite_dims(rho, dims)
    blocks = rho.rho.reshape(d_a, d_b, d_a, d_b)
    if keep == 'A':
        reduced = np.einsum('ijkj->ik', blocks)
    else:
        reduced = np.einsum('ijil->jl', blocks)
    reduced = (reduced + reduced.conj().T) / 2
    return DensityMatrix(reduced / np.trace(reduced).real)


def reduced_state(state: PureBipartiteState, keep: str = 'B') -> DensityMatrix:
    """Reduced density matrix of a pure state without forming the full projector."""
    if keep not in SIDES:
        raise ValidationError(f"keep must be one of {SIDES}, got {keep!r}")
    amp = state.amp
    reduced = amp @ amp.conj().T if keep == 'A' else amp.T @ amp.conj()
    reduced = (reduced + reduced.conj().T) / 2
    return DensityMatrix(reduced / np.trace(reduced).real)


def spectrum_entropy(probabilities: Sequence[float]) -> float:
    """Shannon entropy in bits, 0 log 0 = 0, values below the clamp dropped."""
    probabilities = np.asarray(probabilities, dtype=float)
    probabilities = np.where(probabilities < EIGENVALUE_CLAMP, 0.0, probabilities)
    if probabilities.sum() <= 0:
        return 0.0
    return float(shannon_entropy(probabilities, base=2))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum e log2 e over the eigenvalues of rho, in [0, log2 dim]."""
    value = spectrum_entropy(rho.eigenvalues())
    return float(min(max(value, 0.0), np.log2(rho.dim)))


def project_measurement(joint: np.ndarray, basis_vector: np.ndarray,
                        measured_pair: Tuple[int, int] = (1, 2)
                        ) -> Tuple[Optional[np.ndarray], float]:
    """Contract two subsystems of a joint amplitude tensor with <phi|.

    Returns the unnormalized residual over the remaining subsystems (axis
    order preserved) and the outcome probability. The residual is None when
    the outcome is impossible.
    """
    joint = np.asarray(joint)
    basis_vector = np.asarray(basis_vector)
    axis_a, axis_b = measured_pair
    if axis_a == axis_b or not (0 <= axis_a < joint.ndim and 0 <= axis_b < joint.ndim):
        raise DimensionError(f"Invalid measured pair {measured_pair} for a rank-{joint.ndim} tensor")
    expected = (joint.shape[axis_a], joint.shape[axis_b])
    if basis_vector.shape != expected:
        raise DimensionError(
            f"Basis vector shape {basis_vector.shape} does not match measured dims {expected}"
        )
    if abs(np.linalg.norm(basis_vector) - 1.0) > 1e-12:
        raise ValidationError("Basis vector must be normalized")

    residual = np.tensordot(basis_vector.conj(), joint, axes=([0, 1], [axis_a, axis_b]))
    probability = float(np.sum(np.abs(residual) ** 2))
    if probability < IMPOSSIBLE_PROBABILITY:
        return None, probability
    return residual, probability
