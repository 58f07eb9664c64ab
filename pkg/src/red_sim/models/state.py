# src/red_sim/models/state.py
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..exceptions.errors import DimensionError, ValidationError
from ..utils.validation import (
    LOAD_NORM_TOLERANCE,
    NORM_TOLERANCE,
    is_unitary,
    validate_density,
    validate_dimension,
    validate_normalized,
)


def _frozen_array(values, dtype=complex) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PureBipartiteState:
    """Pure state of one entangled link, amp[i][j] multiplies |i>|j>."""
    amp: np.ndarray

    def __post_init__(self):
        amp = _frozen_array(self.amp)
        if amp.ndim != 2:
            raise DimensionError(f"Amplitudes must form a matrix, got shape {amp.shape}")
        for dim in amp.shape:
            error = validate_dimension(dim)
            if error:
                raise DimensionError(error)
        error = validate_normalized(amp, NORM_TOLERANCE)
        if error:
            raise ValidationError(error)
        object.__setattr__(self, 'amp', amp)

    @classmethod
    def from_amplitudes(cls, amp, tolerance: float = LOAD_NORM_TOLERANCE) -> 'PureBipartiteState':
        """Build a state from amplitudes that are normalized within tolerance, then renormalize."""
        amp = np.array(amp, dtype=complex)
        error = validate_normalized(amp, tolerance)
        if error:
            raise ValidationError(error)
        return cls(amp / np.linalg.norm(amp))

    @classmethod
    def normalized(cls, amp) -> 'PureBipartiteState':
        """Build a state from any non-zero amplitude matrix."""
        amp = np.array(amp, dtype=complex)
        norm = np.linalg.norm(amp)
        if not np.isfinite(norm) or norm < 1e-300:
            raise ValidationError("Cannot normalize a zero or non-finite amplitude matrix")
        return cls(amp / norm)

    @classmethod
    def from_schmidt(cls, coeffs) -> 'PureBipartiteState':
        """Diagonal state sum_i coeffs[i] |ii>."""
        return cls(np.diag(np.asarray(coeffs, dtype=complex)))

    @property
    def dim_left(self) -> int:
        return self.amp.shape[0]

    @property
    def dim_right(self) -> int:
        return self.amp.shape[1]

    @property
    def dims(self) -> Tuple[int, int]:
        return self.amp.shape

    def vector(self) -> np.ndarray:
        """Flattened state vector over H_A (x) H_B."""
        return self.amp.reshape(-1)

    def projector(self) -> 'DensityMatrix':
        vec = self.vector()
        return DensityMatrix(np.outer(vec, vec.conj()), dims=self.dims)

    def overlap(self, other: 'PureBipartiteState') -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise DimensionError(f"Cannot overlap states of dims {self.dims} and {other.dims}")
        return complex(np.vdot(self.amp, other.amp))

    def local_transform(self, left: np.ndarray, right: np.ndarray) -> 'PureBipartiteState':
        """Apply U (x) V: amp -> U amp V^T."""
        return PureBipartiteState(left @ self.amp @ np.asarray(right).T)

    def __repr__(self) -> str:
        return f"PureBipartiteState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Schmidt coefficients (descending) and the local bases that diagonalize a state."""
    coeffs: np.ndarray
    left_unitary: np.ndarray
    right_unitary: np.ndarray

    def __post_init__(self):
        coeffs = _frozen_array(self.coeffs, dtype=float)
        if np.any(coeffs < 0):
            raise ValidationError("Schmidt coefficients must be non-negative")
        if np.any(np.diff(coeffs) > 1e-15):
            raise ValidationError("Schmidt coefficients must be sorted in descending order")
        if abs(float(np.sum(coeffs ** 2)) - 1.0) > NORM_TOLERANCE:
            raise ValidationError("Squared Schmidt coefficients must sum to one")
        for side in ('left_unitary', 'right_unitary'):
            if not is_unitary(getattr(self, side)):
                raise ValidationError(f"Schmidt {side.replace('_', ' ')} is not unitary")
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'left_unitary', _frozen_array(self.left_unitary))
        object.__setattr__(self, 'right_unitary', _frozen_array(self.right_unitary))

    @classmethod
    def from_coefficients(cls, coeffs) -> 'SchmidtForm':
        """Schmidt form of the already diagonal state sum_i c_i |ii>.

        Coefficients are sorted; the local unitaries are the permutation
        that maps the computational basis onto that order.
        """
        coeffs = np.abs(np.asarray(coeffs, dtype=float))
        coeffs = coeffs / np.linalg.norm(coeffs)
        order = np.argsort(-coeffs, kind='stable')
        permutation = np.eye(len(coeffs))[:, order]
        return cls(coeffs[order], permutation, permutation)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def probabilities(self) -> np.ndarray:
        """Squared coefficients, the spectrum of either reduced state."""
        return self.coeffs ** 2

    def reconstruct(self) -> np.ndarray:
        """left_unitary . diag(coeffs) . right_unitary^T."""
        k = self.dim
        return self.left_unitary[:, :k] @ np.diag(self.coeffs) @ self.right_unitary[:, :k].T

    def is_uniform(self, tolerance: float = 1e-10) -> bool:
        """True when every coefficient equals 1/sqrt(d) (maximal entanglement)."""
        return bool(np.all(np.abs(self.coeffs - 1 / np.sqrt(self.dim)) <= tolerance))

    def diagonal_state(self) -> PureBipartiteState:
        return PureBipartiteState.from_schmidt(self.coeffs)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density operator; ``dims`` records the bipartite factorization when known."""
    rho: np.ndarray
    dims: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        rho = _frozen_array(self.rho)
        error = validate_density(rho)
        if error:
            raise ValidationError(error)
        dims = tuple(int(d) for d in self.dims)
        if dims and int(np.prod(dims)) != rho.shape[0]:
            raise DimensionError(f"Factor dims {dims} do not multiply to {rho.shape[0]}")
        object.__setattr__(self, 'rho', rho)
        object.__setattr__(self, 'dims', dims)

    @classmethod
    def maximally_mixed(cls, dim: int, dims: Tuple[int, ...] = ()) -> 'DensityMatrix':
        return cls(np.eye(dim) / dim, dims=dims)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh((self.rho + self.rho.conj().T) / 2)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, dims={self.dims})"
