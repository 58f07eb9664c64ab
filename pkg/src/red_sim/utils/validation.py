# src/red_sim/utils/validation.py
from typing import Optional

import numpy as np

NORM_TOLERANCE = 1e-12
HERMITIAN_TOLERANCE = 1e-12
EIGENVALUE_FLOOR = -1e-10
LOAD_NORM_TOLERANCE = 1e-5


def norm_error(amp: np.ndarray) -> float:
    """Distance of the squared 2-norm from one."""
    return abs(float(np.sum(np.abs(amp) ** 2)) - 1.0)

def validate_normalized(amp: np.ndarray, tolerance: float = NORM_TOLERANCE) -> Optional[str]:
    """Validate that an amplitude array has unit norm."""
    if not np.all(np.isfinite(amp)):
        return "Amplitudes must be finite"
    error = norm_error(amp)
    if error > tolerance:
        return f"State is not normalized (|norm^2 - 1| = {error:.3e})"
    return None

def validate_dimension(dim: int, minimum: int = 2) -> Optional[str]:
    """Validate a subsystem dimension."""
    if not isinstance(dim, (int, np.integer)) or dim < minimum:
        return f"Dimension must be an integer >= {minimum}, got {dim}"
    return None

def validate_unit_interval(name: str, value) -> Optional[str]:
    """Validate a real parameter in [0, 1]."""
    if isinstance(value, complex) or np.iscomplexobj(value):
        return f"{name} must be real, complex entangling parameters do not define a projective basis"
    try:
        value = float(value)
    except (TypeError, ValueError):
        return f"{name} must be a real number"
    if not 0.0 <= value <= 1.0:
        return f"{name} must lie in [0, 1], got {value}"
    return None

def is_unitary(matrix: np.ndarray, tolerance: float = 1e-10) -> bool:
    """Check U^H U = I."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    identity = np.eye(matrix.shape[0])
    return bool(np.allclose(matrix.conj().T @ matrix, identity, atol=tolerance))

def validate_density(rho: np.ndarray) -> Optional[str]:
    """Validate trace, hermiticity and positivity of a density matrix."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return f"Density matrix must be square, got shape {rho.shape}"
    if not np.all(np.isfinite(rho)):
        return "Density matrix entries must be finite"
    trace = np.trace(rho)
    if abs(trace - 1.0) > NORM_TOLERANCE:
        return f"Density matrix trace is {trace.real:.15g}, expected 1"
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
        return "Density matrix is not Hermitian"
    eigenvalues = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if eigenvalues.min() < EIGENVALUE_FLOOR:
        return f"Density matrix has negative eigenvalue {eigenvalues.min():.3e}"
    return None
