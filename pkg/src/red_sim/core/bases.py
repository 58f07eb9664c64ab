# src/red_sim/core/bases.py
import numpy as np

from ..exceptions.errors import DimensionError, ValidationError
from ..logging.logger import get_logger
from ..models.basis import GeneralQubitBasis, QuditBellBasis, qubit_coefficient
from ..utils.validation import validate_unit_interval

logger = get_logger(__name__)


def build_general_qubit_basis(n: float = 1.0, m: float = 1.0) -> GeneralQubitBasis:
    """Two-qubit basis phi^{rh} = B_rh^{-1/2} sum_t e^{i pi r t} R_t^{rh} |t>|t+h>.

    n = m = 1 gives the Bell basis. n = 0 or m = 0 gives product vectors for
    the affected outcomes; the basis stays orthonormal.
    """
    for name, value in (('n', n), ('m', m)):
        error = validate_unit_interval(name, value)
        if error:
            raise ValidationError(error)
    n, m = float(n), float(m)
    if n == 0.0 or m == 0.0:
        logger.debug(f"Basis with n={n}, m={m} has non-entangling outcomes")

    vectors = np.zeros((2, 2, 2, 2), dtype=complex)
    weights = np.zeros((2, 2))
    for r in range(2):
        for h in range(2):
            coeffs = [qubit_coefficient(r, h, t, n, m) for t in range(2)]
            weights[r, h] = sum(c ** 2 for c in coeffs)
            for t in range(2):
                vectors[r, h, t, (t + h) % 2] = np.exp(1j * np.pi * r * t) * coeffs[t]
            vectors[r, h] /= np.sqrt(weights[r, h])
    return GeneralQubitBasis(dim=2, vectors=vectors, weights=weights, n=n, m=m)


def build_qudit_bell_basis(d: int) -> QuditBellBasis:
    """phi^{rh} = d^{-1/2} sum_t e^{2 pi i r t / d} |t>|t+h mod d>."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise DimensionError(f"Qudit Bell basis needs an integer d >= 2, got {d}")
    d = int(d)
    vectors = np.zeros((d, d, d, d), dtype=complex)
    t = np.arange(d)
    for r in range(d):
        for h in range(d):
            vectors[r, h, t, (t + h) % d] = np.exp(2j * np.pi * r * t / d) / np.sqrt(d)
    return QuditBellBasis(dim=d, vectors=vectors, weights=np.full((d, d), float(d)))


def computational_from_bell(basis: QuditBellBasis, i: int, j: int) -> np.ndarray:
    """Expand |ij> back over the Bell vectors: sum_{rh} <phi^{rh}|ij> phi^{rh}."""
    d = basis.dim
    target = np.zeros((d, d), dtype=complex)
    target[i, j] = 1.0
    result = np.zeros((d, d), dtype=complex)
    for r, h in basis.outcomes():
        vec = basis.vector(r, h)
        result += np.vdot(vec, target) * vec
    return result


def basis_for_link(dim: int, n: float = 1.0, m: float = 1.0):
    """General qubit basis for qubit links, Bell basis for qudit links."""
    if dim == 2:
        return build_general_qubit_basis(n, m)
    return build_qudit_bell_basis(dim)
