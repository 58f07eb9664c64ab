# src/red_sim/models/bloch.py
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class BlochForm:
    """Two-qubit state as local Bloch vectors r, s and correlation matrix T."""
    r_vec: np.ndarray
    s_vec: np.ndarray
    T: np.ndarray

    def correlation_singular_values(self) -> np.ndarray:
        """Singular values of T, the square roots of the eigenvalues of T^dagger T.

        Taken from the SVD so round-off near zero is never square-rooted.
        """
        return np.linalg.svd(self.T, compute_uv=False)
