# src/red_sim/models/basis.py
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Tuple

import numpy as np

Outcome = Tuple[int, int]


def qubit_coefficient(r: int, h: int, t: int, n: float, m: float) -> float:
    """R_t^{rh}: n on (0,0,1),(1,0,0); m on (0,1,1),(1,1,0); 1 otherwise."""
    if (r, h, t) in ((0, 0, 1), (1, 0, 0)):
        return n
    if (r, h, t) in ((0, 1, 1), (1, 1, 0)):
        return m
    return 1.0


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Complete orthonormal family of bipartite vectors indexed by (r, h).

    ``vectors[r, h]`` is a dim x dim amplitude matrix: entry [t, s] is the
    coefficient of |t>|s>. ``weights[r, h]`` is the factor B_rh that turns
    an outcome probability into the unnormalized-state norm M_rh.
    """
    dim: int
    vectors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for name in ('vectors', 'weights'):
            array = np.array(getattr(self, name), copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def outcomes(self) -> Iterator[Outcome]:
        return iter(product(range(self.dim), repeat=2))

    def vector(self, r: int, h: int) -> np.ndarray:
        return self.vectors[r, h]

    def b_factor(self, r: int, h: int) -> float:
        return float(self.weights[r, h])

    def gram(self) -> np.ndarray:
        """Matrix of inner products between all basis vectors, outcome-major."""
        flat = self.vectors.reshape(self.dim * self.dim, -1)
        return flat.conj() @ flat.T

    def is_entangling(self, r: int, h: int) -> bool:
        """False when the outcome vector is a product vector."""
        singular = np.linalg.svd(self.vectors[r, h], compute_uv=False)
        return bool(np.sum(singular > 1e-12) > 1)


@dataclass(frozen=True, eq=False)
class GeneralQubitBasis(MeasurementBasis):
    """Non-maximally entangled two-qubit basis with entangling parameters n, m."""
    n: float = 1.0
    m: float = 1.0

    def coefficient(self, r: int, h: int, t: int) -> float:
        return qubit_coefficient(r, h, t, self.n, self.m)

    def f_factor(self, r: int, h: int) -> float:
        """F_rh = R_0^{rh} R_1^{rh}: n when h = 0, m when h = 1."""
        return self.n if h == 0 else self.m


@dataclass(frozen=True, eq=False)
class QuditBellBasis(MeasurementBasis):
    """Maximally entangled d x d Bell basis."""
    pass
