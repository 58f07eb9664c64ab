# src/red_sim/core/swap.py
"""Entanglement swapping: single swaps, chains measured simultaneously or
sequentially, and the closed-form swapped states they must reproduce."""
from itertools import product
from string import ascii_letters
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions.errors import DimensionError, ValidationError
from ..logging.logger import get_logger
from ..models.basis import GeneralQubitBasis, MeasurementBasis, qubit_coefficient
from ..models.outcome import IMPOSSIBLE_PROBABILITY, OutcomeIndices, SwapOutcome
from ..models.state import PureBipartiteState, SchmidtForm
from .bases import build_general_qubit_basis
from .quantum import project_measurement, schmidt_decompose, tensor

logger = get_logger(__name__)

Params = Sequence[Tuple[float, float]]

DIAGONAL_TOLERANCE = 1e-12


def _check_link(left: PureBipartiteState, right: PureBipartiteState, basis: MeasurementBasis) -> None:
    if not (left.dim_right == basis.dim == right.dim_left):
        raise DimensionError(
            f"Cannot swap: node dims {left.dim_right} and {right.dim_left} "
            f"do not match basis dimension {basis.dim}"
        )


def _make_outcome(indices: OutcomeIndices, residual: Optional[np.ndarray],
                  probability: float, b_factor: float) -> SwapOutcome:
    if residual is None or probability < IMPOSSIBLE_PROBABILITY:
        logger.debug(f"Outcome {indices} is impossible (p={probability:.3e})")
        return SwapOutcome(indices, probability, None, probability * b_factor)
    state = PureBipartiteState.normalized(residual)
    return SwapOutcome(indices, probability, state, probability * b_factor)


def swap_once(s12: PureBipartiteState, s23: PureBipartiteState,
              basis: MeasurementBasis) -> List[SwapOutcome]:
    """Measure node 2 of s12 (x) s23 in ``basis``; one outcome per basis vector.

    ``normalization`` is probability * B_rh: M_rh for the general qubit
    basis, N_rh (B = d) for the qudit Bell basis.
    """
    _check_link(s12, s23, basis)
    joint = tensor(s12, s23)
    outcomes = []
    for r, h in basis.outcomes():
        residual, probability = project_measurement(joint, basis.vector(r, h), (1, 2))
        outcomes.append(_make_outcome(((r, h),), residual, probability, basis.b_factor(r, h)))
    return outcomes


def _diagonal_schmidt(state: PureBipartiteState) -> Optional[SchmidtForm]:
    """Schmidt form read off a square diagonal state; phases go to the left unitary."""
    amp = state.amp
    d = amp.shape[0]
    if amp.shape[1] != d:
        return None
    diagonal = np.diag(amp)
    if np.max(np.abs(amp - np.diag(diagonal))) > DIAGONAL_TOLERANCE:
        return None
    moduli = np.abs(diagonal)
    phases = np.ones(d, dtype=complex)
    nonzero = moduli > 0
    phases[nonzero] = diagonal[nonzero] / moduli[nonzero]
    order = np.argsort(-moduli, kind='stable')
    permutation = np.eye(d)[:, order]
    return SchmidtForm(moduli[order], permutation * phases[order], permutation)


def canonicalize_local(state: PureBipartiteState) -> Tuple[SchmidtForm, PureBipartiteState]:
    """Schmidt form plus the diagonal representative sum_i lambda_i |ii>.

    Already-diagonal inputs keep the computational basis, so a sorted
    non-negative diagonal state comes back with identity rotations.
    """
    sf = _diagonal_schmidt(state)
    if sf is None:
        sf = schmidt_decompose(state)
    d = max(state.dims)
    coeffs = np.zeros(d)
    coeffs[:sf.dim] = sf.coeffs
    return sf, PureBipartiteState.from_schmidt(coeffs)


def resolve_bases(states: Sequence[PureBipartiteState], params: Optional[Params] = None,
                  bases: Optional[Sequence[MeasurementBasis]] = None) -> List[MeasurementBasis]:
    """Per-node measurement bases for a chain, validated against the links."""
    g = len(states) - 1
    if g < 1:
        raise ValidationError(f"A chain needs at least two links, got {len(states)}")
    if bases is None:
        if any(s.dims != (2, 2) for s in states):
            raise DimensionError("Chains measured with (n, m) parameters need two-qubit links")
        params = list(params) if params is not None else [(1.0, 1.0)] * g
        if len(params) != g:
            raise ValidationError(f"Expected {g} (n, m) pairs, got {len(params)}")
        bases = [build_general_qubit_basis(n, m) for n, m in params]
    bases = list(bases)
    if len(bases) != g:
        raise ValidationError(f"Expected {g} measurement bases, got {len(bases)}")
    for k, basis in enumerate(bases):
        _check_link(states[k], states[k + 1], basis)
    return bases


def _chain_joint(states: Sequence[PureBipartiteState]) -> Tuple[np.ndarray, str]:
    letters = ascii_letters[:2 * len(states)]
    subscripts = ",".join(letters[2 * k:2 * k + 2] for k in range(len(states)))
    joint = np.einsum(f"{subscripts}->{letters}", *[s.amp for s in states])
    return joint, letters


def chain_swap_simultaneous(states: Sequence[PureBipartiteState], params: Optional[Params] = None,
                            bases: Optional[Sequence[MeasurementBasis]] = None) -> List[SwapOutcome]:
    """Project every intermediate node of the full chain state at once."""
    bases = resolve_bases(states, params, bases)
    joint, letters = _chain_joint(states)
    g = len(bases)
    measured = ",".join(letters[2 * k + 1:2 * k + 3] for k in range(g))
    spec = f"{letters},{measured}->{letters[0]}{letters[-1]}"

    outcomes = []
    for indices in product(*[list(b.outcomes()) for b in bases]):
        vectors = [b.vector(r, h).conj() for b, (r, h) in zip(bases, indices)]
        residual = np.einsum(spec, joint, *vectors)
        probability = float(np.sum(np.abs(residual) ** 2))
        b_factor = float(np.prod([b.b_factor(r, h) for b, (r, h) in zip(bases, indices)]))
        outcomes.append(_make_outcome(tuple(indices), residual, probability, b_factor))
    return outcomes


def chain_swap_sequential(states: Sequence[PureBipartiteState], params: Optional[Params] = None,
                          bases: Optional[Sequence[MeasurementBasis]] = None) -> List[SwapOutcome]:
    """Swap (1,3), then (1,4), ... one node at a time; probabilities multiply."""
    bases = resolve_bases(states, params, bases)
    # (indices, probability, state, product of B factors)
    partial: List[Tuple[OutcomeIndices, float, Optional[PureBipartiteState], float]] = [
        ((), 1.0, states[0], 1.0)
    ]
    for k, basis in enumerate(bases, start=1):
        extended = []
        for indices, probability, state, b_product in partial:
            if state is None:
                extended.extend(
                    (indices + (rh,), 0.0, None, b_product * basis.b_factor(*rh))
                    for rh in basis.outcomes()
                )
                continue
            for outcome in swap_once(state, states[k], basis):
                extended.append((
                    indices + outcome.outcome_indices,
                    probability * outcome.probability,
                    outcome.state,
                    b_product * basis.b_factor(*outcome.outcome_indices[0]),
                ))
        partial = extended

    return [
        SwapOutcome(indices, probability, state if probability >= IMPOSSIBLE_PROBABILITY else None,
                    probability * b_product)
        for indices, probability, state, b_product in partial
    ]


def outcome_map(outcomes: Sequence[SwapOutcome]) -> Dict[OutcomeIndices, SwapOutcome]:
    return {o.outcome_indices: o for o in outcomes}


def qubit_closed_form(s12: PureBipartiteState, s23: PureBipartiteState, basis: GeneralQubitBasis,
                      r: int, h: int) -> Tuple[Optional[PureBipartiteState], float]:
    """chi^{rh} ~ sum_j e^{-i pi r j} R_j^{rh} a_ij b_{j+h, q}; returns (state, M_rh)."""
    a, b = s12.amp, s23.amp
    x = np.zeros((2, 2), dtype=complex)
    for i, q, j in product(range(2), repeat=3):
        x[i, q] += np.exp(-1j * np.pi * r * j) * basis.coefficient(r, h, j) * a[i, j] * b[(j + h) % 2, q]
    norm = float(np.sum(np.abs(x) ** 2))
    if norm < IMPOSSIBLE_PROBABILITY:
        return None, norm
    return PureBipartiteState.normalized(x), norm


def qudit_closed_form(sf12: SchmidtForm, sf23: SchmidtForm, r: int,
                      h: int) -> Tuple[Optional[PureBipartiteState], float]:
    """chi^{rh} ~ sum_i e^{-2 pi i r (i+h)/d} lambda_i mu_{i+h} |i, i+h>; returns (state, N_rh)."""
    d = sf12.dim
    if sf23.dim != d:
        raise DimensionError(f"Schmidt forms of different dimension: {d} and {sf23.dim}")
    lam, mu = sf12.coeffs, sf23.coeffs
    x = np.zeros((d, d), dtype=complex)
    for i in range(d):
        shifted = (i + h) % d
        x[i, shifted] = np.exp(-2j * np.pi * r * shifted / d) * lam[i] * mu[shifted]
    norm = float(np.sum((lam * mu[(np.arange(d) + h) % d]) ** 2))
    if norm < IMPOSSIBLE_PROBABILITY:
        return None, norm
    return PureBipartiteState.normalized(x), norm


def chain_closed_form(states: Sequence[PureBipartiteState], params: Params,
                      indices: OutcomeIndices) -> Tuple[Optional[PureBipartiteState], float]:
    """Chain state for outcome (r1h1, ..., rghg) with per-link coefficients a^(k).

    Amplitude of |i_0, j_g>: sum over j_0..j_{g-1} of
    prod_k e^{-i pi r_k j_{k-1}} R_{j_{k-1}}^{r_k h_k} a^(k)_{j_{k-1}+h_k, j_k}, times a^(0)_{i_0 j_0}.
    Returns (state, M_{r1h1...}).
    """
    x = np.array(states[0].amp, dtype=complex)
    for k, ((n, m), (r, h)) in enumerate(zip(params, indices), start=1):
        step = np.zeros((2, 2), dtype=complex)
        for j in range(2):
            step[j, (j + h) % 2] = np.exp(-1j * np.pi * r * j) * qubit_coefficient(r, h, j, n, m)
        x = x @ step @ states[k].amp
    norm = float(np.sum(np.abs(x) ** 2))
    if norm < IMPOSSIBLE_PROBABILITY:
        return None, norm
    return PureBipartiteState.normalized(x), norm
