# src/red_sim/core/relations.py
"""Checks that swapped states obey the concurrence, fidelity and capacity
relations with their resources, outcome by outcome."""
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions.errors import DimensionError, ImpossibleOutcomeError, ValidationError
from ..logging.logger import get_logger
from ..models.outcome import (
    IMPOSSIBLE_PROBABILITY,
    CapacityCaseReport,
    ChainCapacityReport,
    OutcomeResidual,
    RelationReport,
)
from ..models.state import PureBipartiteState, SchmidtForm
from .bases import build_general_qubit_basis, build_qudit_bell_basis
from .measures import (
    concurrence,
    concurrence_qudit,
    concurrence_two_qubit,
    dense_coding_capacity_pure,
    sub_concurrence,
    teleportation_fidelity_mixed,
)
from .swap import Params, chain_swap_simultaneous, resolve_bases, swap_once

logger = get_logger(__name__)

CASE_TOLERANCE = 1e-10


def _require_qubits(*states: PureBipartiteState) -> None:
    for state in states:
        if state.dims != (2, 2):
            raise DimensionError(f"Relation needs two-qubit resources, got {state.dims}")


def _fidelity_term(state: PureBipartiteState) -> float:
    """3F - 2 with F from the Bloch correlation matrix of the pure projector."""
    return 3.0 * teleportation_fidelity_mixed(state.projector()) - 2.0


def verify_qubit_relation(s12: PureBipartiteState, s23: PureBipartiteState,
                          n: float, m: float) -> RelationReport:
    """C(chi^{rh}) against (F_rh / 2 M_rh) C(psi_12) C(psi_23) for every outcome."""
    _require_qubits(s12, s23)
    basis = build_general_qubit_basis(n, m)
    c12, c23 = concurrence_two_qubit(s12), concurrence_two_qubit(s23)
    report = RelationReport('concurrence-qubit')
    for outcome in swap_once(s12, s23, basis):
        if not outcome.possible:
            report.skipped += 1
            continue
        r, h = outcome.outcome_indices[0]
        lhs = concurrence_two_qubit(outcome.state)
        rhs = basis.f_factor(r, h) / (2.0 * outcome.normalization) * c12 * c23
        report.outcomes.append(OutcomeResidual(outcome.outcome_indices, lhs, rhs))
    return report


def k_term(sf12: SchmidtForm, sf23: SchmidtForm, d: int, h: int) -> float:
    """K_d^h = sum_{i<f} C_if^2(psi_12) sum_{l<m, (l,m) != (i,f)} C^2_{l+h, m+h}(psi_23).

    Vanishes identically for d = 2.
    """
    if d <= 2:
        return 0.0
    pairs = list(combinations(range(d), 2))
    total = 0.0
    for i, f in pairs:
        inner = 0.0
        for l, m in pairs:
            if (l, m) == (i, f):
                continue
            a, b = sorted(((l + h) % d, (m + h) % d))
            inner += sub_concurrence(sf23, a, b, d) ** 2
        total += sub_concurrence(sf12, i, f, d) ** 2 * inner
    return total


def verify_qudit_relation(sf12: SchmidtForm, sf23: SchmidtForm, d: int,
                          h: Optional[int] = None) -> RelationReport:
    """C^2(chi^{rh}) against ((d-1) / 2d N_rh^2)[C^2(psi_12) C^2(psi_23) - K_d^h].

    The swapped state comes from projecting the Schmidt-diagonal resources
    onto the Bell basis. For d = 2 the linear form C = C_12 C_23 / 2N is
    reported too (``extra['linear_residual']``).
    """
    if sf12.dim != d or sf23.dim != d:
        raise DimensionError(f"Schmidt forms must have dimension {d}")
    basis = build_qudit_bell_basis(d)
    c12, c23 = concurrence_qudit(sf12, d), concurrence_qudit(sf23, d)
    shifts = range(d) if h is None else [h]
    outcomes = swap_once(sf12.diagonal_state(), sf23.diagonal_state(), basis)

    report = RelationReport('concurrence-qudit')
    report.extra['linear_residual'] = 0.0
    report.extra['normalization_residual'] = 0.0
    report.extra['max_k'] = 0.0
    report.extra['min_k'] = np.inf
    for shift in shifts:
        k = k_term(sf12, sf23, d, shift)
        report.extra['max_k'] = max(report.extra['max_k'], k)
        report.extra['min_k'] = min(report.extra['min_k'], k)
        n_rh = float(np.sum(sf12.probabilities * np.roll(sf23.probabilities, -shift)))
        for outcome in outcomes:
            r, outcome_h = outcome.outcome_indices[0]
            if outcome_h != shift:
                continue
            if not outcome.possible:
                report.skipped += 1
                continue
            lhs = concurrence(outcome.state) ** 2
            rhs = (d - 1) / (2.0 * d * n_rh ** 2) * (c12 ** 2 * c23 ** 2 - k)
            report.outcomes.append(OutcomeResidual(outcome.outcome_indices, lhs, rhs))
            report.extra['normalization_residual'] = max(
                report.extra['normalization_residual'], abs(outcome.normalization - n_rh)
            )
            if d == 2:
                linear = c12 * c23 / (2.0 * n_rh)
                report.extra['linear_residual'] = max(
                    report.extra['linear_residual'], abs(np.sqrt(lhs) - linear)
                )
    return report


def verify_theorem_I(s12: PureBipartiteState, s23: PureBipartiteState,
                     n: float, m: float) -> RelationReport:
    """3F(chi^{rh}) - 2 against (F_rh / 2 M_rh)[3F(psi_12) - 2][3F(psi_23) - 2].

    Every fidelity is evaluated from the Bloch form of the state, not from
    its concurrence.
    """
    _require_qubits(s12, s23)
    basis = build_general_qubit_basis(n, m)
    term12, term23 = _fidelity_term(s12), _fidelity_term(s23)
    report = RelationReport('theorem-I')
    for outcome in swap_once(s12, s23, basis):
        if not outcome.possible:
            report.skipped += 1
            continue
        r, h = outcome.outcome_indices[0]
        lhs = _fidelity_term(outcome.state)
        rhs = basis.f_factor(r, h) / (2.0 * outcome.normalization) * term12 * term23
        report.outcomes.append(OutcomeResidual(outcome.outcome_indices, lhs, rhs))
    return report


def verify_theorem_II(states: Sequence[PureBipartiteState],
                      params: Optional[Params] = None) -> RelationReport:
    """Chain form: 3F(chi) - 2 against (prod F_{r_i h_i} / 2^g M)[prod_k (3F(psi_k) - 2)]."""
    _require_qubits(*states)
    bases = resolve_bases(states, params)
    g = len(bases)
    resource_product = float(np.prod([_fidelity_term(s) for s in states]))
    report = RelationReport('theorem-II')
    for outcome in chain_swap_simultaneous(states, bases=bases):
        if not outcome.possible:
            report.skipped += 1
            continue
        f_product = float(np.prod([
            basis.f_factor(r, h) for basis, (r, h) in zip(bases, outcome.outcome_indices)
        ]))
        lhs = _fidelity_term(outcome.state)
        rhs = f_product / (2 ** g * outcome.normalization) * resource_product
        report.outcomes.append(OutcomeResidual(outcome.outcome_indices, lhs, rhs))
    return report


def verify_chain_relation(states: Sequence[PureBipartiteState],
                          params: Optional[Params] = None) -> RelationReport:
    """C(chi) against (prod F_{r_i h_i} / 2^g M) prod_k C(psi_k) along a qubit chain."""
    _require_qubits(*states)
    bases = resolve_bases(states, params)
    g = len(bases)
    resource_product = float(np.prod([concurrence_two_qubit(s) for s in states]))
    report = RelationReport('concurrence-chain')
    for outcome in chain_swap_simultaneous(states, bases=bases):
        if not outcome.possible:
            report.skipped += 1
            continue
        f_product = float(np.prod([
            basis.f_factor(r, h) for basis, (r, h) in zip(bases, outcome.outcome_indices)
        ]))
        lhs = concurrence_two_qubit(outcome.state)
        rhs = f_product / (2 ** g * outcome.normalization) * resource_product
        report.outcomes.append(OutcomeResidual(outcome.outcome_indices, lhs, rhs))
    return report


def entropy_of_swapped(sf12: SchmidtForm, sf23: SchmidtForm, r: int, h: int, d: int) -> float:
    """-(1/N) sum_i lambda_i^2 mu_{i+h}^2 log2(lambda_i^2 mu_{i+h}^2 / N); independent of r."""
    if sf12.dim != d or sf23.dim != d:
        raise DimensionError(f"Schmidt forms must have dimension {d}")
    if not 0 <= h < d or not 0 <= r < d:
        raise ValidationError(f"Outcome indices must lie in [0, {d}), got ({r}, {h})")
    weights = sf12.probabilities * np.roll(sf23.probabilities, -h)
    n_rh = float(np.sum(weights))
    if n_rh < IMPOSSIBLE_PROBABILITY:
        raise ImpossibleOutcomeError(f"Outcome ({r}, {h}) is impossible (N_rh = {n_rh:.3e})")
    terms = weights[weights > 0] / n_rh
    return float(-np.sum(terms * np.log2(terms)))


def classify_spectra(spectra: Sequence[SchmidtForm], tolerance: float = CASE_TOLERANCE) -> str:
    """'I' all maximal, 'II' some maximal, 'III' none maximal."""
    uniform = [sf.is_uniform(tolerance) for sf in spectra]
    if all(uniform):
        return 'I'
    if any(uniform):
        return 'II'
    return 'III'


def classify_capacity_case(sf12: SchmidtForm, sf23: SchmidtForm, d: int) -> CapacityCaseReport:
    """Case label, resource capacities and the capacity of every Bell-swap outcome.

    Case I predicts every outcome carries 2 log2 d; Case II predicts the
    non-maximal resource's capacity; Case III predicts outcomes stay below
    max(C_12, C_23). Outcomes with h = 0 (aligned Schmidt orderings) are
    always within that bound; ``relation_holds`` reports the bound over all
    outcomes.
    """
    if sf12.dim != d or sf23.dim != d:
        raise DimensionError(f"Schmidt forms must have dimension {d}")
    case = classify_spectra([sf12, sf23])
    cap12 = dense_coding_capacity_pure(sf12, d)
    cap23 = dense_coding_capacity_pure(sf23, d)

    capacities: Dict[Tuple[int, int], float] = {}
    probabilities: Dict[Tuple[int, int], float] = {}
    for outcome in swap_once(sf12.diagonal_state(), sf23.diagonal_state(), build_qudit_bell_basis(d)):
        rh = outcome.outcome_indices[0]
        probabilities[rh] = outcome.probability
        if outcome.possible:
            capacities[rh] = dense_coding_capacity_pure(outcome.state, d)

    bound = max(cap12, cap23)
    values = np.array(list(capacities.values()))
    if case == 'I':
        holds = bool(np.all(np.abs(values - 2 * np.log2(d)) <= CASE_TOLERANCE))
    elif case == 'II':
        target = cap23 if sf12.is_uniform(CASE_TOLERANCE) else cap12
        holds = bool(np.all(np.abs(values - target) <= CASE_TOLERANCE))
    else:
        holds = bool(values.max() <= bound + CASE_TOLERANCE)
    strict = bool(values.max() < bound - CASE_TOLERANCE)
    aligned = [cap for (r, h), cap in capacities.items() if h == 0]
    aligned_holds = bool(max(aligned, default=0.0) <= bound + CASE_TOLERANCE)
    average = float(sum(probabilities[rh] * cap for rh, cap in capacities.items()))
    average_holds = average <= min(cap12, cap23) + CASE_TOLERANCE

    if not holds:
        logger.debug(f"Case {case} relation not met: max outcome {values.max():.12f} vs bound {bound:.12f}")
    return CapacityCaseReport(
        case=case,
        capacity_12=cap12,
        capacity_23=cap23,
        outcome_capacities=capacities,
        outcome_probabilities=probabilities,
        relation_holds=holds,
        strict=strict,
        aligned_bound_holds=aligned_holds,
        average_capacity=average,
        average_bound_holds=average_holds,
    )


def chain_capacity_report(spectra: Sequence[SchmidtForm], d: int) -> ChainCapacityReport:
    """Capacities along a chain of Schmidt-diagonal qudit links swapped in the Bell basis.

    Case I chains deliver 2 log2 d on every outcome; otherwise outcomes are
    compared against the largest capacity among the non-maximal links.
    """
    if any(sf.dim != d for sf in spectra):
        raise DimensionError(f"All Schmidt forms must have dimension {d}")
    case = classify_spectra(spectra)
    states = [sf.diagonal_state() for sf in spectra]
    bases = [build_qudit_bell_basis(d) for _ in range(len(spectra) - 1)]
    links = [dense_coding_capacity_pure(sf, d) for sf in spectra]

    capacities, probabilities = {}, {}
    for outcome in chain_swap_simultaneous(states, bases=bases):
        probabilities[outcome.outcome_indices] = outcome.probability
        if outcome.possible:
            capacities[outcome.outcome_indices] = dense_coding_capacity_pure(outcome.state, d)

    values = np.array(list(capacities.values()))
    if case == 'I':
        bound = 2 * np.log2(d)
        holds = bool(np.all(np.abs(values - bound) <= CASE_TOLERANCE))
    else:
        bound = max(cap for cap, sf in zip(links, spectra) if not sf.is_uniform(CASE_TOLERANCE))
        holds = bool(values.max() <= bound + CASE_TOLERANCE)
    aligned = [cap for idx, cap in capacities.items() if all(h == 0 for _, h in idx)]
    return ChainCapacityReport(
        case=case,
        link_capacities=links,
        outcome_capacities=capacities,
        outcome_probabilities=probabilities,
        bound=float(bound),
        relation_holds=holds,
        aligned_bound_holds=bool(max(aligned, default=0.0) <= bound + CASE_TOLERANCE),
        average_capacity=float(sum(probabilities[k] * v for k, v in capacities.items())),
    )

