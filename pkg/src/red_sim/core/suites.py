# src/red_sim/core/suites.py
"""Randomized verification suites behind ``red-sim verify``.

Each suite draws its inputs from its own generator seeded with
``[seed, suite index]``, so a suite reproduces the same inputs whether it
runs alone or with the others.
"""
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from ..logging.logger import get_logger
from ..models.outcome import SuiteResult, SwapOutcome
from ..models.state import PureBipartiteState, SchmidtForm
from ..utils.random_states import (
    maximal_spectrum,
    random_network,
    random_params,
    random_spectrum,
    random_state,
)
from ..utils.serialization import state_to_document
from .bases import build_general_qubit_basis, build_qudit_bell_basis
from .measures import concurrence_two_qubit, teleportation_fidelity_mixed, teleportation_fidelity_pure, werner_state
from .quantum import reduced_state, von_neumann_entropy
from .relations import (
    chain_capacity_report,
    classify_capacity_case,
    entropy_of_swapped,
    verify_chain_relation,
    verify_qubit_relation,
    verify_qudit_relation,
    verify_theorem_I,
    verify_theorem_II,
)
from .routing import best_by_enumeration, choose_path
from .swap import chain_swap_sequential, chain_swap_simultaneous, outcome_map, swap_once

logger = get_logger(__name__)

PROBABILITY_TOLERANCE = 1e-12
ENTROPY_TOLERANCE = 1e-10
FIDELITY_TOLERANCE = 1e-10
CAPACITY_TOLERANCE = 1e-10
EXACT_TOLERANCE = 1e-12
OVERLAP_TOLERANCE = 1e-10

QUDIT_DIMS = (3, 4, 5)
CHAIN_LENGTHS = (2, 3)
WERNER_MIXINGS = (0.0, 0.25, 1.0 / 3.0, 0.5, 1.0)


class SuiteContext:
    """Shared knobs for one verify run plus the probability-completeness ledger."""

    def __init__(self, seed: int, trials: int, tolerance: float, progress: bool = True):
        self.seed = seed
        self.trials = trials
        self.tolerance = tolerance
        self.progress = progress
        self.completeness = SuiteResult('probability-completeness', 0, min(tolerance, PROBABILITY_TOLERANCE))

    def rng(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, index])

    def scaled(self, divisor: int) -> int:
        return max(1, self.trials // divisor)

    def iterate(self, count: int, desc: str):
        return tqdm(range(count), desc=desc, disable=not self.progress, leave=False)

    def check_completeness(self, outcomes: Sequence[SwapOutcome], inputs: Callable[[], Dict]) -> None:
        self.completeness.trials += 1
        deviation = abs(sum(o.probability for o in outcomes) - 1.0)
        self.completeness.record(deviation, inputs() if deviation > self.completeness.tolerance else None)


def _states_doc(*states: PureBipartiteState) -> Dict:
    return {'states': [state_to_document(s) for s in states]}


def _spectra_doc(*spectra: SchmidtForm) -> Dict:
    return {'spectra': [sf.coeffs.tolist() for sf in spectra]}


def suite_qubit_relation(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Two-qubit concurrence product relation in the general basis."""
    result = SuiteResult('concurrence-qubit', ctx.trials, ctx.tolerance)
    for _ in ctx.iterate(ctx.trials, result.name):
        s12, s23 = random_state(rng), random_state(rng)
        (n, m), = random_params(rng)
        inputs = lambda: dict(_states_doc(s12, s23), n=n, m=m)
        ctx.check_completeness(swap_once(s12, s23, build_general_qubit_basis(n, m)), inputs)
        report = verify_qubit_relation(s12, s23, n, m)
        result.record(report.max_residual, inputs())
    return result


def suite_qudit_d2(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Qudit relation at d = 2: K vanishes and the linear form holds."""
    result = SuiteResult('concurrence-qudit-d2', ctx.trials, ctx.tolerance)
    worst_k = 0.0
    for _ in ctx.iterate(ctx.trials, result.name):
        sf12, sf23 = random_spectrum(rng, 2), random_spectrum(rng, 2)
        report = verify_qudit_relation(sf12, sf23, 2)
        worst_k = max(worst_k, report.extra['max_k'])
        residual = max(report.max_residual, report.extra['linear_residual'], report.extra['max_k'])
        result.record(residual, _spectra_doc(sf12, sf23))
    result.stats['max_k'] = worst_k
    return result


def suite_qudit_relation(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Qudit concurrence relation with the K term for d in 3..5, every h."""
    per_dim = ctx.scaled(5)
    result = SuiteResult('concurrence-qudit', per_dim * len(QUDIT_DIMS), ctx.tolerance)
    min_k = np.inf
    for d in QUDIT_DIMS:
        for _ in ctx.iterate(per_dim, f"{result.name} d={d}"):
            sf12, sf23 = random_spectrum(rng, d), random_spectrum(rng, d)
            inputs = lambda: dict(_spectra_doc(sf12, sf23), d=d)
            ctx.check_completeness(
                swap_once(sf12.diagonal_state(), sf23.diagonal_state(), build_qudit_bell_basis(d)), inputs
            )
            report = verify_qudit_relation(sf12, sf23, d)
            min_k = min(min_k, report.extra['min_k'])
            residual = max(report.max_residual, report.extra['normalization_residual'],
                           max(0.0, -report.extra['min_k']))
            result.record(residual, inputs())
    result.stats['min_k'] = float(min_k)
    return result


def suite_theorem_I(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Fidelity relation for a single swap, plus the exact Bell/Bell case."""
    result = SuiteResult('theorem-I', ctx.trials, ctx.tolerance)
    bell = PureBipartiteState.from_schmidt([1 / np.sqrt(2), 1 / np.sqrt(2)])
    exact = verify_theorem_I(bell, bell, 1.0, 1.0)
    bell_residual = max(
        [exact.max_residual] + [abs(o.lhs - 1.0) for o in exact.outcomes] + [abs(o.rhs - 1.0) for o in exact.outcomes]
    )
    result.stats['bell_residual'] = bell_residual
    if bell_residual > min(ctx.tolerance, EXACT_TOLERANCE):
        result.record(bell_residual, dict(_states_doc(bell, bell), n=1.0, m=1.0))
    for _ in ctx.iterate(ctx.trials, result.name):
        s12, s23 = random_state(rng), random_state(rng)
        (n, m), = random_params(rng)
        report = verify_theorem_I(s12, s23, n, m)
        result.record(report.max_residual, dict(_states_doc(s12, s23), n=n, m=m))
    return result


def suite_theorem_II(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Chain fidelity and chain concurrence relations for g = 2, 3 with per-node (n, m)."""
    per_length = ctx.scaled(5)
    result = SuiteResult('theorem-II', per_length * len(CHAIN_LENGTHS), ctx.tolerance)
    chain_residual = 0.0
    for g in CHAIN_LENGTHS:
        for _ in ctx.iterate(per_length, f"{result.name} g={g}"):
            states = [random_state(rng) for _ in range(g + 1)]
            params = random_params(rng, g)
            inputs = lambda: dict(_states_doc(*states), params=params)
            ctx.check_completeness(chain_swap_simultaneous(states, params), inputs)
            theorem = verify_theorem_II(states, params)
            chain = verify_chain_relation(states, params)
            chain_residual = max(chain_residual, chain.max_residual)
            result.record(max(theorem.max_residual, chain.max_residual), inputs())
    result.stats['chain_concurrence_residual'] = chain_residual
    return result


def suite_sequential(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Sequential and simultaneous measurement agree outcome by outcome."""
    counts = {2: ctx.scaled(10), 3: ctx.scaled(20)}
    tolerance = min(ctx.tolerance, PROBABILITY_TOLERANCE)
    result = SuiteResult('sequential-equivalence', sum(counts.values()), tolerance)
    worst_overlap = 0.0
    for g, count in counts.items():
        for _ in ctx.iterate(count, f"{result.name} g={g}"):
            states = [random_state(rng) for _ in range(g + 1)]
            params = random_params(rng, g)
            inputs = lambda: dict(_states_doc(*states), params=params)
            simultaneous = chain_swap_simultaneous(states, params)
            sequential = outcome_map(chain_swap_sequential(states, params))
            ctx.check_completeness(list(sequential.values()), inputs)
            probability_gap = 0.0
            overlap_gap = 0.0
            for outcome in simultaneous:
                other = sequential[outcome.outcome_indices]
                probability_gap = max(probability_gap, abs(outcome.probability - other.probability))
                if outcome.possible and other.possible:
                    overlap_gap = max(overlap_gap, 1.0 - abs(outcome.state.overlap(other.state)))
                elif outcome.possible != other.possible:
                    overlap_gap = 1.0
            worst_overlap = max(worst_overlap, overlap_gap)
            residual = max(probability_gap, overlap_gap if overlap_gap > OVERLAP_TOLERANCE else 0.0)
            result.record(residual, inputs())
    result.stats['max_overlap_gap'] = worst_overlap
    return result


def suite_entropy(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Swapped-state entropy formula against the simulated reduced state."""
    count = ctx.scaled(2)
    result = SuiteResult('entropy-formula', count, min(ctx.tolerance, ENTROPY_TOLERANCE))
    dims = (2,) + QUDIT_DIMS
    for k in ctx.iterate(count, result.name):
        d = dims[k % len(dims)]
        sf12, sf23 = random_spectrum(rng, d), random_spectrum(rng, d)
        inputs = lambda: dict(_spectra_doc(sf12, sf23), d=d)
        outcomes = swap_once(sf12.diagonal_state(), sf23.diagonal_state(), build_qudit_bell_basis(d))
        ctx.check_completeness(outcomes, inputs)
        residual = 0.0
        for outcome in outcomes:
            if not outcome.possible:
                continue
            r, h = outcome.outcome_indices[0]
            simulated = von_neumann_entropy(reduced_state(outcome.state, keep='B'))
            residual = max(residual, abs(entropy_of_swapped(sf12, sf23, r, h, d) - simulated))
        result.record(residual, inputs())
    return result


def _capacity_gap(values, target: float) -> float:
    return max(abs(v - target) for v in values)


def suite_capacity_cases(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Capacity cases: maximal/maximal, maximal/non-maximal, and non-maximal pairs."""
    count = ctx.scaled(2)
    dims = (2, 3, 4)
    result = SuiteResult('capacity-cases', count, min(ctx.tolerance, CAPACITY_TOLERANCE))

    case_one = 0.0
    for d in dims:
        report = classify_capacity_case(maximal_spectrum(d), maximal_spectrum(d), d)
        gap = _capacity_gap(report.outcome_capacities.values(), 2 * np.log2(d))
        case_one = max(case_one, gap)
        chain = chain_capacity_report([maximal_spectrum(d)] * 3, d)
        case_one = max(case_one, _capacity_gap(chain.outcome_capacities.values(), 2 * np.log2(d)))
    result.stats['case_I_residual'] = case_one
    if case_one > min(ctx.tolerance, EXACT_TOLERANCE):
        result.record(case_one, {'case': 'I'})

    case_two = 0.0
    for _ in range(max(1, count // 10)):
        d = int(rng.choice(dims))
        sf = random_spectrum(rng, d)
        report = classify_capacity_case(maximal_spectrum(d), sf, d)
        gap = _capacity_gap(report.outcome_capacities.values(), report.capacity_23)
        case_two = max(case_two, gap)
        result.record(gap, dict(_spectra_doc(maximal_spectrum(d), sf), case='II', d=d))
    result.stats['case_II_residual'] = case_two

    strict = exceeded = 0
    for _ in ctx.iterate(count, result.name):
        d = int(rng.choice(dims))
        sf12, sf23 = random_spectrum(rng, d), random_spectrum(rng, d)
        report = classify_capacity_case(sf12, sf23, d)
        strict += report.strict
        exceeded += not report.relation_holds
        aligned = max(cap for (r, h), cap in report.outcome_capacities.items() if h == 0)
        residual = max(
            0.0,
            aligned - report.bound,
            report.average_capacity - min(report.capacity_12, report.capacity_23),
        )
        result.record(residual, dict(_spectra_doc(sf12, sf23), case='III', d=d))
    result.stats['case_III_strict'] = strict
    result.stats['case_III_misaligned_above_bound'] = exceeded
    return result


def suite_fidelity(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Bloch-form fidelity against (2 + C)/3 for pure states and (1 + p)/2 for Werner states."""
    count = ctx.scaled(2)
    result = SuiteResult('fidelity-consistency', count + len(WERNER_MIXINGS),
                         min(ctx.tolerance, FIDELITY_TOLERANCE))
    for p in WERNER_MIXINGS:
        residual = abs(teleportation_fidelity_mixed(werner_state(p)) - (1 + p) / 2)
        result.record(residual, {'werner': p})
    for _ in ctx.iterate(count, result.name):
        state = random_state(rng)
        expected = teleportation_fidelity_pure(concurrence_two_qubit(state))
        residual = abs(teleportation_fidelity_mixed(state.projector()) - expected)
        result.record(residual, _states_doc(state))
    return result


def suite_routing(ctx: SuiteContext, rng: np.random.Generator) -> SuiteResult:
    """Route choice against exhaustive simple-path enumeration on small random graphs."""
    count = ctx.scaled(50)
    result = SuiteResult('routing-oracle', count, min(ctx.tolerance, EXACT_TOLERANCE))
    compared = 0
    for _ in ctx.iterate(count, result.name):
        graph = random_network(rng, int(rng.integers(3, 9)), float(rng.uniform(0.3, 0.8)))
        source, target = graph.nodes[0], graph.nodes[-1]
        for metric in ('fidelity', 'capacity'):
            expected = best_by_enumeration(graph, source, target, metric)
            if expected is None:
                continue
            compared += 1
            path, score = choose_path(graph, source, target, metric)
            residual = abs(score - expected[1]) if path == expected[0] else max(1.0, abs(score - expected[1]))
            result.record(residual, {'metric': metric, 'chosen': path, 'expected': expected[0]})
    result.stats['routes_compared'] = compared
    return result


SUITES: Dict[str, Callable[[SuiteContext, np.random.Generator], SuiteResult]] = {
    'concurrence-qubit': suite_qubit_relation,
    'concurrence-qudit-d2': suite_qudit_d2,
    'concurrence-qudit': suite_qudit_relation,
    'theorem-I': suite_theorem_I,
    'theorem-II': suite_theorem_II,
    'sequential-equivalence': suite_sequential,
    'entropy-formula': suite_entropy,
    'capacity-cases': suite_capacity_cases,
    'fidelity-consistency': suite_fidelity,
    'routing-oracle': suite_routing,
}


def run_suites(seed: int = 42, trials: int = 1000, tolerance: float = 1e-9, progress: bool = True,
               only: Optional[Sequence[str]] = None) -> List[SuiteResult]:
    """Run the selected suites (all by default) and the probability-completeness check."""
    ctx = SuiteContext(seed, trials, tolerance, progress)
    names = list(SUITES) if not only else list(only)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise KeyError(f"Unknown suite(s): {', '.join(unknown)}")

    results = []
    for index, name in enumerate(SUITES):
        if name not in names:
            continue
        logger.info(f"Running suite {name} (seed={seed}, trials={trials})")
        result = SUITES[name](ctx, ctx.rng(index))
        level = 'passed' if result.passed else 'FAILED'
        logger.info(f"Suite {name} {level}: max residual {result.max_residual:.3e}")
        if not result.passed:
            logger.warning(f"Suite {name}: {result.failures} violation(s), first inputs {result.offending[:1]}")
        results.append(result)
    results.append(ctx.completeness)
    return results
