# src/red_sim/cli/main.py
import functools
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import numpy as np

from ..config.settings import Settings, get_settings
from ..core.bases import basis_for_link, build_general_qubit_basis
from ..core.measures import concurrence, dense_coding_capacity_pure, teleportation_fidelity_pure
from ..core.quantum import schmidt_decompose
from ..core.relations import (
    verify_chain_relation,
    verify_qubit_relation,
    verify_qudit_relation,
    verify_theorem_I,
    verify_theorem_II,
)
from ..core.routing import best_path, load_network, score_edge
from ..core.suites import SUITES, run_suites
from ..core.swap import chain_swap_sequential, chain_swap_simultaneous, outcome_map, swap_once
from ..exceptions.errors import (
    DocumentError,
    NetworkError,
    RelationViolationError,
    UnreachableError,
    ValidationError,
)
from ..logging.logger import get_logger
from ..models.config import RunConfig
from ..models.outcome import SwapOutcome
from ..models.state import PureBipartiteState
from ..utils.filesystem import read_document, write_report
from ..utils.serialization import SwapInput, parse_swap_document, render_json, render_text

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNREACHABLE = 3

DIAGONAL_TOLERANCE = 1e-12


def handle_errors(command):
    """Map simulator exceptions to exit codes."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except UnreachableError as e:
            click.echo(click.style(f"Unreachable: {e}", fg='yellow'), err=True)
            sys.exit(EXIT_UNREACHABLE)
        except RelationViolationError as e:
            logger.warning(f"Relation violation: {e}")
            click.echo(click.style(f"Violation: {e}", fg='red'), err=True)
            sys.exit(EXIT_VIOLATION)
        except (DocumentError, ValidationError, NetworkError) as e:
            click.echo(click.style(f"Error: {e}", fg='red'), err=True)
            sys.exit(EXIT_INPUT)
    return wrapper


def output_options(command):
    command = click.option('-o', '--output', type=click.Path(dir_okay=False),
                           help='Also write the report to this file')(command)
    command = click.option('-q', '--quiet', is_flag=True, default=False,
                           help='Suppress progress bars')(command)
    command = click.option('--format', 'output_format', type=click.Choice(['text', 'json']),
                           default=None, help='Report format')(command)
    return command


def parameter_options(command):
    command = click.option('--m', 'm', type=float, default=None,
                           help='Entangling parameter m for every measured node')(command)
    command = click.option('--n', 'n', type=float, default=None,
                           help='Entangling parameter n for every measured node')(command)
    return command


def _config(settings: Settings, command: str, **kwargs) -> RunConfig:
    """Merge CLI flags over settings; None means the flag was not given."""
    defaults = {
        'seed': settings.get('verify.seed', 42),
        'trials': settings.get('verify.trials', 1000),
        'tolerance': settings.get('verify.tolerance', 1e-9),
        'output_format': settings.get('output.format', 'text'),
        'metric': settings.get('route.metric', 'fidelity'),
        'progress': settings.get('verify.progress', True),
        'json_digits': settings.get('output.json_digits', 12),
    }
    values = {k: v for k, v in kwargs.items() if v is not None}
    return RunConfig(command=command, **{**defaults, **values})


def _emit(config: RunConfig, payload: Dict[str, Any], output: Optional[str]) -> None:
    if config.output_format == 'json':
        text = render_json(payload, config.json_digits)
    else:
        text = render_text(payload, config.json_digits)
    click.echo(text)
    if output:
        write_report(text, Path(output))


def _params(settings: Settings, swap_input: SwapInput, n: Optional[float], m: Optional[float]):
    """Flags replace (n, m) at every node; otherwise the file or the settings decide."""
    if n is None and m is None:
        return swap_input.params
    if swap_input.bell:
        raise ValidationError("--n/--m apply to the general qubit basis, not the Bell basis")
    g = len(swap_input.states) - 1
    n = settings.get('swap.n', 1.0) if n is None else n
    m = settings.get('swap.m', 1.0) if m is None else m
    return [(n, m)] * g


def _read_swap_input(settings: Settings, config: RunConfig) -> SwapInput:
    if config.input_path is None:
        raise click.UsageError("--input is required")
    defaults = (settings.get('swap.n', 1.0), settings.get('swap.m', 1.0))
    return parse_swap_document(read_document(config.input_path), str(config.input_path), defaults)


def _is_schmidt_diagonal(state: PureBipartiteState) -> bool:
    """Diagonal amplitudes with non-increasing moduli, i.e. already in Schmidt order."""
    amp = state.amp
    diagonal = np.abs(np.diag(amp))
    off_diagonal = amp - np.diag(np.diag(amp))
    return bool(np.all(np.abs(off_diagonal) <= DIAGONAL_TOLERANCE) and np.all(np.diff(diagonal) <= 0))


def _resource_rows(states: List[PureBipartiteState]) -> List[Dict[str, Any]]:
    rows = []
    for k, state in enumerate(states):
        score = score_edge(state)
        rows.append({
            'link': k,
            'dims': f"{state.dim_left}x{state.dim_right}",
            'concurrence': score.concurrence,
            'fidelity': score.fidelity if state.dims == (2, 2) else None,
            'capacity': score.capacity,
        })
    return rows


def _outcome_row(outcome: SwapOutcome, qubit: bool, d: int) -> Dict[str, Any]:
    if not outcome.possible:
        return {'outcome': outcome.label, 'probability': outcome.probability,
                'concurrence': None, 'fidelity': None, 'capacity': None}
    c = concurrence(outcome.state)
    return {
        'outcome': outcome.label,
        'probability': outcome.probability,
        'concurrence': c,
        'fidelity': teleportation_fidelity_pure(c) if qubit else None,
        'capacity': dense_coding_capacity_pure(outcome.state, d),
    }


@click.group()
@click.option('--config', 'config_file', type=click.Path(dir_okay=False),
              help='YAML settings file (default ~/.config/red-sim/config.yaml)')
@click.pass_context
def cli(ctx, config_file):
    """Remote entanglement distribution simulator, verifier and router."""
    ctx.obj = Settings(Path(config_file)) if config_file else get_settings()


@cli.command()
@click.option('--seed', type=int, default=None, help='Seed for the randomized suites')
@click.option('--trials', type=int, default=None, help='Base number of random trials per suite')
@click.option('--tolerance', type=float, default=None, help='Residual tolerance')
@click.option('--suite', 'suites', multiple=True, type=click.Choice(list(SUITES)),
              help='Run only these suites (repeatable)')
@output_options
@click.pass_obj
@handle_errors
def verify(settings, seed, trials, tolerance, suites, output_format, quiet, output):
    """Run the randomized relation suites; exit 1 on any violation."""
    config = _config(settings, 'verify', seed=seed, trials=trials, tolerance=tolerance,
                     output_format=output_format, quiet=quiet)
    results = run_suites(config.seed, config.trials, config.tolerance,
                         progress=config.show_progress, only=list(suites) or None)
    passed = all(r.passed for r in results)
    payload = {
        'command': 'verify',
        'seed': config.seed,
        'trials': config.trials,
        'tolerance': config.tolerance,
        'passed': passed,
        'suites': [{
            'suite': r.name,
            'trials': r.trials,
            'tolerance': r.tolerance,
            'max_residual': r.max_residual,
            'failures': r.failures,
            'passed': r.passed,
        } for r in results],
        'stats': {r.name: r.stats for r in results if r.stats},
        'violations': [{'suite': r.name, 'inputs': inputs} for r in results for inputs in r.offending],
    }
    _emit(config, payload, output)
    if not passed:
        failed = ', '.join(r.name for r in results if not r.passed)
        raise RelationViolationError(f"relations exceeded tolerance: {failed}")


@cli.command()
@click.option('-i', '--input', 'input_path', type=click.Path(dir_okay=False), required=True,
              help='JSON file with two states and basis parameters')
@parameter_options
@click.option('--tolerance', type=float, default=None, help='Residual tolerance')
@output_options
@click.pass_obj
@handle_errors
def swap(settings, input_path, n, m, tolerance, output_format, quiet, output):
    """Swap two links and report every measurement outcome."""
    config = _config(settings, 'swap', input_path=input_path, n=n, m=m, tolerance=tolerance,
                     output_format=output_format, quiet=quiet)
    swap_input = _read_swap_input(settings, config)
    if len(swap_input.states) != 2:
        raise click.UsageError(f"swap needs exactly two states, got {len(swap_input.states)}; use chain")
    s12, s23 = swap_input.states
    params = _params(settings, swap_input, n, m)
    qubit = s12.dims == s23.dims == (2, 2)
    d = s12.dim_right

    rows = []
    if params is not None or qubit:
        (pn, pm), = params or [(1.0, 1.0)]
        basis = build_general_qubit_basis(pn, pm)
        concurrence_res = {o.outcome_indices: o.residual for o in verify_qubit_relation(s12, s23, pn, pm).outcomes}
        fidelity_res = {o.outcome_indices: o.residual for o in verify_theorem_I(s12, s23, pn, pm).outcomes}
    else:
        basis = basis_for_link(d)
        concurrence_res, fidelity_res = {}, {}
        if _is_schmidt_diagonal(s12) and _is_schmidt_diagonal(s23) and s12.dims == s23.dims:
            report = verify_qudit_relation(schmidt_decompose(s12), schmidt_decompose(s23), d)
            concurrence_res = {o.outcome_indices: o.residual for o in report.outcomes}
        else:
            swap_input.notes.append("relation residuals need Schmidt-diagonal resources (sorted diagonal)")

    outcomes = swap_once(s12, s23, basis)
    for outcome in outcomes:
        row = _outcome_row(outcome, qubit, d)
        row['concurrence_residual'] = concurrence_res.get(outcome.outcome_indices)
        row['fidelity_residual'] = fidelity_res.get(outcome.outcome_indices)
        rows.append(row)

    residuals = [v for v in list(concurrence_res.values()) + list(fidelity_res.values())]
    payload = {
        'command': 'swap',
        'basis': {'n': params[0][0], 'm': params[0][1]} if params else 'bell',
        'notes': swap_input.notes,
        'resources': _resource_rows(swap_input.states),
        'probability_sum': sum(o.probability for o in outcomes),
        'max_residual': max(residuals, default=0.0),
        'outcomes': rows,
    }
    _emit(config, payload, output)
    if residuals and max(residuals) > config.tolerance:
        raise RelationViolationError(f"outcome residual {max(residuals):.3e} exceeds {config.tolerance:g}")


@cli.command()
@click.option('-i', '--input', 'input_path', type=click.Path(dir_okay=False), required=True,
              help='JSON file with g+1 states and per-node basis parameters')
@parameter_options
@click.option('--tolerance', type=float, default=None, help='Residual tolerance')
@output_options
@click.pass_obj
@handle_errors
def chain(settings, input_path, n, m, tolerance, output_format, quiet, output):
    """Swap every intermediate node of a chain, simultaneously and sequentially."""
    config = _config(settings, 'chain', input_path=input_path, n=n, m=m, tolerance=tolerance,
                     output_format=output_format, quiet=quiet)
    swap_input = _read_swap_input(settings, config)
    states = swap_input.states
    params = _params(settings, swap_input, n, m)
    qubit = all(s.dims == (2, 2) for s in states)
    d = states[-1].dim_right

    if params is not None or qubit:
        station_params = params or [(1.0, 1.0)] * (len(states) - 1)
        simultaneous = chain_swap_simultaneous(states, station_params)
        sequential = outcome_map(chain_swap_sequential(states, station_params))
        theorem = {o.outcome_indices: o.residual for o in verify_theorem_II(states, station_params).outcomes}
        chain_residual = verify_chain_relation(states, station_params).max_residual
    else:
        bases = [basis_for_link(s.dim_right) for s in states[:-1]]
        simultaneous = chain_swap_simultaneous(states, bases=bases)
        sequential = outcome_map(chain_swap_sequential(states, bases=bases))
        theorem, chain_residual = {}, None

    rows, probability_gap, overlap_gap = [], 0.0, 0.0
    for outcome in simultaneous:
        other = sequential[outcome.outcome_indices]
        probability_gap = max(probability_gap, abs(outcome.probability - other.probability))
        if outcome.possible and other.possible:
            overlap_gap = max(overlap_gap, 1.0 - abs(outcome.state.overlap(other.state)))
        row = _outcome_row(outcome, qubit, d)
        row['theorem_residual'] = theorem.get(outcome.outcome_indices)
        rows.append(row)

    residuals = list(theorem.values()) + ([chain_residual] if chain_residual is not None else [])
    payload = {
        'command': 'chain',
        'links': len(states),
        'basis': [{'n': pn, 'm': pm} for pn, pm in params] if params else 'bell',
        'notes': swap_input.notes,
        'resources': _resource_rows(states),
        'probability_sum': sum(o.probability for o in simultaneous),
        'mode_equivalence': {'probability_gap': probability_gap, 'overlap_gap': overlap_gap},
        'chain_concurrence_residual': chain_residual,
        'max_theorem_residual': max(theorem.values(), default=None),
        'outcomes': rows,
    }
    _emit(config, payload, output)
    if residuals and max(residuals) > config.tolerance:
        raise RelationViolationError(f"outcome residual {max(residuals):.3e} exceeds {config.tolerance:g}")


@cli.command()
@click.option('-i', '--input', 'input_path', type=click.Path(dir_okay=False), required=True,
              help='JSON network description')
@click.option('--source', required=True, help='Source node')
@click.option('--target', required=True, help='Target node')
@click.option('--metric', type=click.Choice(['fidelity', 'capacity']), default=None,
              help='Route objective')
@parameter_options
@output_options
@click.pass_obj
@handle_errors
def route(settings, input_path, source, target, metric, n, m, output_format, quiet, output):
    """Find the best path between two nodes and simulate it."""
    if source == target:
        raise click.UsageError("--source and --target must differ")
    config = _config(settings, 'route', input_path=input_path, source=source, target=target,
                     metric=metric, n=n, m=m, output_format=output_format, quiet=quiet)
    graph = load_network(config.input_path)
    node_params = None
    if n is not None or m is not None:
        node_params = (settings.get('swap.n', 1.0) if n is None else n,
                       settings.get('swap.m', 1.0) if m is None else m)
    report = best_path(graph, source, target, config.metric, node_params)

    payload = {
        'command': 'route',
        'source': source,
        'target': target,
        'metric': report.metric,
        'path': report.path,
        'hops': report.hops,
        'heuristic_score': report.heuristic_score,
        'predicted_vs_simulated': report.predicted_vs_simulated,
        'probability_sum': report.total_probability,
        'summary': report.summary(),
        'edges': [{
            'label': label,
            'concurrence': score.concurrence,
            'fidelity_term': score.fidelity_term,
            'fidelity': score.fidelity if graph.is_qubit else None,
            'capacity': score.capacity,
        } for label, score in zip(report.edge_labels, report.edge_scores)],
        'outcomes': [{
            'outcome': ','.join(f"{r}{h}" for r, h in o.outcome_indices) or '-',
            'probability': o.probability,
            'concurrence': o.concurrence,
            'fidelity': o.fidelity,
            'capacity': o.capacity,
            'theorem_residual': o.theorem_residual,
        } for o in report.outcomes],
    }
    _emit(config, payload, output)


def main():
    cli()
