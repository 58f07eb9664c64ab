# src/red_sim/utils/serialization.py
"""Codecs between JSON documents and states, swap inputs, networks and reports."""
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions.errors import DocumentError, NetworkError, ValidationError
from ..models.network import NetworkEdge, NetworkGraph
from ..models.state import PureBipartiteState

JSON_DIGITS = 12


@dataclass
class SwapInput:
    """States and measurement choice read from a swap or chain file."""
    states: List[PureBipartiteState]
    params: Optional[List[Tuple[float, float]]] = None
    bell: bool = False
    notes: List[str] = field(default_factory=list)


def _amplitude(value: Any, location: str) -> complex:
    if isinstance(value, bool):
        raise DocumentError("Amplitude must be a number or a [re, im] pair", location)
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return complex(value[0], value[1])
    raise DocumentError("Amplitude must be a number or a [re, im] pair", location)


def parse_state(obj: Any, location: str = 'state') -> PureBipartiteState:
    """``{"dims": [dA, dB], "amp": [[...], ...]}`` to a state, renormalized within the load tolerance."""
    if not isinstance(obj, dict):
        raise DocumentError("State must be an object with 'dims' and 'amp'", location)
    for key in ('dims', 'amp'):
        if key not in obj:
            raise DocumentError(f"Missing field '{key}'", location)
    dims = obj['dims']
    if (not isinstance(dims, list) or len(dims) != 2
            or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 2 for d in dims)):
        raise DocumentError("'dims' must be a pair of integers >= 2", f"{location}.dims")
    rows = obj['amp']
    if not isinstance(rows, list) or len(rows) != dims[0]:
        raise DocumentError(f"'amp' must have {dims[0]} rows", f"{location}.amp")
    amp = np.zeros(tuple(dims), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dims[1]:
            raise DocumentError(f"Row must have {dims[1]} entries", f"{location}.amp[{i}]")
        for j, value in enumerate(row):
            amp[i, j] = _amplitude(value, f"{location}.amp[{i}][{j}]")
    try:
        return PureBipartiteState.from_amplitudes(amp)
    except ValidationError as e:
        raise DocumentError(str(e), location)


def state_to_document(state: PureBipartiteState, digits: int = JSON_DIGITS) -> Dict[str, Any]:
    return {
        'dims': list(state.dims),
        'amp': [[[round_sig(v.real, digits), round_sig(v.imag, digits)] for v in row] for row in state.amp],
    }


def _param_pair(obj: Any, location: str) -> Tuple[float, float]:
    if not isinstance(obj, dict):
        raise DocumentError("Basis parameters must be an object with 'n' and 'm'", location)
    pair = []
    for key in ('n', 'm'):
        value = obj.get(key, 1.0)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DocumentError(f"'{key}' must be a real number", f"{location}.{key}")
        pair.append(float(value))
    return pair[0], pair[1]


def parse_swap_document(doc: Any, source: str = '<input>',
                        default_params: Tuple[float, float] = (1.0, 1.0)) -> SwapInput:
    """Swap and chain files: ``states`` plus ``basis`` or ``params``."""
    if not isinstance(doc, dict):
        raise DocumentError("Document must be an object", source)
    states_obj = doc.get('states')
    if not isinstance(states_obj, list) or len(states_obj) < 2:
        raise DocumentError("'states' must list at least two states", f"{source}:states")
    states = [parse_state(obj, f"{source}:states[{k}]") for k, obj in enumerate(states_obj)]
    g = len(states) - 1
    qubit = all(s.dims == (2, 2) for s in states)
    result = SwapInput(states)

    basis = doc.get('basis')
    params = doc.get('params')
    if basis == 'bell':
        result.bell = True
    elif params is not None:
        if not isinstance(params, list) or len(params) != g:
            raise DocumentError(f"'params' must list {g} (n, m) pairs", f"{source}:params")
        result.params = [_param_pair(p, f"{source}:params[{k}]") for k, p in enumerate(params)]
    elif isinstance(basis, dict):
        result.params = [_param_pair(basis, f"{source}:basis")] * g
    elif basis is not None:
        raise DocumentError("'basis' must be 'bell' or an object with 'n' and 'm'", f"{source}:basis")
    elif qubit:
        result.params = [tuple(default_params)] * g
        result.notes.append(
            f"basis parameters missing, defaulted to n = {default_params[0]:g}, m = {default_params[1]:g}"
        )
    else:
        result.bell = True
        result.notes.append("basis missing for qudit states, using the qudit Bell basis")

    if result.params is not None and not qubit:
        raise DocumentError("(n, m) parameters need two-qubit states, use \"basis\": \"bell\"", source)
    return result


def _node_name(value: Any, location: str) -> str:
    if not isinstance(value, str) or not value:
        raise DocumentError("Node identifiers must be non-empty strings", location)
    return value


def parse_network_document(doc: Any, source: str = '<input>') -> NetworkGraph:
    """``{"nodes": [...], "states": {...}, "edges": [{"endpoint_a", "endpoint_b", "resource", "label"}]}``."""
    if not isinstance(doc, dict):
        raise DocumentError("Network document must be an object", source)
    nodes_obj = doc.get('nodes')
    if not isinstance(nodes_obj, list):
        raise DocumentError("'nodes' must be a list", f"{source}:nodes")
    nodes = tuple(_node_name(n, f"{source}:nodes[{k}]") for k, n in enumerate(nodes_obj))

    named_obj = doc.get('states', {})
    if not isinstance(named_obj, dict):
        raise DocumentError("'states' must map names to states", f"{source}:states")
    named = {name: parse_state(obj, f"{source}:states.{name}") for name, obj in named_obj.items()}

    edges_obj = doc.get('edges')
    if not isinstance(edges_obj, list):
        raise DocumentError("'edges' must be a list", f"{source}:edges")
    edges = []
    known = set(nodes)
    for k, obj in enumerate(edges_obj):
        location = f"{source}:edges[{k}]"
        if not isinstance(obj, dict):
            raise DocumentError("Edge must be an object", location)
        label = obj.get('label', f"e{k}")
        if not isinstance(label, str):
            raise DocumentError("'label' must be a string", f"{location}.label")
        for key in ('endpoint_a', 'endpoint_b', 'resource'):
            if key not in obj:
                raise DocumentError(f"Missing field '{key}' on edge '{label}'", location)
        a = _node_name(obj['endpoint_a'], f"{location}.endpoint_a")
        b = _node_name(obj['endpoint_b'], f"{location}.endpoint_b")
        for endpoint in (a, b):
            if endpoint not in known:
                raise DocumentError(f"Edge '{label}' references unknown node '{endpoint}'", location)
        resource = obj['resource']
        if isinstance(resource, str):
            if resource not in named:
                raise DocumentError(f"Edge '{label}' references unknown state '{resource}'",
                                    f"{location}.resource")
            state = named[resource]
        else:
            state = parse_state(resource, f"{location}.resource")
        edges.append(NetworkEdge(a, b, state, label))

    try:
        return NetworkGraph(nodes, tuple(edges))
    except NetworkError as e:
        raise DocumentError(str(e), source)


def round_sig(value: float, digits: int = JSON_DIGITS) -> float:
    """Round to ``digits`` significant digits; -0.0 becomes 0.0."""
    if value == 0 or not math.isfinite(value):
        return 0.0 if value == 0 else value
    return float(f"{value:.{digits}g}") + 0.0


def to_jsonable(obj: Any, digits: int = JSON_DIGITS) -> Any:
    """Plain JSON types with floats rounded to ``digits`` significant digits."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    if isinstance(obj, PureBipartiteState):
        return state_to_document(obj, digits)
    return obj


def render_json(payload: Dict[str, Any], digits: int = JSON_DIGITS) -> str:
    return json.dumps(to_jsonable(payload, digits), indent=2)


def _format_cell(value: Any, digits: int) -> str:
    if value is None:
        return '-'
    if isinstance(value, (bool, np.bool_)):
        return 'yes' if value else 'no'
    if isinstance(value, (float, np.floating)):
        return f"{round_sig(float(value), digits):.{digits}g}"
    if isinstance(value, dict):
        return json.dumps(to_jsonable(value, digits), separators=(',', ':'))
    if isinstance(value, (list, tuple)):
        return ' '.join(_format_cell(v, digits) for v in value)
    return str(value)


def _render_table(rows: Sequence[Dict[str, Any]], digits: int) -> List[str]:
    columns = list(rows[0].keys())
    cells = [[_format_cell(row.get(c), digits) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[k]) for r in cells)) for k, c in enumerate(columns)]
    lines = ['  '.join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells)
    return lines


def render_text(payload: Dict[str, Any], digits: int = JSON_DIGITS, indent: str = '') -> str:
    """Human-readable report: scalars as ``key: value``, lists of records as tables."""
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(render_text(value, digits, indent + '  '))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{indent}{key}:")
            lines.extend(f"{indent}  {line}" for line in _render_table(value, digits))
        else:
            lines.append(f"{indent}{key}: {_format_cell(value, digits)}")
    return '\n'.join(line for line in lines if line)
