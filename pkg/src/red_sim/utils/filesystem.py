# src/red_sim/utils/filesystem.py
import json
import logging
from pathlib import Path
from typing import Any, Union

from ..exceptions.errors import DocumentError

logger = logging.getLogger(__name__)

def ensure_directory(path: Path) -> None:
    """Ensure directory exists, create if necessary."""
    path.mkdir(parents=True, exist_ok=True)

def read_document(path: Union[str, Path]) -> Any:
    """Read a JSON input document.

    Parse failures raise DocumentError located at ``file:line:column``.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except FileNotFoundError:
        raise DocumentError("File not found", str(path))
    except OSError as e:
        raise DocumentError(f"Cannot read file: {e}", str(path))
    return parse_document(text, str(path))

def parse_document(text: str, source: str = '<input>') -> Any:
    """Parse JSON text, mapping syntax errors to a line-numbered DocumentError."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, f"{source}:{e.lineno}:{e.colno}")

def write_report(text: str, path: Union[str, Path]) -> Path:
    """Write a rendered report, creating parent directories."""
    path = Path(path)
    ensure_directory(path.parent)
    path.write_text(text if text.endswith('\n') else text + '\n', encoding='utf-8')
    logger.debug(f"Report written to {path}")
    return path
