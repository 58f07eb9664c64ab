# src/red_sim/models/config.py
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..exceptions.errors import ValidationError

COMMANDS = ('verify', 'swap', 'chain', 'route')
OUTPUT_FORMATS = ('text', 'json')


@dataclass
class RunConfig:
    """Options of one CLI invocation after settings and flags are merged."""
    command: str
    seed: int = 42
    trials: int = 1000
    tolerance: float = 1e-9
    input_path: Optional[Path] = None
    output_format: str = 'text'
    source: Optional[str] = None
    target: Optional[str] = None
    metric: str = 'fidelity'
    n: Optional[float] = None
    m: Optional[float] = None
    quiet: bool = False
    progress: bool = True
    json_digits: int = 12

    def __post_init__(self):
        """Convert string paths to Path objects and validate configuration."""
        if isinstance(self.input_path, str):
            self.input_path = Path(self.input_path)
        if self.command not in COMMANDS:
            raise ValidationError(f"Unknown command '{self.command}'")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if not self.tolerance > 0:
            raise ValidationError(f"tolerance must be > 0, got {self.tolerance}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValidationError(f"Unknown output format '{self.output_format}'")
        if self.json_digits < 1:
            raise ValidationError(f"json_digits must be >= 1, got {self.json_digits}")

    @property
    def show_progress(self) -> bool:
        return self.progress and not self.quiet and self.output_format != 'json'
