# src/red_sim/config/settings.py
from functools import lru_cache
from pathlib import Path
from typing import Dict, Any, Optional
import copy
import logging
import logging.config
import os

import yaml

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = 'RED_SIM_CONFIG'


class Settings:
    """Global application settings."""

    def __init__(self, config_file: Optional[Path] = None, setup_logging: bool = True):
        self.config_dir = Path.home() / '.config' / 'red-sim'
        env_file = os.environ.get(CONFIG_ENV_VAR)
        if config_file:
            self.config_file = Path(config_file)
        elif env_file:
            self.config_file = Path(env_file)
        else:
            self.config_file = self.config_dir / 'config.yaml'
        self.log_dir = self.config_dir / 'logs'

        self.config = self._load_config()

        if setup_logging:
            self._setup_logging()

    @staticmethod
    def defaults() -> Dict[str, Any]:
        """Built-in configuration, overridden by the YAML file."""
        return {
            'verify': {
                'seed': 42,
                'trials': 1000,
                'tolerance': 1.0e-9,
                'progress': True,
            },
            'swap': {
                'n': 1.0,
                'm': 1.0,
            },
            'route': {
                'metric': 'fidelity',
            },
            'output': {
                'format': 'text',
                'json_digits': 12,
            },
            'logging': {
                'level': 'INFO',
                'file': True,
            },
        }

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file."""
        default_config = self.defaults()

        try:
            if self.config_file.exists():
                logger.debug(f"Loading config from: {self.config_file}")
                with open(self.config_file) as f:
                    user_config = yaml.safe_load(f)
                    return self._merge_configs(default_config, user_config or {})
        except Exception as e:
            logger.error(f"Failed to load config: {str(e)}")

        return default_config

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Deep merge two configuration dictionaries."""
        result = copy.deepcopy(default)
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def _setup_logging(self) -> None:
        """Configure logging."""
        level = str(self.get('logging.level', 'INFO')).upper()
        handlers = {
            'console': {
                'class': 'logging.StreamHandler',
                'formatter': 'console',
                'level': 'WARNING',
                'stream': 'ext://sys.stderr',
            }
        }

        if self.get('logging.file', True):
            try:
                self.log_dir.mkdir(parents=True, exist_ok=True)
                handlers['file'] = {
                    'class': 'logging.handlers.RotatingFileHandler',
                    'filename': str(self.log_dir / 'red-sim.log'),
                    'maxBytes': 10485760,  # 10MB
                    'backupCount': 5,
                    'formatter': 'standard',
                }
            except OSError as e:
                logger.warning(f"File logging disabled: {str(e)}")

        logging_config = {
            'version': 1,
            'disable_existing_loggers': False,
            'formatters': {
                'standard': {
                    'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
                },
                'console': {
                    'format': '%(levelname)s: %(message)s'
                },
            },
            'handlers': handlers,
            'loggers': {
                'red_sim': {
                    'handlers': list(handlers),
                    'level': level,
                    'propagate': False,
                }
            }
        }

        logging.config.dictConfig(logging_config)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key path."""
        try:
            value = self.config
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def save(self) -> None:
        """Save current configuration to file."""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w') as f:
                yaml.safe_dump(self.config, f, default_flow_style=False)
            logger.info(f"Config saved to: {self.config_file}")
        except Exception as e:
            logger.error(f"Failed to save config: {str(e)}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings instance."""
    return Settings()
