# tests/test_config.py
import pytest
import yaml

from red_sim.config.settings import CONFIG_ENV_VAR, Settings, get_settings
from red_sim.exceptions.errors import ValidationError
from red_sim.models.config import RunConfig


class TestSettings:
    @pytest.fixture
    def sample_config(self, temp_dir):
        config = {
            'verify': {
                'trials': 250,
                'tolerance': 1.0e-10,
            },
            'logging': {'file': False},
        }
        config_file = temp_dir / 'config.yaml'
        with open(config_file, 'w') as f:
            yaml.dump(config, f)
        return config_file

    @pytest.mark.config
    def test_load_config(self, sample_config):
        """User values override defaults, untouched keys keep theirs."""
        settings = Settings(setup_logging=False)
        settings.config_file = sample_config
        config = settings._load_config()
        assert config['verify']['trials'] == 250
        assert config['verify']['seed'] == 42

    @pytest.mark.config
    def test_default_values(self):
        settings = Settings(setup_logging=False)
        assert settings.get('verify.tolerance') == 1e-9
        assert settings.get('route.metric') == 'fidelity'
        assert settings.get('output.json_digits') == 12
        assert settings.get('swap.n') == 1.0

    @pytest.mark.config
    def test_missing_key_returns_default(self):
        settings = Settings(setup_logging=False)
        assert settings.get('verify.unknown', 'fallback') == 'fallback'
        assert settings.get('verify.seed.deeper') is None

    @pytest.mark.config
    def test_config_override(self, sample_config):
        settings = Settings(config_file=sample_config, setup_logging=False)
        settings.config['verify']['trials'] = 500
        settings.save()

        new_settings = Settings(config_file=sample_config, setup_logging=False)
        assert new_settings.get('verify.trials') == 500
        assert new_settings.get('verify.tolerance') == 1e-10

    @pytest.mark.config
    def test_environment_variable(self, sample_config, monkeypatch):
        monkeypatch.setenv(CONFIG_ENV_VAR, str(sample_config))
        settings = Settings(setup_logging=False)
        assert settings.config_file == sample_config
        assert settings.get('verify.trials') == 250

    @pytest.mark.config
    def test_invalid_yaml_falls_back_to_defaults(self, temp_dir):
        config_file = temp_dir / 'broken.yaml'
        config_file.write_text('verify: [unclosed\n')
        settings = Settings(config_file=config_file, setup_logging=False)
        assert settings.get('verify.trials') == 1000

    @pytest.mark.config
    def test_logging_writes_under_home(self, isolated_home):
        settings = Settings()
        assert settings.log_dir == isolated_home / '.config' / 'red-sim' / 'logs'
        assert settings.log_dir.is_dir()

    @pytest.mark.config
    def test_settings_are_cached(self):
        assert get_settings() is get_settings()


class TestRunConfig:
    @pytest.mark.config
    def test_defaults(self):
        config = RunConfig(command='verify')
        assert config.seed == 42
        assert config.trials == 1000
        assert config.show_progress

    @pytest.mark.config
    def test_input_path_is_converted(self):
        config = RunConfig(command='swap', input_path='pair.json')
        assert config.input_path.name == 'pair.json'

    @pytest.mark.config
    @pytest.mark.parametrize("overrides", [
        {'command': 'simulate'},
        {'trials': 0},
        {'tolerance': 0.0},
        {'output_format': 'xml'},
        {'json_digits': 0},
    ])
    def test_validation(self, overrides):
        values = {'command': 'verify', **overrides}
        with pytest.raises(ValidationError):
            RunConfig(**values)

    @pytest.mark.config
    @pytest.mark.parametrize("quiet,output_format,expected", [
        (False, 'text', True),
        (True, 'text', False),
        (False, 'json', False),
    ])
    def test_progress_visibility(self, quiet, output_format, expected):
        config = RunConfig(command='verify', quiet=quiet, output_format=output_format)
        assert config.show_progress is expected
