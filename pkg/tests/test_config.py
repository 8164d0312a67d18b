"""Tests for configuration module."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic.fields import PydanticUndefined

from bookramsey.config import EnvConfig
from bookramsey.config import env as env_module
from bookramsey.types.exceptions import ConfigurationError
from bookramsey.types.models import RunConfig


class TestEnvConfig:
    """Test EnvConfig class."""

    def test_get_env_var(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_REGISTRY_PATH": "/tmp/bounds.jsonl"}):
            assert EnvConfig.get_env_var("REGISTRY_PATH") == "/tmp/bounds.jsonl"

    def test_get_env_var_default_from_model(self, clean_env):
        assert EnvConfig.get_env_var("WORKERS") == "1"
        assert EnvConfig.get_env_var("LOG_FORMAT") == "console"

    def test_defaults_cover_every_field(self):
        assert set(EnvConfig.DEFAULTS) == {name.upper() for name in RunConfig.model_fields}
        assert EnvConfig.DEFAULTS["BUDGET_SECONDS"] == "0.0"

    def test_undefined_default_has_no_text(self):
        assert env_module._default_text(PydanticUndefined) is None
        assert env_module._default_text(False) == "false"

    def test_empty_value_is_unset(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_LOG_LEVEL": ""}):
            assert EnvConfig.get_env_var("LOG_LEVEL") is None

    def test_get_bool(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_TEST": "yes"}):
            assert EnvConfig.get_bool("TEST") is True
        for value in ["false", "0", "no", "off", "FALSE"]:
            with patch.dict(os.environ, {"BOOKRAMSEY_TEST": value}):
                assert EnvConfig.get_bool("TEST") is False

    def test_get_int(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_WORKERS": "4"}):
            assert EnvConfig.get_int("WORKERS") == 4

    def test_get_int_invalid_value(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_WORKERS": "four"}):
            with pytest.raises(ConfigurationError, match="Invalid integer value"):
                EnvConfig.get_int("WORKERS")

    def test_get_float(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_BUDGET_SECONDS": "30.5"}):
            assert EnvConfig.get_float("BUDGET_SECONDS") == 30.5

    def test_get_float_invalid_value(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_BUDGET_SECONDS": "soon"}):
            with pytest.raises(ConfigurationError, match="Invalid float value"):
                EnvConfig.get_float("BUDGET_SECONDS")

    def test_get_path(self):
        with patch.dict(os.environ, {"BOOKRAMSEY_DATA": "/var/data"}):
            assert EnvConfig.get_path("DATA") == Path("/var/data")

    def test_get_all_env_vars(self, clean_env):
        clean_env.setenv("BOOKRAMSEY_WORKERS", "2")
        assert EnvConfig.get_all_env_vars() == {"WORKERS": "2"}


class TestRunConfigCreation:
    def test_defaults(self, clean_env):
        config = EnvConfig.create_run_config()
        assert config == RunConfig()
        assert config.budget is None

    def test_from_environment(self, clean_env):
        clean_env.setenv("BOOKRAMSEY_WORKERS", "3")
        clean_env.setenv("BOOKRAMSEY_BUDGET_SECONDS", "12")
        clean_env.setenv("BOOKRAMSEY_LOG_FORMAT", "json")
        config = EnvConfig.create_run_config()
        assert config.workers == 3
        assert config.budget == 12.0
        assert config.log_format == "json"

    def test_from_dict(self):
        config = EnvConfig.create_run_config({"workers": 8, "registry_path": "x.jsonl"})
        assert config.workers == 8
        assert config.registry_path == "x.jsonl"

    def test_invalid_value_is_a_configuration_error(self, clean_env):
        clean_env.setenv("BOOKRAMSEY_LOG_LEVEL", "LOUD")
        with pytest.raises(ConfigurationError, match="Invalid configuration"):
            EnvConfig.create_run_config()

    def test_env_file(self, clean_env, temp_dir):
        env_file = temp_dir / ".env"
        env_file.write_text("BOOKRAMSEY_CHECKPOINT_EVERY=17\n")
        try:
            assert EnvConfig.create_run_config(env_file=env_file).checkpoint_every == 17
        finally:
            os.environ.pop("BOOKRAMSEY_CHECKPOINT_EVERY", None)

    def test_missing_env_file_is_ignored(self, clean_env, temp_dir):
        assert EnvConfig.create_run_config(env_file=temp_dir / "absent.env") == RunConfig()


class TestValidation:
    def test_valid_defaults(self):
        EnvConfig.validate_config(RunConfig())

    def test_all_errors_are_listed(self):
        config = RunConfig(workers=0, budget_seconds=-1, checkpoint_every=0, registry_path="")
        with pytest.raises(ConfigurationError) as exc_info:
            EnvConfig.validate_config(config)
        message = str(exc_info.value)
        assert message.startswith("Configuration validation failed")
        for fragment in ["WORKERS", "BUDGET_SECONDS", "CHECKPOINT_EVERY", "REGISTRY_PATH"]:
            assert fragment in message

    def test_canonical_limit_range(self):
        with pytest.raises(ConfigurationError, match="CANONICAL_MAX_N"):
            EnvConfig.validate_config(RunConfig(canonical_max_n=2000))


class TestTemplate:
    def test_template_lists_every_field(self, temp_dir):
        path = EnvConfig.create_env_template(temp_dir / "env.template")
        text = path.read_text()
        for field_name in RunConfig.model_fields:
            assert f"BOOKRAMSEY_{field_name.upper()}=" in text
        assert "# Worker processes for enumeration" in text

    def test_template_accepts_string_path(self, temp_dir):
        path = EnvConfig.create_env_template(str(temp_dir / "t.env"))
        assert isinstance(path, Path)
        assert path.exists()
