"""Environment-based configuration for bookramsey runs.

Each :class:`RunConfig` field ``foo_bar`` is read from ``BOOKRAMSEY_FOO_BAR``.
Unset or empty variables fall back to the model default, so the template
written by :meth:`EnvConfig.create_env_template` doubles as documentation.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar, Union, get_args, get_origin

from dotenv import load_dotenv
from pydantic import ValidationError as PydanticValidationError
from pydantic.fields import PydanticUndefined

from ..types.exceptions import ConfigurationError
from ..types.models import RunConfig

T = TypeVar("T")

_TRUTHY = frozenset({"true", "1", "yes", "on"})


def _field_type(annotation: Any) -> Any:
    if get_origin(annotation) is Union:
        args = [a for a in get_args(annotation) if a is not type(None)]
        if len(args) == 1:
            return args[0]
    return annotation


def _default_text(default: Any) -> Optional[str]:
    if default is PydanticUndefined or default is None:
        return None
    if isinstance(default, bool):
        return str(default).lower()
    return str(default)


# (check, message) pairs; a check returning False adds its message.
_RULES: List[Tuple[Callable[[RunConfig], bool], str]] = [
    (lambda c: c.workers >= 1, "WORKERS must be at least 1"),
    (lambda c: c.budget_seconds >= 0, "BUDGET_SECONDS must be non-negative"),
    (lambda c: c.checkpoint_every > 0, "CHECKPOINT_EVERY must be positive"),
    (lambda c: 1 <= c.canonical_max_n <= 1024, "CANONICAL_MAX_N must be between 1 and 1024"),
    (lambda c: c.naive_max_n >= 1, "NAIVE_MAX_N must be positive"),
    (lambda c: c.books_max_n >= 1, "BOOKS_MAX_N must be positive"),
    (lambda c: bool(c.registry_path), "REGISTRY_PATH is required"),
]


class EnvConfig:
    """Reads ``BOOKRAMSEY_*`` variables into a :class:`RunConfig`."""

    PREFIX = "BOOKRAMSEY_"
    DEFAULTS: Dict[str, Optional[str]] = {
        name.upper(): _default_text(info.default) for name, info in RunConfig.model_fields.items()
    }

    @classmethod
    def load_env_file(cls, env_file: Optional[Path] = None) -> None:
        """Load a ``.env`` file into the process environment; a missing file is ignored."""
        path = Path(env_file) if env_file is not None else Path(".env")
        if path.is_file():
            load_dotenv(path)

    @classmethod
    def get_env_var(cls, key: str, default: Optional[str] = None) -> Optional[str]:
        fallback = default if default is not None else cls.DEFAULTS.get(key)
        value = os.environ.get(cls.PREFIX + key, fallback)
        return value or None

    @classmethod
    def _typed(cls, key: str, default: Optional[str], convert: Callable[[str], T], empty: T, kind: str) -> T:
        raw = cls.get_env_var(key, default)
        if raw is None:
            return empty
        try:
            return convert(raw)
        except ValueError as exc:
            raise ConfigurationError(f"Invalid {kind} value for {cls.PREFIX}{key}: {raw}") from exc

    @classmethod
    def get_bool(cls, key: str, default: Optional[str] = None) -> bool:
        return cls._typed(key, default, lambda raw: raw.strip().lower() in _TRUTHY, False, "boolean")

    @classmethod
    def get_int(cls, key: str, default: Optional[str] = None) -> int:
        return cls._typed(key, default, int, 0, "integer")

    @classmethod
    def get_float(cls, key: str, default: Optional[str] = None) -> float:
        return cls._typed(key, default, float, 0.0, "float")

    @classmethod
    def get_path(cls, key: str, default: str = ".") -> Path:
        return Path(cls.get_env_var(key, default) or ".")

    @classmethod
    def _read_environment(cls) -> Dict[str, Any]:
        readers = {bool: cls.get_bool, int: cls.get_int, float: cls.get_float}
        values: Dict[str, Any] = {}
        for name, info in RunConfig.model_fields.items():
            key = name.upper()
            reader = readers.get(_field_type(info.annotation))
            value = reader(key) if reader is not None else cls.get_env_var(key)
            if value is not None:
                values[name] = value
        return values

    @classmethod
    def create_run_config(
        cls,
        config_data: Optional[Dict[str, Any]] = None,
        env_file: Optional[Path] = None,
    ) -> RunConfig:
        """A :class:`RunConfig` from ``config_data`` when given, else from the environment."""
        try:
            if config_data is not None:
                return RunConfig(**config_data)
            if env_file is not None:
                cls.load_env_file(env_file)
            return RunConfig(**cls._read_environment())
        except PydanticValidationError as exc:
            raise ConfigurationError(f"Invalid configuration: {exc.errors()[0]['msg']}") from exc

    @classmethod
    def validate_config(cls, config: RunConfig) -> None:
        """Raise one :class:`ConfigurationError` naming every invalid setting."""
        errors = [message for check, message in _RULES if not check(config)]
        if errors:
            raise ConfigurationError(f"Configuration validation failed: {'; '.join(errors)}")

    @classmethod
    def create_env_template(cls, output_path: Optional[Union[str, Path]] = None) -> Path:
        path = Path(output_path) if output_path is not None else Path(".env.template")
        lines = ["# bookramsey settings; the values shown are the defaults", ""]
        for name, info in RunConfig.model_fields.items():
            if info.description:
                lines.append(f"# {info.description}")
            lines.append(f"{cls.PREFIX}{name.upper()}={cls.DEFAULTS.get(name.upper()) or ''}")
            lines.append("")
        path.write_text("\n".join(lines), encoding="utf-8")
        return path

    @classmethod
    def get_all_env_vars(cls) -> Dict[str, str]:
        """``BOOKRAMSEY_*`` variables actually set, without the prefix."""
        return {key[len(cls.PREFIX) :]: value for key, value in os.environ.items() if key.startswith(cls.PREFIX)}
