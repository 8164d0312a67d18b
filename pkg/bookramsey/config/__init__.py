"""Configuration: env-driven run config and structlog setup."""

from .env import EnvConfig
from .logging import (
    LogFormat,
    LoggingConfig,
    LoggingManager,
    LogLevel,
    PerformanceLogger,
    StructuredLogger,
    create_logging_config,
    create_logging_manager,
    get_performance_logger,
)

__all__ = [
    "EnvConfig",
    "LogFormat",
    "LogLevel",
    "LoggingConfig",
    "LoggingManager",
    "PerformanceLogger",
    "StructuredLogger",
    "create_logging_config",
    "create_logging_manager",
    "get_performance_logger",
]
