"""Structured logging for bookramsey.

Logs always go to stderr (and optionally a file) so that stdout stays free for
command results such as DIMACS text or the JSON envelope. Long computations
report through the shared :class:`PerformanceLogger`: one record per finished
operation and one per checkpoint (enumeration level, appendix sweep).
"""

import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional

import structlog

logger = structlog.get_logger(__name__)


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"

    @property
    def numeric(self) -> int:
        return int(getattr(logging, self.value))


class LogFormat(str, Enum):
    """Renderer used for every record."""

    JSON = "json"
    CONSOLE = "console"
    SIMPLE = "simple"


_RENDERERS: Dict[LogFormat, Callable[[], Any]] = {
    LogFormat.JSON: lambda: structlog.processors.JSONRenderer(sort_keys=True),
    LogFormat.CONSOLE: lambda: structlog.dev.ConsoleRenderer(),
    LogFormat.SIMPLE: lambda: structlog.dev.ConsoleRenderer(colors=False),
}


@dataclass
class LoggingConfig:
    level: LogLevel = LogLevel.WARNING
    format: LogFormat = LogFormat.CONSOLE
    enable_console: bool = True
    enable_file: bool = False
    log_file: Optional[Path] = None
    enable_performance_logging: bool = True
    enable_metrics: bool = True
    timestamps: bool = True
    extra_processors: List[Any] = field(default_factory=list)


def build_processors(config: LoggingConfig) -> List[Any]:
    """structlog processor chain for ``config``, renderer last."""
    chain: List[Any] = list(config.extra_processors)
    chain += [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
    ]
    if config.timestamps:
        chain.append(structlog.processors.TimeStamper(fmt="iso", utc=True))
    chain += [
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        _RENDERERS[config.format](),
    ]
    return chain


class PerformanceLogger:
    """Timings of encodings, enumerations and verification sweeps.

    ``metrics`` holds the operations currently in flight, keyed by name.
    """

    def __init__(self, config: LoggingConfig):
        self.config = config
        self.logger = structlog.get_logger("bookramsey.performance")
        self.metrics: Dict[str, Dict[str, Any]] = {}

    def log_operation_start(self, operation: str, **fields: Any) -> None:
        if not self.config.enable_performance_logging:
            return
        self.metrics[operation] = {"started": time.perf_counter(), "fields": fields}
        self.logger.debug("Operation started", operation=operation, **fields)

    def log_operation_end(self, operation: str, duration: float, success: bool = True, **fields: Any) -> None:
        if not self.config.enable_performance_logging:
            return
        pending = self.metrics.pop(operation, None)
        if pending is None:
            return
        record = {
            "operation": operation,
            "duration_ms": round(duration * 1000, 2),
            "wall_ms": round((time.perf_counter() - pending["started"]) * 1000, 2),
            "success": success,
            **pending["fields"],
            **fields,
        }
        emit = self.logger.info if success else self.logger.warning
        emit("Operation completed" if success else "Operation failed", **record)

    def checkpoint(self, operation: str, **progress: Any) -> None:
        """One line of progress for a running operation."""
        if self.config.enable_performance_logging:
            self.logger.info("Checkpoint", operation=operation, **progress)

    def log_metric(self, name: str, value: float, unit: str = "", **fields: Any) -> None:
        if self.config.enable_metrics:
            self.logger.info("Metric", metric_name=name, value=value, unit=unit, **fields)

    @contextmanager
    def timed(self, operation: str, **fields: Any) -> Iterator[Dict[str, Any]]:
        """Time a block; entries put into the yielded dict are logged with the result."""
        extra: Dict[str, Any] = {}
        self.log_operation_start(operation, **fields)
        started = time.perf_counter()
        success = False
        try:
            yield extra
            success = True
        finally:
            self.log_operation_end(operation, time.perf_counter() - started, success, **extra)


class StructuredLogger:
    """Installs the stderr handler and the structlog configuration."""

    def __init__(self, config: LoggingConfig):
        self.config = config
        self._configure()

    def _configure(self) -> None:
        root = logging.getLogger()
        if self.config.enable_console:
            logging.basicConfig(stream=sys.stderr, format="%(message)s", force=True)
        root.setLevel(self.config.level.numeric)
        structlog.configure(
            processors=build_processors(self.config),
            context_class=dict,
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )

    def get_logger(self, name: Optional[str] = None) -> structlog.BoundLogger:
        return structlog.get_logger(name)


class LoggingManager:
    """Owns the structlog setup and installs the shared performance logger."""

    def __init__(self, config: LoggingConfig):
        global _performance_logger

        self.config = config
        self.structured_logger = StructuredLogger(config)
        self.performance_logger = PerformanceLogger(config)
        _performance_logger = self.performance_logger
        if config.enable_file:
            self._attach_file_handler()
        logger.debug("Logging configured", level=config.level.value, format=config.format.value)

    def _attach_file_handler(self) -> None:
        log_file = self.config.log_file
        if log_file is None:
            logger.warning("File logging enabled without a log file")
            return
        try:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            handler = logging.FileHandler(str(log_file))
        except OSError as exc:
            logger.warning("Cannot open log file", log_file=str(log_file), error=str(exc))
            return
        handler.setFormatter(logging.Formatter("%(message)s"))
        logging.getLogger().addHandler(handler)

    def get_logger(self, name: Optional[str] = None) -> structlog.BoundLogger:
        return self.structured_logger.get_logger(name)

    def log_operation_start(self, operation: str, **fields: Any) -> None:
        self.performance_logger.log_operation_start(operation, **fields)

    def log_operation_end(self, operation: str, duration: float, success: bool = True, **fields: Any) -> None:
        self.performance_logger.log_operation_end(operation, duration, success, **fields)

    def log_metric(self, name: str, value: float, unit: str = "", **fields: Any) -> None:
        self.performance_logger.log_metric(name, value, unit, **fields)


_performance_logger: Optional[PerformanceLogger] = None


def get_performance_logger() -> PerformanceLogger:
    """Performance logger of the active manager, or a default one."""
    global _performance_logger
    if _performance_logger is None:
        _performance_logger = PerformanceLogger(LoggingConfig())
    return _performance_logger


def create_logging_config(
    level: LogLevel = LogLevel.WARNING,
    format: LogFormat = LogFormat.CONSOLE,
    **overrides: Any,
) -> LoggingConfig:
    return LoggingConfig(level=LogLevel(level), format=LogFormat(format), **overrides)


def create_logging_manager(config: LoggingConfig) -> LoggingManager:
    return LoggingManager(config)
