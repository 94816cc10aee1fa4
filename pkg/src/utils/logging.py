from __future__ import annotations

import logging
import os
import sys
from contextlib import AbstractContextManager
from pathlib import Path
from typing import Any

import structlog


# Processors run on every event, structlog or foreign (warnings captured from scipy/numpy).
_SHARED_PROCESSORS: list[Any] = [
    structlog.contextvars.merge_contextvars,
    structlog.processors.add_log_level,
    structlog.processors.TimeStamper(fmt="iso", utc=True),
    structlog.processors.StackInfoRenderer(),
    structlog.processors.format_exc_info,
]


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever `sys.stderr` is at emit time, not the stream present at setup."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value) -> None:
        pass


def _formatter(renderer: Any) -> logging.Formatter:
    return structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=_SHARED_PROCESSORS,
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )


def setup_logging(
    *,
    level: str | None = None,
    log_file: str | None = None,
    console_format: str | None = None,
) -> None:
    """
    Structured logging for verification runs.

    Console output is JSON by default (`LOG_FORMAT=console` switches to the key=value
    renderer for interactive use). The JSON-lines file (`LOG_FILE`, empty string
    disables) is always JSON so runs can be grepped by config hash or task.
    """
    lvl = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    file_path = log_file if log_file is not None else os.getenv("LOG_FILE", "logs/verification.jsonl")
    fmt = (console_format or os.getenv("LOG_FORMAT", "json")).lower()

    root = logging.getLogger()
    root.setLevel(lvl)
    root.handlers.clear()

    console = _StderrHandler()
    console.setLevel(lvl)
    console.setFormatter(
        _formatter(structlog.dev.ConsoleRenderer(colors=False) if fmt == "console" else structlog.processors.JSONRenderer())
    )
    root.addHandler(console)

    if file_path:
        Path(file_path).parent.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(file_path)
        fh.setLevel(lvl)
        fh.setFormatter(_formatter(structlog.processors.JSONRenderer()))
        root.addHandler(fh)

    logging.captureWarnings(True)
    logging.getLogger("py.warnings").setLevel(logging.WARNING)

    structlog.configure(
        processors=[*_SHARED_PROCESSORS, structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, lvl, logging.INFO)),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(**kwargs: Any):
    # Lazy proxy: module-level loggers pick up whatever setup_logging configured by first use.
    return structlog.get_logger(**kwargs)


def log_context(**kwargs: Any) -> AbstractContextManager[Any]:
    """Bind keys (config hash, task, report prefix) onto every event logged inside the block."""
    return structlog.contextvars.bound_contextvars(**kwargs)
