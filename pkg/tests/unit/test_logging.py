from __future__ import annotations

import io
import json
import logging
import sys
from pathlib import Path

import structlog

from utils.logging import get_logger, log_context, setup_logging


def test_file_log_is_json_with_bound_context(tmp_path: Path):
    log_file = tmp_path / "logs" / "run.jsonl"
    try:
        setup_logging(level="INFO", log_file=str(log_file), console_format="console")
        logger = get_logger(component="test_logging")
        with log_context(config_sha256="abc123", task="check-maxwell"):
            logger.info("task_start", seeds={})
        logger.debug("hidden")
        logger.warning("outside")
        for handler in logging.getLogger().handlers:
            handler.flush()

        lines = [json.loads(line) for line in log_file.read_text(encoding="utf-8").splitlines()]
        assert [line["event"] for line in lines] == ["task_start", "outside"]
        first, second = lines
        assert first["config_sha256"] == "abc123"
        assert first["task"] == "check-maxwell"
        assert first["component"] == "test_logging"
        assert first["level"] == "info"
        assert "timestamp" in first
        assert "config_sha256" not in second
    finally:
        logging.getLogger().handlers.clear()
        structlog.reset_defaults()


def test_console_follows_current_stderr(monkeypatch):
    setup_logging(level="INFO", log_file="", console_format="json")
    first = io.StringIO()
    monkeypatch.setattr(sys, "stderr", first)
    get_logger(component="test_logging").info("after_swap")
    assert json.loads(first.getvalue().splitlines()[-1])["event"] == "after_swap"

    first.close()
    second = io.StringIO()
    monkeypatch.setattr(sys, "stderr", second)
    get_logger(component="test_logging").warning("after_close")
    assert "after_close" in second.getvalue()
