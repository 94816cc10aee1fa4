from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest
import structlog


PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_DIR = PROJECT_ROOT / "src"

if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

# Allow importing repo-level packages like `scripts.*`
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))


from eos.models import DomainBox, ideal_gas, van_der_waals  # noqa: E402


@pytest.fixture
def gas():
    return ideal_gas()


@pytest.fixture
def vdw():
    return van_der_waals(0.1, 0.05)


@pytest.fixture
def unit_box():
    return DomainBox(s_range=(0.0, 1.0), v_range=(1.0, 2.0))


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch):
    # Keep developer .env / shell overrides out of the tests.
    for key in ("THERMO_ACTION_OUTPUT_DIR", "THERMO_ACTION_TOLERANCES_CONFIG"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("LOG_FILE", "")


@pytest.fixture(autouse=True)
def _reset_logging():
    # Runner tests call setup_logging; drop their handlers before the next test.
    yield
    logging.getLogger().handlers.clear()
    structlog.reset_defaults()
