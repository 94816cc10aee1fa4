from __future__ import annotations

from pathlib import Path

import pytest

from core.errors import ConfigError
from utils.config import (
    TOLERANCE_KEYS,
    load_run_config,
    load_tolerances,
    load_yaml,
    resolve_output_dir,
    tolerances_from_mapping,
)


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def test_project_default_tolerances():
    tol = load_tolerances()
    assert tol.deriv_rel == 1e-8
    assert tol.fd_rel == 1e-5
    assert tol.quad_abs == 1e-10
    assert tol.newton_tol == 1e-12
    assert tol.max_newton_iter == 64
    assert isinstance(tol.max_newton_iter, int)


def test_tolerance_path_precedence(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    body = "tolerances:\n" + "".join(f"  {k}: 1.0e-3\n" for k in TOLERANCE_KEYS if k != "max_newton_iter") + "  max_newton_iter: 5\n"
    env_file = _write(tmp_path / "env.yaml", body)
    monkeypatch.setenv("THERMO_ACTION_TOLERANCES_CONFIG", str(env_file))
    assert load_tolerances().max_newton_iter == 5

    explicit = _write(tmp_path / "explicit.yaml", body.replace("max_newton_iter: 5", "max_newton_iter: 7"))
    assert load_tolerances(str(explicit)).max_newton_iter == 7


def test_missing_tolerance_keys_are_reported_together(tmp_path: Path):
    p = _write(tmp_path / "tol.yaml", "tolerances:\n  deriv_rel: 1.0e-8\n")
    with pytest.raises(ConfigError) as exc:
        load_tolerances(str(p))
    message = str(exc.value)
    assert "tolerances.fd_rel" in message
    assert "tolerances.quad_abs" in message
    assert "tolerances.max_newton_iter" in message


def test_bad_tolerance_values():
    with pytest.raises(ConfigError):
        tolerances_from_mapping({"quad_abs": -1.0})
    with pytest.raises(ConfigError):
        tolerances_from_mapping({"quad_abs": "tiny"})
    with pytest.raises(ConfigError):
        tolerances_from_mapping({"quad_tol": 1e-9})


def test_load_yaml_errors(tmp_path: Path):
    with pytest.raises(ConfigError):
        load_yaml(tmp_path / "missing.yaml")
    with pytest.raises(ConfigError):
        load_yaml(_write(tmp_path / "list.yaml", "- 1\n- 2\n"))
    with pytest.raises(ConfigError):
        load_yaml(_write(tmp_path / "broken.yaml", "a: [1, 2\n"))
    assert load_yaml(_write(tmp_path / "empty.yaml", "")) == {}


def test_run_config_validation(tmp_path: Path):
    good = _write(
        tmp_path / "run.yaml",
        "model:\n  name: van_der_waals\n  parameters: {a: 0.1, b: 0.05}\n"
        "tolerances:\n  quad_abs: 1.0e-11\n"
        "tasks:\n  - task: check-maxwell\n",
    )
    cfg, raw = load_run_config(good)
    assert cfg.model.name == "van_der_waals"
    assert cfg.tolerances == {"quad_abs": 1e-11}
    assert cfg.derivative_mode == "analytic"
    assert cfg.output_dir == "reports"
    assert raw["tasks"] == [{"task": "check-maxwell"}]

    for text in (
        "model: {name: ideal_gas}\ntasks: []\n",
        "model: {name: unicorn}\ntasks: [{task: check-maxwell}]\n",
        "model: {name: ideal_gas}\ntasks: [{task: check-maxwell}]\nunexpected: 1\n",
        "model: {name: ideal_gas}\ntolerances: {quad_abs: -1}\ntasks: [{task: check-maxwell}]\n",
        "model: {name: ideal_gas}\nderivative_mode: symbolic\ntasks: [{task: check-maxwell}]\n",
    ):
        with pytest.raises(ConfigError):
            load_run_config(_write(tmp_path / "bad.yaml", text))


def test_output_dir_override(monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    assert resolve_output_dir("reports/x") == Path("reports/x")
    monkeypatch.setenv("THERMO_ACTION_OUTPUT_DIR", str(tmp_path))
    assert resolve_output_dir("reports/x") == tmp_path
