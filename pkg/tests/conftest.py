"""Shared fixtures."""

import pytest

from gsr.config import settings as settings_module


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees default settings plus its own GSR_* overrides."""
    monkeypatch.setattr(settings_module, "_config_path", None)
    settings_module.reset_settings_cache()
    yield
    settings_module.reset_settings_cache()
