"""
Unit tests for the settings loader.
"""

from pathlib import Path

import pytest

from gsr.config.settings import GsrSettings, get_settings, load_settings, reset_settings_cache, use_config
from gsr.errors import ConfigError


class TestSettings:
    """Test cases for load_settings and its sources."""

    def test_model_defaults(self, tmp_path):
        """A missing file falls back to the model defaults."""
        settings = load_settings(tmp_path / "absent.yaml")

        assert settings.structure.enumeration_cap == 14
        assert settings.census.max_n == 3 and settings.census.max_g == 2
        assert settings.core.carrier_cap == 64
        assert settings.logging.json_output is False

    def test_yaml_overrides_defaults(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("structure:\n  sample_count: 500\nlogging:\n  json: true\n")

        settings = load_settings(path)

        assert settings.structure.sample_count == 500
        assert settings.structure.max_witnesses == 100
        assert settings.logging.json_output is True

    def test_environment_overrides_yaml(self, tmp_path, monkeypatch):
        path = tmp_path / "settings.yaml"
        path.write_text("census:\n  workers: 2\n")
        monkeypatch.setenv("GSR_CENSUS__WORKERS", "3")

        assert load_settings(path).census.workers == 3

    def test_dotenv_file(self, tmp_path, monkeypatch):
        """GSR_* lines in .env are read like environment variables."""
        (tmp_path / ".env").write_text("GSR_CENSUS__WORKERS=5\nGSR_STRUCTURE__CLOSURE_MEMO_SIZE=128\n")
        monkeypatch.chdir(tmp_path)

        settings = load_settings(tmp_path / "absent.yaml")

        assert settings.census.workers == 5
        assert settings.structure.closure_memo_size == 128

    def test_malformed_yaml(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("structure: [unclosed\n")

        with pytest.raises(ConfigError):
            load_settings(path)

    def test_invalid_values(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("structure:\n  enumeration_cap: 0\n")

        with pytest.raises(ConfigError):
            load_settings(path)

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("- 1\n- 2\n")

        with pytest.raises(ConfigError):
            load_settings(path)

    def test_cached_and_selectable(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("structure:\n  max_witnesses: 7\n")

        assert get_settings() is get_settings()
        assert use_config(path).structure.max_witnesses == 7
        assert get_settings().structure.max_witnesses == 7
        reset_settings_cache()
        assert isinstance(get_settings(), GsrSettings)

    def test_repository_defaults_file(self):
        """configs/settings.yaml matches the model defaults."""
        path = Path(__file__).resolve().parents[2] / "configs" / "settings.yaml"

        assert load_settings(path) == GsrSettings()
