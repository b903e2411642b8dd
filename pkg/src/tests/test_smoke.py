import pytest

from pairdom.config import load_settings
from pairdom.errors import ConfigError


def test_settings_defaults(monkeypatch):
    monkeypatch.delenv("PAIRDOM_ORACLE_CAP", raising=False)
    monkeypatch.delenv("PAIRDOM_DB", raising=False)
    settings = load_settings()
    assert settings.oracle_cap == 20
    assert settings.db_path == "pairdom.sqlite"


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("PAIRDOM_ORACLE_CAP", "14")
    monkeypatch.setenv("PAIRDOM_DB", "runs.sqlite")
    settings = load_settings()
    assert settings.oracle_cap == 14
    assert settings.db_path == "runs.sqlite"


@pytest.mark.parametrize("raw", ["abc", "1", "-3"])
def test_settings_reject_bad_cap(monkeypatch, raw):
    monkeypatch.setenv("PAIRDOM_ORACLE_CAP", raw)
    with pytest.raises(ConfigError):
        load_settings()
