import logging

from config import Settings, get_settings, load_settings, reset_settings


def test_defaults(monkeypatch):
    for name in ("MEDIALDD_LOG_LEVEL", "MEDIALDD_SEED", "MEDIALDD_EXHAUSTIVE_BUDGET", "MEDIALDD_REAL_RTOL"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings == Settings()
    assert settings.exhaustive_budget == 1_000_000
    assert settings.cli_order_limit == 6


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("MEDIALDD_LOG_LEVEL", "debug")
    monkeypatch.setenv("MEDIALDD_SEED", "42")
    monkeypatch.setenv("MEDIALDD_REAL_RTOL", "1e-9")
    settings = load_settings()
    assert settings.log_level == "DEBUG"
    assert settings.seed == 42
    assert settings.real_rtol == 1e-9


def test_invalid_values_fall_back(monkeypatch, caplog):
    monkeypatch.setenv("MEDIALDD_SEED", "abc")
    monkeypatch.setenv("MEDIALDD_PERMUTATION_LIMIT", "50")
    monkeypatch.setenv("MEDIALDD_LOG_LEVEL", "LOUD")
    with caplog.at_level(logging.WARNING, logger="config"):
        settings = load_settings()
    assert settings.seed == 0
    assert settings.permutation_limit == 8
    assert settings.log_level == "WARNING"
    assert "Non-parsable MEDIALDD_SEED" in caplog.text
    assert "Out-of-range MEDIALDD_PERMUTATION_LIMIT" in caplog.text


def test_blank_value_is_absent(monkeypatch):
    monkeypatch.setenv("MEDIALDD_EXHAUSTIVE_BUDGET", "  ")
    assert load_settings().exhaustive_budget == 1_000_000


def test_cached_until_reset(monkeypatch):
    monkeypatch.setenv("MEDIALDD_SEED", "1")
    first = get_settings()
    monkeypatch.setenv("MEDIALDD_SEED", "2")
    assert get_settings() is first
    reset_settings()
    assert get_settings().seed == 2
