#!/usr/bin/env python3
"""
Runtime settings for medialdd
Reads MEDIALDD_* environment variables with validated fallbacks
"""

import logging
import os
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Process-wide knobs; every library function also accepts these as explicit arguments"""
    log_level: str = "WARNING"
    seed: int = 0
    exhaustive_budget: int = 1_000_000
    permutation_limit: int = 8
    cli_order_limit: int = 6
    enumeration_chunk: int = 50_000
    real_rtol: float = 1e-12


def _read(name: str, parse: Callable[[str], T], valid: Callable[[T], bool], default: T) -> T:
    """
    Read one environment variable, falling back to the default on absence or bad input

    Args:
        name: Environment variable name
        parse: Converter from the raw string
        valid: Range check applied after conversion
        default: Value used when the variable is missing or rejected

    Returns:
        The parsed value or the default
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = parse(raw.strip())
    except ValueError:
        logger.warning(f"Non-parsable {name}={raw!r}, using default {default!r}")
        return default
    if not valid(value):
        logger.warning(f"Out-of-range {name}={raw!r}, using default {default!r}")
        return default
    return value


def load_settings() -> Settings:
    """Build Settings from the environment"""
    defaults = Settings()
    return Settings(
        log_level=_read("MEDIALDD_LOG_LEVEL", str.upper, lambda v: v in LOG_LEVELS, defaults.log_level),
        seed=_read("MEDIALDD_SEED", int, lambda v: v >= 0, defaults.seed),
        exhaustive_budget=_read("MEDIALDD_EXHAUSTIVE_BUDGET", int, lambda v: v >= 1, defaults.exhaustive_budget),
        permutation_limit=_read("MEDIALDD_PERMUTATION_LIMIT", int, lambda v: 1 <= v <= 10, defaults.permutation_limit),
        cli_order_limit=_read("MEDIALDD_CLI_ORDER_LIMIT", int, lambda v: 1 <= v <= 10, defaults.cli_order_limit),
        enumeration_chunk=_read("MEDIALDD_ENUMERATION_CHUNK", int, lambda v: v >= 1, defaults.enumeration_chunk),
        real_rtol=_read("MEDIALDD_REAL_RTOL", float, lambda v: 0.0 <= v < 1.0, defaults.real_rtol),
    )


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the cached settings, loading them on first use"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next get_settings() rereads the environment"""
    global _settings
    _settings = None
