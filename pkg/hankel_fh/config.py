"""
Environment-driven settings for the Hankel determinant toolkit.

Every knob can be set from the process environment or a local `.env` file.
Invalid values never abort a run: they are logged and replaced by the default.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(message)s"


# --------------------------------------------------------------------------- #
# Environment helpers
# --------------------------------------------------------------------------- #


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        logging.warning("Invalid float for %s=%s; using default %s", name, raw, default)
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        logging.warning("Invalid integer for %s=%s; using default %s", name, raw, default)
        return default


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    lowered = raw.strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    logging.warning("Invalid boolean for %s=%s; using default %s", name, raw, default)
    return default


def _split_csv(value: Optional[str]) -> List[str]:
    if not value:
        return []
    return [part.strip() for part in value.split(",") if part.strip()]


def parse_int_list(value: Optional[str]) -> List[int]:
    """Parse a comma-separated list of integers such as ``"4,8,16"``."""
    return [int(part) for part in _split_csv(value)]


# --------------------------------------------------------------------------- #
# Settings
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Settings:
    threads: int
    cheb_degree: int
    max_cheb_degree: int
    max_n: int
    delta: float
    density_tolerance: float
    bits_base: int
    bits_per_n: int
    log_level: str
    api_host: str
    api_port: int
    api_debug: bool

    def default_bits(self, n: int) -> int:
        return self.bits_base + self.bits_per_n * n

    @classmethod
    def from_env(cls) -> "Settings":
        threads = _env_int("HANKEL_FH_THREADS", os.cpu_count() or 1)
        if threads < 1:
            logging.warning("HANKEL_FH_THREADS=%s is not positive; using 1", threads)
            threads = 1

        cheb_degree = _env_int("HANKEL_FH_CHEB_DEGREE", 128)
        max_cheb_degree = _env_int("HANKEL_FH_MAX_CHEB_DEGREE", 4096)
        if cheb_degree > max_cheb_degree:
            logging.warning(
                "HANKEL_FH_CHEB_DEGREE=%s exceeds the maximum %s; clamping",
                cheb_degree,
                max_cheb_degree,
            )
            cheb_degree = max_cheb_degree

        return cls(
            threads=threads,
            cheb_degree=cheb_degree,
            max_cheb_degree=max_cheb_degree,
            max_n=_env_int("HANKEL_FH_MAX_N", 32),
            delta=_env_float("HANKEL_FH_DELTA", 1e-3),
            density_tolerance=_env_float("HANKEL_FH_DENSITY_TOL", 1e-8),
            bits_base=_env_int("HANKEL_FH_BITS_BASE", 256),
            bits_per_n=_env_int("HANKEL_FH_BITS_PER_N", 32),
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
            api_host=os.getenv("HANKEL_FH_API_HOST", "0.0.0.0"),
            api_port=_env_int("HANKEL_FH_API_PORT", 8080),
            api_debug=_env_bool("HANKEL_FH_API_DEBUG", False),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()


def configure_logging(level: Optional[str] = None) -> None:
    log_level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format=LOG_FORMAT,
    )
