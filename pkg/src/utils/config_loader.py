"""
Configuration loader for the box-ball toolkit
Loads guards and diagnostics switches from environment variables with defaults
"""

import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv


@dataclass
class ConfigLoader:
    """Configuration loader with environment variable support"""

    # Logging
    log_level: str = "warning"

    # Oracle guards
    census_max_l: int = 22
    orbit_max_l: int = 14
    pwl_max_rows: int = 18
    period_cap: int = 10 ** 6

    # Diagnostics
    strict_checks: bool = False
    show_progress: bool = False

    def __post_init__(self):
        """Load configuration from environment variables"""

        self.log_level = os.getenv("PBBS_LOG_LEVEL", self.log_level)

        self.census_max_l = int(os.getenv("PBBS_CENSUS_MAX_L", str(self.census_max_l)))
        self.orbit_max_l = int(os.getenv("PBBS_ORBIT_MAX_L", str(self.orbit_max_l)))
        self.pwl_max_rows = int(os.getenv("PBBS_PWL_MAX_ROWS", str(self.pwl_max_rows)))
        self.period_cap = int(os.getenv("PBBS_PERIOD_CAP", str(self.period_cap)))

        self.strict_checks = os.getenv(
            "PBBS_STRICT_CHECKS", str(self.strict_checks)
        ).lower() == "true"
        self.show_progress = os.getenv(
            "PBBS_SHOW_PROGRESS", str(self.show_progress)
        ).lower() == "true"

    def get_guard_config(self) -> dict:
        """Get size guards for the brute-force oracle"""
        return {
            "census_max_l": self.census_max_l,
            "orbit_max_l": self.orbit_max_l,
            "pwl_max_rows": self.pwl_max_rows,
            "period_cap": self.period_cap
        }

    def get_runtime_config(self) -> dict:
        """Get diagnostics configuration"""
        return {
            "log_level": self.log_level,
            "strict_checks": self.strict_checks,
            "show_progress": self.show_progress
        }


@lru_cache(maxsize=1)
def get_config() -> ConfigLoader:
    """Return the process-wide configuration, reading `.env` once."""
    load_dotenv()
    return ConfigLoader()
