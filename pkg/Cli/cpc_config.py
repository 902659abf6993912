"""
Runtime configuration for the cpc command line.

Values come from the environment (a .env file in the working directory is
loaded first). Explicit command-line flags override them.
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_from_env(variable: str, default: int) -> int:
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.strip())
    except ValueError:
        raise ValueError(f"{variable} must be an integer, got '{raw}'")


@dataclass
class CpcConfig:
    """
    Sampling and logging defaults.

    Attributes:
        seed (int): Seed for every sampler (CPC_SEED)
        samples (int): Sample points per check (CPC_SAMPLES)
        workers (int): Worker threads for sample fan-out (CPC_WORKERS)
        log_level (str): Logging level name (CPC_LOG_LEVEL)
    """
    seed: int = 42
    samples: int = 100
    workers: int = 1
    log_level: str = "INFO"

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> 'CpcConfig':
        """
        Create the configuration from environment variables.

        Args:
            dotenv_path (Optional[str]): Explicit .env file; the default search applies when None

        Returns:
            CpcConfig: Configuration with environment overrides applied

        Raises:
            ValueError: If a variable is set to an invalid value
        """
        load_dotenv(dotenv_path)
        log_level = os.getenv('CPC_LOG_LEVEL', cls.log_level).strip().upper() or cls.log_level
        config = cls(
            seed=_int_from_env('CPC_SEED', cls.seed),
            samples=_int_from_env('CPC_SAMPLES', cls.samples),
            workers=_int_from_env('CPC_WORKERS', cls.workers),
            log_level=log_level,
        )
        config.validate()
        logger.debug(f"Configuration: {config}")
        return config

    def validate(self) -> bool:
        """
        Validate the configuration.

        Raises:
            ValueError: Naming the offending variable
        """
        if self.seed < 0:
            raise ValueError(f"CPC_SEED must be non-negative, got {self.seed}")
        if self.samples < 1:
            raise ValueError(f"CPC_SAMPLES must be at least 1, got {self.samples}")
        if self.workers < 1:
            raise ValueError(f"CPC_WORKERS must be at least 1, got {self.workers}")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"CPC_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got '{self.log_level}'")
        return True
