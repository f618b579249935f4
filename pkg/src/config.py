"""
Configuration management for SAT Circuit Sampler.

Handles loading environment variables and pipeline settings.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv


# Load environment variables from .env file
load_dotenv()


OUTPUT_PREFERENCES = ("highest_index", "first_seen")
RESTART_POLICIES = ("none", "reinit_on_exhaust")
DTYPES = ("float64", "float32")


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("1", "true", "yes")


@dataclass
class ExtractorConfig:
    """Configuration for CNF-to-circuit extraction."""
    complement_cap: int = 16
    minimize_cap: int = 12
    output_preference: str = "highest_index"
    max_pending_clauses: int = 0

    def validate(self) -> None:
        """Raise ValueError on out-of-range settings."""
        if self.complement_cap < 0 or self.minimize_cap < 0:
            raise ValueError("complement_cap and minimize_cap must be >= 0")
        if self.output_preference not in OUTPUT_PREFERENCES:
            raise ValueError(
                f"output_preference must be one of {OUTPUT_PREFERENCES}, "
                f"got '{self.output_preference}'"
            )
        if self.max_pending_clauses < 0:
            raise ValueError("max_pending_clauses must be >= 0")

    @classmethod
    def from_env(cls) -> "ExtractorConfig":
        """Load extractor configuration from environment variables."""
        config = cls(
            complement_cap=int(os.getenv("SATSAMPLER_COMPLEMENT_CAP", "16")),
            minimize_cap=int(os.getenv("SATSAMPLER_MINIMIZE_CAP", "12")),
            output_preference=os.getenv("SATSAMPLER_OUTPUT_PREFERENCE", "highest_index"),
            max_pending_clauses=int(os.getenv("SATSAMPLER_MAX_PENDING_CLAUSES", "0")),
        )
        config.validate()
        return config


@dataclass
class SamplerConfig:
    """Configuration for gradient-descent sampling."""
    batch_size: int = 1024
    iterations: int = 5
    learning_rate: float = 10.0
    seed: int = 0
    max_solutions: int = 1000
    timeout: float = 60.0
    restart_policy: str = "none"
    max_restarts: int = 64
    init_scale: float = 1.0
    workers: int = 1
    dtype: str = "float64"

    def validate(self) -> None:
        """Raise ValueError on out-of-range settings."""
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")
        if self.max_solutions < 1:
            raise ValueError(f"max_solutions must be >= 1, got {self.max_solutions}")
        if self.timeout <= 0:
            raise ValueError(f"timeout must be > 0, got {self.timeout}")
        if self.restart_policy not in RESTART_POLICIES:
            raise ValueError(
                f"restart_policy must be one of {RESTART_POLICIES}, "
                f"got '{self.restart_policy}'"
            )
        if self.max_restarts < 0:
            raise ValueError("max_restarts must be >= 0")
        if self.init_scale <= 0:
            raise ValueError("init_scale must be > 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.dtype not in DTYPES:
            raise ValueError(f"dtype must be one of {DTYPES}, got '{self.dtype}'")

    @classmethod
    def from_env(cls) -> "SamplerConfig":
        """Load sampler configuration from environment variables."""
        config = cls(
            batch_size=int(os.getenv("SATSAMPLER_BATCH_SIZE", "1024")),
            iterations=int(os.getenv("SATSAMPLER_ITERATIONS", "5")),
            learning_rate=float(os.getenv("SATSAMPLER_LEARNING_RATE", "10.0")),
            seed=int(os.getenv("SATSAMPLER_SEED", "0")),
            max_solutions=int(os.getenv("SATSAMPLER_MAX_SOLUTIONS", "1000")),
            timeout=float(os.getenv("SATSAMPLER_TIMEOUT", "60.0")),
            restart_policy=os.getenv("SATSAMPLER_RESTART_POLICY", "none"),
            max_restarts=int(os.getenv("SATSAMPLER_MAX_RESTARTS", "64")),
            init_scale=float(os.getenv("SATSAMPLER_INIT_SCALE", "1.0")),
            workers=int(os.getenv("SATSAMPLER_WORKERS", "1")),
            dtype=os.getenv("SATSAMPLER_DTYPE", "float64"),
        )
        config.validate()
        return config


@dataclass
class AppConfig:
    """Main application configuration."""
    debug: bool = False
    log_level: str = "INFO"
    cache_transforms: bool = True

    @classmethod
    def from_env(cls) -> "AppConfig":
        """Load application configuration from environment variables."""
        return cls(
            debug=_env_bool("DEBUG", "false"),
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
            cache_transforms=_env_bool("SATSAMPLER_CACHE", "true"),
        )


class Config:
    """
    Central configuration class that aggregates all configuration sections.

    Usage:
        config = Config.load()
        print(config.sampler.batch_size)
        print(config.extractor.complement_cap)
    """

    def __init__(self, extractor: ExtractorConfig, sampler: SamplerConfig, app: AppConfig):
        self.extractor = extractor
        self.sampler = sampler
        self.app = app

    @classmethod
    def load(cls) -> "Config":
        """Load all configuration from environment."""
        return cls(
            extractor=ExtractorConfig.from_env(),
            sampler=SamplerConfig.from_env(),
            app=AppConfig.from_env()
        )
