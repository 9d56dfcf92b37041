"""
Configuration management for the Cremona smoothing verifier
Handles suite defaults, logging settings and environment overrides
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .models import OutputFormat

ENV_PREFIX = "CREMONA_CY_"


class SuiteConfig(BaseModel):
    """Validated parameters of one verification run"""
    model_config = ConfigDict(extra="forbid")

    m_max: int = Field(50, ge=1)
    alpha_cap: int = Field(12, ge=0)
    n_set: List[int] = Field(default_factory=lambda: [2, 3, 4, 5])
    emit_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    workers: int = Field(1, ge=1)
    random_samples: int = Field(10000, ge=1)
    seed: int = 0
    inject_fault: bool = False

    @field_validator('n_set')
    @classmethod
    def _check_n_set(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("n_set must not be empty")
        bad = [n for n in value if n < 1]
        if bad:
            raise ValueError(f"every n must be >= 1, got {bad}")
        return sorted(set(value))

    def summary(self) -> Dict[str, Any]:
        """JSON-ready view, without the fault hook"""
        return self.model_dump(mode="json", exclude={"inject_fault"})


@dataclass
class SuiteDefaults:
    """Defaults for the verification suite"""
    m_max: int = 50
    alpha_cap: int = 12
    n_set: List[int] = field(default_factory=lambda: [2, 3, 4, 5])
    format: str = "json"
    workers: int = 1
    random_samples: int = 10000
    seed: int = 0


@dataclass
class LoggingConfig:
    """Logging configuration"""
    level: str = "INFO"
    format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    def apply(self, level: Optional[str] = None):
        logging.basicConfig(
            level=getattr(logging, (level or self.level).upper(), logging.INFO),
            format=self.format,
        )


def _parse_n_set(text: str) -> List[int]:
    return [int(part) for part in text.split(',') if part.strip()]


class ConfigManager:
    """Manages suite defaults and logging settings"""

    def __init__(self, config_dir: Optional[str] = None):
        load_dotenv()
        if config_dir is None:
            config_dir = os.getenv(
                f"{ENV_PREFIX}CONFIG_DIR",
                os.path.join(os.path.expanduser("~"), ".cremona-cy"),
            )

        self.config_dir = Path(config_dir)
        self.config_file = self.config_dir / "config.json"

        # Initialize with default values
        self.suite = SuiteDefaults()
        self.logging = LoggingConfig()

        self._load_config()

    def _load_config(self):
        """Load configuration from file"""
        if self.config_file.exists():
            try:
                with open(self.config_file, 'r') as f:
                    config_data = json.load(f)

                if 'suite' in config_data:
                    self.suite = SuiteDefaults(**config_data['suite'])
                if 'logging' in config_data:
                    self.logging = LoggingConfig(**config_data['logging'])

            except (OSError, ValueError, TypeError) as e:
                logging.getLogger(__name__).warning(f"Failed to load config: {e}")

        # Environment variables take precedence
        self._load_from_env()

    def _load_from_env(self):
        """Load configuration from environment variables"""
        int_fields = {
            'M_MAX': 'm_max',
            'ALPHA_CAP': 'alpha_cap',
            'WORKERS': 'workers',
            'RANDOM_SAMPLES': 'random_samples',
            'SEED': 'seed',
        }
        for suffix, name in int_fields.items():
            value = os.getenv(f"{ENV_PREFIX}{suffix}")
            if value:
                try:
                    setattr(self.suite, name, int(value))
                except ValueError:
                    raise ValueError(f"{ENV_PREFIX}{suffix} must be an integer, got {value!r}") from None

        n_set = os.getenv(f"{ENV_PREFIX}N_SET")
        if n_set:
            try:
                self.suite.n_set = _parse_n_set(n_set)
            except ValueError:
                raise ValueError(f"{ENV_PREFIX}N_SET must be a comma list, got {n_set!r}") from None

        fmt = os.getenv(f"{ENV_PREFIX}FORMAT")
        if fmt:
            self.suite.format = fmt.lower()

        level = os.getenv(f"{ENV_PREFIX}LOG_LEVEL")
        if level:
            self.logging.level = level.upper()

    def save_config(self):
        """Save configuration to file"""
        self.config_dir.mkdir(parents=True, exist_ok=True)
        config_data = {
            'suite': asdict(self.suite),
            'logging': asdict(self.logging),
        }
        with open(self.config_file, 'w') as f:
            json.dump(config_data, f, indent=2)

    def suite_config(self, **overrides: Any) -> SuiteConfig:
        """Merge file/env defaults with explicit overrides; None means unset"""
        data = asdict(self.suite)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return SuiteConfig(**data)

    def as_dict(self) -> Dict[str, Any]:
        return {
            'config_file': str(self.config_file),
            'suite': asdict(self.suite),
            'logging': asdict(self.logging),
        }

    def create_env_template(self, file_path: str = ".env.example"):
        """Create an environment variables template file"""
        template = f"""# Cremona smoothing verifier - Environment Variables
# Copy this file to .env to override the suite defaults

{ENV_PREFIX}M_MAX={self.suite.m_max}
{ENV_PREFIX}ALPHA_CAP={self.suite.alpha_cap}
{ENV_PREFIX}N_SET={','.join(str(n) for n in self.suite.n_set)}
{ENV_PREFIX}FORMAT={self.suite.format}
{ENV_PREFIX}WORKERS={self.suite.workers}
{ENV_PREFIX}RANDOM_SAMPLES={self.suite.random_samples}
{ENV_PREFIX}SEED={self.suite.seed}
{ENV_PREFIX}LOG_LEVEL={self.logging.level}
"""
        with open(file_path, 'w') as f:
            f.write(template)
        return file_path


# Global configuration instance, created on first use
_config: Optional[ConfigManager] = None


def get_config() -> ConfigManager:
    """Get the global configuration instance"""
    global _config
    if _config is None:
        _config = ConfigManager()
    return _config


def reset_config():
    """Forget the global instance (useful for testing)"""
    global _config
    _config = None
