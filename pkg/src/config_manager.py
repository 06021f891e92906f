"""
Configuration management for orbitforge
"""

import json
import logging
import os
from pathlib import Path
from typing import Dict, Any, Optional

from constants import (
    CONFIG_DIR,
    DEFAULT_ORBIT_LIMIT,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PRIME,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    LIMIT_ENV_VAR,
    REPORTS_DIR,
)

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Raised for unusable configuration values"""


class ConfigManager:
    """
    Manages orbitforge configuration.
    Defaults < config file < environment; CLI flags are applied by the caller.
    """

    DEFAULT_CONFIG = {
        "orbit": {
            "limit": DEFAULT_ORBIT_LIMIT,
            "default_prime": DEFAULT_PRIME,
            "seed": DEFAULT_SEED,
            "samples": DEFAULT_SAMPLES
        },
        "output": {
            "format": DEFAULT_OUTPUT_FORMAT,
            "labels": False
        },
        "logging": {
            "level": "WARNING"
        },
        "paths": {
            "config_dir": CONFIG_DIR,
            "reports_dir": REPORTS_DIR
        }
    }

    # Integer settings and their smallest allowed value
    INTEGER_MINIMUMS = {
        "orbit.limit": 1,
        "orbit.default_prime": 2,
        "orbit.seed": 0,
        "orbit.samples": 0,
    }

    def __init__(self, config_path: Optional[str] = None, environ: Optional[Dict[str, str]] = None):
        """Initialize configuration manager"""
        if config_path:
            self.config_path = Path(config_path)
        else:
            self.config_path = self._find_config_file()

        self.environ = os.environ if environ is None else environ
        self.config = self.load()
        self._apply_environment()
        for key_path in self.INTEGER_MINIMUMS:
            self._check_value(key_path, self.get(key_path))

    def _find_config_file(self) -> Path:
        """Find configuration file in standard locations"""
        # Check in order:
        # 1. .orbitforge/config.json in current directory
        # 2. config.json in project root
        # 3. ~/.orbitforge/config.json (user home)
        candidates = [
            Path.cwd() / CONFIG_DIR / "config.json",
            Path.cwd() / "config.json",
            Path.home() / CONFIG_DIR / "config.json"
        ]

        for path in candidates:
            if path.exists():
                return path

        return Path.cwd() / CONFIG_DIR / "config.json"

    def load(self) -> Dict[str, Any]:
        """Load configuration from file or use defaults"""
        if not self.config_path.exists():
            return self._merge_configs(self.DEFAULT_CONFIG, {})

        try:
            with open(self.config_path, 'r') as f:
                user_config = json.load(f)

            # User config overrides defaults
            return self._merge_configs(self.DEFAULT_CONFIG, user_config)

        except json.JSONDecodeError:
            logger.warning("Invalid config file %s, using defaults", self.config_path)
            return self._merge_configs(self.DEFAULT_CONFIG, {})

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Recursively merge user config with defaults"""
        result = {}
        for key, value in default.items():
            result[key] = self._merge_configs(value, {}) if isinstance(value, dict) else value

        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value

        return result

    def _apply_environment(self):
        """Apply environment overrides (ORBITFORGE_LIMIT)"""
        raw = self.environ.get(LIMIT_ENV_VAR)
        if raw is None or raw == "":
            return
        try:
            limit = int(raw)
        except ValueError:
            raise ConfigError(f"{LIMIT_ENV_VAR} must be an integer, got {raw!r}")
        if limit < 1:
            raise ConfigError(f"{LIMIT_ENV_VAR} must be positive, got {limit}")
        self.config["orbit"]["limit"] = limit

    def _check_value(self, key_path: str, value: Any):
        """Reject non-integer or out-of-range values for the integer settings"""
        minimum = self.INTEGER_MINIMUMS.get(key_path)
        if minimum is None:
            return
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key_path} must be an integer, got {value!r} ({self.config_path})")
        if value < minimum:
            raise ConfigError(f"{key_path} must be at least {minimum}, got {value} ({self.config_path})")

    def save(self):
        """Save current configuration to file"""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, 'w') as f:
            json.dump(self.config, f, indent=2)

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation
        Example: config.get('orbit.limit')
        """
        keys = key_path.split('.')
        value = self.config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def set(self, key_path: str, value: Any):
        """
        Set configuration value using dot notation (in memory only; call save() to persist)
        Example: config.set('orbit.samples', 100)
        """
        self._check_value(key_path, value)
        keys = key_path.split('.')
        config = self.config

        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            config = config[key]

        config[keys[-1]] = value

    def get_path(self, path_key: str) -> Path:
        """Get a configured path as a Path object"""
        path_value = self.get(f'paths.{path_key}')
        if path_value:
            return Path(path_value)
        raise ValueError(f"Path not configured: {path_key}")
