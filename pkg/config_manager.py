import os
import json
import logging
import tempfile
import shutil

from tangent.errors import ConfigError
from tangent.hypercube import MAX_DIM

CONFIG_FILE = "tangent.json"

DEFAULT_CONFIG = {
    "ring": "rational",
    "float_epsilon": 1e-12,
    "float_tolerance": 1e-9,
    "max_dim": MAX_DIM,
    "seed": 0,
    "verify_cases": 100,
    "verify_max_n": 4,
    "workers": 1,
    "log_level": "WARNING",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _non_negative_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value >= 0


def _positive_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


# Per-key validators; a value that fails is replaced by its default.
VALIDATORS = {
    "ring": lambda v: v in ("rational", "float"),
    "float_epsilon": _non_negative_number,
    "float_tolerance": _non_negative_number,
    "max_dim": lambda v: _positive_int(v) and v <= MAX_DIM,
    "seed": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "verify_cases": _positive_int,
    "verify_max_n": lambda v: _positive_int(v) and v <= MAX_DIM,
    "workers": _positive_int,
    "log_level": lambda v: isinstance(v, str) and v.upper() in LOG_LEVELS,
}


class ConfigManager:
    """Loads the JSON configuration, applies environment overrides and saves atomically.

    Precedence, highest first: explicit overrides (command-line flags),
    environment variables TANGENT_RING / TANGENT_SEED, the config file, defaults.
    """

    def __init__(self, file_path: str | None = None, environ=None):
        environ = os.environ if environ is None else environ
        self.file_path = file_path or environ.get("TANGENT_CONFIG") or CONFIG_FILE
        self.logger = logging.getLogger(__name__)
        self.config = dict(DEFAULT_CONFIG)
        self.load_config()
        self.apply_environment(environ)

    def load_config(self):
        """Load the config file; a missing or unreadable file leaves the defaults in place."""
        try:
            with open(self.file_path, 'r') as f:
                data = json.load(f)
        except FileNotFoundError:
            self.logger.info(f"Config file not found at {self.file_path}. Using defaults.")
            return
        except (IOError, json.JSONDecodeError) as e:
            self.logger.error(f"Error loading config from {self.file_path}: {e}. Using defaults.")
            return
        if not isinstance(data, dict):
            self.logger.error(f"Config file {self.file_path} does not hold a JSON object. Using defaults.")
            return
        for key, value in data.items():
            if key not in DEFAULT_CONFIG:
                self.logger.warning(f"Ignoring unknown config key '{key}'")
                continue
            self.config[key] = value
        self.validate()
        self.logger.info(f"Loaded config from {self.file_path}")

    def validate(self):
        for key, check in VALIDATORS.items():
            if not check(self.config.get(key)):
                self.logger.warning(
                    f"Invalid value {self.config.get(key)!r} for '{key}', falling back to {DEFAULT_CONFIG[key]!r}"
                )
                self.config[key] = DEFAULT_CONFIG[key]
        self.config["log_level"] = self.config["log_level"].upper()

    def apply_environment(self, environ):
        ring = environ.get("TANGENT_RING")
        if ring:
            self.set("ring", ring)
        seed = environ.get("TANGENT_SEED")
        if seed:
            try:
                self.set("seed", int(seed))
            except ValueError:
                raise ConfigError(f"TANGENT_SEED must be an integer, got '{seed}'") from None

    def set(self, key: str, value):
        """Explicit override; unlike file values an invalid one is an error, not a fallback."""
        if key not in DEFAULT_CONFIG:
            raise ConfigError(f"unknown config key '{key}'")
        if not VALIDATORS[key](value):
            raise ConfigError(f"invalid value {value!r} for '{key}'")
        self.config[key] = value.upper() if key == "log_level" else value

    def override(self, **values):
        """Apply the command-line flags that were actually given (None means not given)."""
        for key, value in values.items():
            if value is not None:
                self.set(key, value)

    def get(self, key: str):
        return self.config[key]

    def __getitem__(self, key: str):
        return self.config[key]

    def save_config(self):
        """Atomically save the current configuration to the JSON file."""
        temp_dir = os.path.dirname(os.path.abspath(self.file_path))
        temp_path = None
        try:
            with tempfile.NamedTemporaryFile('w', dir=temp_dir, delete=False, suffix=".tmp") as temp_f:
                json.dump(self.config, temp_f, indent=4)
                temp_path = temp_f.name
            shutil.move(temp_path, self.file_path)
            self.logger.debug(f"Saved config atomically to {self.file_path}")
        except OSError as e:
            self.logger.error(f"Failed to save config to {self.file_path}: {e}")
            if temp_path and os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError as remove_err:
                    self.logger.error(f"Failed to remove temporary config file {temp_path}: {remove_err}")
            raise ConfigError(f"could not save config to {self.file_path}: {e}") from e
