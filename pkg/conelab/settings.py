"""
Run configuration: config/<env>.json with environment variable overrides
"""

import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "config")

DEFAULT_CONFIG: Dict[str, Any] = {
    "environment": "dev",
    "log_level": "INFO",
    "seed": 20100611,
    "report": {
        "ruled_sphere_bound": 5,
        "ruled_unconstrained_bound": 2,
        "rational_blowups": [1, 2, 3],
        "rational_bound": 3,
        "bidisk_samples": 50,
        "noether_k_squares": [6, 8, 9],
    },
    "slice": {
        "default_steps": 7,
    },
}


def load_config(env: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration for the given environment or fall back to defaults.

    Args:
        env: Environment name (dev, prod); defaults to $CONELAB_ENV or "dev"

    Returns:
        Configuration dictionary with overrides from CONELAB_LOG_LEVEL and CONELAB_SEED applied
    """
    env = env or os.environ.get("CONELAB_ENV", "dev")
    config_path = os.path.join(CONFIG_DIR, f"{env}.json")

    try:
        with open(config_path, "r") as f:
            config = json.load(f)
    except FileNotFoundError:
        logger.warning(f"Config file {config_path} not found, using defaults")
        config = json.loads(json.dumps(DEFAULT_CONFIG))

    # Fill sections missing from partial files
    for key, value in DEFAULT_CONFIG.items():
        if isinstance(value, dict):
            config[key] = {**value, **config.get(key, {})}
        else:
            config.setdefault(key, value)

    config["log_level"] = os.environ.get("CONELAB_LOG_LEVEL", config["log_level"])
    config["seed"] = int(os.environ.get("CONELAB_SEED", config["seed"]))

    return config
