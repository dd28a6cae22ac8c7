"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

"""
KiteCC Configuration

Loads config.json (tolerances, solver resolution, analysis sampling, output
format) over the built-in defaults, and reads the environment overrides.
"""

import copy
import json
import logging
import os
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

logger = logging.getLogger(__name__)

CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")

DEFAULT_CONFIG = {
    "tolerances": {
        "line_rad": 1e-9,
        "singular_relative": 1e-12,
        "degenerate_tan": 1e-12,
        "mass": 1e-9,
        "root_xtol_rad": 1e-12,
        "root_maxiter": 200,
        "curve_residual": 1e-10,
        "zero_mass": 1e-13,
        "oracle_residual": 1e-9,
        "derivative_zero": 1e-12,
    },
    "solver": {
        "alpha_scan_resolution_deg": 0.1,
        "default_step_deg": 0.05,
        "max_failure_fraction": 0.01,
        "limit_offset_deg": 0.01,
    },
    "analysis": {
        "finite_difference_step_rad": 1e-4,
        "sign_samples": 10000,
        "m_domain_deg": [30.0, 33.093],
    },
    "output": {
        "degree_decimals": 6,
    },
    "logging": {
        "level": "INFO",
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from disk, falling back to the defaults

    Args:
        path: Explicit config file; KITECC_CONFIG or the repository
            config.json otherwise

    Returns:
        Complete configuration dictionary
    """
    path = path or os.environ.get("KITECC_CONFIG") or CONFIG_FILE
    try:
        with open(path, "r") as f:
            return _deep_merge(DEFAULT_CONFIG, json.load(f))
    except FileNotFoundError:
        logger.warning(f"Config file {path} not found, using default settings")
    except json.JSONDecodeError as e:
        logger.warning(f"Config file {path} is not valid JSON ({e}), using default settings")
    return copy.deepcopy(DEFAULT_CONFIG)


def thread_count() -> int:
    """Worker cap for batch verification from KITECC_THREADS (default 1)"""
    raw = os.environ.get("KITECC_THREADS")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring invalid KITECC_THREADS={raw!r}")
        return 1
    return max(value, 1)


CONFIG = load_config()


@contextmanager
def tolerance_overrides(tolerances: Optional[Dict[str, float]] = None) -> Iterator[Dict[str, Any]]:
    """
    Apply tolerance overrides to the shared CONFIG for the duration of a run

    None values are skipped; the previous tolerances are restored on exit.
    """
    overrides = {k: v for k, v in (tolerances or {}).items() if v is not None}
    saved = copy.deepcopy(CONFIG["tolerances"])
    CONFIG["tolerances"].update(overrides)
    if overrides:
        logger.debug(f"Tolerance overrides for this run: {overrides}")
    try:
        yield CONFIG
    finally:
        CONFIG["tolerances"].clear()
        CONFIG["tolerances"].update(saved)
