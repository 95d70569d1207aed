import json
import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

from algorithm.discrete_log import DEFAULT_BRUTE_FORCE_LIMIT
from algorithm.unit_groups import DEFAULT_ENUMERATION_LIMIT, DEFAULT_LOG_TABLE_LIMIT
from core.errors import OutOfRange

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "UNITS_TOOLKIT_CONFIG"

DEFAULT_BENCH_RUNS = 50
DEFAULT_BENCH_SLACK = 2
DEFAULT_BENCH_MAX_N = 10**6
DEFAULT_BENCH_TARGET_ORDER = 1000


@dataclass(frozen=True)
class Settings:
    brute_force_limit: int = DEFAULT_BRUTE_FORCE_LIMIT
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT
    log_table_limit: int = DEFAULT_LOG_TABLE_LIMIT
    bench_runs: int = DEFAULT_BENCH_RUNS
    bench_slack: int = DEFAULT_BENCH_SLACK
    bench_max_n: int = DEFAULT_BENCH_MAX_N
    bench_target_order: int = DEFAULT_BENCH_TARGET_ORDER


def settings_from_dict(config: Dict[str, Any], base: Optional[Settings] = None) -> Settings:
    """
    Overlays a dict of settings onto ``base`` (defaults when None).

    Args:
        config: Mapping of lowercase field names to integer values.
        base: Settings to start from.

    Returns:
        Settings: The merged settings.
    """
    base = base or Settings()
    known = {f.name for f in fields(Settings)}
    updates = {}
    for key, value in config.items():
        if key not in known:
            logger.warning(f"Ignoring unknown setting '{key}'")
            continue
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise OutOfRange(f"setting '{key}' must be a non-negative integer, got {value!r}")
        updates[key] = value
    return replace(base, **updates)


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Loads settings from a JSON file.

    With no path the ``UNITS_TOOLKIT_CONFIG`` environment variable is
    consulted; with neither, the defaults are returned.
    """
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return Settings()
    with open(path, "r", encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except UnicodeDecodeError as e:
            raise OutOfRange(f"settings file {path} is not UTF-8 text: {e}") from e
        except json.JSONDecodeError as e:
            raise OutOfRange(f"settings file {path} is not valid JSON: {e}") from e
    if not isinstance(config, dict):
        raise OutOfRange(f"settings file {path} must hold a JSON object")
    logger.info(f"Loaded settings from {path}")
    return settings_from_dict(config)
