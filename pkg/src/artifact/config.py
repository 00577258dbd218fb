"""Suite configuration: a TOML file with one table per suite, overridden by
command-line flags.

    seed = 7
    budget = 600

    [counting]
    kmax = 5
    ells = [1, 2, 3]

    [tolerances]
    refined_slack = 0.25

The default path comes from ``ARTIFACT_CONFIG`` when no ``--config`` is
given.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

CONFIG_ENV = "ARTIFACT_CONFIG"

SUITES = ("capelli", "companion", "star", "whittaker", "hecke", "counting", "eisenstein", "exponents")


class ConfigError(ValueError):
    """Malformed configuration; reported as a usage error."""


@dataclass
class SuiteConfig:
    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    tolerances: Dict[str, float] = field(default_factory=dict)
    budget: Optional[float] = None
    strict: bool = False  # soft checks count as hard

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed must be an integer")
        if self.budget is not None and not (isinstance(self.budget, (int, float)) and self.budget > 0):
            raise ConfigError("budget must be a positive number of seconds")

    def get(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def tol(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def as_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "params": dict(sorted(self.params.items())),
                "tolerances": dict(sorted(self.tolerances.items())), "budget": self.budget,
                "strict": self.strict}


def read_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc


def default_path() -> Optional[str]:
    return os.environ.get(CONFIG_ENV) or None


def load_config(suite: str, path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> SuiteConfig:
    """Merge top-level keys, the suite table, then command-line overrides
    (entries whose value is None are ignored)."""
    raw: dict = read_toml(path) if path else {}
    section = raw.get(suite, {})
    if not isinstance(section, dict):
        raise ConfigError(f"[{suite}] must be a table")
    tolerances = dict(raw.get("tolerances", {}))
    tolerances.update(section.get("tolerances", {}))
    params = {k: v for k, v in section.items() if k not in ("tolerances", "seed", "budget", "strict")}
    seed = section.get("seed", raw.get("seed", 0))
    budget = section.get("budget", raw.get("budget"))
    strict = bool(section.get("strict", raw.get("strict", False)))
    for k, v in (overrides or {}).items():
        if v is None:
            continue
        if k == "seed":
            seed = v
        elif k == "budget":
            budget = v
        elif k == "strict":
            strict = strict or bool(v)
        else:
            params[k] = v
    return SuiteConfig(suite, params, seed, tolerances, budget, strict)
