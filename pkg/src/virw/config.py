"""Run configuration: YAML (or JSON) files validated into plain objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import yaml

from .catalog import AlgebraSpec, SpecError, make_algebra, spec_from_config
from .rings import RingError
from .scalars import format_scalar

SUITES = ("axioms", "binomial-brackets", "filtration", "t-subalgebra", "iota", "omega-collapse",
          "annihilators", "jet-modules", "beta1-exceptional", "cover", "map-evaluation",
          "worked-examples")

_TOP_KEYS = {"algebra", "modules", "suites", "seed", "window", "samples", "orders", "degree_bound"}


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"config error at {path}: {message}")
        self.path = path


@dataclass
class RunConfig:
    algebra: Optional[AlgebraSpec] = None
    modules: List[Dict[str, Any]] = field(default_factory=list)
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    seed: int = 0
    window: int = 4
    samples: int = 10
    orders: List[int] = field(default_factory=lambda: [1, 2, 3])
    degree_bound: int = 8

    def echo(self) -> Dict[str, Any]:
        """Normalized, deterministic view of the configuration."""
        return {
            "algebra": self.algebra.describe() if self.algebra is not None else None,
            "modules": [_normalize(m) for m in self.modules],
            "suites": list(self.suites),
            "seed": self.seed,
            "window": self.window,
            "samples": self.samples,
            "orders": list(self.orders),
            "degree_bound": self.degree_bound,
        }


def _normalize(obj):
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    try:
        return format_scalar(obj)
    except Exception:
        return str(obj)


def _int(raw, key: str, lo: int = 0) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ConfigError(key, f"expected an integer, got {raw!r}")
    if raw < lo:
        raise ConfigError(key, f"must be >= {lo}")
    return raw


def config_from_mapping(raw: Any) -> RunConfig:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "expected a mapping")
    unknown = sorted(set(raw) - _TOP_KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    cfg = RunConfig()
    if raw.get("algebra") is not None:
        block = raw["algebra"]
        if not isinstance(block, dict):
            raise ConfigError("algebra", "expected a mapping")
        try:
            cfg.algebra = spec_from_config(block)
            make_algebra(cfg.algebra)
        except KeyError as e:
            raise ConfigError(f"algebra.{e.args[0]}", "missing key") from None
        except (SpecError, RingError, TypeError, ValueError) as e:
            raise ConfigError("algebra", str(e)) from None
    mods = raw.get("modules", [])
    if not isinstance(mods, list):
        raise ConfigError("modules", "expected a list")
    for n, m in enumerate(mods):
        if not isinstance(m, dict) or "variant" not in m:
            raise ConfigError(f"modules[{n}]", "expected a mapping with a 'variant' key")
    cfg.modules = mods
    if "suites" in raw:
        suites = raw["suites"]
        if suites == "all":
            suites = list(SUITES)
        if not isinstance(suites, list):
            raise ConfigError("suites", "expected a list of suite names or 'all'")
        for n, s in enumerate(suites):
            if s not in SUITES:
                raise ConfigError(f"suites[{n}]", f"unknown suite {s!r}")
        cfg.suites = list(suites)
    if "seed" in raw:
        cfg.seed = _int(raw["seed"], "seed")
    if "window" in raw:
        cfg.window = _int(raw["window"], "window", 1)
    if "samples" in raw:
        cfg.samples = _int(raw["samples"], "samples", 1)
    if "degree_bound" in raw:
        cfg.degree_bound = _int(raw["degree_bound"], "degree_bound", 1)
    if "orders" in raw:
        if not isinstance(raw["orders"], list):
            raise ConfigError("orders", "expected a list")
        cfg.orders = [_int(v, f"orders[{n}]", 0) for n, v in enumerate(raw["orders"])]
    return cfg


def load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError("<file>", str(e)) from None
    except yaml.YAMLError as e:
        raise ConfigError("<file>", f"not valid YAML/JSON: {e}") from None
    return config_from_mapping(raw)
