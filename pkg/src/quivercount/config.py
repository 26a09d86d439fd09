"""Job configuration files (JSON or TOML)."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .moduli import CountJob
from .oracle.fields import SUPPORTED_ORDERS
from .oracle.reps import DEFAULT_CAPS, OracleCaps
from .quiver import ConfigError, DimVector, Quiver, Stability, slope
from .series import DEFAULT_TWIST, TwistConvention

COMMANDS = ("rss", "ass", "astable", "kac", "scan", "verify-oracle", "verify-identities")


@dataclass
class OutputConfig:
    json_path: Optional[str] = None
    latex: bool = False


@dataclass
class JobConfig:
    quiver: Quiver
    theta: Stability
    mu: Fraction
    box: DimVector
    targets: list[DimVector]
    commands: list[str]
    oracle_fields: list[int] = field(default_factory=lambda: [2, 3])
    twist_convention: TwistConvention = DEFAULT_TWIST
    output: OutputConfig = field(default_factory=OutputConfig)
    caps: OracleCaps = DEFAULT_CAPS

    def job(self) -> CountJob:
        return CountJob(self.quiver, self.theta, self.mu, self.box)

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "theta": list(self.theta.theta),
            "mu": str(self.mu),
            "box": list(self.box),
            "targets": [list(t) for t in self.targets],
            "commands": list(self.commands),
            "oracle_fields": list(self.oracle_fields),
            "twist_convention": self.twist_convention.value,
            "oracle_caps": _caps_json(self.caps),
        }


def _caps_json(caps: OracleCaps) -> dict:
    return {
        "entries": {str(k): v for k, v in caps.entries.items()},
        "end_dim": {str(k): v for k, v in caps.end_dim.items()},
        "group_size": caps.group_size,
        "subspace_tuples": caps.subspace_tuples,
        "type_u_cells": caps.type_u_cells,
    }


def _parse_caps(raw: Any) -> OracleCaps:
    if raw is None:
        return DEFAULT_CAPS
    if not isinstance(raw, dict):
        raise ConfigError("config.oracle_caps: expected a table/object")
    kwargs: dict = {}
    for key in ("entries", "end_dim"):
        if key in raw:
            table = raw[key]
            if not isinstance(table, dict):
                raise ConfigError(f"config.oracle_caps.{key}: expected a table keyed by field order")
            parsed = dict(getattr(DEFAULT_CAPS, key))
            for k, v in table.items():
                if not isinstance(v, int) or v < 0:
                    raise ConfigError(f"config.oracle_caps.{key}.{k}: expected a non-negative integer")
                parsed[k if k == "default" else int(k)] = v
            kwargs[key] = parsed
    for key in ("group_size", "subspace_tuples", "type_u_cells"):
        if key in raw:
            if not isinstance(raw[key], int) or raw[key] < 0:
                raise ConfigError(f"config.oracle_caps.{key}: expected a non-negative integer")
            kwargs[key] = raw[key]
    unknown = set(raw) - {"entries", "end_dim", "group_size", "subspace_tuples", "type_u_cells"}
    if unknown:
        raise ConfigError(f"config.oracle_caps.{sorted(unknown)[0]}: unknown cap")
    return OracleCaps(**kwargs)


def _int_vector(value: Any, where: str, n: int) -> DimVector:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ConfigError(f"{where}: expected a list of integers")
    if len(value) != n:
        raise ConfigError(f"{where}: expected {n} entries, got {len(value)}")
    return tuple(value)


def parse_config(data: dict) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a table/object at top level")
    if "quiver" not in data:
        raise ConfigError("config.quiver: missing")
    try:
        quiver = Quiver.from_json(data["quiver"])
    except (ValueError, TypeError) as exc:
        where = "config.quiver.arrows" if "arrow" in str(exc) else "config.quiver"
        raise ConfigError(f"{where}: {exc}") from None
    n = quiver.n

    raw_theta = data.get("theta", [0] * n)
    if isinstance(raw_theta, dict):
        raw_theta = raw_theta.get("theta")
    theta = Stability(_int_vector(raw_theta, "config.theta", n))

    if "box" not in data:
        raise ConfigError("config.box: missing")
    box = _int_vector(data["box"], "config.box", n)
    if any(b < 0 for b in box):
        raise ConfigError("config.box: components must be non-negative")

    targets = [_int_vector(t, f"config.targets[{k}]", n) for k, t in enumerate(data.get("targets", []))]
    for k, t in enumerate(targets):
        if not any(t):
            raise ConfigError(f"config.targets[{k}]: zero vector")
        if any(a < 0 or a > b for a, b in zip(t, box)):
            raise ConfigError(f"config.targets[{k}]: {list(t)} lies outside box {list(box)}")

    raw_mu = data.get("mu", "from_alpha")
    if raw_mu == "from_alpha":
        anchor = data.get("mu_alpha")
        if anchor is not None:
            anchor = _int_vector(anchor, "config.mu_alpha", n)
        elif targets:
            anchor = targets[0]
        else:
            raise ConfigError("config.mu: 'from_alpha' needs targets or mu_alpha")
        if not any(anchor):
            raise ConfigError("config.mu_alpha: zero vector has no slope")
        mu = slope(theta, anchor)
    else:
        try:
            mu = Fraction(str(raw_mu))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"config.mu: cannot parse {raw_mu!r} as a rational") from None

    commands = data.get("commands", [])
    if not isinstance(commands, list):
        raise ConfigError("config.commands: expected a list")
    for k, c in enumerate(commands):
        if c not in COMMANDS:
            raise ConfigError(f"config.commands[{k}]: unknown command {c!r}")

    fields_ = data.get("oracle_fields", [2, 3])
    if not isinstance(fields_, list):
        raise ConfigError("config.oracle_fields: expected a list")
    for k, q in enumerate(fields_):
        if q not in SUPPORTED_ORDERS:
            raise ConfigError(f"config.oracle_fields[{k}]: unsupported field order {q}")

    twist_raw = data.get("twist_convention", DEFAULT_TWIST.value)
    try:
        twist = TwistConvention(twist_raw)
    except ValueError:
        raise ConfigError(f"config.twist_convention: unknown convention {twist_raw!r}") from None

    out = data.get("output", {}) or {}
    if not isinstance(out, dict):
        raise ConfigError("config.output: expected a table/object")
    output = OutputConfig(out.get("json_path"), bool(out.get("latex", False)))

    try:
        caps = _parse_caps(data.get("oracle_caps"))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"config.oracle_caps: {exc}") from None
    return JobConfig(quiver, theta, mu, box, targets, list(commands), list(fields_), twist, output, caps)


def load_config(path: str | Path) -> JobConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        if path.suffix.lower() == ".toml":
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"{path}: parse error: {exc}") from None
    return parse_config(data)
