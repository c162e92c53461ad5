"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

ENV_CONFIG = "APPELLKIT_CONFIG"


@dataclass
class RunConfig:
    """Knobs for the verification suites and CLI commands.

    ``max_degree`` bounds the symbolic degree used by the identity suites
    (hard limit 24); quadrature sizes follow the defaults that make every
    integral in the suites exact to well below the float tolerance.
    """

    max_degree: int = 12
    tolerance: float = 1e-10
    hermite_nodes: int = 80
    plane_radial: int = 64
    plane_angular: int = 128
    legendre_nodes: int = 64
    seed: int = 0
    fmt: str = "json"
    inject_gamma_fault: float | None = None

    def __post_init__(self):
        if not 1 <= self.max_degree <= 24:
            raise ValueError("max_degree must lie in 1..24")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        for name in ("hermite_nodes", "plane_radial", "plane_angular", "legendre_nodes"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be at least 2")
        if self.fmt not in ("json", "csv", "md"):
            raise ValueError("format must be json, csv or md")

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        with open(path, encoding="utf-8") as handle:
            return cls.from_mapping(json.load(handle))

    @classmethod
    def load(cls, explicit_path: str | None = None) -> "RunConfig":
        """Resolve the config file from the flag, then the environment."""
        path = explicit_path or os.environ.get(ENV_CONFIG)
        if path:
            return cls.from_file(path)
        return cls()

    def to_dict(self) -> dict:
        return asdict(self)
