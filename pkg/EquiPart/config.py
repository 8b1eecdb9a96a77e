"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import json
import logging

from .limits import SearchLimits
from .parameters import DEFAULT_BUDGETS

__all__ = ["DispatchConfig", "load_config_dict", "load_config"]


@dataclass(frozen=True)
class DispatchConfig:
    """Thresholds of the automatic solver choice.

    Parameters:
        max_diversity: Largest neighbourhood diversity sent to the type program.
        max_modulator: Largest distance-to-clique / cluster modulator.
        max_three_pvc: Largest 3-path vertex cover.
        max_integrity: Largest vertex integrity.
        max_treewidth: Largest tree-width sent to the decomposition DP.
        max_oracle_n: Largest vertex count left to the exhaustive search.
        budgets: Analyzer budgets per parameter name.
        node_limit: Default search-node cap per solve.
        time_limit: Default wall-clock cap per solve, in seconds.
        portfolio: Race the oracle against the automatic pick.

    """

    max_diversity: int = 12
    max_modulator: int = 6
    max_three_pvc: int = 6
    max_integrity: int = 6
    max_treewidth: int = 4
    max_oracle_n: int = 18
    budgets: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    portfolio: bool = False

    def limits(self) -> SearchLimits:
        return SearchLimits(self.node_limit, self.time_limit)

    def with_overrides(self, **overrides) -> DispatchConfig:
        """Copy with every non-None override applied."""
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})


def load_config_dict(data: dict) -> DispatchConfig:
    data = dict(data)
    if "budgets" in data.keys():
        budgets = dict(DEFAULT_BUDGETS)
        budgets.update({name: int(value) for name, value in data["budgets"].items()})
        data["budgets"] = budgets

    unknown = set(data) - set(DispatchConfig.__dataclass_fields__)
    if unknown:
        raise ValueError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    return DispatchConfig(**data)


def load_config(path: str) -> DispatchConfig:
    logging.info(f"Loading dispatch configuration from {path}")
    with open(path, "r") as f:
        return load_config_dict(json.load(f))
