"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple, TypeVar, Union

import logging

import networkx as nx

from .decompositions import (
    CoTree,
    build_cotree,
    modular_decomposition,
    modular_width,
    treewidth_upper_bound,
)
from .diversity import TypePartition, neighbourhood_diversity
from .errors import BudgetExceeded
from .graph import Graph
from .integrity import vertex_integrity
from .limits import Budget
from .modulators import Family, ModulatorReport, find_modulator

__all__ = ["DEFAULT_BUDGETS", "PARAMETER_NAMES", "ParameterReport", "parameter_report"]

_MODULATOR_PARAMETERS = {
    "vertex-cover": Family.VERTEX_COVER,
    "3-path-cover": Family.PATH_COVER_3,
    "4-path-cover": Family.PATH_COVER_4,
    "distance-to-clique": Family.TO_CLIQUE,
    "distance-to-cluster": Family.TO_CLUSTER,
    "distance-to-disjoint-paths": Family.TO_DISJOINT_PATHS,
}

DEFAULT_BUDGETS: Dict[str, int] = {
    "vertex-cover": 8,
    "3-path-cover": 8,
    "4-path-cover": 8,
    "distance-to-clique": 8,
    "distance-to-cluster": 8,
    "distance-to-disjoint-paths": 8,
    "neighbourhood-diversity": 64,
    "vertex-integrity": 8,
    "tree-width": 64,
    "modular-width": 64,
}

PARAMETER_NAMES = (
    "vertex-cover",
    "3-path-cover",
    "4-path-cover",
    "distance-to-clique",
    "distance-to-cluster",
    "distance-to-disjoint-paths",
    "neighbourhood-diversity",
    "vertex-integrity",
    "tree-width",
    "tree-depth-bound",
    "feedback-edge-set",
    "modular-width",
    "cograph",
)

T = TypeVar("T")


@dataclass
class ParameterReport:
    """Structural parameters of one graph.

    values maps a parameter name to its value, None meaning it exceeds
    the budget. The witnesses found on the way are kept for the solvers.
    stopped names the search cap ("nodes" or "time") that cut the scan
    short, if any.
    """

    values: Dict[str, Optional[int]] = field(default_factory=dict)
    modulators: Dict[str, ModulatorReport] = field(default_factory=dict)
    integrity: Optional[Tuple[Tuple[int, ...], int]] = None
    types: Optional[TypePartition] = None
    cotree: Optional[CoTree] = None
    stopped: Optional[str] = None

    @property
    def is_cograph(self) -> bool:
        return self.cotree is not None

    def get(self, name: str) -> Optional[int]:
        return self.values.get(name)

    def as_dict(self) -> Dict[str, Union[int, str, bool]]:
        result: Dict[str, Union[int, str, bool]] = {}
        for name in PARAMETER_NAMES:
            if name == "cograph":
                result[name] = self.is_cograph
            else:
                value = self.values.get(name)
                result[name] = "exceeded" if value is None else value
        return result

    def render(self) -> str:
        lines = []
        for name, value in self.as_dict().items():
            if isinstance(value, bool):
                value = "yes" if value else "no"
            lines.append(f"param {name} {value}")
        return "\n".join(lines) + "\n"


def _within(value: int, budget: Optional[int]) -> Optional[int]:
    if budget is not None and value > budget:
        return None
    return value


def _bounded(report: ParameterReport, compute: Callable[[], Optional[T]]) -> Optional[T]:
    """Runs one branching analyzer; a spent budget leaves it exceeded."""
    if report.stopped is not None:
        return None
    try:
        return compute()
    except BudgetExceeded as e:
        report.stopped = e.kind
        return None


def parameter_report(
    graph: Graph,
    budgets: Optional[Dict[str, int]] = None,
    search: Optional[Budget] = None,
) -> ParameterReport:
    """Computes every parameter the dispatcher looks at.

    Parameters:
        graph: Input graph.
        budgets: Per-parameter caps; missing entries use DEFAULT_BUDGETS.
        search: Optional live budget for the branching analyzers. Once it
            runs out the remaining branching parameters are reported as
            exceeded; a cancellation propagates.

    """
    table = dict(DEFAULT_BUDGETS)
    table.update(budgets or {})
    report = ParameterReport()

    for name, family in _MODULATOR_PARAMETERS.items():
        found = _bounded(report, lambda: find_modulator(graph, family, table[name], search))
        if found is not None:
            report.modulators[name] = found
            report.values[name] = found.size
        else:
            report.values[name] = None

    report.types = neighbourhood_diversity(graph)
    report.values["neighbourhood-diversity"] = _within(
        report.types.diversity, table["neighbourhood-diversity"]
    )

    report.integrity = _bounded(report, lambda: vertex_integrity(graph, table["vertex-integrity"], search))
    report.values["vertex-integrity"] = report.integrity[1] if report.integrity else None

    report.values["tree-width"] = _within(treewidth_upper_bound(graph), table["tree-width"])

    pvc4 = report.values["4-path-cover"]
    report.values["tree-depth-bound"] = None if pvc4 is None else pvc4 + 3

    components = nx.number_connected_components(graph.nx) if graph.vertex_count else 0
    report.values["feedback-edge-set"] = graph.edge_count - graph.vertex_count + components

    report.values["modular-width"] = _within(
        modular_width(modular_decomposition(graph)), table["modular-width"]
    )

    report.cotree = build_cotree(graph)
    report.values["cograph"] = int(report.is_cograph)

    if report.stopped is not None:
        logging.warning(f"Parameter scan stopped by the {report.stopped} cap")
    logging.debug(f"Parameter report for {graph}: {report.as_dict()}")
    return report
