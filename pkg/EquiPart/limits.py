"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Optional

import threading

from .clock import Clock
from .errors import BudgetExceeded, Cancelled

if TYPE_CHECKING:
    from .graph import Partition

__all__ = ["SearchLimits", "Budget", "Outcome"]

# time is sampled every few ticks; perf_counter is not free
_TIME_CHECK_EVERY = 64


@dataclass(frozen=True)
class SearchLimits:
    """Caps for one solve. None means unlimited.

    Parameters:
        node_budget: Maximum number of search-tree nodes.
        time_budget: Maximum wall-clock seconds.

    """

    node_budget: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self) -> None:
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")

    def start(self, cancel: Optional[threading.Event] = None, clock: Optional[Clock] = None) -> Budget:
        return Budget(self, cancel=cancel, clock=clock)


class Budget:
    def __init__(
        self,
        limits: Optional[SearchLimits] = None,
        cancel: Optional[threading.Event] = None,
        clock: Optional[Clock] = None,
    ) -> None:
        """A live budget: one per solve, never shared between threads.

        Parameters:
            limits: Node and time caps.
            cancel: Event set by another thread to stop this search.
            clock: Clock the time cap is measured on; budgets of one
                dispatch share it so the cap covers the whole solve.

        """
        self.limits = limits if limits is not None else SearchLimits()
        self.cancel = cancel
        self.clock = clock if clock is not None else Clock()
        self.nodes = 0
        self.states = 0
        self.variables = 0
        self.guesses = 0

    @classmethod
    def unlimited(cls) -> Budget:
        return cls(SearchLimits())

    def tick(self, amount: int = 1) -> None:
        """Counts search nodes and raises once a cap is hit."""
        self.nodes += amount
        node_budget = self.limits.node_budget
        if node_budget is not None and self.nodes > node_budget:
            raise BudgetExceeded("nodes")
        if self.nodes % _TIME_CHECK_EVERY < amount:
            self.check()

    def check(self) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise Cancelled
        time_budget = self.limits.time_budget
        if time_budget is not None and self.clock.expired(time_budget * 1000):
            raise BudgetExceeded("time")

    def count_states(self, amount: int = 1) -> None:
        self.states += amount

    def count_variables(self, amount: int) -> None:
        self.variables += amount

    def count_guess(self) -> None:
        self.guesses += 1
        self.check()

    def counters(self) -> Dict[str, int]:
        return {
            "nodes": self.nodes,
            "states": self.states,
            "variables": self.variables,
            "guesses": self.guesses,
        }


@dataclass
class Outcome:
    """Result of an exact search: status plus an optional certificate."""

    status: str
    partition: Optional[Partition] = None
    detail: str = ""
    counters: Dict[str, int] = field(default_factory=dict)
