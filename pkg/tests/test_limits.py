"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import threading

import pytest

from EquiPart import Budget, BudgetExceeded, Cancelled, Clock, SearchLimits, set_partitions


def test_node_cap():
    budget = SearchLimits(node_budget=3).start()
    for _ in range(3):
        budget.tick()
    with pytest.raises(BudgetExceeded) as info:
        budget.tick()
    assert info.value.kind == "nodes"
    assert budget.counters()["nodes"] == 4


def test_time_cap(monkeypatch):
    budget = SearchLimits(time_budget=0.5).start()
    budget.check()
    monkeypatch.setattr(budget.clock, "get_time", lambda: 501.0)
    with pytest.raises(BudgetExceeded) as info:
        budget.check()
    assert info.value.kind == "time"


def test_cancellation_is_seen_on_guesses():
    cancel = threading.Event()
    budget = Budget(cancel=cancel)
    budget.count_guess()
    cancel.set()
    with pytest.raises(Cancelled):
        budget.count_guess()
    assert budget.guesses == 2


def test_counters():
    budget = Budget.unlimited()
    budget.count_states(5)
    budget.count_variables(7)
    budget.tick(2)
    assert budget.counters() == {"nodes": 2, "states": 5, "variables": 7, "guesses": 0}


@pytest.mark.parametrize("limits", [{"node_budget": 0}, {"time_budget": -1.0}])
def test_limits_must_be_positive(limits):
    with pytest.raises(ValueError):
        SearchLimits(**limits)


def test_clock_counts_milliseconds():
    clock = Clock()
    assert not clock.expired(60_000)
    assert clock.get_time() >= 0


@pytest.mark.parametrize("size, max_blocks, count", [(0, 1, 1), (3, 3, 5), (4, 4, 15), (4, 2, 8), (4, 1, 1)])
def test_set_partitions(size, max_blocks, count):
    partitions = list(set_partitions(range(size), max_blocks))
    assert len(partitions) == count
    assert len({tuple(p) for p in partitions}) == count
    for blocks in partitions:
        assert sorted(v for block in blocks for v in block) == list(range(size))
        assert [block[0] for block in blocks] == sorted(block[0] for block in blocks)
