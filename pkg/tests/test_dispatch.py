"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from concurrent.futures import ThreadPoolExecutor

import json
import threading
import time

import pytest

from EquiPart import (
    ALGORITHM_TAGS,
    CSV_COLUMNS,
    ERROR,
    NO,
    UNKNOWN,
    YES,
    DispatchConfig,
    Instance,
    PreconditionError,
    SearchLimits,
    SolverManager,
    complete_graph,
    cycle_graph,
    dispatch,
    error_report,
    instance_digest,
    load_config_dict,
    path_graph,
    reports_to_csv,
    reports_to_text,
    solve_exact,
    star_graph,
    verify_partition,
)

from _families import instances


def test_clique_is_picked_first():
    instance = Instance(complete_graph(10), 3)
    report = dispatch(instance)
    assert report.algorithm == "clique"
    assert report.answer == YES
    assert verify_partition(instance, report.partition)
    assert report.exit_code == 0


def test_star_is_refused():
    report = dispatch(Instance(star_graph(3), 2))
    assert report.answer == NO
    assert report.partition is None
    assert report.exit_code == 1
    assert report.parameters["cograph"] is True


def test_forced_solver_checks_its_precondition():
    with pytest.raises(PreconditionError):
        dispatch(Instance(path_graph(4), 2), "cograph")
    with pytest.raises(PreconditionError):
        dispatch(Instance(path_graph(4), 2), "bogus")


def test_exhausted_budget_is_unknown():
    instance = Instance(cycle_graph(12), 4)
    report = dispatch(instance, "oracle", SearchLimits(node_budget=1))
    assert report.answer == UNKNOWN
    assert report.detail.startswith("budget")
    assert report.exit_code == 2


def test_every_tag_is_registered():
    manager = SolverManager.default()
    assert sorted(manager.registered_solvers) == sorted(ALGORITHM_TAGS)
    assert "mw" not in manager.priority
    assert manager.priority[-1] == "oracle"


def test_forced_treewidth_accepts_any_width():
    instance = Instance(complete_graph(7), 3)
    config = DispatchConfig(max_treewidth=2)
    assert dispatch(instance, "treewidth", config=config).answer == YES


@pytest.mark.parametrize("tag", [t for t in ALGORITHM_TAGS if t not in ("clique", "cograph", "mw", "vi")])
def test_forced_solvers_agree_on_a_cycle(tag):
    instance = Instance(cycle_graph(6), 3)
    report = dispatch(instance, tag)
    assert report.algorithm == tag
    assert report.answer == YES
    assert verify_partition(instance, report.partition)


def test_forced_vertex_integrity_delegates_when_parts_outnumber_k():
    # C6 has vertex integrity 2
    instance = Instance(cycle_graph(6), 2)
    report = dispatch(instance, "vi")
    assert report.answer == YES
    assert verify_partition(instance, report.partition)
    report = dispatch(Instance(cycle_graph(6), 3), "vi")
    assert report.answer == UNKNOWN
    assert report.detail.startswith("delegated")


def test_forced_vertex_integrity_respects_the_time_limit():
    started = time.perf_counter()
    report = dispatch(Instance(path_graph(40), 5), "vi", SearchLimits(time_budget=0.2))
    assert time.perf_counter() - started < 5
    assert report.answer == UNKNOWN


def test_time_limit_covers_the_parameter_scan():
    started = time.perf_counter()
    report = dispatch(Instance(path_graph(40), 5), limits=SearchLimits(time_budget=0.2))
    assert time.perf_counter() - started < 5
    assert report.answer == UNKNOWN
    assert report.detail == "budget: parameter scan stopped (time)"
    assert report.parameters["vertex-integrity"] == "exceeded"


def test_interleaved_dispatches_keep_their_own_structures(monkeypatch):
    manager = SolverManager.default()
    solver = manager.get_solver("dclique")
    prepare = solver.prepare
    both_prepared = threading.Barrier(2, timeout=10)

    def prepare_in_step(context, budget):
        structure = prepare(context, budget)
        both_prepared.wait()
        return structure

    monkeypatch.setattr(solver, "prepare", prepare_in_step)
    instances = [Instance(complete_graph(6), 2), Instance(star_graph(3), 2)]
    with ThreadPoolExecutor(max_workers=2) as pool:
        reports = list(pool.map(lambda instance: dispatch(instance, "dclique", manager=manager), instances))
    assert [report.answer for report in reports] == [YES, NO]
    assert verify_partition(instances[0], reports[0].partition)


def test_automatic_strategy_agrees_with_oracle():
    for instance in instances(5):
        report = dispatch(instance)
        assert report.answer == solve_exact(instance).status, (instance, report.algorithm)


def test_portfolio_agrees_with_oracle():
    config = DispatchConfig(portfolio=True)
    for instance in instances(4):
        report = dispatch(instance, config=config)
        assert report.answer == solve_exact(instance).status, instance


def test_report_renders():
    instance = Instance(path_graph(4), 2)
    report = dispatch(instance, "oracle")
    assert report.digest == instance_digest(instance)
    text = report.render(timing=False)
    assert "algorithm oracle\nanswer yes\n" in text
    parts = {line.split(" ", 2)[2] for line in text.splitlines() if line.startswith("part ")}
    assert parts == {"1 2", "3 4"}
    assert "millis" not in text
    data = json.loads(report.to_json(timing=False))
    assert sorted(data["parts"]) == [[0, 1], [2, 3]]
    assert data["millis"] == 0
    row = report.csv_row(timing=False)
    assert row[4:6] == ["oracle", "yes"]
    assert row[-1] == "0"


def test_error_rows():
    report = error_report("broken.ecp", "line 1: bad header")
    assert report.answer == ERROR
    assert report.exit_code == 2
    csv_text = reports_to_csv([report], timing=False)
    assert csv_text.splitlines() == [",".join(CSV_COLUMNS), "broken.ecp,0,0,0,none,error,0,0,0"]


def test_empty_report_tables():
    assert reports_to_csv([]) == ",".join(CSV_COLUMNS) + "\n"
    assert reports_to_text([]).split() == list(CSV_COLUMNS)


def test_config_from_dict():
    config = load_config_dict({"max_treewidth": 3, "budgets": {"vertex-cover": 2}})
    assert config.max_treewidth == 3
    assert config.budgets["vertex-cover"] == 2
    assert config.budgets["tree-width"] == DispatchConfig().budgets["tree-width"]
    assert config.with_overrides(node_limit=5, max_treewidth=None).limits() == SearchLimits(5, None)
    with pytest.raises(ValueError):
        load_config_dict({"max_width": 3})


def test_configured_budgets_reach_the_report():
    config = load_config_dict({"budgets": {"vertex-cover": 1}})
    report = dispatch(Instance(star_graph(4), 2), config=config)
    assert report.parameters["vertex-cover"] == 1
    report = dispatch(Instance(cycle_graph(6), 2), config=config)
    assert report.parameters["vertex-cover"] == "exceeded"
