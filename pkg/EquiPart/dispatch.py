"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from typing import Any, Dict, List, Optional, Tuple, Type

import logging
import threading

from .clique import is_clique, solve_clique
from .clique_modulator import solve_clique_modulator
from .clock import Clock
from .cluster import solve_cluster_modulator
from .cograph import solve_cograph
from .config import DispatchConfig
from .configurations import solve_vertex_integrity
from .decompositions import build_cotree, compute_nice_tree_decomposition
from .diversity import neighbourhood_diversity
from .errors import BudgetExceeded, Cancelled, PreconditionError
from .graph import Instance, Partition, instance_digest, verify_partition
from .integrity import vertex_integrity
from .limits import Budget, Outcome, SearchLimits
from .locals import BUDGET, DELEGATED, INCONCLUSIVE, NO, UNKNOWN, YES
from .modular import solve_modular_width
from .modulators import Family, find_modulator
from .neighbourhood import solve_neighbourhood_diversity
from .oracle import solve_exact
from .parameters import ParameterReport, parameter_report
from .report import SolveReport
from .three_pvc import solve_three_pvc
from .treewidth import solve_treewidth

__all__ = ["SolveContext", "Solver", "SolverManager", "AUTO", "dispatch"]

AUTO = "auto"


class SolveContext:
    def __init__(
        self,
        instance: Instance,
        config: DispatchConfig,
        limits: SearchLimits,
        cancel: Optional[threading.Event] = None,
        forced: bool = False,
        clock: Optional[Clock] = None,
    ) -> None:
        """Everything a solver may look at while deciding and solving.

        One context per dispatch call; solvers keep no state of their own.
        The parameter report is computed on first use only, under the
        time cap and cancel event of the solve.
        """
        self.instance = instance
        self.forced = forced
        self.config = config
        self.limits = limits
        self.cancel = cancel
        self.clock = clock if clock is not None else Clock()
        self._parameters: Optional[ParameterReport] = None

    @property
    def graph(self):
        return self.instance.graph

    @property
    def parameters(self) -> ParameterReport:
        if self._parameters is None:
            logging.info(f"Computing parameter report for {self.instance}")
            # node caps bound solver searches, not the scan
            search = SearchLimits(time_budget=self.limits.time_budget).start(self.cancel, self.clock)
            self._parameters = parameter_report(self.graph, self.config.budgets, search)
        return self._parameters

    @property
    def has_parameters(self) -> bool:
        return self._parameters is not None

    def budget(self) -> Budget:
        return self.limits.start(self.cancel, self.clock)


def _exact(partition: Optional[Partition], budget: Budget) -> Outcome:
    if partition is None:
        return Outcome(NO, counters=budget.counters())
    return Outcome(YES, partition, counters=budget.counters())


class Solver:
    name = ""

    def __init__(self, manager: SolverManager) -> None:
        """The base class for a solver.

        Subclasses set name to their algorithm tag and override
        applicable, prepare and solve. A solver is shared by every
        dispatch of its manager, so per-instance data travels through
        prepare's return value.

        Parameters:
            manager: The registry holding this solver.

        """
        self.manager = manager

    def applicable(self, context: SolveContext) -> bool:
        """Whether the automatic strategy should try this solver."""
        return False

    def prepare(self, context: SolveContext, budget: Budget) -> Any:
        """Returns the structure solve works on, reusing the parameter
        report when the automatic strategy has one.

        Raises PreconditionError when the instance does not qualify.
        """
        return None

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<Solver {self.name}>"


class OracleSolver(Solver):
    name = "oracle"

    def applicable(self, context: SolveContext) -> bool:
        return context.instance.n <= context.config.max_oracle_n

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return solve_exact(context.instance, budget=budget)


class CliqueSolver(Solver):
    name = "clique"

    def applicable(self, context: SolveContext) -> bool:
        return is_clique(context.graph)

    def prepare(self, context: SolveContext, budget: Budget) -> None:
        if not is_clique(context.graph):
            raise PreconditionError(self.name, "graph is not complete")

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return Outcome(YES, solve_clique(context.instance), counters=budget.counters())


class CographSolver(Solver):
    name = "cograph"

    def applicable(self, context: SolveContext) -> bool:
        return context.parameters.is_cograph

    def prepare(self, context: SolveContext, budget: Budget):
        cotree = context.parameters.cotree if context.has_parameters else build_cotree(context.graph)
        if cotree is None:
            raise PreconditionError(self.name, "graph is not a co-graph")
        return cotree

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return _exact(solve_cograph(context.instance, structure, budget), budget)


class NeighbourhoodDiversitySolver(Solver):
    name = "nd"

    def applicable(self, context: SolveContext) -> bool:
        value = context.parameters.get("neighbourhood-diversity")
        return value is not None and value <= context.config.max_diversity

    def prepare(self, context: SolveContext, budget: Budget):
        if context.has_parameters:
            return context.parameters.types
        return neighbourhood_diversity(context.graph)

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return _exact(solve_neighbourhood_diversity(context.instance, structure, budget), budget)


class ModularWidthSolver(Solver):
    # never picked automatically; the solver may end inconclusive
    name = "mw"

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return solve_modular_width(context.instance, budget)


class _ModulatorSolver(Solver):
    family: Family = Family.TO_CLIQUE
    parameter = ""

    def threshold(self, context: SolveContext) -> int:
        return context.config.max_modulator

    def applicable(self, context: SolveContext) -> bool:
        value = context.parameters.get(self.parameter)
        return value is not None and value <= self.threshold(context)

    def prepare(self, context: SolveContext, budget: Budget):
        if context.has_parameters and self.parameter in context.parameters.modulators:
            return context.parameters.modulators[self.parameter].modulator
        found = find_modulator(context.graph, self.family, context.instance.n, budget)
        if found is None:
            raise PreconditionError(self.name, f"no {self.family.value} modulator")
        return found.modulator


class CliqueModulatorSolver(_ModulatorSolver):
    name = "dclique"
    family = Family.TO_CLIQUE
    parameter = "distance-to-clique"

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return _exact(solve_clique_modulator(context.instance, structure, budget), budget)


class ClusterModulatorSolver(_ModulatorSolver):
    name = "dcluster"
    family = Family.TO_CLUSTER
    parameter = "distance-to-cluster"

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return _exact(solve_cluster_modulator(context.instance, structure, budget), budget)


class ThreePathCoverSolver(_ModulatorSolver):
    name = "3pvc"
    family = Family.PATH_COVER_3
    parameter = "3-path-cover"

    def threshold(self, context: SolveContext) -> int:
        return context.config.max_three_pvc

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        return _exact(solve_three_pvc(context.instance, structure, budget), budget)


class VertexIntegritySolver(Solver):
    name = "vi"

    def applicable(self, context: SolveContext) -> bool:
        value = context.parameters.get("vertex-integrity")
        return value is not None and value <= context.config.max_integrity

    def prepare(self, context: SolveContext, budget: Budget):
        if context.has_parameters and context.parameters.integrity is not None:
            return context.parameters.integrity
        return vertex_integrity(context.graph, context.config.max_integrity, budget)

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        if structure is None:
            detail = f"vertex integrity above {context.config.max_integrity}"
            return Outcome(DELEGATED, detail=detail, counters=budget.counters())
        return solve_vertex_integrity(context.instance, structure, budget)


class TreewidthSolver(Solver):
    name = "treewidth"

    def applicable(self, context: SolveContext) -> bool:
        value = context.parameters.get("tree-width")
        return value is not None and value <= context.config.max_treewidth

    def prepare(self, context: SolveContext, budget: Budget):
        # forced runs accept any width
        width_budget = context.instance.n if context.forced else context.config.max_treewidth
        return compute_nice_tree_decomposition(context.graph, width_budget, budget)

    def solve(self, context: SolveContext, structure: Any, budget: Budget) -> Outcome:
        if structure is None:
            return Outcome(DELEGATED, detail="no decomposition within the width budget", counters=budget.counters())
        return _exact(solve_treewidth(context.instance, structure, budget), budget)


class SolverManager:
    def __init__(self) -> None:
        """The registry solvers are looked up in.

        priority lists the tags the automatic strategy tries, in order.
        """
        self.registered_solvers: Dict[str, Solver] = {}
        self.priority: List[str] = []

    def register_solver(self, solver: Type[Solver], automatic: bool = True) -> None:
        logging.info(f"Registering solver: {solver.name}")
        self.registered_solvers[solver.name] = solver(self)
        if automatic:
            self.priority.append(solver.name)

    def get_solver(self, name: str) -> Solver:
        if name not in self.registered_solvers:
            raise PreconditionError(name, "no solver with this tag")
        return self.registered_solvers[name]

    @classmethod
    def default(cls) -> SolverManager:
        manager = cls()
        for solver in (
            CliqueSolver,
            CographSolver,
            NeighbourhoodDiversitySolver,
            CliqueModulatorSolver,
            ClusterModulatorSolver,
            ThreePathCoverSolver,
            VertexIntegritySolver,
            TreewidthSolver,
            OracleSolver,
        ):
            manager.register_solver(solver)
        manager.register_solver(ModularWidthSolver, automatic=False)
        return manager


def _run(solver: Solver, context: SolveContext) -> Outcome:
    budget = context.budget()
    try:
        structure = solver.prepare(context, budget)
        outcome = solver.solve(context, structure, budget)
    except (BudgetExceeded, Cancelled) as e:
        logging.info(f"{solver.name} stopped after {budget.nodes} nodes: {e}")
        return Outcome(BUDGET, detail=str(e), counters=budget.counters())
    if not outcome.counters:
        outcome.counters = budget.counters()
    return outcome


def _automatic(manager: SolverManager, context: SolveContext) -> Tuple[str, Outcome]:
    for name in manager.priority:
        solver = manager.get_solver(name)
        try:
            applicable = solver.applicable(context)
        except Cancelled as e:
            return "none", Outcome(BUDGET, detail=str(e))
        if context.has_parameters and context.parameters.stopped is not None:
            return "none", Outcome(BUDGET, detail=f"parameter scan stopped ({context.parameters.stopped})")
        if not applicable:
            continue
        logging.info(f"Automatic strategy picked {name}")
        outcome = _run(solver, context)
        if outcome.status == DELEGATED:
            logging.info(f"{name} delegated: {outcome.detail}")
            continue
        return name, outcome
    return "none", Outcome(UNKNOWN, detail="no applicable solver")


def _portfolio(manager: SolverManager, context: SolveContext) -> Tuple[str, Outcome]:
    """Races the oracle against the automatic pick; the first yes/no wins."""
    oracle_cancel, auto_cancel = threading.Event(), threading.Event()
    oracle_context = SolveContext(context.instance, context.config, context.limits, oracle_cancel, clock=context.clock)
    auto_context = SolveContext(context.instance, context.config, context.limits, auto_cancel, clock=context.clock)

    with ThreadPoolExecutor(max_workers=2) as pool:
        racers = {
            pool.submit(lambda: ("oracle", _run(manager.get_solver("oracle"), oracle_context))): auto_cancel,
            pool.submit(_automatic, manager, auto_context): oracle_cancel,
        }
        pending = set(racers)
        fallback = None
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                name, outcome = future.result()
                if outcome.status in (YES, NO):
                    logging.info(f"Portfolio won by {name}")
                    racers[future].set()
                    return name, outcome
                fallback = fallback or (name, outcome)
    return fallback


def _answer(instance: Instance, outcome: Outcome) -> Tuple[str, str]:
    if outcome.status == YES:
        verdict = verify_partition(instance, outcome.partition)
        if not verdict:
            logging.error(f"Certificate rejected by the verifier: {verdict.violations}")
            return UNKNOWN, "certificate failed verification"
        return YES, outcome.detail
    if outcome.status == NO:
        return NO, outcome.detail
    if outcome.status in (BUDGET, INCONCLUSIVE, DELEGATED) and outcome.detail:
        return UNKNOWN, f"{outcome.status}: {outcome.detail}"
    return UNKNOWN, outcome.detail or outcome.status


def dispatch(
    instance: Instance,
    strategy: str = AUTO,
    limits: Optional[SearchLimits] = None,
    config: Optional[DispatchConfig] = None,
    cancel: Optional[threading.Event] = None,
    manager: Optional[SolverManager] = None,
) -> SolveReport:
    """Solves one instance and records how.

    Parameters:
        instance: The ECP instance.
        strategy: "auto" or a solver tag.
        limits: Node and time caps; defaults to the configuration's.
        config: Thresholds and analyzer budgets.
        cancel: Optional event stopping the search cooperatively.
        manager: Solver registry; defaults to SolverManager.default().

    Returns:
        SolveReport; budget exhaustion is reported as answer unknown.

    """
    config = config if config is not None else DispatchConfig()
    limits = limits if limits is not None else config.limits()
    manager = manager if manager is not None else SolverManager.default()
    context = SolveContext(instance, config, limits, cancel, forced=strategy != AUTO)

    if strategy == AUTO:
        if config.portfolio:
            name, outcome = _portfolio(manager, context)
        else:
            name, outcome = _automatic(manager, context)
    else:
        name, outcome = strategy, _run(manager.get_solver(strategy), context)

    answer, detail = _answer(instance, outcome)
    millis = context.clock.get_time()
    logging.info(f"{instance_digest(instance)}: {name} answered {answer} in {millis:.1f} ms")
    return SolveReport(
        digest=instance_digest(instance),
        n=instance.n,
        m=instance.graph.edge_count,
        p=instance.parts,
        algorithm=name,
        answer=answer,
        partition=outcome.partition if answer == YES else None,
        parameters=context.parameters.as_dict() if context.has_parameters else None,
        counters=dict(outcome.counters),
        millis=millis,
        detail=detail,
    )
