"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

import logging

from .errors import BudgetExceeded, Cancelled, ProgramError
from .limits import Budget, SearchLimits
from .locals import BUDGET, FEASIBLE, INFEASIBLE

__all__ = [
    "Variable",
    "Constraint",
    "IntegerProgram",
    "ProgramOutcome",
    "BranchAndBound",
    "solve_integer_program",
    "format_program",
]

RELATIONS = ("<=", "=", ">=")
Key = Union[str, int]


@dataclass(frozen=True)
class Variable:
    name: str
    lower: int
    upper: int


@dataclass(frozen=True)
class Constraint:
    coefficients: Tuple[Tuple[int, int], ...]  # (variable index, coefficient)
    relation: str
    rhs: int
    name: str = ""


class IntegerProgram:
    def __init__(self) -> None:
        """Bounded integer variables, linear constraints, optional objective.

        Everything is an exact Python int; nothing is ever a float.
        """
        self.variables: List[Variable] = []
        self.constraints: List[Constraint] = []
        self.objective: Optional[Tuple[Tuple[Tuple[int, int], ...], str]] = None
        self._index: Dict[str, int] = {}

    def add_variable(self, name: str, lower: int, upper: int) -> int:
        if name in self._index:
            raise ProgramError(f"variable {name} declared twice")
        if not (isinstance(lower, int) and isinstance(upper, int)):
            raise ProgramError(f"bounds of {name} must be integers")
        if lower > upper:
            raise ProgramError(f"variable {name} has lower bound above upper bound")
        self.variables.append(Variable(name, lower, upper))
        self._index[name] = len(self.variables) - 1
        return self._index[name]

    def index(self, key: Key) -> int:
        if isinstance(key, int):
            if not 0 <= key < len(self.variables):
                raise ProgramError(f"variable index {key} out of range")
            return key
        if key not in self._index:
            raise ProgramError(f"unknown variable {key}")
        return self._index[key]

    def _terms(self, coefficients: Mapping[Key, int]) -> Tuple[Tuple[int, int], ...]:
        merged: Dict[int, int] = {}
        for key, value in coefficients.items():
            if not isinstance(value, int):
                raise ProgramError(f"coefficient of {key} is not an integer")
            i = self.index(key)
            merged[i] = merged.get(i, 0) + value
        return tuple(sorted((i, c) for i, c in merged.items() if c != 0))

    def add_constraint(self, coefficients: Mapping[Key, int], relation: str, rhs: int, name: str = "") -> None:
        if relation not in RELATIONS:
            raise ProgramError(f"unknown relation {relation}")
        if not isinstance(rhs, int):
            raise ProgramError("right-hand side must be an integer")
        self.constraints.append(Constraint(self._terms(coefficients), relation, rhs, name))

    def set_objective(self, coefficients: Mapping[Key, int], sense: str = "max") -> None:
        if sense not in ("max", "min"):
            raise ProgramError(f"unknown objective sense {sense}")
        self.objective = (self._terms(coefficients), sense)

    def value_of(self, values: List[int], terms: Tuple[Tuple[int, int], ...]) -> int:
        return sum(c * values[i] for i, c in terms)

    def check_assignment(self, values: List[int]) -> bool:
        if len(values) != len(self.variables):
            return False
        for v, variable in zip(values, self.variables):
            if not variable.lower <= v <= variable.upper:
                return False
        for constraint in self.constraints:
            total = self.value_of(values, constraint.coefficients)
            if constraint.relation == "<=" and total > constraint.rhs:
                return False
            if constraint.relation == ">=" and total < constraint.rhs:
                return False
            if constraint.relation == "=" and total != constraint.rhs:
                return False
        return True

    def __repr__(self) -> str:
        return f"IntegerProgram({len(self.variables)} variables, {len(self.constraints)} constraints)"


def _format_terms(program: IntegerProgram, terms: Tuple[Tuple[int, int], ...]) -> str:
    if not terms:
        return "0"
    return " ".join(f"{c:+d}*{program.variables[i].name}" for i, c in terms)


def format_program(program: IntegerProgram) -> str:
    """Line-oriented dump: `var`, `con` and `obj` lines."""
    lines = [f"var {v.name} {v.lower} {v.upper}" for v in program.variables]
    for i, constraint in enumerate(program.constraints):
        name = constraint.name or f"c{i}"
        lines.append(
            f"con {name} {_format_terms(program, constraint.coefficients)} {constraint.relation} {constraint.rhs}"
        )
    if program.objective is not None:
        terms, sense = program.objective
        lines.append(f"obj {sense} {_format_terms(program, terms)}")
    return "\n".join(lines) + "\n"


@dataclass
class ProgramOutcome:
    status: str
    values: Optional[Dict[str, int]] = None
    objective: Optional[int] = None
    counters: Dict[str, int] = field(default_factory=dict)


class BranchAndBound:
    def __init__(self, program: IntegerProgram, budget: Budget) -> None:
        """Depth-first search over variable boxes with bound propagation.

        Splits the first unfixed variable and explores the lower half
        first, so the first feasible point is the lexicographically
        smallest one. With an objective, the incumbent only changes on
        strict improvement.

        Parameters:
            program: The integer program.
            budget: Live budget, ticked once per box.

        """
        self.program = program
        self.budget = budget
        # every row as sum(c * x) <= rhs
        self.rows: List[Tuple[Tuple[Tuple[int, int], ...], int]] = []
        for constraint in program.constraints:
            terms = constraint.coefficients
            if constraint.relation in ("<=", "="):
                self.rows.append((terms, constraint.rhs))
            if constraint.relation in (">=", "="):
                self.rows.append((tuple((i, -c) for i, c in terms), -constraint.rhs))
        self.watch: List[List[int]] = [[] for _ in program.variables]
        for r, (terms, _) in enumerate(self.rows):
            for i, _ in terms:
                self.watch[i].append(r)

        self.objective: Optional[Tuple[Tuple[int, int], ...]] = None
        if program.objective is not None:
            terms, sense = program.objective
            self.objective = terms if sense == "max" else tuple((i, -c) for i, c in terms)
        self.best: Optional[List[int]] = None
        self.best_value: Optional[int] = None

    def solve(self) -> Optional[List[int]]:
        """Returns the values or None if infeasible. May raise BudgetExceeded."""
        self.budget.count_variables(len(self.program.variables))
        lower = [v.lower for v in self.program.variables]
        upper = [v.upper for v in self.program.variables]
        self._search(lower, upper)
        return self.best

    def _propagate(self, lower: List[int], upper: List[int], split: Optional[int]) -> bool:
        pending = list(range(len(self.rows))) if split is None else list(self.watch[split])
        queued = set(pending)
        while pending:
            r = pending.pop()
            queued.discard(r)
            terms, rhs = self.rows[r]
            least = 0
            for i, c in terms:
                least += c * (lower[i] if c > 0 else upper[i])
            if least > rhs:
                return False
            slack = rhs - least
            for i, c in terms:
                if c > 0:
                    bound = lower[i] + slack // c
                    if bound < upper[i]:
                        upper[i] = bound
                        changed = i
                    else:
                        continue
                else:
                    bound = upper[i] - slack // (-c)
                    if bound > lower[i]:
                        lower[i] = bound
                        changed = i
                    else:
                        continue
                if lower[changed] > upper[changed]:
                    return False
                for other in self.watch[changed]:
                    if other not in queued:
                        queued.add(other)
                        pending.append(other)
        return True

    def _bound(self, lower: List[int], upper: List[int]) -> int:
        return sum(c * (upper[i] if c > 0 else lower[i]) for i, c in self.objective)

    def _search(self, lower: List[int], upper: List[int]) -> None:
        # explicit stack: boxes can nest deeper than the recursion limit
        stack: List[Tuple[List[int], List[int], Optional[int]]] = [(lower, upper, None)]
        while stack:
            lower, upper, split = stack.pop()
            self.budget.tick()
            if not self._propagate(lower, upper, split):
                continue
            if self.objective is not None and self.best_value is not None:
                if self._bound(lower, upper) <= self.best_value:
                    continue

            split = next((i for i in range(len(lower)) if lower[i] < upper[i]), None)
            if split is None:
                if self.objective is None:
                    self.best = list(lower)
                    return
                value = sum(c * lower[i] for i, c in self.objective)
                if self.best_value is None or value > self.best_value:
                    self.best, self.best_value = list(lower), value
                continue

            middle = (lower[split] + upper[split]) // 2
            high_lower = list(lower)
            high_lower[split] = middle + 1
            stack.append((high_lower, list(upper), split))
            low_upper = list(upper)
            low_upper[split] = middle
            stack.append((list(lower), low_upper, split))


def solve_integer_program(
    program: IntegerProgram,
    limits: Optional[SearchLimits] = None,
    budget: Optional[Budget] = None,
) -> ProgramOutcome:
    """Exact solve of a bounded integer program.

    Returns:
        ProgramOutcome with status feasible (values and objective value),
        infeasible, or budget.

    """
    budget = budget if budget is not None else Budget(limits)
    engine = BranchAndBound(program, budget)
    try:
        values = engine.solve()
    except (BudgetExceeded, Cancelled) as e:
        logging.info(f"integer program stopped: {e}")
        return ProgramOutcome(BUDGET, counters=budget.counters())
    if values is None:
        return ProgramOutcome(INFEASIBLE, counters=budget.counters())

    named = {v.name: value for v, value in zip(program.variables, values)}
    objective = None
    if program.objective is not None:
        objective = program.value_of(values, program.objective[0])
    return ProgramOutcome(FEASIBLE, named, objective, budget.counters())
