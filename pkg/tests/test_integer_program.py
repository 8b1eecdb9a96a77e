"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from itertools import product

import random

import pytest

from EquiPart import (
    BUDGET,
    FEASIBLE,
    INFEASIBLE,
    IntegerProgram,
    ProgramError,
    SearchLimits,
    format_program,
    solve_integer_program,
)


def _xy(upper: int = 2) -> IntegerProgram:
    program = IntegerProgram()
    program.add_variable("x", 0, upper)
    program.add_variable("y", 0, upper)
    return program


def test_lexicographically_smallest_point():
    program = _xy()
    program.add_constraint({"x": 1, "y": 1}, "=", 3)
    outcome = solve_integer_program(program)
    assert outcome.status == FEASIBLE
    assert outcome.values == {"x": 1, "y": 2}


def test_contradiction_is_infeasible():
    program = _xy()
    program.add_constraint({"x": 1}, "=", 1)
    program.add_constraint({"x": 1}, "=", 2)
    assert solve_integer_program(program).status == INFEASIBLE


def test_maximum():
    program = _xy()
    program.add_constraint({"x": 1, "y": 1}, "<=", 3)
    program.set_objective({"x": 1, "y": 1}, "max")
    outcome = solve_integer_program(program)
    assert outcome.objective == 3


def test_minimum_with_negative_coefficients():
    program = _xy(5)
    program.add_constraint({"x": 2, "y": -1}, ">=", 3)
    program.set_objective({"x": 1, "y": 1}, "min")
    outcome = solve_integer_program(program)
    assert outcome.values == {"x": 2, "y": 0}
    assert outcome.objective == 2


def test_empty_program_is_feasible():
    outcome = solve_integer_program(IntegerProgram())
    assert outcome.status == FEASIBLE
    assert outcome.values == {}


def test_node_budget():
    program = IntegerProgram()
    for i in range(12):
        program.add_variable(f"x{i}", 0, 1)
    program.add_constraint({f"x{i}": 2 for i in range(12)}, "=", 11)
    outcome = solve_integer_program(program, SearchLimits(node_budget=5))
    assert outcome.status == BUDGET
    assert outcome.counters["nodes"] > 5


def test_malformed_programs():
    program = _xy()
    with pytest.raises(ProgramError):
        program.add_variable("x", 0, 1)
    with pytest.raises(ProgramError):
        program.add_variable("z", 2, 1)
    with pytest.raises(ProgramError):
        program.add_constraint({"w": 1}, "<=", 1)
    with pytest.raises(ProgramError):
        program.add_constraint({"x": 1}, "<", 1)
    with pytest.raises(ProgramError):
        program.add_constraint({"x": 0.5}, "<=", 1)
    with pytest.raises(ProgramError):
        program.set_objective({"x": 1}, "maximise")


def test_check_assignment():
    program = _xy()
    program.add_constraint({"x": 1, "y": 1}, ">=", 3)
    assert program.check_assignment([1, 2])
    assert not program.check_assignment([1, 1])
    assert not program.check_assignment([3, 0])
    assert not program.check_assignment([1])


def test_format_program():
    program = _xy()
    program.add_constraint({"x": 1, "y": -1}, "<=", 0, "order")
    program.set_objective({"y": 1})
    assert format_program(program) == (
        "var x 0 2\nvar y 0 2\ncon order +1*x -1*y <= 0\nobj max +1*y\n"
    )


def _random_program(rng: random.Random, variables: int, bound: int, constraints: int) -> IntegerProgram:
    program = IntegerProgram()
    for i in range(variables):
        lower = rng.randint(0, bound)
        program.add_variable(f"x{i}", lower, rng.randint(lower, bound))
    for _ in range(constraints):
        terms = {f"x{i}": rng.randint(-3, 3) for i in range(variables) if rng.random() < 0.6}
        program.add_constraint(terms, rng.choice(("<=", "=", ">=")), rng.randint(-4, 3 * bound))
    if rng.random() < 0.5:
        program.set_objective({f"x{i}": rng.randint(-3, 3) for i in range(variables)}, rng.choice(("max", "min")))
    return program


def _exhaustive(program: IntegerProgram):
    best_point, best_value = None, None
    boxes = [range(v.lower, v.upper + 1) for v in program.variables]
    for point in product(*boxes):
        point = list(point)
        if not program.check_assignment(point):
            continue
        if program.objective is None:
            return point, None
        terms, sense = program.objective
        value = program.value_of(point, terms)
        if best_value is None or (value > best_value if sense == "max" else value < best_value):
            best_point, best_value = point, value
    return best_point, best_value


def _agree_with_enumeration(seeds, variables, bound, constraints):
    for seed in seeds:
        rng = random.Random(seed)
        program = _random_program(rng, rng.randint(1, variables), bound, rng.randint(0, constraints))
        point, value = _exhaustive(program)
        outcome = solve_integer_program(program)
        if point is None:
            assert outcome.status == INFEASIBLE, seed
            continue
        assert outcome.status == FEASIBLE, seed
        values = [outcome.values[v.name] for v in program.variables]
        assert program.check_assignment(values), seed
        if program.objective is None:
            assert values == point, seed
        else:
            assert outcome.objective == value, seed


def test_agrees_with_box_enumeration():
    _agree_with_enumeration(range(300), variables=4, bound=4, constraints=4)


@pytest.mark.slow
def test_agrees_with_box_enumeration_at_scale():
    _agree_with_enumeration(range(1000, 1500), variables=5, bound=5, constraints=8)
