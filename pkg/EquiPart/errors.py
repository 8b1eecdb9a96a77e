"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""

__all__ = [
    "Error",
    "InstanceFormatError",
    "InvalidGraphError",
    "InvalidPartitionError",
    "PreconditionError",
    "DecompositionError",
    "ProgramError",
    "BudgetExceeded",
    "Cancelled",
    "BinPackingError",
    "UsageError",
]


class Error(Exception):
    message = "Unknown error."

    def __str__(self) -> str:
        return self.message


class InstanceFormatError(Error):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        self.message = f"line {line}: {reason}"


class InvalidGraphError(Error):
    def __init__(self, reason: str):
        self.message = f"Invalid graph: {reason}"


class InvalidPartitionError(Error):
    def __init__(self, reason: str):
        self.message = f"Invalid partition: {reason}"


class PreconditionError(Error):
    def __init__(self, solver: str, reason: str):
        self.solver = solver
        self.message = f"{solver}: precondition failed, {reason}"


class DecompositionError(Error):
    def __init__(self, reason: str):
        self.message = f"Invalid decomposition: {reason}"


class ProgramError(Error):
    def __init__(self, reason: str):
        self.message = f"Malformed integer program: {reason}"


class BudgetExceeded(Error):
    def __init__(self, kind: str):
        # kind is "nodes" or "time"
        self.kind = kind
        self.message = f"Search budget exceeded ({kind})."


class Cancelled(Error):
    def __init__(self):
        self.message = "Search was cancelled."


class BinPackingError(Error):
    def __init__(self, reason: str):
        self.message = f"Invalid bin packing instance: {reason}"


class UsageError(Error):
    def __init__(self, reason: str):
        self.message = reason
