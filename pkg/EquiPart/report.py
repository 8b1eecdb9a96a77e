"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Union

import csv
import io
import json

from .graph import Partition
from .locals import ERROR, NO, YES

__all__ = ["CSV_COLUMNS", "SolveReport", "error_report", "reports_to_csv", "reports_to_text"]

CSV_COLUMNS = ("digest", "n", "m", "p", "algorithm", "answer", "nodes", "states", "millis")


@dataclass
class SolveReport:
    """Record of one solve. answer is yes, no, unknown or error."""

    digest: str
    n: int
    m: int
    p: int
    algorithm: str
    answer: str
    partition: Optional[Partition] = None
    parameters: Optional[Dict[str, Union[int, str, bool]]] = None
    counters: Dict[str, int] = field(default_factory=dict)
    millis: float = 0.0
    detail: str = ""

    @property
    def exit_code(self) -> int:
        return {YES: 0, NO: 1}.get(self.answer, 2)

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "digest": self.digest,
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "algorithm": self.algorithm,
            "answer": self.answer,
            "parts": None if self.partition is None else self.partition.parts(),
            "parameters": self.parameters,
            "counters": dict(sorted(self.counters.items())),
            "millis": round(self.millis, 3) if timing else 0,
            "detail": self.detail,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2)

    def csv_row(self, timing: bool = True) -> List[str]:
        return [
            self.digest,
            str(self.n),
            str(self.m),
            str(self.p),
            self.algorithm,
            self.answer,
            str(self.counters.get("nodes", 0)),
            str(self.counters.get("states", 0)),
            f"{self.millis:.3f}" if timing else "0",
        ]

    def render(self, timing: bool = True) -> str:
        lines = [
            f"instance {self.digest} n={self.n} m={self.m} p={self.p}",
            f"algorithm {self.algorithm}",
            f"answer {self.answer}",
        ]
        if self.detail:
            lines.append(f"detail {self.detail}")
        for name, value in sorted(self.counters.items()):
            lines.append(f"counter {name} {value}")
        if timing:
            lines.append(f"millis {self.millis:.3f}")
        if self.partition is not None:
            for i, part in enumerate(self.partition.parts(), start=1):
                lines.append(f"part {i} " + " ".join(str(v + 1) for v in part))
        return "\n".join(lines) + "\n"


def error_report(name: str, reason: str) -> SolveReport:
    """Row for an instance that could not be read."""
    return SolveReport(digest=name, n=0, m=0, p=0, algorithm="none", answer=ERROR, detail=reason)


def reports_to_csv(reports: Iterable[SolveReport], timing: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.csv_row(timing))
    return buffer.getvalue()


def reports_to_text(reports: Iterable[SolveReport], timing: bool = True) -> str:
    rows = [list(CSV_COLUMNS)] + [report.csv_row(timing) for report in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(CSV_COLUMNS))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows) + "\n"
