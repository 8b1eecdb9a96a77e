"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import time

__all__ = ["Clock"]


class Clock:
    def __init__(self) -> None:
        self._started_running_at = time.perf_counter()

    def reset(self) -> None:
        self._started_running_at = time.perf_counter()

    def get_time(self) -> float:
        """Returns time in milliseconds"""
        return (time.perf_counter() - self._started_running_at) * 1000

    def expired(self, limit: float) -> bool:
        """True once more than `limit` milliseconds have run."""
        return self.get_time() > limit
