"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import Iterator, List, Sequence, Tuple

__all__ = ["set_partitions"]


def set_partitions(items: Sequence[int], max_blocks: int) -> Iterator[List[Tuple[int, ...]]]:
    """Yields every partition of items into at most max_blocks blocks.

    Blocks keep the order of items and are ordered by their first item,
    so each partition appears once and the sequence is deterministic.
    """
    items = list(items)
    if not items:
        yield []
        return
    blocks: List[List[int]] = []

    def place(index: int) -> Iterator[List[Tuple[int, ...]]]:
        if index == len(items):
            yield [tuple(block) for block in blocks]
            return
        item = items[index]
        for block in blocks:
            block.append(item)
            yield from place(index + 1)
            block.pop()
        if len(blocks) < max_blocks:
            blocks.append([item])
            yield from place(index + 1)
            blocks.pop()

    yield from place(0)
