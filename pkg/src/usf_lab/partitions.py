"""Set partition enumeration.

Partitions are tuples of blocks; each block keeps the input order of its
items and blocks are ordered by their first item.
"""
from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from typing import TypeVar

T = TypeVar("T")


def filtered_partitions(
    items: Sequence[T], allowed: Callable[[tuple[T, ...]], bool] | None = None
) -> Iterator[tuple[tuple[T, ...], ...]]:
    """Partitions of ``items`` whose every block satisfies ``allowed``.

    Blocks are pruned while they grow, so ``allowed`` must be closed under
    taking subsets (true for "at most one boundary vertex per block").
    """
    items = list(items)
    n = len(items)
    blocks: list[list[T]] = []

    def rec(i: int) -> Iterator[tuple[tuple[T, ...], ...]]:
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        x = items[i]
        blocks.append([x])
        if allowed is None or allowed((x,)):
            yield from rec(i + 1)
        blocks.pop()
        for b in blocks:
            b.append(x)
            if allowed is None or allowed(tuple(b)):
                yield from rec(i + 1)
            b.pop()

    yield from rec(0)


def set_partitions(items: Sequence[T]) -> Iterator[tuple[tuple[T, ...], ...]]:
    """Every partition of ``items`` exactly once, all-singletons first."""
    return filtered_partitions(items)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
