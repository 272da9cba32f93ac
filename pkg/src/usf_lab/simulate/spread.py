"""Spreads of point sets: minimum spanning-tree products of distance-plus-one."""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .lattice import Point, bracket


@dataclass(frozen=True)
class SpreadResult:
    exact_value: int
    tree_witness: tuple[tuple[Point, Point], ...]

    @property
    def log_value(self) -> float:
        return math.log(self.exact_value)


def spread(points: Sequence[Point]) -> SpreadResult:
    """Prim's algorithm; any monotone transform of the edge values gives the same tree."""
    pts = list(points)
    if not pts:
        raise ValueError("spread of an empty set is undefined")
    best = {i: (bracket(pts[0], pts[i]), 0) for i in range(1, len(pts))}
    value = 1
    witness = []
    while best:
        i = min(best, key=lambda j: best[j][0])
        w, j = best.pop(i)
        value *= w
        witness.append((pts[j], pts[i]))
        for k in best:
            b = bracket(pts[i], pts[k])
            if b < best[k][0]:
                best[k] = (b, i)
    return SpreadResult(value, tuple(witness))


def spread_greedy(points: Sequence[Point], order: Sequence[int] | None = None) -> int:
    """Product over i of the nearest earlier point's bracket, in enumeration ``order``."""
    pts = list(points) if order is None else [points[i] for i in order]
    value = 1
    for i in range(1, len(pts)):
        value *= min(bracket(pts[i], pts[j]) for j in range(i))
    return value


def spread_brute(points: Sequence[Point]) -> int:
    """Minimum over every labelled spanning tree, via Pruefer sequences."""
    from itertools import product

    n = len(points)
    if n <= 2:
        return 1 if n == 1 else bracket(points[0], points[1])
    best = None
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        value = 1
        for x in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            value *= bracket(points[leaf], points[x])
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        value *= bracket(points[u], points[v])
        if best is None or value < best:
            best = value
    return best
