"""Finite boxes of Z^d with wired boundary.

Box vertices are integers ``v = sum_a c[a] * L**a``; the wired vertex is
``L**d``. A step in direction ``k`` moves along axis ``k // 2``, upward when
``k`` is even. Stepping off the box lands on the wired vertex, so a corner
vertex has one parallel edge to it per missing face.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from ..errors import UsfLabError

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticeBox:
    d: int
    L: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        if self.L < 2:
            raise ValueError("side must be at least 2")

    @property
    def n(self) -> int:
        """Number of box vertices, excluding the wired vertex."""
        return self.L**self.d

    @property
    def wired(self) -> int:
        return self.n

    @property
    def n_vertices(self) -> int:
        return self.n + 1

    @cached_property
    def strides(self) -> np.ndarray:
        return np.array([self.L**a for a in range(self.d)], dtype=np.int64)

    def index(self, p: Point) -> int:
        if len(p) != self.d or any(not 0 <= c < self.L for c in p):
            raise ValueError(f"point {p} is outside the {self.L}^{self.d} box")
        return int(sum(c * self.L**a for a, c in enumerate(p)))

    def point(self, v: int) -> Point | None:
        if v == self.wired:
            return None
        return tuple((v // self.L**a) % self.L for a in range(self.d))

    def step(self, v: int, k: int) -> int:
        a, up = divmod(k, 2)
        c = (v // self.L**a) % self.L
        if up == 0:
            return self.wired if c == self.L - 1 else v + self.L**a
        return self.wired if c == 0 else v - self.L**a

    def neighbors(self, v: int) -> list[int]:
        """Neighbours with multiplicity, the wired vertex once per missing face."""
        if v == self.wired:
            return [u for u in range(self.n) for k in range(2 * self.d) if self.step(u, k) == self.wired]
        return [self.step(v, k) for k in range(2 * self.d)]

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as ``(v, k, w)`` with each parallel wired edge listed once."""
        out = []
        for v in range(self.n):
            for k in range(2 * self.d):
                w = self.step(v, k)
                if w == self.wired or k % 2 == 0:
                    out.append((v, k, w))
        return out

    def all_points(self):
        for c in product(range(self.L), repeat=self.d):
            yield tuple(reversed(c))


def l1(p: Point, q: Point) -> int:
    return sum(abs(a - b) for a, b in zip(p, q))


def bracket(p: Point, q: Point) -> int:
    """Distance plus one."""
    return l1(p, q) + 1


class MemoryBudgetExceeded(UsfLabError):
    pass


BYTES_PER_VERTEX = 48


def check_memory(d: int, L: int, budget_mb: float) -> None:
    need = (L**d + 1) * BYTES_PER_VERTEX / 2**20
    if need > budget_mb:
        raise MemoryBudgetExceeded(
            f"a {L}^{d} box needs about {need:.0f} MB, over the {budget_mb:g} MB budget"
        )
