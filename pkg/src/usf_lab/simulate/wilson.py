"""Wilson's algorithm rooted at the wired vertex, and the resulting forests."""
from __future__ import annotations

from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .lattice import LatticeBox, Point

BUFFER = 1 << 16


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox generator for ``seed``; ``stream`` picks an independent substream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(stream))))


def loop_erase(path: Sequence[Hashable]) -> list:
    """Chronological loop erasure: jump past the last visit of each kept vertex."""
    last = {v: t for t, v in enumerate(path)}
    out = []
    t = 0
    while t < len(path):
        v = path[t]
        out.append(v)
        t = last[v] + 1
    return out


class DirectionStream:
    """Buffered step directions drawn from a Philox generator."""

    def __init__(self, rng: np.random.Generator, ndirs: int, size: int = BUFFER):
        self.rng = rng
        self.ndirs = ndirs
        self.size = size
        self.buf = np.empty(0, dtype=np.int8)
        self.pos = 0

    def refill(self) -> None:
        self.buf = self.rng.integers(0, self.ndirs, size=self.size, dtype=np.int8)
        self.pos = 0

    def ensure(self) -> None:
        if self.pos >= self.buf.shape[0]:
            self.refill()


@dataclass
class LatticeForest:
    box: LatticeBox
    parent: np.ndarray  # parent[v] toward the wired vertex; -1 at the root
    parent_dir: np.ndarray  # step direction from v to parent[v]

    @cached_property
    def _components(self) -> tuple[int, np.ndarray]:
        n = self.box.n
        par = self.parent[:n]
        keep = par != self.box.wired
        rows = np.nonzero(keep)[0]
        g = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, par[keep])), shape=(n, n))
        return connected_components(g, directed=False)

    @property
    def n_components(self) -> int:
        return int(self._components[0])

    @property
    def component_of(self) -> np.ndarray:
        """Component id of every box vertex once the wired vertex is deleted."""
        return self._components[1]

    def label_grid(self) -> np.ndarray:
        """Component ids shaped as the box, indexed ``grid[c0, c1, ...]``."""
        return self.component_of.reshape((self.box.L,) * self.box.d, order="F")

    def component_points(self) -> list[list[Point]]:
        out: list[list[Point]] = [[] for _ in range(self.n_components)]
        for v, c in enumerate(self.component_of.tolist()):
            out[c].append(self.box.point(v))
        return out

    def edge_keys(self) -> frozenset:
        """Tree edges as hashable keys; parallel wired edges are told apart by direction."""
        keys = []
        w = self.box.wired
        for v, (p, k) in enumerate(zip(self.parent[: self.box.n].tolist(), self.parent_dir[: self.box.n].tolist())):
            keys.append(("W", v, k) if p == w else (min(v, p), max(v, p)))
        return frozenset(keys)

    def check(self) -> None:
        """Raise AssertionError unless this is a spanning tree rooted at the wired vertex."""
        n, w = self.box.n, self.box.wired
        assert self.parent[w] == -1
        for v in range(n):
            p = int(self.parent[v])
            assert self.box.step(v, int(self.parent_dir[v])) == p
        # following parents from any vertex must reach the root: depth fill
        depth = np.full(n + 1, -1, dtype=np.int64)
        depth[w] = 0
        for v in range(n):
            trail = []
            x = v
            while depth[x] < 0:
                trail.append(x)
                x = int(self.parent[x])
                assert len(trail) <= n, "parent pointers contain a cycle"
            base = depth[x]
            for i, y in enumerate(reversed(trail), start=1):
                depth[y] = base + i

    def dump(self) -> str:
        """Edge list, one ``u v`` line per tree edge, coordinates comma-joined, ``W`` for wired."""
        def name(v: int) -> str:
            p = self.box.point(v)
            return "W" if p is None else ",".join(map(str, p))

        return "".join(f"{name(v)} {name(int(self.parent[v]))}\n" for v in range(self.box.n))


class WilsonSampler:
    """Reusable sampler of uniform spanning trees of a wired box."""

    def __init__(self, box: LatticeBox, rng: np.random.Generator):
        self.box = box
        self.stream = DirectionStream(rng, 2 * box.d)
        self._order = np.arange(box.n, dtype=np.int64)

    def sample_arrays(self, order: Sequence[int] | np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        box = self.box
        order = self._order if order is None else np.asarray(order, dtype=np.int64)
        parent = np.full(box.n_vertices, -1, dtype=np.int64)
        pdir = np.full(box.n_vertices, -1, dtype=np.int8)
        in_tree = np.zeros(box.n_vertices, dtype=np.bool_)
        in_tree[box.wired] = True
        state = kernels.new_state()
        while state[kernels.K_RESULT] == kernels.RUNNING:
            self.stream.ensure()
            self.stream.pos = kernels.wilson_kernel(
                box.L, box.strides, order, self.stream.buf, self.stream.pos, state, parent, pdir, in_tree
            )
        return parent, pdir

    def sample(self, order=None) -> LatticeForest:
        parent, pdir = self.sample_arrays(order)
        return LatticeForest(self.box, parent, pdir)


def wilson_wired(box: LatticeBox, order=None, rng: np.random.Generator | None = None) -> LatticeForest:
    """One uniform spanning tree of the wired box, viewed as a forest on the box."""
    if rng is None:
        rng = make_rng(0)
    if order is not None:
        order = [v for v in order if v != box.wired]
        if sorted(order) != list(range(box.n)):
            raise ValueError("order must list every box vertex exactly once")
    return WilsonSampler(box, rng).sample(order)


class RootedConnection:
    """Runs Wilson's algorithm from a few start vertices only, with reusable scratch space."""

    def __init__(self, box: LatticeBox, rng: np.random.Generator):
        self.box = box
        self.stream = DirectionStream(rng, 2 * box.d)
        self.parent = np.full(box.n_vertices, -1, dtype=np.int64)
        self.in_tree = np.zeros(box.n_vertices, dtype=np.bool_)
        self.in_tree[box.wired] = True
        self.label = np.full(box.n_vertices, -1, dtype=np.int64)
        self.touched = np.empty(box.n_vertices, dtype=np.int64)

    def same_component(self, starts: np.ndarray) -> bool:
        state = kernels.new_state()
        while state[kernels.K_RESULT] == kernels.RUNNING:
            self.stream.ensure()
            self.stream.pos = kernels.rooted_kernel(
                self.box.L, self.box.strides, starts, self.stream.buf, self.stream.pos,
                state, self.parent, self.in_tree, self.label, self.touched,
            )
        return bool(state[kernels.K_RESULT] == kernels.TRUE)
