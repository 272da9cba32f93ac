"""Component graphs and hypergraphs of a sampled forest, and R_G(M) estimates.

Distances are graph distances in Z^d, i.e. L1 norms; the box is convex in
the lattice so these equal path lengths inside the box.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .lattice import Point
from .wilson import LatticeForest


@dataclass(frozen=True)
class ComponentGraph:
    n_components: int
    edges: frozenset[tuple[int, int]]  # (i, j) with i < j

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(self.n_components)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def l1_offsets(d: int, r: int, *, half: bool = False) -> list[tuple[int, ...]]:
    """Nonzero integer vectors of L1 norm at most ``r``; one of each ±pair if ``half``."""
    out = []
    for v in product(range(-r, r + 1), repeat=d):
        if 0 < sum(map(abs, v)) <= r:
            if half:
                first = next(c for c in v if c != 0)
                if first < 0:
                    continue
            out.append(v)
    return out


def _shift_views(grid: np.ndarray, off: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray] | None:
    """Aligned views ``a, b`` with ``b`` at ``a``'s position plus ``off``."""
    src, dst = [], []
    for o, n in zip(off, grid.shape):
        if abs(o) >= n:
            return None
        if o >= 0:
            src.append(slice(0, n - o))
            dst.append(slice(o, n))
        else:
            src.append(slice(-o, n))
            dst.append(slice(0, n + o))
    return grid[tuple(src)], grid[tuple(dst)]


def component_graph(f: LatticeForest, r: int) -> ComponentGraph:
    """Components joined when some of their points are within distance ``r``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    grid = f.label_grid()
    nc = f.n_components
    keys = []
    for off in l1_offsets(f.box.d, r, half=True):
        views = _shift_views(grid, off)
        if views is None:
            continue
        a, b = views
        m = a != b
        if m.any():
            lo = np.minimum(a[m], b[m]).astype(np.int64)
            hi = np.maximum(a[m], b[m]).astype(np.int64)
            keys.append(np.unique(lo * nc + hi))
    if not keys:
        return ComponentGraph(nc, frozenset())
    allk = np.unique(np.concatenate(keys))
    return ComponentGraph(nc, frozenset((int(k // nc), int(k % nc)) for k in allk))


def _rich_anchors(grid: np.ndarray, r: int, m: int) -> np.ndarray:
    """Mask of points whose radius-r ball meets at least ``m`` components (m <= 6)."""
    slots = [grid.copy()] + [np.full(grid.shape, -1, dtype=grid.dtype) for _ in range(m - 2)]
    hit = np.zeros(grid.shape, dtype=bool)
    for off in l1_offsets(grid.ndim, r):
        views = _shift_views(grid, off)
        if views is None:
            continue
        src, dst = [], []
        for o, n in zip(off, grid.shape):
            src.append(slice(0, n - o) if o >= 0 else slice(-o, n))
        sl = tuple(src)
        _, other = views
        fresh = np.ones(other.shape, dtype=bool)
        for s in slots:
            fresh &= s[sl] != other
        sub_hit = hit[sl]
        placed = np.zeros(other.shape, dtype=bool)
        for s in slots[1:]:
            view = s[sl]
            put = fresh & ~placed & (view == -1)
            view[put] = other[put]
            placed |= put
        sub_hit |= fresh & ~placed
        hit[sl] = sub_hit
    return hit


def _anchored_sets(f: LatticeForest, grid: np.ndarray, anchor: Point, r: int, m: int, out: set, stop: bool) -> bool:
    """Component sets of size 3..m realised by points pairwise within ``r``, one being ``anchor``.

    Only sets whose smallest component is the anchor's are reported; every
    realisation has a point there, so nothing is lost.
    """
    d = f.box.d
    base = int(grid[anchor])
    cands = []
    for off in l1_offsets(d, r):
        q = tuple(a + o for a, o in zip(anchor, off))
        if all(0 <= c < f.box.L for c in q):
            lab = int(grid[q])
            if lab > base:
                cands.append((lab, q))
    cands.sort()

    def l1(p, q):
        return sum(abs(a - b) for a, b in zip(p, q))

    def extend(chosen: list[Point], labs: list[int], start: int) -> bool:
        if len(labs) >= 3:
            out.add(frozenset(labs))
            if stop and len(labs) >= m:
                return True
        if len(labs) == m:
            return False
        for i in range(start, len(cands)):
            lab, q = cands[i]
            if lab <= labs[-1] or frozenset(labs + [lab]) in out and len(labs) + 1 == m:
                continue
            if all(l1(p, q) <= r for p in chosen[1:]):
                if extend(chosen + [q], labs + [lab], i + 1):
                    return True
        return False

    return extend([anchor], [base], 0)


def component_hyperedges(f: LatticeForest, r: int, max_degree: int) -> set[frozenset[int]]:
    """Sets of at most ``max_degree`` components meeting one vertex set of diameter ``<= r``."""
    if r < 0 or max_degree < 1:
        raise ValueError("need r >= 0 and max_degree >= 1")
    if max_degree > 6:
        raise ValueError("max_degree is capped at 6")
    out: set[frozenset[int]] = {frozenset([i]) for i in range(f.n_components)}
    if max_degree == 1 or r == 0:
        return out
    out |= {frozenset(e) for e in component_graph(f, r).edges}
    if max_degree == 2:
        return out
    grid = f.label_grid()
    rich = _rich_anchors(grid, r, 3)
    for anchor in zip(*np.nonzero(rich)):
        _anchored_sets(f, grid, tuple(int(c) for c in anchor), r, max_degree, out, stop=False)
    return out


def meets_components(f: LatticeForest, r: int, m: int) -> bool:
    """Does some vertex set of diameter ``<= r`` meet ``m`` distinct components?"""
    if m <= 1:
        return True
    if r == 0 or f.n_components < m:
        return False
    grid = f.label_grid()
    if m == 2:
        for off in l1_offsets(f.box.d, r, half=True):
            views = _shift_views(grid, off)
            if views is not None and (views[0] != views[1]).any():
                return True
        return False
    rich = _rich_anchors(grid, r, m)
    found: set[frozenset[int]] = set()
    for anchor in zip(*np.nonzero(rich)):
        if _anchored_sets(f, grid, tuple(int(c) for c in anchor), r, m, found, stop=True):
            return True
    return False
