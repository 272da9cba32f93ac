"""Exact reference computations on tiny wired boxes."""
from collections import deque
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from usf_lab.simulate import LatticeForest


def edge_key(box, v, k, w):
    return ("W", v, k) if w == box.wired else (min(v, w), max(v, w))


@lru_cache(maxsize=8)
def spanning_trees(box):
    """Every spanning tree of the wired box as a frozenset of edge keys."""
    edges = box.edges()
    out = []
    for sub in combinations(edges, box.n):
        parent = list(range(box.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for v, _, w in sub:
            rv, rw = find(v), find(w)
            if rv == rw:
                ok = False
                break
            parent[rv] = rw
        if ok:
            out.append(frozenset(edge_key(box, v, k, w) for v, k, w in sub))
    return tuple(out)


def matrix_tree_count(box):
    n = box.n_vertices
    lap = np.zeros((n, n))
    for v, _, w in box.edges():
        lap[v, v] += 1
        lap[w, w] += 1
        lap[v, w] -= 1
        lap[w, v] -= 1
    return round(np.linalg.det(lap[:-1, :-1]))


def tree_components(box, tree):
    """Component id per box vertex once the wired vertex is deleted."""
    adj = {v: [] for v in range(box.n)}
    for key in tree:
        if key[0] != "W":
            a, b = key
            adj[a].append(b)
            adj[b].append(a)
    comp = {}
    for s in range(box.n):
        if s in comp:
            continue
        comp[s] = s
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = s
                    queue.append(y)
    return comp


def forest_from_parts(box, parts):
    """A spanning tree of the wired box whose box components are ``parts``.

    Each part must be lattice-connected and touch the box boundary.
    """
    parent = np.full(box.n_vertices, -1, dtype=np.int64)
    pdir = np.full(box.n_vertices, -1, dtype=np.int8)
    for part in parts:
        ids = {box.index(p) for p in part}
        root = next(
            (v, k) for v in sorted(ids) for k in range(2 * box.d) if box.step(v, k) == box.wired
        )
        parent[root[0]], pdir[root[0]] = box.wired, root[1]
        seen = {root[0]}
        queue = deque([root[0]])
        while queue:
            x = queue.popleft()
            for k in range(2 * box.d):
                y = box.step(x, k)
                if y in ids and y not in seen:
                    seen.add(y)
                    parent[y] = x
                    pdir[y] = k ^ 1  # step back from y to x
                    queue.append(y)
        assert seen == ids, "part is not lattice-connected"
    return LatticeForest(box, parent, pdir)


def l1(p, q):
    return sum(abs(a - b) for a, b in zip(p, q))


def brute_witnesses(f, h, x, r):
    """Every witness by scanning all point assignments of all incidences."""
    comp = {p: int(f.component_of[f.box.index(p)]) for p in f.box.all_points()}
    points = list(comp)
    slots = [(e, v) for e, vs in h.edge_map.items() for v in vs]
    boundary = set(h.boundary)
    found = []
    for choice in product(points, repeat=len(slots)):
        xi = dict(zip(slots, choice))
        if any(
            l1(xi[(e, u)], xi[(e, v)]) + 1 > r - 1
            for e, vs in h.edge_map.items()
            for u, v in combinations(vs, 2)
        ):
            continue
        owner = {}
        ok = True
        for (e, v), p in xi.items():
            c = comp[p]
            if v in boundary and c != x[v]:
                ok = False
                break
            if owner.setdefault(v, c) != c:
                ok = False
                break
        if not ok:
            continue
        # distinct vertices need distinct components, boundary vertices
        # untouched by any edge included
        for b in boundary:
            owner.setdefault(b, x[b])
        if len(set(owner.values())) == len(owner):
            found.append(xi)
    return found
