"""Witnesses for the presence of a hypergraph with boundary among forest components.

A witness assigns a box point to each incidence ``(e, v)`` so that

1. points of one edge are pairwise within bracket ``r - 1`` (distance ``r - 2``);
2. points of a boundary vertex lie in that vertex's prescribed component;
3. points of an interior vertex share one component;
4. distinct vertices use distinct components.
"""
from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from fractions import Fraction

from ..hypergraph import HypergraphWithBoundary
from .lattice import Point, l1
from .spread import spread
from .wilson import LatticeForest

Incidence = tuple[str, str]


def witness_search(
    f: LatticeForest,
    h: HypergraphWithBoundary,
    x: Mapping[str, int],
    r: int,
) -> Iterator[dict[Incidence, Point]]:
    """Every witness, by exact backtracking over component point sets."""
    if set(x) != set(h.boundary):
        raise ValueError("x must assign a component to every boundary vertex")
    if len(set(x.values())) != len(x):
        raise ValueError("boundary vertices need distinct components")
    reach = r - 2
    comps = f.component_points()
    boundary = set(h.boundary)
    em = h.edge_map
    # boundary incidences first inside each edge so interior choices are anchored
    slots: list[Incidence] = []
    for e, vs in em.items():
        slots.extend((e, v) for v in sorted(vs, key=lambda v: v not in boundary))
    used = set(x.values())
    interior_comp: dict[str, int] = {}
    xi: dict[Incidence, Point] = {}

    def candidates(e: str, v: str):
        if v in boundary:
            pools = [comps[x[v]]]
        elif v in interior_comp:
            pools = [comps[interior_comp[v]]]
        else:
            pools = [comps[c] for c in range(len(comps)) if c not in used]
        placed = [xi[(e, u)] for u in em[e] if (e, u) in xi]
        for pool in pools:
            for p in pool:
                if all(l1(p, q) <= reach for q in placed):
                    yield p

    def go(i: int):
        if i == len(slots):
            yield dict(xi)
            return
        e, v = slots[i]
        fresh = v not in boundary and v not in interior_comp
        for p in candidates(e, v):
            if fresh:
                c = int(f.component_of[f.box.index(p)])
                interior_comp[v] = c
                used.add(c)
            xi[(e, v)] = p
            yield from go(i + 1)
            del xi[(e, v)]
            if fresh:
                used.discard(interior_comp.pop(v))

    if reach < 0 and any(len(vs) >= 2 for vs in em.values()):
        return
    yield from go(0)


def witness_weight(
    h: HypergraphWithBoundary,
    x: Mapping[str, Point],
    xi: Mapping[str, Point],
    d: int | Fraction,
    alpha: int | Fraction = 2,
) -> float:
    """Natural log of the product of spreads raised to ``-(d - 2 alpha)``.

    Boundary vertex ``u`` contributes the spread of ``x[u]`` with the points
    of its edges, interior vertex ``u`` the spread of its edges' points.
    """
    expo = Fraction(d) - 2 * Fraction(alpha)
    total = 0.0
    for u in h.vertices:
        pts = [xi[e] for e in h.incident_edges(u)]
        if u in x:
            pts = [x[u]] + pts
        if pts:
            total += math.log(spread(pts).exact_value)
    return -float(expo) * total
