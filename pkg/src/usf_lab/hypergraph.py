"""Finite hypergraphs with boundary and their combinatorial handles.

A hypergraph with boundary has its vertex set split into boundary and
interior vertices, and an incidence relation between vertices and edges that
may contain parallel edges (distinct edge ids over the same vertex set).
Subhypergraphs, coarsenings (edge merges) and quotients (vertex merges) are
all enumerated exactly; instances are small, so the enumerations are plain
exhaustive scans over bitmasks.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    BoundaryCollision,
    DanglingIncidence,
    DuplicateId,
    EdgeWithNoVertex,
    EmptyBoundary,
    HypergraphError,
    OrphanEdge,
)
from .partitions import filtered_partitions, set_partitions


@dataclass(frozen=True)
class _Frame:
    """Bitmask view: vertex i is bit i (boundary first), edge j is bit j."""

    vertices: tuple[str, ...]
    vindex: dict[str, int]
    eindex: dict[str, int]
    n_boundary: int
    edge_masks: tuple[int, ...]  # vertices incident to each edge
    vertex_edge_masks: tuple[int, ...]  # edges incident to each vertex

    @property
    def boundary_mask(self) -> int:
        return (1 << self.n_boundary) - 1

    @property
    def interior_mask(self) -> int:
        return ((1 << len(self.vertices)) - 1) & ~self.boundary_mask


@dataclass(frozen=True)
class HypergraphWithBoundary:
    boundary: tuple[str, ...]
    interior: tuple[str, ...]
    edges: tuple[str, ...]
    incidence: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(sorted(self.boundary)))
        object.__setattr__(self, "interior", tuple(sorted(self.interior)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "incidence", frozenset(self.incidence))

    @classmethod
    def from_edges(
        cls,
        boundary: Iterable[str],
        interior: Iterable[str],
        edges: Mapping[str, Iterable[str]],
        *,
        check: bool = True,
    ) -> HypergraphWithBoundary:
        """Build from an ``edge id -> incident vertices`` mapping."""
        incidence = set()
        for e, vs in edges.items():
            vs = list(vs)
            if len(set(vs)) != len(vs):
                raise DuplicateId(f"edge {e!r} lists a vertex more than once")
            incidence.update((v, e) for v in vs)
        h = cls(tuple(boundary), tuple(interior), tuple(edges), frozenset(incidence))
        if check:
            validate(h)
        return h

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.boundary + self.interior

    @cached_property
    def frame(self) -> _Frame:
        verts = self.vertices
        vindex = {v: i for i, v in enumerate(verts)}
        eindex = {e: j for j, e in enumerate(self.edges)}
        em = [0] * len(self.edges)
        vm = [0] * len(verts)
        for v, e in self.incidence:
            em[eindex[e]] |= 1 << vindex[v]
            vm[vindex[v]] |= 1 << eindex[e]
        return _Frame(verts, vindex, eindex, len(self.boundary), tuple(em), tuple(vm))

    @cached_property
    def edge_map(self) -> dict[str, tuple[str, ...]]:
        """Edge id -> incident vertices, in vertex order."""
        fr = self.frame
        return {
            e: tuple(v for i, v in enumerate(fr.vertices) if fr.edge_masks[j] >> i & 1)
            for j, e in enumerate(self.edges)
        }

    def incident_edges(self, v: str) -> tuple[str, ...]:
        fr = self.frame
        m = fr.vertex_edge_masks[fr.vindex[v]]
        return tuple(e for j, e in enumerate(self.edges) if m >> j & 1)

    def is_simple(self) -> bool:
        sets = [frozenset(vs) for vs in self.edge_map.values()]
        return len(set(sets)) == len(sets)

    @property
    def max_edge_degree(self) -> int:
        return max((m.bit_count() for m in self.frame.edge_masks), default=0)

    @property
    def delta(self) -> int:
        return len(self.incidence)

    def __repr__(self) -> str:
        es = ", ".join(f"{e}:{'/'.join(vs)}" for e, vs in self.edge_map.items())
        return (
            f"HypergraphWithBoundary(boundary={list(self.boundary)}, "
            f"interior={list(self.interior)}, edges={{{es}}})"
        )


def validate(h: HypergraphWithBoundary) -> None:
    """Raise the matching ``HypergraphError`` subclass if ``h`` is malformed."""
    for name, ids in (("boundary", h.boundary), ("interior", h.interior), ("edge", h.edges)):
        dup = [x for x, c in Counter(ids).items() if c > 1]
        if dup:
            raise DuplicateId(f"duplicate {name} id(s): {', '.join(sorted(dup))}")
    both = set(h.boundary) & set(h.interior)
    if both:
        raise DuplicateId(f"vertex id(s) both boundary and interior: {', '.join(sorted(both))}")
    if not h.boundary:
        raise EmptyBoundary("a hypergraph with boundary needs at least one boundary vertex")
    verts = set(h.vertices)
    edges = set(h.edges)
    for v, e in h.incidence:
        if v not in verts or e not in edges:
            raise DanglingIncidence(f"incidence ({v!r}, {e!r}) names an unknown vertex or edge")
    covered = {e for _, e in h.incidence}
    bare = sorted(edges - covered)
    if bare:
        raise EdgeWithNoVertex(f"edge(s) incident to no vertex: {', '.join(bare)}")


def degrees(h: HypergraphWithBoundary) -> tuple[dict[str, int], dict[str, int]]:
    vdeg = {v: 0 for v in h.vertices}
    edeg = {e: 0 for e in h.edges}
    for v, e in h.incidence:
        vdeg[v] += 1
        edeg[e] += 1
    return vdeg, edeg


# -- subhypergraphs ---------------------------------------------------------


@dataclass(frozen=True)
class SubhypergraphSelector:
    boundary: frozenset[str]
    interior: frozenset[str]
    edges: frozenset[str]

    @classmethod
    def full(cls, h: HypergraphWithBoundary) -> SubhypergraphSelector:
        return cls(frozenset(h.boundary), frozenset(h.interior), frozenset(h.edges))

    @property
    def vertices(self) -> frozenset[str]:
        return self.boundary | self.interior


def _selector_from_masks(h: HypergraphWithBoundary, vmask: int, emask: int) -> SubhypergraphSelector:
    fr = h.frame
    nb = fr.n_boundary
    b = frozenset(v for i, v in enumerate(fr.vertices) if i < nb and vmask >> i & 1)
    it = frozenset(v for i, v in enumerate(fr.vertices) if i >= nb and vmask >> i & 1)
    es = frozenset(e for j, e in enumerate(h.edges) if emask >> j & 1)
    return SubhypergraphSelector(b, it, es)


def selector_masks(h: HypergraphWithBoundary, s: SubhypergraphSelector) -> tuple[int, int]:
    fr = h.frame
    vmask = 0
    for v in s.vertices:
        vmask |= 1 << fr.vindex[v]
    emask = 0
    for e in s.edges:
        emask |= 1 << fr.eindex[e]
    return vmask, emask


def _check_drawn(h: HypergraphWithBoundary, s: SubhypergraphSelector) -> None:
    if not (s.boundary <= set(h.boundary) and s.interior <= set(h.interior) and s.edges <= set(h.edges)):
        raise HypergraphError("selector is not drawn from this hypergraph")


def materialize_subhypergraph(h: HypergraphWithBoundary, s: SubhypergraphSelector) -> HypergraphWithBoundary:
    _check_drawn(h, s)
    if not s.boundary:
        raise EmptyBoundary("selected subhypergraph has no boundary vertex")
    keep = s.vertices
    inc = frozenset((v, e) for v, e in h.incidence if v in keep and e in s.edges)
    orphans = sorted(s.edges - {e for _, e in inc})
    if orphans:
        raise OrphanEdge(f"selected edge(s) lose every incident vertex: {', '.join(orphans)}")
    return HypergraphWithBoundary(tuple(s.boundary), tuple(s.interior), tuple(s.edges), inc)


def legal_selector_masks(h: HypergraphWithBoundary) -> Iterator[tuple[int, int]]:
    """(vertex mask, edge mask) of every legal subhypergraph."""
    fr = h.frame
    nv, ne = len(fr.vertices), len(h.edges)
    bmask = fr.boundary_mask
    for emask in range(1 << ne):
        needed = [fr.edge_masks[j] for j in range(ne) if emask >> j & 1]
        for vmask in range(1 << nv):
            if not vmask & bmask:
                continue
            if all(m & vmask for m in needed):
                yield vmask, emask


def enumerate_subhypergraphs(h: HypergraphWithBoundary) -> Iterator[SubhypergraphSelector]:
    """Every subhypergraph with nonempty boundary and no orphaned edge, once."""
    for vmask, emask in legal_selector_masks(h):
        yield _selector_from_masks(h, vmask, emask)


def is_full(h: HypergraphWithBoundary, s: SubhypergraphSelector) -> bool:
    _check_drawn(h, s)
    keep = s.vertices
    return all(set(h.edge_map[e]) <= keep for e in s.edges)


def is_bordered(h: HypergraphWithBoundary, s: SubhypergraphSelector) -> bool:
    _check_drawn(h, s)
    if s.boundary != frozenset(h.boundary):
        return False
    for v in set(h.vertices) - s.vertices:
        if sum(1 for e in h.incident_edges(v) if e in s.edges) > 1:
            return False
    return True


# -- partitions: coarsenings and quotients ----------------------------------


def _canonical_blocks(blocks: Iterable[Iterable[str]]) -> tuple[tuple[str, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


@dataclass(frozen=True)
class EdgePartition:
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        blocks = _canonical_blocks(self.blocks)
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("partition blocks overlap")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def singletons(cls, items: Iterable[str]) -> EdgePartition:
        return cls(tuple((x,) for x in items))

    @property
    def items(self) -> frozenset[str]:
        return frozenset(x for b in self.blocks for x in b)

    def block_of(self) -> dict[str, tuple[str, ...]]:
        return {x: b for b in self.blocks for x in b}

    def restrict(self, keep: Iterable[str]) -> EdgePartition:
        keep = set(keep)
        return type(self)(tuple(kb for b in self.blocks if (kb := tuple(x for x in b if x in keep))))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return " | ".join(",".join(b) for b in self.blocks)


class VertexMergePlan(EdgePartition):
    """A partition of the vertex set; each block has at most one boundary vertex."""


def merged_id(block: tuple[str, ...]) -> str:
    return block[0] if len(block) == 1 else "+".join(block)


def coarsen(h: HypergraphWithBoundary, p: EdgePartition) -> HypergraphWithBoundary:
    """Merge each block of edges into a single edge (incidence is the union)."""
    if p.items != frozenset(h.edges):
        raise ValueError("edge partition does not cover the edge set exactly")
    em = h.edge_map
    new_edges = {}
    for b in p.blocks:
        vs: set[str] = set()
        for e in b:
            vs.update(em[e])
        new_edges[merged_id(b)] = sorted(vs)
    return HypergraphWithBoundary.from_edges(h.boundary, h.interior, new_edges, check=False)


def quotient(h: HypergraphWithBoundary, m: VertexMergePlan) -> HypergraphWithBoundary:
    """Merge each block of vertices; edge count is preserved."""
    if m.items != frozenset(h.vertices):
        raise ValueError("merge plan does not cover the vertex set exactly")
    bset = set(h.boundary)
    image: dict[str, str] = {}
    boundary, interior = [], []
    for b in m.blocks:
        bs = [v for v in b if v in bset]
        if len(bs) > 1:
            raise BoundaryCollision(f"block {{{', '.join(b)}}} merges boundary vertices {', '.join(bs)}")
        new = bs[0] if bs else merged_id(b)
        (boundary if bs else interior).append(new)
        for v in b:
            image[v] = new
    new_edges = {e: sorted({image[v] for v in vs}) for e, vs in h.edge_map.items()}
    return HypergraphWithBoundary.from_edges(boundary, interior, new_edges, check=False)


def is_subordinate(s: SubhypergraphSelector, p: EdgePartition) -> bool:
    return all(set(b) <= s.edges or not (set(b) & s.edges) for b in p.blocks)


def enumerate_edge_partitions(h: HypergraphWithBoundary) -> Iterator[EdgePartition]:
    for blocks in set_partitions(h.edges):
        yield EdgePartition(blocks)


def enumerate_vertex_merge_plans(h: HypergraphWithBoundary) -> Iterator[VertexMergePlan]:
    bset = set(h.boundary)
    for blocks in filtered_partitions(h.vertices, lambda b: sum(v in bset for v in b) <= 1):
        yield VertexMergePlan(blocks)


# -- isomorphism and refinement ---------------------------------------------


def isomorphic(h1: HypergraphWithBoundary, h2: HypergraphWithBoundary) -> bool:
    """Isomorphism with boundary vertices pinned by label; interior and edges free."""
    if h1.boundary != h2.boundary or len(h1.interior) != len(h2.interior) or len(h1.edges) != len(h2.edges):
        return False
    if sorted(degrees(h1)[1].values()) != sorted(degrees(h2)[1].values()):
        return False
    target = Counter(frozenset(vs) for vs in h2.edge_map.values())
    d1, d2 = degrees(h1)[0], degrees(h2)[0]
    if any(d1[b] != d2[b] for b in h1.boundary):
        return False
    src = sorted(h1.interior, key=lambda v: -d1[v])
    mapping = {b: b for b in h1.boundary}
    used: set[str] = set()
    edges1 = list(h1.edge_map.values())

    def rec(i: int) -> bool:
        if i == len(src):
            got = Counter(frozenset(mapping[v] for v in vs) for vs in edges1)
            return got == target
        v = src[i]
        for w in h2.interior:
            if w in used or d2[w] != d1[v]:
                continue
            mapping[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            used.discard(w)
            del mapping[v]
        return False

    return rec(0)


def is_refinement(h: HypergraphWithBoundary, h2: HypergraphWithBoundary) -> EdgePartition | None:
    """A partition ``p`` with ``coarsen(h, p)`` isomorphic to ``h2``, if any."""
    k = len(h2.edges)
    if k > len(h.edges) or h.boundary != h2.boundary or len(h.interior) != len(h2.interior):
        return None
    for p in enumerate_edge_partitions(h):
        if len(p) == k and isomorphic(coarsen(h, p), h2):
            return p
    return None
