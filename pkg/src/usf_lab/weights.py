"""Apparent weights and the coarsening/subhypergraph min-max problem.

All values are exact rationals. Every weight used here is affine in ``d``:
for a hypergraph with ``Δ`` incidences, ``E`` edges and ``I`` interior
vertices, ``η_{d,α} = d·(Δ - E - I) - 2α·(Δ - I)``. The enumeration tables
below store the two integer coefficients once per hypergraph and evaluate
them for any rational ``d`` with integer numpy arithmetic, so cached tables
can be swept over many dimensions cheaply.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import TooLarge
from .hypergraph import (
    EdgePartition,
    HypergraphWithBoundary,
    SubhypergraphSelector,
    _selector_from_masks,
    coarsen,
    enumerate_edge_partitions,
    enumerate_subhypergraphs,
    legal_selector_masks,
    materialize_subhypergraph,
)

Rational = int | Fraction | str

MAX_EDGES = 12
MAX_MAXMIN_EDGES = 8
MAX_MAXMIN_VERTICES = 14


def as_rational(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def eta(h: HypergraphWithBoundary, d: Rational, alpha: Rational = 2) -> Fraction:
    d, a = as_rational(d), as_rational(alpha)
    return (d - 2 * a) * h.delta - d * len(h.edges) - (d - 2 * a) * len(h.interior)


@dataclass(frozen=True)
class WeightReport:
    delta: int
    edge_count: int
    interior_count: int
    eta: dict[tuple[Fraction, Fraction], Fraction]


def weight_report(h: HypergraphWithBoundary, queries=((5, 2),)) -> WeightReport:
    """Weight summary of ``h``; ``queries`` is an iterable of ``(d, alpha)``."""
    values = {}
    for d, a in queries:
        key = (as_rational(d), as_rational(a))
        values[key] = eta(h, *key)
    return WeightReport(h.delta, len(h.edges), len(h.interior), values)


def is_buoyant(h: HypergraphWithBoundary, d: Rational) -> bool:
    return eta(h, d) <= 0


def _scaling(d: Fraction, alpha: Fraction) -> tuple[int, int, int]:
    """(P, Q, S) with ``S·η = P·A - Q·B`` for coefficients ``A, B``."""
    return d.numerator * alpha.denominator, 2 * alpha.numerator * d.denominator, d.denominator * alpha.denominator


def _evaluate(a: np.ndarray, b: np.ndarray, d: Fraction, alpha: Fraction) -> tuple[np.ndarray, int]:
    p, q, s = _scaling(d, alpha)
    if max(abs(p), abs(q)) < 2**40:
        return a * p - b * q, s
    # rationals with huge terms: fall back to Python ints
    return a.astype(object) * p - b.astype(object) * q, s


def _need_d_at_least_4(d: Fraction) -> None:
    if d < 4:
        raise ValueError(f"the min-max machinery needs d >= 4, got {d}")


# -- coarsenings ------------------------------------------------------------


def _coarsening_coefficients(edge_masks: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    """(Δ, #blocks) of every coarsening, in ``set_partitions`` order."""
    n = len(edge_masks)
    blocks: list[int] = []

    def rec(i: int) -> Iterator[tuple[int, int]]:
        if i == n:
            yield sum(m.bit_count() for m in blocks), len(blocks)
            return
        m = edge_masks[i]
        blocks.append(m)
        yield from rec(i + 1)
        blocks.pop()
        for k in range(len(blocks)):
            old = blocks[k]
            blocks[k] = old | m
            yield from rec(i + 1)
            blocks[k] = old

    yield from rec(0)


@dataclass(frozen=True)
class _CoarseningTable:
    a: np.ndarray  # Δ - E - I
    b: np.ndarray  # Δ - I
    nblocks: np.ndarray


@lru_cache(maxsize=512)
def _coarsening_table(h: HypergraphWithBoundary) -> _CoarseningTable:
    ni = len(h.interior)
    coeffs = np.fromiter(
        (x for pair in _coarsening_coefficients(h.frame.edge_masks) for x in pair), dtype=np.int64
    ).reshape(-1, 2)
    delta, nb = coeffs[:, 0], coeffs[:, 1]
    return _CoarseningTable(delta - nb - ni, delta - ni, nb)


def _partition_at(h: HypergraphWithBoundary, indices: set[int]) -> list[EdgePartition]:
    found = []
    for i, p in enumerate(enumerate_edge_partitions(h)):
        if i in indices:
            found.append(p)
            if len(found) == len(indices):
                break
    return found


def _is_forest(h: HypergraphWithBoundary) -> bool:
    """Every edge joins two vertices and no edge closes a cycle."""
    parent = {v: v for v in h.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for vs in h.edge_map.values():
        if len(vs) != 2:
            return False
        ru, rv = find(vs[0]), find(vs[1])
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def eta_hat(
    h: HypergraphWithBoundary, d: Rational, alpha: Rational = 2, *, max_edges: int = MAX_EDGES
) -> tuple[Fraction, EdgePartition]:
    """Minimum of η over all coarsenings, with an achieving edge partition.

    Ties are broken by fewest blocks, then by the lexicographic order of the
    canonical block tuples. For forests at alpha=2, d > 4 the identity is the
    unique minimiser: a block of b edges over c components raises η by
    d(c-1) + 4(b-c) > 0, so no enumeration is needed.
    """
    d, alpha = as_rational(d), as_rational(alpha)
    if alpha == 2 and d > 4 and h.edges and _is_forest(h):
        return eta(h, d), EdgePartition.singletons(h.edges)
    if len(h.edges) > max_edges:
        raise TooLarge(f"{len(h.edges)} edges exceeds the exact-enumeration guard of {max_edges}")
    if not h.edges:
        return -(d - 2 * alpha) * len(h.interior), EdgePartition(())
    t = _coarsening_table(h)
    vals, s = _evaluate(t.a, t.b, d, alpha)
    best = vals.min()
    tied = np.flatnonzero(vals == best)
    fewest = t.nblocks[tied].min()
    tied = tied[t.nblocks[tied] == fewest]
    if len(tied) == 1:
        part = _partition_at(h, {int(tied[0])})[0]
    else:
        part = min(_partition_at(h, {int(i) for i in tied}), key=lambda p: p.blocks)
    return Fraction(int(best), s), part


def d_optimal_coarsening(h: HypergraphWithBoundary, d: Rational, *, max_edges: int = MAX_EDGES) -> EdgePartition:
    return eta_hat(h, d, max_edges=max_edges)[1]


# -- subhypergraphs ---------------------------------------------------------


@lru_cache(maxsize=512)
def _edge_subset_scores(h: HypergraphWithBoundary) -> tuple[np.ndarray, np.ndarray]:
    """For each edge subset: (incidence score, size).

    The score is Σ_boundary deg' + Σ_interior max(0, deg' - 1), i.e. the
    best achievable ``Δ' - I'`` for that edge subset when ``d > 4``.
    """
    fr = h.frame
    nb = fr.n_boundary
    vem = fr.vertex_edge_masks
    ne = len(h.edges)
    score = np.zeros(1 << ne, dtype=np.int64)
    size = np.zeros(1 << ne, dtype=np.int64)
    for emask in range(1 << ne):
        s = 0
        for i, m in enumerate(vem):
            k = (m & emask).bit_count()
            s += k if i < nb else max(0, k - 1)
        score[emask] = s
        size[emask] = emask.bit_count()
    return score, size


def _best_vertices(h: HypergraphWithBoundary, emask: int) -> int:
    fr = h.frame
    nb = fr.n_boundary
    vmask = fr.boundary_mask
    for i, m in enumerate(fr.vertex_edge_masks):
        if i >= nb and (m & emask).bit_count() >= 2:
            vmask |= 1 << i
    for j, em in enumerate(fr.edge_masks):
        if emask >> j & 1 and not em & vmask:
            # every incident vertex is interior with restricted degree 1; any
            # one of them costs nothing
            vmask |= em & -em
    return vmask


def fast_max_subhypergraph_eta(h: HypergraphWithBoundary, d: Rational) -> tuple[Fraction, SubhypergraphSelector]:
    """Max of η_d over subhypergraphs, scanning edge subsets only (d >= 4)."""
    d = as_rational(d)
    _need_d_at_least_4(d)
    score, size = _edge_subset_scores(h)
    # η = (d-4)·score - d·|E'|, written in the A/B coefficient form
    vals, s = _evaluate(score - size, score, d, Fraction(2))
    best = int(np.argmax(vals))
    return Fraction(int(vals[best]), s), _selector_from_masks(h, _best_vertices(h, best), best)


def brute_max_subhypergraph_eta(h: HypergraphWithBoundary, d: Rational) -> tuple[Fraction, SubhypergraphSelector]:
    """Max of η_d over every legal subhypergraph, by direct evaluation."""
    d = as_rational(d)
    fr = h.frame
    imask = fr.interior_mask
    best: tuple[Fraction, int, int] | None = None
    for vmask, emask in legal_selector_masks(h):
        delta = sum((fr.edge_masks[j] & vmask).bit_count() for j in range(len(h.edges)) if emask >> j & 1)
        val = (d - 4) * delta - d * emask.bit_count() - (d - 4) * (vmask & imask).bit_count()
        if best is None or val > best[0]:
            best = (val, vmask, emask)
    assert best is not None
    return best[0], _selector_from_masks(h, best[1], best[2])


# -- the min-max problem ----------------------------------------------------


@dataclass(frozen=True)
class MinMaxSolution:
    value: Fraction
    witness_coarsening: EdgePartition
    witness_subhypergraph: SubhypergraphSelector  # of coarsen(h, witness_coarsening)


def min_max(h: HypergraphWithBoundary, d: Rational, *, max_edges: int = MAX_EDGES) -> MinMaxSolution:
    """min over coarsenings of max over subhypergraphs of η_d.

    A d-optimal coarsening attains the outer minimum, so only its
    subhypergraphs need to be scanned.
    """
    d = as_rational(d)
    _need_d_at_least_4(d)
    part = d_optimal_coarsening(h, d, max_edges=max_edges)
    hc = coarsen(h, part)
    value, sel = fast_max_subhypergraph_eta(hc, d)
    return MinMaxSolution(value, part, sel)


def min_max_brute(h: HypergraphWithBoundary, d: Rational) -> Fraction:
    """Trivial double loop: every coarsening, every subhypergraph."""
    d = as_rational(d)
    best = None
    for p in enumerate_edge_partitions(h):
        hc = coarsen(h, p)
        inner = max(eta(materialize_subhypergraph(hc, s), d) for s in enumerate_subhypergraphs(hc))
        if best is None or inner < best:
            best = inner
    return best


@dataclass(frozen=True)
class _MaxMinTable:
    blocks: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]  # (A, B, legal) per edge subset


def _partition_block_masks(masks: list[int]) -> Iterator[list[int]]:
    n = len(masks)
    blocks: list[int] = []

    def rec(i: int) -> Iterator[list[int]]:
        if i == n:
            yield list(blocks)
            return
        blocks.append(masks[i])
        yield from rec(i + 1)
        blocks.pop()
        for k in range(len(blocks)):
            old = blocks[k]
            blocks[k] = old | masks[i]
            yield from rec(i + 1)
            blocks[k] = old

    yield from rec(0)


@lru_cache(maxsize=512)
def _max_min_table(h: HypergraphWithBoundary) -> _MaxMinTable:
    fr = h.frame
    nv, ne = len(fr.vertices), len(h.edges)
    if ne > MAX_MAXMIN_EDGES or nv > MAX_MAXMIN_VERTICES:
        raise TooLarge(
            f"max-min table limited to {MAX_MAXMIN_EDGES} edges and {MAX_MAXMIN_VERTICES} vertices"
        )
    vsets = np.arange(1 << nv, dtype=np.int64)
    vsets = vsets[(vsets & fr.boundary_mask) != 0]
    n_int = np.bitwise_count(vsets & fr.interior_mask).astype(np.int64)
    rows = []
    for emask in range(1 << ne):
        masks = [fr.edge_masks[j] for j in range(ne) if emask >> j & 1]
        legal = np.ones(len(vsets), dtype=bool)
        for m in masks:
            legal &= (vsets & m) != 0
        a_rows, b_rows = [], []
        for blocks in _partition_block_masks(masks):
            delta = np.zeros(len(vsets), dtype=np.int64)
            for bm in blocks:
                delta += np.bitwise_count(vsets & bm).astype(np.int64)
            a_rows.append(delta - len(blocks) - n_int)
            b_rows.append(delta - n_int)
        rows.append((np.array(a_rows), np.array(b_rows), legal))
    return _MaxMinTable(tuple(rows))


def max_min(h: HypergraphWithBoundary, d: Rational) -> Fraction:
    """max over subhypergraphs of the min over their coarsenings of η_d."""
    d = as_rational(d)
    _need_d_at_least_4(d)
    best = None
    s = 1
    for a, b, legal in _max_min_table(h).blocks:
        if not legal.any():
            continue
        vals, s = _evaluate(a, b, d, Fraction(2))
        cand = vals.min(axis=0)[legal].max()
        if best is None or cand > best:
            best = cand
    return Fraction(int(best), s)


def max_min_brute(h: HypergraphWithBoundary, d: Rational) -> Fraction:
    """Every subhypergraph, every coarsening of it, by direct evaluation."""
    d = as_rational(d)
    best = None
    for s in enumerate_subhypergraphs(h):
        sub = materialize_subhypergraph(h, s)
        inner = min(eta(coarsen(sub, p), d) for p in enumerate_edge_partitions(sub)) if sub.edges else eta(sub, d)
        if best is None or inner > best:
            best = inner
    return best
