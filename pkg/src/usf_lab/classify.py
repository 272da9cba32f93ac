"""Ubiquity verdicts built on the min-max criterion."""
from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BadDimension, MissingCap, NotAForest, NotAGraph, TooLarge
from .hypergraph import (
    EdgePartition,
    HypergraphWithBoundary,
    SubhypergraphSelector,
    VertexMergePlan,
    _selector_from_masks,
    enumerate_vertex_merge_plans,
    is_bordered,
    legal_selector_masks,
    materialize_subhypergraph,
    quotient,
)
from .weights import Rational, as_rational, eta, min_max

GRAPH = "graph"
HYPERGRAPH = "hypergraph"

MAX_QUOTIENT_VERTICES = 9


@dataclass(frozen=True)
class DimensionVerdict:
    dimension: int
    faithfully_ubiquitous: bool
    ubiquitous: bool | None  # None when only faithfulness was asked for
    witness_quotient: VertexMergePlan | None
    minmax_value: Fraction
    r_requirement: str
    witness_coarsening: EdgePartition | None = None
    edge_degree_cap: int | None = None


@dataclass(frozen=True)
class TreeCriterionReport:
    max_ratio: Fraction | float  # math.inf when a subgraph has edges but no interior vertex
    threshold: Fraction
    verdict: bool


def check_graph(h: HypergraphWithBoundary) -> None:
    bad = [e for e, vs in h.edge_map.items() if len(vs) > 2]
    if bad:
        raise NotAGraph(
            f"edge(s) {', '.join(bad)} have more than two vertices"
        )
    if not h.is_simple():
        raise NotAGraph("parallel edges with identical vertex sets; graph mode needs a simple graph")


def _check_mode(mode: str) -> None:
    if mode not in (GRAPH, HYPERGRAPH):
        raise ValueError(f"mode must be 'graph' or 'hypergraph', got {mode!r}")


def _check_dimension(d: int) -> int:
    if isinstance(d, bool) or int(d) != d or d < 5:
        raise BadDimension(f"verdicts are defined for integer dimensions d >= 5, got {d}")
    return int(d)


def _r_requirement(mode: str, cap: int | None) -> str:
    if mode == GRAPH:
        return "any r >= 1"
    if cap is None:
        return "r >= R_G(H)"
    return f"r >= R_G(H); quotients with edge degree > {cap} skipped"


def classify_faithful(h: HypergraphWithBoundary, d: int, mode: str = HYPERGRAPH) -> DimensionVerdict:
    _check_mode(mode)
    d = _check_dimension(d)
    if mode == GRAPH:
        check_graph(h)
    sol = min_max(h, d)
    return DimensionVerdict(
        dimension=d,
        faithfully_ubiquitous=sol.value <= 0,
        ubiquitous=True if sol.value <= 0 else None,
        witness_quotient=None,
        minmax_value=sol.value,
        r_requirement=_r_requirement(mode, None),
        witness_coarsening=sol.witness_coarsening,
    )


def classify_ubiquitous(
    h: HypergraphWithBoundary,
    d: int,
    mode: str = HYPERGRAPH,
    max_edge_degree_cap: int | None = None,
    *,
    tree_shortcut: bool = True,
) -> DimensionVerdict:
    """Ubiquity = some quotient is faithfully ubiquitous.

    In hypergraph mode, ``max_edge_degree_cap`` stands in for the unknown
    radius requirement: quotients with a larger edge, the identity included,
    are inadmissible. If
    only inadmissible quotients pass the criterion the answer hinges on
    unknown R_G values and ``MissingCap`` is raised.

    For trees and d > 8 ubiquity coincides with faithful ubiquity, so the
    quotient scan is skipped unless ``tree_shortcut`` is off.
    """
    _check_mode(mode)
    d = _check_dimension(d)
    if mode == GRAPH:
        check_graph(h)
    cap = max_edge_degree_cap if mode == HYPERGRAPH else None
    base = min_max(h, d)
    identity = VertexMergePlan.singletons(h.vertices)
    faithful = base.value <= 0
    witness = None
    blocked = False
    admissible = cap is None or h.max_edge_degree <= cap
    if admissible and (faithful or (tree_shortcut and d > 8 and is_tree(h))):
        return DimensionVerdict(
            dimension=d,
            faithfully_ubiquitous=faithful,
            ubiquitous=faithful,
            witness_quotient=identity if faithful else None,
            minmax_value=base.value,
            r_requirement=_r_requirement(mode, cap),
            witness_coarsening=base.witness_coarsening,
            edge_degree_cap=cap,
        )
    if len(h.vertices) > MAX_QUOTIENT_VERTICES:
        raise TooLarge(
            f"quotient scan over {len(h.vertices)} vertices exceeds the guard of {MAX_QUOTIENT_VERTICES}"
        )
    for plan in [identity] + [p for p in enumerate_vertex_merge_plans(h) if p != identity]:
        q = h if plan == identity else quotient(h, plan)
        ok = base.value <= 0 if plan == identity else min_max(q, d).value <= 0
        if not ok:
            continue
        if cap is not None and q.max_edge_degree > cap:
            blocked = True
            continue
        witness = plan
        break
    if witness is None and blocked:
        raise MissingCap(
            f"only quotients with edges above degree {cap} satisfy the criterion at d={d}; "
            "the verdict depends on R_G values beyond the cap"
        )
    return DimensionVerdict(
        dimension=d,
        faithfully_ubiquitous=faithful,
        ubiquitous=witness is not None,
        witness_quotient=witness,
        minmax_value=base.value,
        r_requirement=_r_requirement(mode, cap),
        witness_coarsening=base.witness_coarsening,
        edge_degree_cap=cap,
    )


# -- trees -------------------------------------------------------------------


def check_forest(t: HypergraphWithBoundary) -> None:
    check_graph(t)
    if any(len(vs) != 2 for vs in t.edge_map.values()):
        raise NotAForest("every edge of a forest joins exactly two vertices")
    parent = {v: v for v in t.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e, (u, v) in t.edge_map.items():
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotAForest(f"edge {e} closes a cycle")
        parent[ru] = rv


def is_tree(h: HypergraphWithBoundary) -> bool:
    """Connected graph with boundary, every edge joining two vertices, no cycle."""
    if any(len(vs) != 2 for vs in h.edge_map.values()):
        return False
    if len(h.edges) != len(h.vertices) - 1:
        return False
    try:
        check_forest(h)
    except (NotAForest, NotAGraph):
        return False
    return True


def max_subgraph_ratio(t: HypergraphWithBoundary) -> Fraction | float:
    """max |E'|/|V_int'| over subgraphs with at least one edge."""
    em = t.edge_map
    interior = set(t.interior)
    edges = list(em)
    best: Fraction | float = Fraction(0)
    for k in range(1, len(edges) + 1):
        for sub in combinations(edges, k):
            inner = {v for e in sub for v in em[e] if v in interior}
            r = math.inf if not inner else Fraction(k, len(inner))
            if r > best:
                best = r
                if best == math.inf:
                    return best
    return best


def tree_criterion(t: HypergraphWithBoundary, d: Rational) -> TreeCriterionReport:
    check_forest(t)
    d = as_rational(d)
    if d <= 8:
        raise BadDimension(f"the tree criterion needs d > 8, got {d}")
    threshold = (d - 4) / (d - 8)
    ratio = max_subgraph_ratio(t)
    return TreeCriterionReport(ratio, threshold, ratio <= threshold)


# -- dimension sweeps --------------------------------------------------------


def _largest_true(pred, lo: int, hi: int) -> int | None:
    if not pred(lo):
        return None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def critical_dimensions(
    h: HypergraphWithBoundary,
    mode: str = HYPERGRAPH,
    d_range: tuple[int, int] = (5, 64),
    max_edge_degree_cap: int | None = None,
) -> tuple[int | None, int | None]:
    """Largest dimensions in ``d_range`` with a faithful / ubiquitous verdict.

    Both verdicts are monotone in d, so a binary search is exact.
    """
    lo, hi = d_range
    _check_dimension(lo)
    if hi < lo:
        raise ValueError("empty dimension range")
    faithful = _largest_true(lambda d: classify_faithful(h, d, mode).faithfully_ubiquitous, lo, hi)
    ubiq = _largest_true(
        lambda d: bool(classify_ubiquitous(h, d, mode, max_edge_degree_cap).ubiquitous), lo, hi
    )
    return faithful, ubiq


# -- structure checks for d with integral d/(d-4) -----------------------------


def bordered_zero_subhypergraphs(h: HypergraphWithBoundary, d: Rational) -> Iterator[SubhypergraphSelector]:
    """Proper, non-trivial bordered subhypergraphs with η_d = 0."""
    d = as_rational(d)
    full = SubhypergraphSelector.full(h)
    bmask = h.frame.boundary_mask
    for vmask, emask in legal_selector_masks(h):
        if emask == 0 or vmask & bmask != bmask:
            continue
        s = _selector_from_masks(h, vmask, emask)
        if s == full or not is_bordered(h, s):
            continue
        if eta(materialize_subhypergraph(h, s), d) == 0:
            yield s


def is_d_basic(h: HypergraphWithBoundary, d: Rational) -> bool:
    d = as_rational(d)
    if d <= 4:
        raise BadDimension("d-basic is defined for d > 4")
    limit = d / (d - 4)
    if any(len(vs) <= limit for vs in h.edge_map.values()):
        return False
    return next(bordered_zero_subhypergraphs(h, d), None) is None
