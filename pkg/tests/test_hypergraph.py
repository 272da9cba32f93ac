from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from usf_lab import (
    BoundaryCollision,
    DanglingIncidence,
    DuplicateId,
    EdgePartition,
    EdgeWithNoVertex,
    EmptyBoundary,
    HypergraphWithBoundary,
    OrphanEdge,
    SubhypergraphSelector,
    VertexMergePlan,
    coarsen,
    enumerate_edge_partitions,
    enumerate_subhypergraphs,
    enumerate_vertex_merge_plans,
    is_bordered,
    is_full,
    is_refinement,
    is_subordinate,
    isomorphic,
    materialize_subhypergraph,
    quotient,
)
from usf_lab.catalog import path, star
from usf_lab.hypergraph import degrees, merged_id, validate
from usf_lab.partitions import bell, set_partitions

from .strategies import hypergraphs

H = HypergraphWithBoundary.from_edges


def test_minimal_hypergraph_is_valid():
    validate(H(["a"], [], {"e": ["a"]}))


def test_empty_boundary_rejected():
    with pytest.raises(EmptyBoundary):
        H([], ["u"], {"e": ["u"]})


def test_edge_with_no_vertex_rejected():
    with pytest.raises(EdgeWithNoVertex):
        HypergraphWithBoundary.from_edges(["a"], [], {"e": []})


def test_dangling_incidence_rejected():
    h = HypergraphWithBoundary(("a",), (), ("e",), frozenset({("zz", "e")}))
    with pytest.raises(DanglingIncidence):
        validate(h)


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateId):
        H(["a"], ["a"], {"e": ["a"]})
    with pytest.raises(DuplicateId):
        H(["a", "b"], [], {"e": ["a", "a"]})


def test_degrees():
    vdeg, edeg = degrees(H(["a", "b", "c"], [], {"e": ["a", "b", "c"]}))
    assert edeg == {"e": 3}
    assert vdeg == {"a": 1, "b": 1, "c": 1}
    vdeg, _ = degrees(H(["a", "b"], [], {"e": ["a", "b"], "f": ["a", "b"]}))
    assert vdeg["a"] == 2
    vdeg, edeg = degrees(H(["a", "b"], ["u"], {}))
    assert set(vdeg.values()) == {0} and edeg == {}


def test_parallel_edges_allowed_but_not_simple():
    h = H(["a", "b"], [], {"e": ["a", "b"], "f": ["a", "b"]})
    assert not h.is_simple()
    assert path(2).is_simple()


# -- subhypergraphs ---------------------------------------------------------


def test_full_selector_materializes_to_h():
    h = path(3)
    assert materialize_subhypergraph(h, SubhypergraphSelector.full(h)) == h


def test_orphan_edge_rejected():
    h = path(2)
    s = SubhypergraphSelector(frozenset({"b"}), frozenset(), frozenset({"e1"}))
    with pytest.raises(OrphanEdge):
        materialize_subhypergraph(h, s)


def test_single_edge_subhypergraph_of_path():
    h = path(2)  # a - u1 - b
    s = SubhypergraphSelector(frozenset({"a"}), frozenset({"u1"}), frozenset({"e1"}))
    sub = materialize_subhypergraph(h, s)
    assert sub.edge_map == {"e1": ("a", "u1")}


def _count_selectors_oracle(h):
    """Independent count over explicit subset triples."""
    em = h.edge_map
    count = 0
    bs, ins, es = list(h.boundary), list(h.interior), list(h.edges)
    for bm in product([0, 1], repeat=len(bs)):
        B = {v for v, k in zip(bs, bm) if k}
        if not B:
            continue
        for im in product([0, 1], repeat=len(ins)):
            V = B | {v for v, k in zip(ins, im) if k}
            for emask in product([0, 1], repeat=len(es)):
                E = [e for e, k in zip(es, emask) if k]
                if all(set(em[e]) & V for e in E):
                    count += 1
    return count


def test_enumeration_single_edge_one_boundary():
    h = H(["a"], [], {"e": ["a"]})
    sels = list(enumerate_subhypergraphs(h))
    assert len(sels) == _count_selectors_oracle(h) == 2


def test_enumeration_boundary_interior_edge():
    h = H(["a"], ["u"], {"e": ["a", "u"]})
    # triples with nonempty boundary: ({a}, {}, {}), ({a}, {}, {e}), ({a}, {u}, {}), ({a}, {u}, {e})
    assert len(list(enumerate_subhypergraphs(h))) == 4


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_enumeration_edgeless(k):
    h = H([f"b{i}" for i in range(k)], [], {})
    assert len(list(enumerate_subhypergraphs(h))) == 2**k - 1


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_edges=4, max_vertices=5))
def test_enumeration_count_matches_oracle(h):
    sels = list(enumerate_subhypergraphs(h))
    assert len(sels) == len(set(sels)) == _count_selectors_oracle(h)


# -- coarsening ---------------------------------------------------------------


def test_coarsen_identity():
    h = star(3)
    assert isomorphic(coarsen(h, EdgePartition.singletons(h.edges)), h)


def test_coarsen_parallel_pair():
    h = H(["a", "b"], [], {"e": ["a", "b"], "f": ["a", "b"]})
    c = coarsen(h, EdgePartition([("e", "f")]))
    assert len(c.edges) == 1 and c.delta == 2 and h.delta == 4


def test_coarsen_star_into_one_edge():
    h = star(3)
    c = coarsen(h, EdgePartition([tuple(h.edges)]))
    (vs,) = c.edge_map.values()
    assert set(vs) == {"x1", "x2", "x3", "c"} and c.delta == 4


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_edges=4, max_vertices=5))
def test_coarsening_round_trip_and_delta(h):
    vsets = h.edge_map
    for p in enumerate_edge_partitions(h):
        c = coarsen(h, p)
        assert len(c.edges) == len(p)
        assert c.vertices == h.vertices
        assert c.delta <= h.delta
        disjoint_blocks = all(
            len({v for e in b for v in vsets[e]}) == sum(len(vsets[e]) for e in b) for b in p.blocks
        )
        assert (c.delta == h.delta) == disjoint_blocks


# -- quotients ----------------------------------------------------------------


def test_quotient_identity():
    h = path(3)
    assert quotient(h, VertexMergePlan.singletons(h.vertices)) == h


def test_quotient_merges_two_interior_vertices():
    h = path(3)  # a - u1 - u2 - b
    q = quotient(h, VertexMergePlan([("a",), ("b",), ("u1", "u2")]))
    assert len(q.edges) == 3
    assert len(q.interior) == 1
    m = q.interior[0]
    assert q.edge_map["e2"] == (m,)
    assert set(q.edge_map["e1"]) == {"a", m} and set(q.edge_map["e3"]) == {"b", m}


def test_quotient_boundary_collision():
    h = path(1)
    with pytest.raises(BoundaryCollision):
        quotient(h, VertexMergePlan([("a", "b")]))


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_edges=4, max_vertices=5))
def test_quotient_preserves_edges(h):
    for m in enumerate_vertex_merge_plans(h):
        q = quotient(h, m)
        assert len(q.edges) == len(h.edges)
        assert len(q.vertices) <= len(h.vertices)
        assert len(q.boundary) == len(h.boundary)


# -- predicates ---------------------------------------------------------------


def test_full_selector_is_full_and_bordered():
    h = path(3)
    s = SubhypergraphSelector.full(h)
    assert is_full(h, s) and is_bordered(h, s)


def test_single_edge_missing_vertex_is_not_full():
    h = path(2)
    s = SubhypergraphSelector(frozenset({"a"}), frozenset(), frozenset({"e1"}))
    assert not is_full(h, s)


def test_subordinate_split_block():
    s = SubhypergraphSelector(frozenset({"a"}), frozenset(), frozenset({"e1"}))
    assert not is_subordinate(s, EdgePartition([("e1", "e2")]))
    assert is_subordinate(s, EdgePartition([("e1",), ("e2",)]))


def test_bordered_rejects_vertex_touching_two_kept_edges():
    h = path(2)
    s = SubhypergraphSelector(frozenset({"a", "b"}), frozenset(), frozenset({"e1", "e2"}))
    assert not is_bordered(h, s)
    s = SubhypergraphSelector(frozenset({"a", "b"}), frozenset(), frozenset({"e1"}))
    assert is_bordered(h, s)


# -- partition enumeration ----------------------------------------------------


def test_bell_numbers():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("n", range(0, 7))
def test_partition_counts(n):
    parts = list(set_partitions(list(range(n))))
    assert len(parts) == bell(n)
    canon = {tuple(sorted(tuple(sorted(b)) for b in p)) for p in parts}
    assert len(canon) == len(parts)


def test_edge_partition_counts():
    assert len(list(enumerate_edge_partitions(star(3)))) == 5
    assert len(list(enumerate_edge_partitions(star(4)))) == 15


def _merge_plan_oracle(h):
    bset = set(h.boundary)
    return sum(
        1 for p in set_partitions(list(h.vertices)) if all(len(bset & set(b)) <= 1 for b in p)
    )


def test_merge_plans_two_boundary_one_interior():
    h = path(2)
    plans = list(enumerate_vertex_merge_plans(h))
    assert len(plans) == 3 == _merge_plan_oracle(h)


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_edges=3, max_vertices=7))
def test_merge_plan_count_matches_filter(h):
    plans = list(enumerate_vertex_merge_plans(h))
    assert len(plans) == len(set(plans)) == _merge_plan_oracle(h)


# -- refinement ---------------------------------------------------------------


def test_refinement_round_trip():
    h = star(3)
    p = EdgePartition([("s1", "s2"), ("s3",)])
    w = is_refinement(h, coarsen(h, p))
    assert w is not None and isomorphic(coarsen(h, w), coarsen(h, p))


def test_refinement_absent_when_more_edges():
    single = H(["a", "b"], [], {"e": ["a", "b"]})
    double = H(["a", "b"], [], {"e": ["a", "b"], "f": ["a", "b"]})
    assert is_refinement(single, double) is None


def test_refinement_parallel_merge():
    double = H(["a", "b"], [], {"e": ["a", "b"], "f": ["a", "b"]})
    single = H(["a", "b"], [], {"g": ["a", "b"]})
    assert is_refinement(double, single) == EdgePartition([("e", "f")])


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_edges=4, max_vertices=5), st.randoms(use_true_random=False))
def test_subordinate_coarsenings_commute(h, rnd):
    parts = list(enumerate_edge_partitions(h))
    p = rnd.choice(parts)
    kept_blocks = [b for b in p.blocks if rnd.random() < 0.5]
    edges = frozenset(e for b in kept_blocks for e in b)
    verts = {v for e in edges for v in h.edge_map[e]} | {h.boundary[0]}
    s = SubhypergraphSelector(
        frozenset(v for v in verts if v in h.boundary), frozenset(v for v in verts if v in h.interior), edges
    )
    assert is_full(h, s) and is_subordinate(s, p)
    left = coarsen(materialize_subhypergraph(h, s), p.restrict(edges))
    hc = coarsen(h, p)
    merged = {merged_id(b) for b in kept_blocks}
    right = materialize_subhypergraph(
        hc, SubhypergraphSelector(s.boundary, s.interior, frozenset(merged))
    )
    assert isomorphic(left, right)
