"""Named hypergraphs with boundary used throughout the examples and tests.

Shorthand grammar understood by :func:`resolve_builtin`::

    edge:k          one edge over k boundary vertices
    path:n          path with n edges, endpoints on the boundary
    star:k          k boundary leaves around one interior centre
    tree-family:d   the five-armed tree with d-8 interior vertices (d >= 9)
    separating:d    a tree faithful at d but not at d+1 (d >= 9)
    three-pairs     three boundary pairs tied to a central triple
"""
from __future__ import annotations

import re
from collections.abc import Callable

from .hypergraph import HypergraphWithBoundary

H = HypergraphWithBoundary.from_edges


def _pad(i: int, n: int) -> str:
    return f"{i:0{len(str(n))}d}"


def single_edge(k: int) -> HypergraphWithBoundary:
    if k < 1:
        raise ValueError("edge:k needs k >= 1")
    boundary = [f"b{_pad(i, k)}" for i in range(1, k + 1)]
    return H(boundary, [], {"e": boundary})


def path(n: int) -> HypergraphWithBoundary:
    if n < 1:
        raise ValueError("path:n needs n >= 1")
    chain = ["a"] + [f"u{_pad(i, n)}" for i in range(1, n)] + ["b"]
    edges = {f"e{_pad(i, n)}": [chain[i - 1], chain[i]] for i in range(1, n + 1)}
    return H(["a", "b"], chain[1:-1], edges)


def star(k: int) -> HypergraphWithBoundary:
    if k < 1:
        raise ValueError("star:k needs k >= 1")
    leaves = [f"x{_pad(i, k)}" for i in range(1, k + 1)]
    return H(leaves, ["c"], {f"s{leaf[1:]}": [leaf, "c"] for leaf in leaves})


def tree_family(d: int) -> HypergraphWithBoundary:
    """One degree-five centre with arms of length k+1 (l of them) and k (5-l).

    Here ``d = 4 + 5k + l`` with ``0 <= l < 5``; the five arm ends are the
    boundary, so there are d-8 interior vertices and d-4 edges. It separates
    d from d+1 when l = 0 or k + l >= 4. For d in {10, 11, 15} the short arms
    alone beat the threshold and the tree is not faithful at d; see
    :func:`separating_tree`.
    """
    if d < 9:
        raise ValueError("tree-family:d needs d >= 9")
    k, ell = divmod(d - 4, 5)
    boundary, interior, edges = [], ["c"], {}
    for arm in range(1, 6):
        length = k + 1 if arm <= ell else k
        prev = "c"
        for step in range(1, length + 1):
            if step == length:
                node = f"x{arm}"
                boundary.append(node)
            else:
                node = f"v{arm}_{step:02d}"
                interior.append(node)
            edges[f"e{arm}_{step:02d}"] = [prev, node]
            prev = node
    return H(boundary, interior, edges)


# Same counts as tree_family(d), found by exhaustive search over trees with
# five leaves; (centre, neighbour) spine edges plus boundary leaves per node.
_REPAIRED = {
    10: ([("c1", "c2")], {"c1": 3, "c2": 2}),
    11: ([("c1", "c2"), ("c1", "c3")], {"c1": 1, "c2": 2, "c3": 2}),
    15: (
        [("c1", "m1"), ("c1", "m2"), ("c1", "m3"), ("c1", "c2"), ("c2", "c3"), ("c3", "c4")],
        {"m1": 1, "m2": 1, "m3": 1, "c3": 1, "c4": 1},
    ),
}


def separating_tree(d: int) -> HypergraphWithBoundary:
    """A tree with five boundary leaves, d-8 interior vertices and d-4 edges
    that is faithful at d and not at d+1."""
    if d not in _REPAIRED:
        return tree_family(d)
    spine, leaves = _REPAIRED[d]
    interior = sorted({v for e in spine for v in e})
    edges = {f"i{n}": list(e) for n, e in enumerate(spine, 1)}
    boundary = []
    for node in interior:
        for j in range(leaves.get(node, 0)):
            leaf = f"x{len(boundary) + 1}"
            boundary.append(leaf)
            edges[f"l{len(boundary)}"] = [node, leaf]
    return H(boundary, interior, edges)


def three_pairs() -> HypergraphWithBoundary:
    boundary = [f"{s}{i}" for i in (1, 2, 3) for s in "ab"]
    interior = ["u1", "u2", "u3"]
    edges = {f"p{i}": [f"a{i}", f"b{i}", f"u{i}"] for i in (1, 2, 3)}
    edges["t"] = interior
    return H(boundary, interior, edges)


def builtin_examples() -> dict[str, Callable[..., HypergraphWithBoundary]]:
    return {
        "edge": single_edge,
        "path": path,
        "star": star,
        "tree-family": tree_family,
        "separating": separating_tree,
        "three-pairs": three_pairs,
    }


_SHORTHAND = re.compile(r"^(edge|path|star|tree-family|separating):(\d+)$")


def is_builtin_name(name: str) -> bool:
    return name == "three-pairs" or bool(_SHORTHAND.match(name))


def resolve_builtin(name: str) -> HypergraphWithBoundary:
    if name == "three-pairs":
        return three_pairs()
    m = _SHORTHAND.match(name)
    if not m:
        raise KeyError(f"unknown builtin {name!r}")
    return builtin_examples()[m.group(1)](int(m.group(2)))
