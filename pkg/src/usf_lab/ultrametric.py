"""Linear combinations of minima over the ultrametric polytope.

A point of the polytope is an ultrametric on a finite index set with values
in [0, 1]. Objectives have the form ``F(x) = sum_k c_k * min{x[a,b] : (a,b) in W_k}``.
Their maximum is attained at a 0/1 point, i.e. one induced by a partition
(distance 0 inside blocks, 1 across), so exact maximization is a partition scan.
"""
from __future__ import annotations

import random
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import TooLarge
from .partitions import filtered_partitions

MAX_POINTS = 10

Pair = tuple[Hashable, Hashable]


@dataclass(frozen=True)
class UltrametricPoint:
    index_set: tuple
    values: Mapping[frozenset, Fraction] = field(repr=False)

    def __post_init__(self) -> None:
        a = self.index_set
        if len(set(a)) != len(a):
            raise ValueError("index set has repeated elements")
        vals = {}
        for x, y in combinations(a, 2):
            key = frozenset((x, y))
            if key not in self.values:
                raise ValueError(f"missing distance for {x!r}, {y!r}")
            v = Fraction(self.values[key])
            if not 0 <= v <= 1:
                raise ValueError(f"distance {v} for {x!r}, {y!r} is outside [0, 1]")
            vals[key] = v
        object.__setattr__(self, "values", vals)
        for x, y, z in combinations(a, 3):
            dxy, dyz, dxz = self(x, y), self(y, z), self(x, z)
            if dxy > max(dxz, dyz) or dyz > max(dxy, dxz) or dxz > max(dxy, dyz):
                raise ValueError(f"strong triangle inequality fails on {x!r}, {y!r}, {z!r}")

    def __call__(self, a, b) -> Fraction:
        if a == b:
            return Fraction(0)
        return self.values[frozenset((a, b))]

    @classmethod
    def from_function(cls, index_set: Iterable, dist) -> UltrametricPoint:
        a = tuple(index_set)
        return cls(a, {frozenset((x, y)): dist(x, y) for x, y in combinations(a, 2)})

    @classmethod
    def from_partition(cls, index_set: Iterable, blocks: Iterable[Iterable]) -> UltrametricPoint:
        where = {x: i for i, b in enumerate(blocks) for x in b}
        return cls.from_function(index_set, lambda x, y: Fraction(int(where[x] != where[y])))

    def scaled(self, lam) -> UltrametricPoint:
        lam = Fraction(lam)
        return UltrametricPoint(self.index_set, {k: lam * v for k, v in self.values.items()})

    def shifted(self, alpha) -> UltrametricPoint:
        alpha = Fraction(alpha)
        return UltrametricPoint(self.index_set, {k: v + alpha for k, v in self.values.items()})

    def is_zero_one(self) -> bool:
        return all(v in (0, 1) for v in self.values.values())


@dataclass(frozen=True)
class ObjectiveSpec:
    terms: tuple[tuple[Fraction, frozenset[Pair]], ...]

    def __post_init__(self) -> None:
        clean = []
        for c, w in self.terms:
            w = frozenset(tuple(p) for p in w)
            if not w:
                raise ValueError("every term needs a nonempty support")
            clean.append((Fraction(c), w))
        object.__setattr__(self, "terms", tuple(clean))

    def elements(self) -> set:
        return {x for _, w in self.terms for p in w for x in p}

    def check_within(self, index_set: Iterable) -> None:
        missing = self.elements() - set(index_set)
        if missing:
            raise ValueError(f"support mentions elements outside the index set: {sorted(map(str, missing))}")


def evaluate(f: ObjectiveSpec, x: UltrametricPoint) -> Fraction:
    f.check_within(x.index_set)
    return sum((c * min(x(a, b) for a, b in w) for c, w in f.terms), Fraction(0))


def _partition_value(f: ObjectiveSpec, where: Mapping) -> Fraction:
    total = Fraction(0)
    for c, w in f.terms:
        # min of 0/1 distances is 1 only when every pair is split
        if all(where[a] != where[b] for a, b in w):
            total += c
    return total


def _scan(f: ObjectiveSpec, index_set: Sequence, allowed=None) -> tuple[Fraction, tuple[tuple, ...]]:
    a = tuple(index_set)
    if len(a) > MAX_POINTS:
        raise TooLarge(f"exact maximization is capped at {MAX_POINTS} points, got {len(a)}")
    f.check_within(a)
    best: tuple[Fraction, tuple[tuple, ...]] | None = None
    for part in filtered_partitions(a, allowed):
        where = {x: i for i, b in enumerate(part) for x in b}
        v = _partition_value(f, where)
        if best is None or v > best[0]:
            best = (v, tuple(tuple(b) for b in part))
    assert best is not None
    return best


def maximize_over_polytope(f: ObjectiveSpec, index_set: Sequence) -> tuple[Fraction, tuple[tuple, ...]]:
    """Maximum of ``f`` on the ultrametric polytope and an achieving partition."""
    return _scan(f, index_set)


def maximize_blockwise(f: ObjectiveSpec, blocks: Sequence[Sequence]) -> tuple[Fraction, tuple[tuple, ...]]:
    """Same as :func:`maximize_over_polytope`, with distance 1 forced across blocks."""
    owner = {}
    for i, b in enumerate(blocks):
        for x in b:
            if x in owner:
                raise ValueError(f"{x!r} lies in two blocks")
            owner[x] = i
    items = [x for b in blocks for x in b]
    return _scan(f, items, lambda blk: len({owner[x] for x in blk}) == 1)


def subdominant_ultrametric(index_set: Sequence, l: Mapping[frozenset, Fraction]) -> dict[frozenset, Fraction]:
    """Largest ultrametric below ``l``: minimax chain values, via Kruskal merging."""
    a = tuple(index_set)
    members = {x: [x] for x in a}
    root = {x: x for x in a}
    out: dict[frozenset, Fraction] = {}
    pairs = sorted(combinations(a, 2), key=lambda p: l[frozenset(p)])
    for x, y in pairs:
        rx, ry = root[x], root[y]
        if rx == ry:
            continue
        w = l[frozenset((x, y))]
        for u in members[rx]:
            for v in members[ry]:
                out[frozenset((u, v))] = w
        if len(members[rx]) < len(members[ry]):
            rx, ry = ry, rx
        for v in members[ry]:
            root[v] = rx
        members[rx].extend(members.pop(ry))
    return out


def minimax_chain_oracle(index_set: Sequence, l: Mapping[frozenset, Fraction]) -> dict[frozenset, Fraction]:
    """min over simple chains of the largest step, by enumerating chains."""
    a = tuple(index_set)
    out = {}
    for x, y in combinations(a, 2):
        rest = [z for z in a if z not in (x, y)]
        best = l[frozenset((x, y))]
        stack = [(x, frozenset([x]), Fraction(0))]
        while stack:
            cur, seen, worst = stack.pop()
            for z in rest + [y]:
                if z in seen:
                    continue
                step = max(worst, l[frozenset((cur, z))])
                if step >= best:
                    continue
                if z == y:
                    best = step
                else:
                    stack.append((z, seen | {z}, step))
        out[frozenset((x, y))] = best
    return out


# -- sampling ----------------------------------------------------------------


def random_ultrametric(index_set: Sequence, rng: random.Random, resolution: int = 1024) -> UltrametricPoint:
    """Random hierarchy: recursively split into random blocks, heights shrink downward.

    Each cluster gets a height drawn uniformly below its parent's; a cluster
    of height 0 collapses its members to distance 0.
    """
    a = list(index_set)
    dist: dict[frozenset, Fraction] = {}

    def grow(cluster: list, cap: int) -> None:
        if len(cluster) < 2:
            return
        h = 0 if rng.random() < 0.1 else rng.randint(0, cap)
        nblocks = rng.randint(2, len(cluster))
        labels = [rng.randrange(nblocks) for _ in cluster]
        groups = [[x for x, g in zip(cluster, labels) if g == k] for k in range(nblocks)]
        groups = [g for g in groups if g]
        if len(groups) == 1:
            # force a split so recursion terminates
            groups = [groups[0][:1], groups[0][1:]]
        for g1, g2 in combinations(groups, 2):
            for u in g1:
                for v in g2:
                    dist[frozenset((u, v))] = Fraction(h, resolution)
        for g in groups:
            grow(g, h)

    grow(a, resolution)
    return UltrametricPoint.from_function(a, lambda x, y: dist[frozenset((x, y))])


GRID_LEVELS = tuple(Fraction(k, 4) for k in range(5))


def grid_ultrametrics(index_set: Sequence, levels: Sequence[Fraction] = GRID_LEVELS) -> Iterator[UltrametricPoint]:
    """Every ultrametric on ``index_set`` whose distances lie in ``levels``."""
    a = tuple(index_set)
    pairs = list(combinations(a, 2))
    if len(levels) ** len(pairs) > 10**6:
        raise TooLarge("grid enumeration too large")
    triples = list(combinations(range(len(a)), 3))
    pos = {frozenset(p): i for i, p in enumerate(pairs)}
    tri_idx = [
        (pos[frozenset((a[i], a[j]))], pos[frozenset((a[j], a[k]))], pos[frozenset((a[i], a[k]))])
        for i, j, k in triples
    ]
    for vals in product(levels, repeat=len(pairs)):
        if all(
            vals[p] <= max(vals[q], vals[r]) and vals[q] <= max(vals[p], vals[r]) and vals[r] <= max(vals[p], vals[q])
            for p, q, r in tri_idx
        ):
            yield UltrametricPoint(a, {frozenset(p): v for p, v in zip(pairs, vals)})


def random_objective(index_set: Sequence, rng: random.Random, n_terms: int = 4, max_support: int = 3) -> ObjectiveSpec:
    a = list(index_set)
    pairs = [(x, y) for x in a for y in a]
    terms = []
    for _ in range(n_terms):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        w = frozenset(rng.sample(pairs, rng.randint(1, max_support)))
        terms.append((c, w))
    return ObjectiveSpec(tuple(terms))
