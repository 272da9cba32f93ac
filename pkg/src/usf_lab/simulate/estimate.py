"""Monte Carlo estimates over wired uniform spanning forests.

Work is split into fixed-size chunks, and chunk ``i`` always draws from
substream ``i`` of the seed. Results therefore do not depend on how many
worker threads run the chunks. The compiled kernels release the GIL.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binomtest

from ..errors import InconclusiveAtCap
from .components import meets_components
from .lattice import LatticeBox, Point
from .wilson import RootedConnection, WilsonSampler, make_rng

CHUNK = 1000


def run_chunks(task: Callable[[int, int], object], samples: int, threads: int = 1, chunk: int = CHUNK) -> list:
    """Call ``task(chunk_index, chunk_size)`` over all chunks, results in chunk order."""
    sizes = [min(chunk, samples - s) for s in range(0, samples, chunk)]
    if threads <= 1 or len(sizes) == 1:
        return [task(i, n) for i, n in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, range(len(sizes)), sizes))


@dataclass(frozen=True)
class ConnectionEstimate:
    hits: int
    samples: int
    ci_low: float
    ci_high: float

    @property
    def p(self) -> float:
        return self.hits / self.samples


def estimate_connection(
    d: int,
    L: int,
    K: Sequence[Point],
    samples: int,
    seed: int = 0,
    threads: int = 1,
    confidence: float = 0.95,
) -> ConnectionEstimate:
    """Fraction of samples where all points of ``K`` share a component, with a Wilson CI.

    Only the branches from ``K`` to the wired vertex are sampled, by running
    Wilson's algorithm from the points of ``K`` first.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    box = LatticeBox(d, L)
    starts = np.array([box.index(tuple(p)) for p in K], dtype=np.int64)
    if len(set(starts.tolist())) <= 1:
        return ConnectionEstimate(samples, samples, 1.0, 1.0)

    def task(i: int, n: int) -> int:
        rc = RootedConnection(box, make_rng(seed, i))
        return sum(rc.same_component(starts) for _ in range(n))

    hits = sum(run_chunks(task, samples, threads))
    ci = binomtest(hits, samples).proportion_ci(confidence, method="wilson")
    return ConnectionEstimate(hits, samples, float(ci.low), float(ci.high))


def centered_pair(box: LatticeBox, separation: int) -> tuple[Point, Point]:
    """Two points at L1 distance ``separation`` placed symmetrically about the centre.

    The separation is spread over the axes so both points stay as far from
    the wired boundary as possible.
    """
    c = [box.L // 2] * box.d
    a, b = list(c), list(c)
    for i in range(separation):
        ax = (i // 2) % box.d
        if i % 2 == 0:
            a[ax] -= 1
        else:
            b[ax] += 1
    pa, pb = tuple(a), tuple(b)
    box.index(pa)
    box.index(pb)
    return pa, pb


def auto_separations(box: LatticeBox) -> list[int]:
    out, s = [], 1
    while True:
        try:
            centered_pair(box, s)
        except ValueError:
            break
        out.append(s)
        s *= 2
        if s > box.L:
            break
    return out


def component_counts(d: int, L: int, samples: int, seed: int = 0, threads: int = 1) -> list[int]:
    box = LatticeBox(d, L)

    def task(i: int, n: int) -> list[int]:
        sampler = WilsonSampler(box, make_rng(seed, i))
        return [sampler.sample().n_components for _ in range(n)]

    return [c for part in run_chunks(task, samples, threads) for c in part]


@dataclass(frozen=True)
class REstimate:
    threshold: int
    frequencies: dict[int, float] = field(default_factory=dict)
    samples: int = 0
    note: str = "empirical one-sided estimate on a finite wired box"


def estimate_R(
    d: int,
    L: int,
    M: int,
    r_max: int,
    samples: int,
    seed: int = 0,
    threads: int = 1,
) -> REstimate:
    """Smallest ``r`` for which some sample has a diameter-``r`` set meeting ``M`` components."""
    if M < 2:
        raise ValueError("M must be at least 2")
    box = LatticeBox(d, L)

    def task(i: int, n: int) -> list[int | None]:
        sampler = WilsonSampler(box, make_rng(seed, i))
        out = []
        for _ in range(n):
            f = sampler.sample()
            first = None
            if f.n_components >= M:
                for r in range(1, r_max + 1):
                    if meets_components(f, r, M):
                        first = r
                        break
            out.append(first)
        return out

    firsts = [x for part in run_chunks(task, samples, threads, chunk=16) for x in part]
    counts = Counter(x for x in firsts if x is not None)
    freqs, running = {}, 0
    for r in range(0, r_max + 1):
        running += counts.get(r, 0)
        freqs[r] = running / samples
    hit = [r for r, q in freqs.items() if q > 0]
    if not hit:
        raise InconclusiveAtCap(f"no sample met {M} components within diameter {r_max}")
    return REstimate(min(hit), freqs, samples)
