"""Wired uniform spanning forests on boxes of Z^d."""
from .components import ComponentGraph, component_graph, component_hyperedges, meets_components
from .estimate import (
    ConnectionEstimate,
    REstimate,
    auto_separations,
    centered_pair,
    component_counts,
    estimate_connection,
    estimate_R,
    run_chunks,
)
from .lattice import LatticeBox, MemoryBudgetExceeded, bracket, check_memory, l1
from .spread import SpreadResult, spread, spread_brute, spread_greedy
from .wilson import LatticeForest, RootedConnection, WilsonSampler, loop_erase, make_rng, wilson_wired
from .witness import witness_search, witness_weight

__all__ = [
    "ComponentGraph", "ConnectionEstimate", "LatticeBox", "LatticeForest", "MemoryBudgetExceeded",
    "REstimate", "RootedConnection", "SpreadResult", "WilsonSampler", "auto_separations", "bracket",
    "centered_pair", "check_memory", "component_counts", "component_graph", "component_hyperedges",
    "estimate_R", "estimate_connection", "l1", "loop_erase", "make_rng", "meets_components",
    "run_chunks", "spread", "spread_brute", "spread_greedy", "wilson_wired", "witness_search",
    "witness_weight",
]
