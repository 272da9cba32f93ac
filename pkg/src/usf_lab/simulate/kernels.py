"""Compiled inner loops for Wilson's algorithm on wired boxes.

Randomness comes in as a buffer of step directions drawn by the caller. When
a buffer runs dry mid-walk the kernel saves its position in ``state`` and
returns; the caller refills and calls again, so the walk resumes exactly
where it stopped and no draw is ever discarded.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# state layout shared by both kernels
K_INDEX, K_POS, K_COUNT, K_FIRST, K_RESULT = range(5)
RUNNING, FALSE, TRUE = -1, 0, 1


@njit(cache=True, nogil=True)
def _step(v, c, L, strides, wired):
    a = c >> 1
    s = strides[a]
    coord = (v // s) % L
    if c & 1 == 0:
        return wired if coord == L - 1 else v + s
    return wired if coord == 0 else v - s


@njit(cache=True, nogil=True)
def wilson_kernel(L, strides, order, dirs, p, state, parent, pdir, in_tree):
    """Grow the tree from every start in ``order``; returns the buffer position."""
    wired = L ** strides.shape[0]
    nd = dirs.shape[0]
    k = state[K_INDEX]
    v = state[K_POS]
    while k < order.shape[0]:
        u = order[k]
        if v < 0:
            v = u
        while not in_tree[v]:
            if p >= nd:
                state[K_INDEX] = k
                state[K_POS] = v
                return p
            c = dirs[p]
            p += 1
            w = _step(v, c, L, strides, wired)
            parent[v] = w
            pdir[v] = c
            v = w
        x = u
        while not in_tree[x]:
            in_tree[x] = True
            x = parent[x]
        k += 1
        v = -1
    state[K_INDEX] = k
    state[K_POS] = -1
    state[K_RESULT] = TRUE
    return p


@njit(cache=True, nogil=True)
def rooted_kernel(L, strides, starts, dirs, p, state, parent, in_tree, label, touched):
    """Wilson's algorithm started at ``starts`` only, stopping once two of them differ.

    ``label`` names each tree vertex by the vertex of its branch adjacent to
    the wired vertex, so two starts share a component iff their labels match.
    ``state[K_RESULT]`` ends as TRUE when all starts share one component.
    """
    wired = L ** strides.shape[0]
    nd = dirs.shape[0]
    i = state[K_INDEX]
    v = state[K_POS]
    nt = state[K_COUNT]
    while i < starts.shape[0]:
        u = starts[i]
        if v < 0:
            v = u
        while not in_tree[v]:
            if p >= nd:
                state[K_INDEX] = i
                state[K_POS] = v
                state[K_COUNT] = nt
                return p
            w = _step(v, dirs[p], L, strides, wired)
            p += 1
            parent[v] = w
            v = w
        if v == wired:
            y = u
            while parent[y] != wired:
                y = parent[y]
            lab = y
        else:
            lab = label[v]
        x = u
        while not in_tree[x]:
            in_tree[x] = True
            label[x] = lab
            touched[nt] = x
            nt += 1
            x = parent[x]
        if i == 0:
            state[K_FIRST] = lab
        elif lab != state[K_FIRST]:
            state[K_RESULT] = FALSE
            break
        i += 1
        v = -1
    if state[K_RESULT] == RUNNING:
        state[K_RESULT] = TRUE
    for j in range(nt):
        in_tree[touched[j]] = False
    state[K_INDEX] = i
    state[K_POS] = -1
    state[K_COUNT] = 0
    return p


def new_state() -> np.ndarray:
    s = np.zeros(5, dtype=np.int64)
    s[K_POS] = -1
    s[K_RESULT] = RUNNING
    return s
