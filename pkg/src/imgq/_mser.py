"""Maximally stable extremal region counting on a gray-level component tree.

The detector sweeps gray levels from dark to bright, growing connected
components (4-connectivity) with a union-find forest. Every time a component
appears or grows it gets a tree node stamped with (level, size). A node N is
a region candidate when

    var(N) = (size of the enclosing component at level(N) + delta - size(N))
             / size(N)

is at most ``max_variation`` and its size lies within the area bounds.
Nested candidates whose nearest candidate ancestor A satisfies
``(size(A) - size(N)) / size(A) <= min_diversity`` are folded into A, so a
slow-growing region is counted once. Bright regions are found by a second
pass over the inverted image.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _count_dark_regions(
    flat: np.ndarray,
    h: int,
    w: int,
    delta: int,
    min_area: int,
    max_area: int,
    max_variation: float,
    min_diversity: float,
) -> int:
    n = h * w

    # counting sort of pixels by gray level
    level_start = np.zeros(257, np.int64)
    for i in range(n):
        level_start[flat[i] + 1] += 1
    for g in range(1, 257):
        level_start[g] += level_start[g - 1]
    order = np.empty(n, np.int64)
    fill = level_start[:256].copy()
    for i in range(n):
        v = flat[i]
        order[fill[v]] = i
        fill[v] += 1

    parent = np.full(n, -1, np.int64)  # pixel union-find; -1 = not yet active
    comp_size = np.zeros(n, np.int64)
    node_of = np.full(n, -1, np.int64)  # component root pixel -> tree node

    cap = 2 * n + 1
    node_level = np.empty(cap, np.int64)
    node_size = np.empty(cap, np.int64)
    node_parent = np.full(cap, -1, np.int64)
    node_alias = np.zeros(cap, np.uint8)
    n_nodes = 0

    for g in range(256):
        for idx in range(level_start[g], level_start[g + 1]):
            p = order[idx]
            parent[p] = p
            comp_size[p] = 1
            node_level[n_nodes] = g
            node_size[n_nodes] = 1
            node_of[p] = n_nodes
            n_nodes += 1
            y = p // w
            x = p - y * w
            for k in range(4):
                if k == 0:
                    if y == 0:
                        continue
                    q = p - w
                elif k == 1:
                    if y == h - 1:
                        continue
                    q = p + w
                elif k == 2:
                    if x == 0:
                        continue
                    q = p - 1
                else:
                    if x == w - 1:
                        continue
                    q = p + 1
                if parent[q] < 0:
                    continue
                ra = p
                while parent[ra] != ra:
                    ra = parent[ra]
                c = p
                while parent[c] != c:
                    nxt = parent[c]
                    parent[c] = ra
                    c = nxt
                rb = q
                while parent[rb] != rb:
                    rb = parent[rb]
                c = q
                while parent[c] != c:
                    nxt = parent[c]
                    parent[c] = rb
                    c = nxt
                if ra == rb:
                    continue
                na = node_of[ra]
                nb = node_of[rb]
                if comp_size[ra] < comp_size[rb]:
                    ra, rb = rb, ra
                parent[rb] = ra
                comp_size[ra] = comp_size[ra] + comp_size[rb]
                merged = node_size[na] + node_size[nb]
                la = node_level[na]
                lb = node_level[nb]
                if la == g and lb == g:
                    # twins born this level: one node absorbs the other
                    node_size[na] = merged
                    node_parent[nb] = na
                    node_alias[nb] = 1
                    winner = na
                elif la == g:
                    node_size[na] = merged
                    node_parent[nb] = na
                    winner = na
                elif lb == g:
                    node_size[nb] = merged
                    node_parent[na] = nb
                    winner = nb
                else:
                    node_level[n_nodes] = g
                    node_size[n_nodes] = merged
                    node_parent[na] = n_nodes
                    node_parent[nb] = n_nodes
                    winner = n_nodes
                    n_nodes += 1
                node_of[ra] = winner

    # candidate pass: area bounds plus bounded growth over +delta levels
    candidate = np.zeros(n_nodes, np.uint8)
    for i in range(n_nodes):
        if node_alias[i]:
            continue
        s = node_size[i]
        if s < min_area or s > max_area:
            continue
        target = node_level[i] + delta
        cur = i
        while node_parent[cur] != -1 and node_level[node_parent[cur]] <= target:
            cur = node_parent[cur]
        var = (node_size[cur] - s) / s
        if var <= max_variation:
            candidate[i] = 1

    # fold nested near-duplicates into their nearest candidate ancestor
    count = 0
    for i in range(n_nodes):
        if not candidate[i]:
            continue
        anc = node_parent[i]
        while anc != -1 and (node_alias[anc] or not candidate[anc]):
            anc = node_parent[anc]
        if anc != -1:
            s_anc = node_size[anc]
            if (s_anc - node_size[i]) <= min_diversity * s_anc:
                continue
        count += 1
    return count


def count_stable_regions(
    gray_u8: np.ndarray,
    delta: int,
    min_area: int,
    max_area: int,
    max_variation: float,
    min_diversity: float,
) -> int:
    """Count stable regions of both polarities in a uint8 gray image."""
    h, w = gray_u8.shape
    dark = _count_dark_regions(
        np.ascontiguousarray(gray_u8.ravel()),
        h, w, delta, min_area, max_area, max_variation, min_diversity,
    )
    inverted = (255 - gray_u8).astype(np.uint8)
    bright = _count_dark_regions(
        np.ascontiguousarray(inverted.ravel()),
        h, w, delta, min_area, max_area, max_variation, min_diversity,
    )
    return int(dark + bright)
