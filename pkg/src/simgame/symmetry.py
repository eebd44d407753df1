"""Vertex-permutation symmetry on positions.

The 720 permutations of the six vertices act on positions by relabelling;
the canonical key of a position is the lexicographic minimum of
(red_mask, blue_mask) over the whole orbit, with red compared first.  Two
positions share a key exactly when some permutation maps one onto the
other preserving colours, which makes the key usable for memoised search.
"""

from __future__ import annotations

from itertools import permutations as _all_permutations

import numpy as np

from .board import (
    EDGE_ENDPOINTS,
    N_EDGES,
    N_VERTICES,
    Position,
    edge_id,
    edges_in,
    vertices_in,
)

Permutation = tuple[int, ...]

PERMUTATIONS: tuple[Permutation, ...] = tuple(_all_permutations(range(N_VERTICES)))
IDENTITY: Permutation = tuple(range(N_VERTICES))

# _EDGE_IMAGE[k][e] = image edge id of e under PERMUTATIONS[k].
_EDGE_IMAGE = tuple(
    tuple(edge_id(sigma[u], sigma[v]) for (u, v) in EDGE_ENDPOINTS)
    for sigma in PERMUTATIONS
)
# Bit-valued copy for vectorised canonicalisation: row k, column e holds
# 1 << image(e), so a permuted mask is a row-wise sum over set columns.
_EDGE_IMAGE_BITS = np.array(
    [[1 << img for img in row] for row in _EDGE_IMAGE], dtype=np.int64
)


def _check_permutation(sigma) -> Permutation:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(N_VERTICES)):
        raise ValueError(f"not a permutation of 0..{N_VERTICES - 1}: {sigma}")
    return sigma


def compose(tau, sigma) -> Permutation:
    """Permutation applying sigma first, then tau."""
    tau, sigma = _check_permutation(tau), _check_permutation(sigma)
    return tuple(tau[sigma[i]] for i in range(N_VERTICES))


def invert(sigma) -> Permutation:
    sigma = _check_permutation(sigma)
    inv = [0] * N_VERTICES
    for i, img in enumerate(sigma):
        inv[img] = i
    return tuple(inv)


def permute_edge_mask(mask: int, sigma) -> int:
    """Relabel every edge of a mask through the vertex permutation."""
    sigma = _check_permutation(sigma)
    out = 0
    for e in edges_in(mask):
        u, v = EDGE_ENDPOINTS[e]
        out |= 1 << edge_id(sigma[u], sigma[v])
    return out


def apply_permutation(p: Position, sigma) -> Position:
    """Relabel a position: edge {u,v} has colour c iff {sigma(u),sigma(v)} does after."""
    sigma = _check_permutation(sigma)
    return Position(permute_edge_mask(p.red, sigma), permute_edge_mask(p.blue, sigma))


def canonical_key_masks(red: int, blue: int) -> tuple[int, int]:
    """canonical_key on raw masks; hot path for the search modules."""
    red_edges = list(edges_in(red))
    blue_edges = list(edges_in(blue))
    reds = (
        _EDGE_IMAGE_BITS[:, red_edges].sum(axis=1)
        if red_edges
        else np.zeros(len(PERMUTATIONS), dtype=np.int64)
    )
    blues = (
        _EDGE_IMAGE_BITS[:, blue_edges].sum(axis=1)
        if blue_edges
        else np.zeros(len(PERMUTATIONS), dtype=np.int64)
    )
    combined = (reds << N_EDGES) | blues
    k = int(np.argmin(combined))
    return int(reds[k]), int(blues[k])


def canonical_key(p: Position) -> tuple[int, int]:
    """Minimum of (red, blue) over all 720 relabellings, red compared first."""
    return canonical_key_masks(p.red, p.blue)


def canonical_position(p: Position) -> Position:
    """The orbit representative whose masks equal canonical_key(p)."""
    return Position(*canonical_key(p))


def colored_isomorphic(p: Position, a: int, b: int) -> bool:
    """True iff some bijection a -> b carries the induced coloured subgraph of a
    onto that of b (red to red, blue to blue, uncoloured to uncoloured).

    Brute force over all |a|! bijections; a and b are 6-bit vertex masks.
    """
    va = list(vertices_in(a))
    vb = list(vertices_in(b))
    if len(va) != len(vb):
        return False

    def color_of(u: int, v: int) -> int:
        e = edge_id(u, v)
        if p.red >> e & 1:
            return 1
        if p.blue >> e & 1:
            return 2
        return 0

    n = len(va)
    for image in _all_permutations(vb):
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if color_of(va[i], va[j]) != color_of(image[i], image[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
