"""Exact counting of labeled pattern copies inside vertex subsets.

A labeled copy of a pattern H in a host G is an injective map from H's
vertices to G's vertices that sends every pattern edge to a host edge.
Counts here are always over labeled copies: automorphic images are counted
separately, and copies need not be induced.  Any identity stated over these
counts is exact in integers.

Desk-scale ceilings (documented, not enforced): n <= 5000 for K_2-style
patterns, n <= 500 for h = 3, n <= 120 for h = 4 and up.  Every count is
bounded up front by the falling factorial |U|(|U|-1)...(|U|-h+1); counting
refuses with OverflowError if that bound exceeds the int64 range.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels
from .graphs import Graph, Pattern, VertexSubset, full_mask

__all__ = [
    "SizeGuardError",
    "StratifiedCensus",
    "count_labeled_copies",
    "count_edges_within",
    "count_cut",
    "stratified_census",
    "brute_force_count",
    "labeled_copies",
]

_INT64_MAX = 2**63 - 1


class SizeGuardError(ValueError):
    """An operation refused because its exhaustive work would blow up."""


@dataclass(frozen=True)
class StratifiedCensus:
    """Labeled-copy counts split by number of mapped vertices outside W.

    counts[j] is the number of labeled copies with exactly j of their h
    vertices outside the distinguished set; counts[0] is the count inside W
    and the total equals the whole-graph count.
    """

    counts: tuple[int, ...]
    total: int
    normalized: tuple[float, ...]


@lru_cache(maxsize=None)
def _search_plan(pattern: Pattern):
    """Greedy connected position order plus per-position earlier-neighbor sets.

    Each next pattern vertex is chosen to maximize (anchors to already placed,
    degree), tie-broken by smallest id, so candidate sets shrink as early as
    possible.  Correctness does not depend on the order.
    """
    h = pattern.h
    adj = pattern.adjacency()
    deg = adj.sum(axis=1)
    order: list[int] = []
    placed = np.zeros(h, dtype=bool)
    for _ in range(h):
        best, best_key = -1, None
        for v in range(h):
            if placed[v]:
                continue
            anchors = int(adj[v, order].sum()) if order else 0
            key = (anchors, int(deg[v]), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed[best] = True
    prev_lists = []
    prev_masks = np.zeros(h, dtype=np.uint64)
    for t, v in enumerate(order):
        earlier = tuple(s for s in range(t) if adj[v, order[s]])
        prev_lists.append(earlier)
        m = 0
        for s in earlier:
            m |= 1 << s
        prev_masks[t] = m
    prev_masks.setflags(write=False)
    return tuple(order), prev_masks, tuple(prev_lists)


def _check_subset(g: Graph, u: VertexSubset | None) -> VertexSubset:
    if u is None:
        return VertexSubset.full(g.n)
    if u.n != g.n:
        raise ValueError(f"subset is bound to n={u.n}, graph has n={g.n}")
    return u


def _check_count_bound(size: int, h: int) -> None:
    if size >= h and math.perm(size, h) > _INT64_MAX:
        raise OverflowError(
            f"labeled-copy bound perm({size}, {h}) exceeds the int64 range"
        )


def count_labeled_copies(g: Graph, pattern: Pattern, u: VertexSubset | None = None) -> int:
    """Exact number of labeled copies of pattern inside the subset u (default V)."""
    u = _check_subset(g, u)
    _check_count_bound(u.size, pattern.h)
    _, prev_masks, prev_lists = _search_plan(pattern)
    if _kernels.USE_NUMBA:
        return int(_kernels.count_copies_bits(g.bits, u.mask, prev_masks))
    return int(_kernels.count_copies_dense(g.dense, u.bool_mask, prev_lists))


def count_edges_within(g: Graph, u: VertexSubset | None = None) -> int:
    """Edges of g with both endpoints in u; equals count of K_2 copies / 2."""
    u = _check_subset(g, u)
    if u.size == 0:
        return 0
    rows = g.bits[u.members]
    return int(np.bitwise_count(rows & u.mask).sum()) // 2


def count_cut(g: Graph, u: VertexSubset) -> int:
    """Edges of g with exactly one endpoint in u."""
    u = _check_subset(g, u)
    if u.size == 0:
        return 0
    outside = full_mask(g.n) & ~u.mask
    rows = g.bits[u.members]
    return int(np.bitwise_count(rows & outside).sum())


def stratified_census(g: Graph, pattern: Pattern, w: VertexSubset) -> StratifiedCensus:
    """Census of all labeled copies in g, stratified by #vertices outside w.

    counts[0] equals the count inside w and sum(counts) equals the count over
    all of V, both exactly.
    """
    w = _check_subset(g, w)
    _check_count_bound(g.n, pattern.h)
    _, prev_masks, prev_lists = _search_plan(pattern)
    if _kernels.USE_NUMBA:
        raw = _kernels.stratified_bits(g.bits, full_mask(g.n), w.mask, prev_masks)
    else:
        raw = _kernels.stratified_dense(g.dense, w.bool_mask, prev_lists)
    counts = tuple(int(c) for c in raw)
    scale = float(g.n) ** pattern.h
    return StratifiedCensus(
        counts=counts,
        total=sum(counts),
        normalized=tuple((c / scale if scale else 0.0) for c in counts),
    )


# ---------------------------------------------------------------------------
# independent oracle: exhaustive enumeration, used by tests and small checks

def labeled_copies(g: Graph, pattern: Pattern, u: VertexSubset | None = None
                   ) -> Iterator[tuple[int, ...]]:
    """Yield every labeled copy as the tuple (image of 0, ..., image of h-1).

    Exhaustive over all |u|!/(|u|-h)! injections; intended for small inputs.
    """
    u = _check_subset(g, u)
    for mapping in itertools.permutations(u.as_tuple(), pattern.h):
        if all(g.has_edge(mapping[a], mapping[b]) for a, b in pattern.edges):
            yield mapping


def brute_force_count(g: Graph, pattern: Pattern, u: VertexSubset | None = None) -> int:
    """Count labeled copies by exhaustive enumeration of injections.

    Guarded to |u| <= 12 and pattern.h <= 5, where the injection count stays
    below 12!/(12-5)! = 95040.
    """
    u = _check_subset(g, u)
    if u.size > 12:
        raise SizeGuardError(f"brute force refused: |u| = {u.size} > 12")
    if pattern.h > 5:
        raise SizeGuardError(f"brute force refused: pattern has h = {pattern.h} > 5")
    return sum(1 for _ in labeled_copies(g, pattern, u))
