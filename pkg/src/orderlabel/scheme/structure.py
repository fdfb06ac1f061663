"""Heavy pairs, the cover set S, hubs and the pair cover T.

The matrix functions work on an upper-triangular ``less`` matrix indexed by
rank (``less[a, b]`` means the vertex of rank a is below the vertex of rank b),
so "smallest rank first" tie-breaking is plain argmax order. The wrappers at
the bottom accept a :class:`StrictOrder` with arbitrary vertex ids.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph_core import StrictOrder, linear_extension


def covered_counts(less: np.ndarray) -> np.ndarray:
    """counts[x, y] = #{z : x < z < y}."""
    f = less.astype(np.float64)
    return np.rint(f @ f).astype(np.int64)


def heavy_matrix(less: np.ndarray, threshold: int, counts: np.ndarray | None = None) -> np.ndarray:
    if counts is None:
        counts = covered_counts(less)
    return less & (counts >= max(1, threshold))


def greedy_cover(less: np.ndarray, heavy: np.ndarray, s: int) -> tuple[list[int], np.ndarray]:
    """Repeatedly take the vertex covered by most remaining heavy pairs.

    Returns the chosen vertices and the residual heavy pairs (those covering
    none of them).
    """
    remaining = heavy.copy()
    chosen: list[int] = []
    if not remaining.any() or s <= 0:
        return chosen, remaining
    f = less.astype(np.float64)
    # score[z] = #{(x, y) in remaining : x < z < y}
    score = (f * (remaining.astype(np.float64) @ f.T)).sum(axis=0)
    while remaining.any() and len(chosen) < s:
        z = int(np.argmax(score))
        if score[z] <= 0:
            break
        chosen.append(z)
        below = np.flatnonzero(less[:, z])
        above = np.flatnonzero(less[z])
        block = remaining[np.ix_(below, above)]
        if block.any():
            # subtract the contribution of the removed pairs
            delta = (f[below] * (block.astype(np.float64) @ f[:, above].T)).sum(axis=0)
            score -= delta
            remaining[np.ix_(below, above)] = False
    return chosen, remaining


def hub_mask(less: np.ndarray, threshold: float) -> np.ndarray:
    indeg = less.sum(axis=0)
    outdeg = less.sum(axis=1)
    return (indeg >= threshold) & (outdeg >= threshold)


def greedy_pair_cover(less: np.ndarray, hubs: np.ndarray, t: int):
    """Repeatedly take the comparable pair covering most uncovered hubs.

    Returns (pairs, cover_index, residual) where cover_index[z] is the index in
    ``pairs`` of the pair that covered hub z (-1 otherwise) and residual is the
    mask of hubs left uncovered.
    """
    n = less.shape[0]
    f = less.astype(np.float64)
    left = hubs.copy()
    pairs: list[tuple[int, int]] = []
    cover_index = np.full(n, -1, dtype=np.int64)
    while left.any() and len(pairs) < t:
        idx = np.flatnonzero(left)
        counts = f[:, idx] @ f[idx, :]
        flat = int(np.argmax(counts))
        if counts.flat[flat] <= 0:
            break
        x, y = divmod(flat, n)
        hit = idx[less[x, idx] & less[idx, y]]
        cover_index[hit] = len(pairs)
        left[hit] = False
        pairs.append((x, y))
    return pairs, cover_index, left


# -- id-level wrappers -------------------------------------------------------

@dataclass(frozen=True)
class HeavyPairSet:
    pairs: frozenset
    threshold: int


@dataclass(frozen=True)
class CoverS:
    vertices: tuple
    residual: frozenset


@dataclass(frozen=True)
class PairCoverT:
    pairs: tuple
    residual: frozenset


def _rank_space(o: StrictOrder):
    ext = linear_extension(o)
    order = np.asarray(ext.order, dtype=np.int64)
    return ext, order, o.less[np.ix_(order, order)]


def heavy_pairs(o: StrictOrder, gamma: float | None = None, threshold: int | None = None) -> HeavyPairSet:
    """Pairs x < y covering at least ``threshold`` (default ceil(gamma*n)) vertices."""
    if threshold is None:
        if gamma is None:
            raise ValueError("give gamma or threshold")
        threshold = int(np.ceil(gamma * o.n - 1e-9))
    threshold = max(1, threshold)
    hm = heavy_matrix(o.less, threshold)
    xs, ys = np.nonzero(hm)
    return HeavyPairSet(frozenset(zip(xs.tolist(), ys.tolist())), threshold)


def greedy_cover_S(o: StrictOrder, heavy, s: int) -> CoverS:
    """Greedy cover set for the heavy pairs of ``o`` (ties to smallest rank)."""
    pairs = heavy.pairs if isinstance(heavy, HeavyPairSet) else heavy
    ext, order, less = _rank_space(o)
    rank = ext.rank
    hm = np.zeros_like(less)
    for x, y in pairs:
        hm[rank[x], rank[y]] = True
    chosen, remaining = greedy_cover(less, hm, s)
    xs, ys = np.nonzero(remaining)
    residual = frozenset((int(order[a]), int(order[b])) for a, b in zip(xs, ys))
    return CoverS(tuple(int(order[z]) for z in chosen), residual)


def hubs(o: StrictOrder, delta: float | None = None, threshold: float | None = None) -> frozenset:
    if threshold is None:
        threshold = delta * o.n
    return frozenset(np.flatnonzero(hub_mask(o.less, threshold)).tolist())


def greedy_pair_cover_T(o: StrictOrder, hub_set, t: int) -> PairCoverT:
    ext, order, less = _rank_space(o)
    mask = np.zeros(o.n, dtype=bool)
    for z in hub_set:
        mask[ext.rank[z]] = True
    pairs, _, left = greedy_pair_cover(less, mask, t)
    return PairCoverT(
        tuple((int(order[x]), int(order[y])) for x, y in pairs),
        frozenset(int(order[z]) for z in np.flatnonzero(left)),
    )
