"""Static set dictionaries over a universe ``range(n)``.

Two encodings are provided:

* sorted: a size field of ``ceil(log(n+1))`` bits followed by the elements in
  increasing order, ``ceil(log n)`` bits each; membership is a binary search.
* compressed: a size field of ``ceil(log(k_max+1))`` bits followed by the rank
  of the set, padded to exactly ``k_max`` elements with sentinels drawn from
  ``[n, n + k_max)``, in the combinatorial number system. The rank field is
  ``ceil(log C(n + k_max, k_max))`` bits wide.

The compressed rank uses colex order on the reflected universe
(element ``e`` is ranked as ``n + k_max - 1 - e``) so that the all-sentinel
padding, i.e. the empty set, gets rank 0.

Both readers work in place on a :class:`~orderlabel.bitio.BitCursor`, which is
how labels embed dictionaries; ``cursor.inspected`` accounts for the bits read.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .bitio import BitCursor, BitString, BitWriter, ceil_log2


class CapacityError(ValueError):
    pass


def entropy(p: float) -> float:
    """Binary entropy in bits, with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("entropy is defined on [0, 1], got {}".format(p))
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


# -- sorted (folklore) dictionary -----------------------------------------

def sorted_widths(n: int) -> tuple[int, int]:
    """(size field width, element width)."""
    return n.bit_length(), ceil_log2(n)


def sorted_payload_bits(n: int, k: int) -> int:
    size_w, elem_w = sorted_widths(n)
    return size_w + k * elem_w


def write_sorted(w: BitWriter, n: int, elements: Sequence[int]) -> None:
    size_w, elem_w = sorted_widths(n)
    w.append_uint(len(elements), size_w)
    if not elements:
        return
    if elements[0] < 0 or elements[-1] >= n or any(a >= b for a, b in zip(elements, elements[1:])):
        raise ValueError("elements must be strictly increasing and below n")
    if elem_w:
        fmt = "0{}b".format(elem_w)
        w.append_uint(int("".join(format(x, fmt) for x in elements), 2), elem_w * len(elements))


def sorted_contains_at(cur: BitCursor, start: int, n: int, x: int) -> bool:
    size_w, elem_w = sorted_widths(n)
    k = cur.read_at(start, size_w)
    base = start + size_w
    lo, hi = 0, k - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        y = cur.read_at(base + mid * elem_w, elem_w)
        if y == x:
            return True
        if y < x:
            lo = mid + 1
        else:
            hi = mid - 1
    return False


@dataclass(frozen=True)
class SortedSetDict:
    payload: BitString
    n: int
    k_max: int

    def __len__(self):
        return self.payload.length


def encode_sorted(n: int, s: Iterable[int], k_max: int) -> SortedSetDict:
    elements = sorted(set(s))
    if len(elements) > k_max:
        raise CapacityError("{} elements exceed capacity {}".format(len(elements), k_max))
    if elements and (elements[0] < 0 or elements[-1] >= n):
        raise ValueError("element outside universe")
    w = BitWriter()
    write_sorted(w, n, elements)
    return SortedSetDict(w.seal(), n, k_max)


def contains_sorted(d: SortedSetDict, x: int, cursor: BitCursor | None = None) -> bool:
    cur = cursor if cursor is not None else d.payload.cursor()
    return sorted_contains_at(cur, 0, d.n, x)


# -- compressed dictionary --------------------------------------------------

def _comb(c: int, r: int) -> int:
    return math.comb(c, r) if 0 <= r <= c else 0


@lru_cache(maxsize=4096)
def compressed_widths(n: int, k_max: int) -> tuple[int, int]:
    """(size field width, rank field width)."""
    return k_max.bit_length(), ceil_log2(_comb(n + k_max, k_max))


def compressed_payload_bits(n: int, k_max: int) -> int:
    a, b = compressed_widths(n, k_max)
    return a + b


def colex_rank(points: Sequence[int]) -> int:
    """Sum of C(c_i, i) over the ascending points c_1 < c_2 < ... (1-based i)."""
    rank = 0
    cur = 0  # C(c, r) for the current (c, r)
    c, r = -1, 0
    for i, target in enumerate(points, start=1):
        # move from C(c, r) to C(c, i)
        if r != i:
            if c < i:
                cur = 0
            elif r == 0 or cur == 0:
                cur = _comb(c, i)
            else:
                cur = cur * (c - r) // (r + 1)
            r = i
        while c < target:
            c += 1
            if c < r:
                cur = 0
            elif c == r:
                cur = 1
            else:
                cur = cur * c // (c - r)
        rank += cur
    return rank


def colex_unrank(rank: int, k: int, universe: int) -> list[int]:
    """Inverse of :func:`colex_rank` for k-subsets of range(universe); descending."""
    out = []
    if k == 0:
        return out
    c = universe - 1
    i = k
    cur = _comb(c, i)
    while i >= 1:
        while cur > rank:
            # C(c-1, i) = C(c, i) * (c - i) / c
            cur = cur * (c - i) // c
            c -= 1
        rank -= cur
        out.append(c)
        if i == 1:
            break
        # C(c-1, i-1) = C(c, i) * i / c
        cur = cur * i // c if c > 0 else 0
        c -= 1
        i -= 1
    return out


def _padded_points(n: int, elements: Sequence[int], k_max: int) -> list[int]:
    universe = n + k_max
    pad = range(n, n + k_max - len(elements))
    return sorted(universe - 1 - e for e in list(elements) + list(pad))


def compressed_rank(n: int, elements: Sequence[int], k_max: int) -> int:
    return colex_rank(_padded_points(n, elements, k_max))


@lru_cache(maxsize=65536)
def _decode_rank(rank: int, n: int, k_max: int) -> frozenset:
    universe = n + k_max
    pts = colex_unrank(rank, k_max, universe)
    return frozenset(e for e in (universe - 1 - c for c in pts) if e < n)


def write_compressed(w: BitWriter, n: int, elements: Sequence[int], k_max: int) -> None:
    if len(elements) > k_max:
        raise CapacityError("{} elements exceed capacity {}".format(len(elements), k_max))
    size_w, rank_w = compressed_widths(n, k_max)
    w.append_uint(len(elements), size_w)
    w.append_uint(compressed_rank(n, elements, k_max), rank_w)


def compressed_contains_at(cur: BitCursor, start: int, n: int, k_max: int, x: int) -> bool:
    size_w, rank_w = compressed_widths(n, k_max)
    k = cur.read_at(start, size_w)
    if k == 0:
        return False
    rank = cur.read_uint(rank_w)
    return x in _decode_rank(rank, n, k_max)


def compressed_members_at(cur: BitCursor, start: int, n: int, k_max: int) -> frozenset:
    size_w, rank_w = compressed_widths(n, k_max)
    cur.read_at(start, size_w)
    return _decode_rank(cur.read_uint(rank_w), n, k_max)


@dataclass(frozen=True)
class CompressedSetDict:
    payload: BitString
    n: int
    k_max: int

    def __len__(self):
        return self.payload.length

    @property
    def rank(self) -> int:
        size_w, rank_w = compressed_widths(self.n, self.k_max)
        return self.payload.slice(size_w, size_w + rank_w).value


def encode_compressed(n: int, s: Iterable[int], k_max: int) -> CompressedSetDict:
    elements = sorted(set(s))
    if elements and (elements[0] < 0 or elements[-1] >= n):
        raise ValueError("element outside universe")
    w = BitWriter()
    write_compressed(w, n, elements, k_max)
    return CompressedSetDict(w.seal(), n, k_max)


def contains_compressed(d: CompressedSetDict, x: int, cursor: BitCursor | None = None) -> bool:
    cur = cursor if cursor is not None else d.payload.cursor()
    return compressed_contains_at(cur, 0, d.n, d.k_max, x)


# -- orientation -> per-vertex dictionaries -------------------------------

def encode_set(n: int, s: Iterable[int], k_max: int, backend: str = "sorted"):
    if backend == "sorted":
        return encode_sorted(n, s, k_max)
    if backend == "compressed":
        return encode_compressed(n, s, k_max)
    raise ValueError("unknown dictionary backend {!r}".format(backend))


def contains(d, x: int, cursor: BitCursor | None = None) -> bool:
    if isinstance(d, SortedSetDict):
        return contains_sorted(d, x, cursor)
    return contains_compressed(d, x, cursor)


def neighbourhood_labels(orient, n: int, backend: str = "sorted") -> list:
    """One dictionary per vertex holding its out-set, capacity = orientation bound."""
    cap = max(orient.d, 0)
    return [encode_set(n, orient.out[v], cap, backend) for v in range(n)]


def adjacent_via_dicts(label_u, u: int, label_v, v: int) -> bool:
    """u ~ v iff v is in u's out-set or u is in v's out-set."""
    return contains(label_u, v) or contains(label_v, u)
