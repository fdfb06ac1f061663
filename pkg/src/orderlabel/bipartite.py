"""Adjacency labels for bipartite graphs with about pq/n payload bits each.

Rows (side 0, ``p`` vertices) and columns (side 1, ``q`` vertices). Row ``i``
owns a cyclic window of ``k = min(q, ceil(pq/n))`` columns starting at
``i*k mod q``; consecutive windows tile the column cycle, so every column is
owned by ``floor(pk/q)`` or ``ceil(pk/q)`` rows. Each adjacency bit is stored
by exactly one endpoint: by the row if it owns the column, by the column
otherwise (in increasing row order).

Standalone label layout::

    side (1) | n in Elias gamma | p (W bits) | index (W bits) | payload

with ``W = bit_length(n)``; the gamma code makes the label self-describing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bitio import BitCursor, BitString, BitWriter, DecodingError


class BipartiteFormatError(DecodingError):
    pass


def window_width(p: int, q: int) -> int:
    if q == 0:
        return 0
    n = p + q
    return min(q, -(-p * q // n))


def owns(i: int, j: int, p: int, q: int, k: int | None = None) -> bool:
    if k is None:
        k = window_width(p, q)
    return (j - i * k) % q < k


def owners_before(i: int, j: int, p: int, q: int, k: int | None = None) -> int:
    """#{i' < i : owns(i', j)}.

    Rows 0..i-1 tile the unrolled line [0, i*k); copies j, j+q, ... of column
    j inside that interval each belong to a distinct row (k <= q).
    """
    if k is None:
        k = window_width(p, q)
    span = i * k
    if span <= j:
        return 0
    return (span - j + q - 1) // q


def owners_before_loop(i: int, j: int, p: int, q: int) -> int:
    k = window_width(p, q)
    return sum(1 for r in range(i) if owns(r, j, p, q, k))


def column_rank(i: int, j: int, p: int, q: int, k: int | None = None) -> int:
    """Offset of row i's bit inside column j's payload (valid when i does not own j)."""
    return i - owners_before(i, j, p, q, k)


def column_owner_count(j: int, p: int, q: int, k: int | None = None) -> int:
    return owners_before(p, j, p, q, k)


def row_payload_len(p: int, q: int) -> int:
    return window_width(p, q)


def column_payload_len(j: int, p: int, q: int, k: int | None = None) -> int:
    return p - column_owner_count(j, p, q, k)


def payload_len(side: int, index: int, p: int, q: int, k: int | None = None) -> int:
    if side == 0:
        return window_width(p, q) if k is None else k
    return column_payload_len(index, p, q, k)


def build_payloads(p: int, q: int, adjacent) -> tuple[list[BitString], list[BitString]]:
    """Row and column payloads; ``adjacent(i, j)`` gives the matrix bit."""
    k = window_width(p, q)
    rows = []
    for i in range(p):
        w = BitWriter()
        for o in range(k):
            w.append_uint(1 if adjacent(i, (i * k + o) % q) else 0, 1)
        rows.append(w.seal())
    cols = []
    for j in range(q):
        w = BitWriter()
        for i in range(p):
            if not owns(i, j, p, q, k):
                w.append_uint(1 if adjacent(i, j) else 0, 1)
        cols.append(w.seal())
    return rows, cols


def build_payload_matrix(adj: np.ndarray) -> tuple[list[BitString], list[BitString]]:
    """Same as :func:`build_payloads` for a dense p x q boolean matrix."""
    adj = np.asarray(adj, dtype=bool)
    p, q = adj.shape
    k = window_width(p, q)
    offsets = np.arange(k)
    rows = [BitString.from_bools(adj[i, (i * k + offsets) % q]) for i in range(p)]
    ii = np.arange(p)
    cols = []
    for j in range(q):
        kept = ((j - ii * k) % q) >= k
        cols.append(BitString.from_bools(adj[kept, j]))
    return rows, cols


def read_bit(row_cur: BitCursor, row_start: int, col_cur: BitCursor, col_start: int,
             i: int, j: int, p: int, q: int, k: int) -> bool:
    """Adjacency bit of (row i, column j) read from whichever payload holds it."""
    if owns(i, j, p, q, k):
        return bool(row_cur.read_at(row_start + (j - i * k) % q, 1))
    return bool(col_cur.read_at(col_start + column_rank(i, j, p, q, k), 1))


@dataclass(frozen=True)
class BipartiteLabeling:
    p: int
    q: int
    k: int
    row_payloads: tuple
    col_payloads: tuple
    labels: tuple  # rows first, then columns

    def row_label(self, i: int) -> BitString:
        return self.labels[i]

    def col_label(self, j: int) -> BitString:
        return self.labels[self.p + j]


def _write_header(w: BitWriter, side: int, index: int, p: int, q: int) -> None:
    n = p + q
    width = n.bit_length()
    w.append_uint(side, 1)
    w.append_uint(0, width - 1)
    w.append_uint(n, width)
    w.append_uint(p, width)
    w.append_uint(index, width)


def header_bits(n: int) -> int:
    width = n.bit_length()
    return 1 + (2 * width - 1) + 2 * width


def encode_bipartite(p: int, q: int, edges: Iterable[tuple[int, int]]) -> BipartiteLabeling:
    edge_set = set()
    for i, j in edges:
        if not (0 <= i < p and 0 <= j < q):
            raise ValueError("edge ({}, {}) outside [0,{})x[0,{})".format(i, j, p, q))
        edge_set.add((i, j))
    rows, cols = build_payloads(p, q, lambda i, j: (i, j) in edge_set)
    labels = []
    for i in range(p):
        w = BitWriter()
        _write_header(w, 0, i, p, q)
        labels.append(w.append_bits(rows[i]).seal())
    for j in range(q):
        w = BitWriter()
        _write_header(w, 1, j, p, q)
        labels.append(w.append_bits(cols[j]).seal())
    return BipartiteLabeling(p, q, window_width(p, q), tuple(rows), tuple(cols), tuple(labels))


def _read_header(cur: BitCursor) -> tuple[int, int, int, int, int]:
    side = cur.read_uint(1)
    zeros = 0
    while cur.read_uint(1) == 0:
        zeros += 1
        if zeros > 64:
            raise BipartiteFormatError("malformed length prefix")
    width = zeros + 1
    n = (1 << zeros) | cur.read_uint(zeros)
    p = cur.read_uint(width)
    index = cur.read_uint(width)
    if p > n:
        raise BipartiteFormatError("side size exceeds n")
    return side, index, p, n - p, cur.position


def adjacent_bipartite(label_u: BitString, label_v: BitString, counter: list | None = None) -> bool:
    """Adjacency from two standalone labels; same-side pairs are never adjacent.

    If ``counter`` is given, the number of inspected bits is appended to it.
    """
    cu, cv = label_u.cursor(), label_v.cursor()
    su, iu, pu, qu, bu = _read_header(cu)
    sv, iv, pv, qv, bv = _read_header(cv)
    if (pu, qu) != (pv, qv):
        raise BipartiteFormatError("labels come from different encodings")
    result = False
    if su != sv:
        if su == 0:
            rc, rs, i, cc, cs, j = cu, bu, iu, cv, bv, iv
        else:
            rc, rs, i, cc, cs, j = cv, bv, iv, cu, bu, iu
        p, q = pu, qu
        result = read_bit(rc, rs, cc, cs, i, j, p, q, window_width(p, q))
    if counter is not None:
        counter.append(cu.inspected + cv.inspected)
    return result
