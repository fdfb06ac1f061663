"""Decoder: comparability of two vertices from their labels and the global section.

Every read goes through a :class:`BitCursor`, so the returned inspected count
is exactly the number of label bits (plus charged T-roster bits of the global
section) the decision looked at.
"""
from __future__ import annotations

from ..bipartite import read_bit
from ..bitio import BitCursor, BitString, DecodingError
from ..setdict import compressed_contains_at, sorted_contains_at
from .layout import (
    KIND_HUB, KIND_MINUS, KIND_PLUS, KIND_RESIDUAL, GlobalHeader, LabelFormatError,
    parse_global, read_t_pair,
)


class _View:
    """Lazy, cached field access to one label."""

    __slots__ = ("cur", "h", "_rank", "_kind", "_aux", "_ends", "_flags")

    def __init__(self, bits: BitString, h: GlobalHeader):
        if bits.length < h.off_dicts:
            raise LabelFormatError("label shorter than its fixed part")
        self.cur = BitCursor(bits)
        self.h = h
        self._rank = self._kind = self._aux = None
        self._ends = {}
        self._flags = {}

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = self.cur.read_at(0, self.h.w)
        return self._rank

    @property
    def kind(self) -> int:
        if self._kind is None:
            self._kind = self.cur.read_at(self.h.off_kind, 2)
        return self._kind

    @property
    def aux(self) -> int:
        if self._aux is None:
            self._aux = self.cur.read_at(self.h.off_aux, self.h.aux_width)
        return self._aux

    def bits(self, offset: int, width: int) -> int:
        return self.cur.read_at(offset, width)

    def flag(self, slot: int) -> bool:
        if slot not in self._flags:
            self._flags[slot] = bool(self.cur.read_at(self.h.off_tflags + slot, 1))
        return self._flags[slot]

    def _end(self, slot: int) -> int:
        if slot < 0:
            return 0
        if slot not in self._ends:
            self._ends[slot] = self.cur.read_at(self.h.off_dir + slot * self.h.dir_width, self.h.dir_width)
        return self._ends[slot]

    def contains(self, slot: int, x: int, sorted_only: bool = False) -> bool:
        h = self.h
        start, end = self._end(slot - 1), self._end(slot)
        if start == end:
            return False
        if start > end or h.off_dicts + end > self.cur.bits.length:
            raise LabelFormatError("dictionary directory out of range")
        pos = h.off_dicts + start
        if sorted_only or h.backend == "sorted":
            return sorted_contains_at(self.cur, pos, h.n, x)
        if slot < h.slot_nonhub:
            cap = h.cap_t
        elif slot == h.slot_nonhub:
            cap = h.cap_nonhub
        else:
            cap = h.cap_g1
        return compressed_contains_at(self.cur, pos, h.n, cap, x)

    def bipartite_start(self) -> int:
        return self.h.off_dicts + self._end(self.h.n_slots - 1)


def _decide(h: GlobalHeader, gcur: BitCursor, lo: _View, hi: _View) -> bool:
    r_lo, r_hi = lo.rank, hi.rank
    # 1. common element of S between them
    if h.n_s and lo.bits(h.off_splus, h.n_s) & hi.bits(h.off_sminus, h.n_s):
        return True
    # 2. residual heavy pairs
    if h.has_g1 and (lo.contains(h.slot_g1, r_hi) or hi.contains(h.slot_g1, r_lo)):
        return True
    # 3. residual hubs carry a bitmap against every vertex
    k_lo, k_hi = lo.kind, hi.kind
    if k_lo == KIND_RESIDUAL:
        return bool(hi.bits(h.off_rbits + lo.aux, 1))
    if k_hi == KIND_RESIDUAL:
        return bool(lo.bits(h.off_rbits + hi.aux, 1))
    # 4. covered hubs: look for a shared light neighbourhood subgraph
    if k_lo == KIND_HUB or k_hi == KIND_HUB:
        for view in (lo, hi):
            if view.kind != KIND_HUB:
                continue
            sx, sy = read_t_pair(gcur, h, view.aux)
            for slot in (2 * sx, 2 * sx + 1, 2 * sy, 2 * sy + 1):
                if lo.flag(slot) and hi.flag(slot):
                    if slot % 2 == 0:
                        return lo.contains(slot, r_hi)
                    return hi.contains(slot, r_lo)
        if not h.has_overflow:
            return False
        return (lo.contains(h.slot_overflow, r_hi, sorted_only=True)
                or hi.contains(h.slot_overflow, r_lo, sorted_only=True))
    # 5. both non-hubs
    if k_lo == KIND_PLUS and k_hi == KIND_PLUS:
        return lo.contains(h.slot_nonhub, r_hi)
    if k_lo == KIND_MINUS and k_hi == KIND_MINUS:
        return hi.contains(h.slot_nonhub, r_lo)
    row, col = (lo, hi) if k_lo == KIND_PLUS else (hi, lo)
    i, j = row.aux, col.aux
    if i >= h.p or j >= h.q:
        raise LabelFormatError("side index out of range")
    return read_bit(row.cur, row.bipartite_start(), col.cur, col.bipartite_start(), i, j, h.p, h.q, h.k)


def _run(global_bits: BitString, label_u: BitString, label_v: BitString):
    h = parse_global(global_bits)
    a, b = _View(label_u, h), _View(label_v, h)
    gcur = BitCursor(global_bits)
    try:
        if a.rank == b.rank:
            raise LabelFormatError("two labels with the same rank")
        lo, hi = (a, b) if a.rank < b.rank else (b, a)
        result = _decide(h, gcur, lo, hi)
    except LabelFormatError:
        raise
    except DecodingError as exc:
        raise LabelFormatError(str(exc)) from exc
    return result, a.rank < b.rank, a.cur.inspected + b.cur.inspected + gcur.inspected


def adjacent(global_bits: BitString, label_u: BitString, label_v: BitString) -> tuple[bool, int]:
    """(comparable?, inspected bits)."""
    result, _, inspected = _run(global_bits, label_u, label_v)
    return result, inspected


def comparable(global_bits: BitString, label_u: BitString, label_v: BitString) -> tuple[str, int]:
    """("u<v" | "v<u" | "incomparable", inspected bits)."""
    result, u_first, inspected = _run(global_bits, label_u, label_v)
    if not result:
        return "incomparable", inspected
    return ("u<v" if u_first else "v<u"), inspected
