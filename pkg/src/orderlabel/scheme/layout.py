"""Bit layout shared by the encoder and the decoder.

Global section::

    n (32) | s (32) | profile (2) | backend (1) | has_g1 (1) | has_overflow (1)
    | dir_width (8) | then W = bit_length(n) bits each:
      |S|, |Tv|, |T|, |R|, p, q, cap_t, cap_nonhub, cap_overflow, cap_g1
    | S roster (|S| x w) | Tv roster (|Tv| x w) | T pairs (|T| x 2 x ceil(log |Tv|))

Per-vertex label::

    rank (w) | kind (2) | aux (A) | s+ (|S|) | s- (|S|) | T flags (2|Tv|)
    | R bitmap (|R|) | directory (D x dir_width) | dictionaries | bipartite

``w = ceil(log n)``. ``kind`` is 0 for V+, 1 for V-, 2 for a covered hub,
3 for a residual hub; ``aux`` holds the side index, the covering T-pair index
or the R index respectively. The directory lists cumulative end offsets of the
``D = 2|Tv| + 3`` dictionary slots: the two per T-vertex (light in- and
out-neighbourhood subgraphs), then the non-hub, overflow and G1 dictionaries.
A zero-length slot is an empty set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..bitio import BitCursor, BitString, BitWriter, DecodingError, ceil_log2
from ..bipartite import column_payload_len, window_width

PROFILE_CODES = {"tradeoff": 0, "fast": 1}
PROFILE_NAMES = {v: k for k, v in PROFILE_CODES.items()}
BACKENDS = ("sorted", "compressed")

KIND_PLUS, KIND_MINUS, KIND_HUB, KIND_RESIDUAL = 0, 1, 2, 3

SECTIONS = (
    "rank", "kind", "aux", "s_strings", "t_flags", "r_bitmap", "directory",
    "t_dicts", "nonhub_dict", "overflow_dict", "g1_dict", "bipartite",
)


class LabelFormatError(DecodingError):
    pass


@dataclass(frozen=True)
class GlobalHeader:
    n: int
    s: int
    profile: str
    backend: str
    has_g1: bool
    has_overflow: bool
    dir_width: int
    n_s: int
    n_tv: int
    n_t: int
    n_r: int
    p: int
    q: int
    cap_t: int
    cap_nonhub: int
    cap_overflow: int
    cap_g1: int
    s_roster: tuple
    tv_roster: tuple
    t_pairs: tuple  # (slot of x, slot of y) per pair
    bit_length: int = 0
    t_roster_offset: int = 0

    # derived layout ---------------------------------------------------
    @cached_property
    def w(self) -> int:
        return ceil_log2(self.n)

    @cached_property
    def aux_width(self) -> int:
        return max(ceil_log2(self.n_t), ceil_log2(self.n_r), ceil_log2(max(self.p, self.q)))

    @cached_property
    def slot_width(self) -> int:
        return ceil_log2(self.n_tv)

    @cached_property
    def n_slots(self) -> int:
        return 2 * self.n_tv + 3

    @cached_property
    def slot_nonhub(self) -> int:
        return 2 * self.n_tv

    @cached_property
    def slot_overflow(self) -> int:
        return 2 * self.n_tv + 1

    @cached_property
    def slot_g1(self) -> int:
        return 2 * self.n_tv + 2

    @cached_property
    def k(self) -> int:
        return window_width(self.p, self.q)

    @cached_property
    def off_kind(self) -> int:
        return self.w

    @cached_property
    def off_aux(self) -> int:
        return self.w + 2

    @cached_property
    def off_splus(self) -> int:
        return self.off_aux + self.aux_width

    @cached_property
    def off_sminus(self) -> int:
        return self.off_splus + self.n_s

    @cached_property
    def off_tflags(self) -> int:
        return self.off_sminus + self.n_s

    @cached_property
    def off_rbits(self) -> int:
        return self.off_tflags + 2 * self.n_tv

    @cached_property
    def off_dir(self) -> int:
        return self.off_rbits + self.n_r

    @cached_property
    def off_dicts(self) -> int:
        return self.off_dir + self.n_slots * self.dir_width

    def bipartite_len(self, kind: int, aux: int) -> int:
        if kind == KIND_PLUS:
            return self.k
        if kind == KIND_MINUS:
            return column_payload_len(aux, self.p, self.q, self.k)
        return 0


def write_global(h: GlobalHeader) -> BitString:
    wr = BitWriter()
    wr.append_uint(h.n, 32).append_uint(min(h.s, 2 ** 32 - 1), 32)
    wr.append_uint(PROFILE_CODES[h.profile], 2)
    wr.append_uint(BACKENDS.index(h.backend), 1)
    wr.append_uint(int(h.has_g1), 1).append_uint(int(h.has_overflow), 1)
    wr.append_uint(h.dir_width, 8)
    W = h.n.bit_length()
    for v in (h.n_s, h.n_tv, h.n_t, h.n_r, h.p, h.q, h.cap_t, h.cap_nonhub, h.cap_overflow, h.cap_g1):
        wr.append_uint(v, W)
    for z in h.s_roster:
        wr.append_uint(z, h.w)
    for x in h.tv_roster:
        wr.append_uint(x, h.w)
    for a, b in h.t_pairs:
        wr.append_uint(a, h.slot_width).append_uint(b, h.slot_width)
    return wr.seal()


@lru_cache(maxsize=256)
def parse_global(bits: BitString) -> GlobalHeader:
    try:
        c = bits.cursor()
        n = c.read_uint(32)
        s = c.read_uint(32)
        profile = PROFILE_NAMES[c.read_uint(2)]
        backend = BACKENDS[c.read_uint(1)]
        has_g1 = bool(c.read_uint(1))
        has_ovf = bool(c.read_uint(1))
        dir_width = c.read_uint(8)
        W = n.bit_length()
        n_s, n_tv, n_t, n_r, p, q, cap_t, cap_nh, cap_ovf, cap_g1 = (c.read_uint(W) for _ in range(10))
        w = ceil_log2(n)
        s_roster = tuple(c.read_uint(w) for _ in range(n_s))
        tv_roster = tuple(c.read_uint(w) for _ in range(n_tv))
        t_off = c.position
        sw = ceil_log2(n_tv)
        t_pairs = tuple((c.read_uint(sw), c.read_uint(sw)) for _ in range(n_t))
    except (KeyError, IndexError, DecodingError) as exc:
        raise LabelFormatError("malformed global section: {}".format(exc)) from exc
    if c.position != bits.length:
        raise LabelFormatError("trailing bits in global section")
    if p + q > n:
        raise LabelFormatError("side sizes exceed n")
    return GlobalHeader(n, s, profile, backend, has_g1, has_ovf, dir_width, n_s, n_tv, n_t, n_r,
                        p, q, cap_t, cap_nh, cap_ovf, cap_g1, s_roster, tv_roster, t_pairs,
                        bits.length, t_off)


def read_t_pair(global_cursor: BitCursor, h: GlobalHeader, index: int) -> tuple[int, int]:
    """Charged lookup of a T pair (as slot indices) in the global section."""
    if not 0 <= index < h.n_t:
        raise LabelFormatError("T-pair index out of range")
    sw = h.slot_width
    a = global_cursor.read_at(h.t_roster_offset + 2 * sw * index, sw)
    b = global_cursor.read_uint(sw)
    return a, b
