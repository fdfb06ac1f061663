"""Encoder for the comparability labelling scheme.

All work happens in rank space: vertices are renamed by their position in the
linear extension so the relation matrix is upper triangular and every
"smallest rank first" tie-break is argmax order.

Dictionaries only store the pairs the decoder can still reach when it consults
them: a pair already settled by the S-strings, by the residual heavy-pair
graph or by a residual hub's bitmap is left out.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..bipartite import build_payload_matrix
from ..bitio import BitString, BitWriter, ceil_log2
from ..graph_core import StrictOrder, degeneracy_orientation, linear_extension
from ..setdict import write_compressed, write_sorted
from .layout import (
    KIND_HUB, KIND_MINUS, KIND_PLUS, KIND_RESIDUAL, SECTIONS, GlobalHeader, write_global,
)
from .params import SchemeParams, default_s, derive_params
from .structure import covered_counts, greedy_cover, greedy_pair_cover, hub_mask


@dataclass
class DictRecord:
    family: str  # "t_slot", "nonhub", "overflow", "g1"
    backend: str
    size: int
    capacity: int
    bits: int


@dataclass
class EncodingInfo:
    params: SchemeParams
    backend: str
    order: np.ndarray  # order[rank] = vertex
    heavy_count: int
    cover_set: list  # S as vertex ids
    residual_heavy: list  # B' as vertex-id pairs
    hubs: list
    pair_cover: list  # T as vertex-id pairs
    residual_hubs: list  # R
    v_plus: list
    v_minus: list
    overflow_edges: int
    overflow_degeneracy: int
    g1_degeneracy: int
    light_out_max: int  # max out-degree inside any light in-neighbourhood subgraph
    light_in_max: int  # max in-degree inside any light out-neighbourhood subgraph
    nonhub_out_max: int
    nonhub_in_max: int
    sections: np.ndarray  # (n, len(SECTIONS)) bit counts, rows by vertex id
    dicts: list = field(default_factory=list)
    encode_seconds: float = 0.0

    def section_totals(self) -> dict:
        return {name: int(self.sections[:, i].sum()) for i, name in enumerate(SECTIONS)}


class Labeling:
    """Global section plus one label per vertex (indexed by vertex id)."""

    def __init__(self, profile: str, n: int, global_bits: BitString, labels, info: EncodingInfo | None = None):
        self.profile = profile
        self.n = n
        self.global_bits = global_bits
        self.labels = tuple(labels)
        self.info = info

    @property
    def header(self):
        from .layout import parse_global
        return parse_global(self.global_bits)

    def label_bits(self, v: int) -> int:
        """Size of v's label with the shared global section counted in."""
        return self.global_bits.length + self.labels[v].length

    def max_label_bits(self) -> int:
        return self.global_bits.length + max((b.length for b in self.labels), default=0)

    def mean_label_bits(self) -> float:
        if not self.labels:
            return float(self.global_bits.length)
        return self.global_bits.length + sum(b.length for b in self.labels) / len(self.labels)

    def adjacent(self, u: int, v: int) -> bool:
        from .decoder import adjacent
        return adjacent(self.global_bits, self.labels[u], self.labels[v])[0]

    def comparable(self, u: int, v: int) -> str:
        from .decoder import comparable
        return comparable(self.global_bits, self.labels[u], self.labels[v])[0]

    def query(self, u: int, v: int):
        """(verdict, inspected bits) for an ordered pair."""
        from .decoder import comparable
        return comparable(self.global_bits, self.labels[u], self.labels[v])


def _write_dict(backend: str, n: int, elements, cap: int) -> BitString:
    if len(elements) == 0:
        return BitString()
    w = BitWriter()
    if backend == "sorted":
        write_sorted(w, n, list(elements))
    else:
        write_compressed(w, n, list(elements), cap)
    return w.seal()


def encode(o: StrictOrder, params: SchemeParams | None = None, *, s: int | None = None,
           profile: str = "tradeoff", backend: str | None = None) -> Labeling:
    """Label every vertex of ``o`` so that comparability is decidable from two labels."""
    started = time.perf_counter()
    n = o.n
    if params is None:
        params = derive_params(n, s if s is not None else default_s(n), profile)
    profile = params.profile
    backend = backend or params.default_backend
    ext = linear_extension(o)
    order = np.asarray(ext.order, dtype=np.int64)
    L = o.less[np.ix_(order, order)] if n else np.zeros((0, 0), dtype=bool)
    comp = L | L.T
    f = L.astype(np.float64)

    # heavy pairs and the cover set
    heavy = L & (covered_counts(L) >= params.heavy_threshold) if n else L.copy()
    S, heavy_res = greedy_cover(L, heavy, params.s)
    if S:
        s_resolved = (f[:, S] @ f[S, :]) > 0.5
    else:
        s_resolved = np.zeros_like(L)

    # hubs and the pair cover
    hubs = hub_mask(L, params.hub_threshold) if n else np.zeros(0, dtype=bool)
    T, cover_idx, r_mask = greedy_pair_cover(L, hubs, params.t)
    covered = hubs & ~r_mask
    R = np.flatnonzero(r_mask)
    tv = sorted({x for pair in T for x in pair})
    slot_of = {x: m for m, x in enumerate(tv)}

    light = L & ~heavy
    pending = L & ~s_resolved & ~heavy_res
    pending[R, :] = False
    pending[:, R] = False

    # kinds and the non-hub split
    kind = np.full(n, -1, dtype=np.int64)
    aux = np.zeros(n, dtype=np.int64)
    kind[covered] = KIND_HUB
    aux[covered] = cover_idx[covered]
    kind[R] = KIND_RESIDUAL
    aux[R] = np.arange(len(R))
    nonhub = np.flatnonzero(~hubs)
    sub = L[np.ix_(nonhub, nonhub)]
    sub_out = sub.sum(axis=1)
    plus = nonhub[sub_out <= params.ell]
    minus = nonhub[sub_out > params.ell]
    kind[plus] = KIND_PLUS
    aux[plus] = np.arange(len(plus))
    kind[minus] = KIND_MINUS
    aux[minus] = np.arange(len(minus))
    plus_mask = np.zeros(n, dtype=bool)
    plus_mask[plus] = True
    minus_mask = np.zeros(n, dtype=bool)
    minus_mask[minus] = True

    n_slots = 2 * len(tv) + 3
    slot_nonhub, slot_ovf, slot_g1 = 2 * len(tv), 2 * len(tv) + 1, 2 * len(tv) + 2
    dict_sets = [dict() for _ in range(n)]  # slot -> ndarray of ranks

    # light neighbourhood subgraphs of the T vertices
    tflags = np.zeros((n, 2 * len(tv)), dtype=bool)
    light_out_max = light_in_max = 0
    lp = light & pending
    for m, x in enumerate(tv):
        below = light[:, x]
        tflags[below, 2 * m] = True
        for a in np.flatnonzero(below):
            out = np.flatnonzero(below & lp[a])
            light_out_max = max(light_out_max, len(out))
            if len(out):
                dict_sets[a][2 * m] = out
        above = light[x, :]
        tflags[above, 2 * m + 1] = True
        for b in np.flatnonzero(above):
            inn = np.flatnonzero(above & lp[:, b])
            light_in_max = max(light_in_max, len(inn))
            if len(inn):
                dict_sets[b][2 * m + 1] = inn

    # non-hub dictionaries
    nonhub_out_max = nonhub_in_max = 0
    for a in plus:
        out = np.flatnonzero(plus_mask & pending[a])
        nonhub_out_max = max(nonhub_out_max, len(out))
        if len(out):
            dict_sets[a][slot_nonhub] = out
    for b in minus:
        inn = np.flatnonzero(minus_mask & pending[:, b])
        nonhub_in_max = max(nonhub_in_max, len(inn))
        if len(inn):
            dict_sets[b][slot_nonhub] = inn

    # residual heavy pairs, oriented by degeneracy
    ra, rb = np.nonzero(heavy_res)
    g1 = degeneracy_orientation(n, zip(ra.tolist(), rb.tolist()))
    has_g1 = bool(len(ra))
    for v in range(n):
        if g1.out[v]:
            dict_sets[v][slot_g1] = np.array(sorted(g1.out[v]), dtype=np.int64)

    # overflow: pending pairs at a covered hub with no common light subgraph
    overflow_edges = 0
    ovf_d = 0
    if covered.any():
        rel = np.zeros_like(tflags)
        for z in np.flatnonzero(covered):
            x, y = T[cover_idx[z]]
            for sl in (2 * slot_of[x], 2 * slot_of[x] + 1, 2 * slot_of[y], 2 * slot_of[y] + 1):
                rel[z, sl] = True
        mem = tflags.astype(np.float64)
        shared = (tflags & rel).astype(np.float64) @ mem.T
        common = (shared + shared.T) > 0.5
        involved = covered[:, None] | covered[None, :]
        ovf = pending & involved & ~common
        oa, ob = np.nonzero(ovf)
        overflow_edges = len(oa)
        if overflow_edges:
            orient = degeneracy_orientation(n, zip(oa.tolist(), ob.tolist()))
            ovf_d = orient.d
            for v in range(n):
                if orient.out[v]:
                    dict_sets[v][slot_ovf] = np.array(sorted(orient.out[v]), dtype=np.int64)

    cap_t = max(light_out_max, light_in_max)
    cap_nonhub = max(nonhub_out_max, nonhub_in_max)
    caps = {slot_nonhub: cap_nonhub, slot_ovf: ovf_d, slot_g1: g1.d}

    # encode dictionaries
    records: list[DictRecord] = []
    dict_bits = [[BitString()] * n_slots for _ in range(n)]
    for v in range(n):
        for slot, elems in dict_sets[v].items():
            if slot == slot_ovf:
                be, cap, fam = "sorted", ovf_d, "overflow"
            elif slot < 2 * len(tv):
                be, cap, fam = backend, cap_t, "t_slot"
            else:
                be, cap, fam = backend, caps[slot], ("nonhub" if slot == slot_nonhub else "g1")
            bits = _write_dict(be, n, elems.tolist(), cap)
            dict_bits[v][slot] = bits
            records.append(DictRecord(fam, be, len(elems), cap, bits.length))
    region = [sum(b.length for b in row) for row in dict_bits]
    dir_width = max(region, default=0).bit_length()

    # bipartite part between V+ (rows) and V- (columns)
    p, q = len(plus), len(minus)
    rows, cols = build_payload_matrix(comp[np.ix_(plus, minus)])

    header = GlobalHeader(
        n=n, s=params.s, profile=profile, backend=backend, has_g1=has_g1,
        has_overflow=overflow_edges > 0, dir_width=dir_width, n_s=len(S), n_tv=len(tv),
        n_t=len(T), n_r=len(R), p=p, q=q, cap_t=cap_t, cap_nonhub=cap_nonhub,
        cap_overflow=ovf_d, cap_g1=g1.d, s_roster=tuple(S), tv_roster=tuple(tv),
        t_pairs=tuple((slot_of[x], slot_of[y]) for x, y in T),
    )
    global_bits = write_global(header)

    w = ceil_log2(n)
    A = header.aux_width
    sp = L[:, S] if S else np.zeros((n, 0), dtype=bool)
    sm = L[S, :].T if S else np.zeros((n, 0), dtype=bool)
    rbits = comp[:, R]
    sections = np.zeros((n, len(SECTIONS)), dtype=np.int64)
    labels_rank = []
    for a in range(n):
        wr = BitWriter()
        wr.append_uint(a, w).append_uint(int(kind[a]), 2).append_uint(int(aux[a]), A)
        wr.append_bits(BitString.from_bools(sp[a])).append_bits(BitString.from_bools(sm[a]))
        wr.append_bits(BitString.from_bools(tflags[a]))
        wr.append_bits(BitString.from_bools(rbits[a]))
        end = 0
        for b in dict_bits[a]:
            end += b.length
            wr.append_uint(end, dir_width)
        for b in dict_bits[a]:
            wr.append_bits(b)
        if kind[a] == KIND_PLUS:
            bip = rows[aux[a]]
        elif kind[a] == KIND_MINUS:
            bip = cols[aux[a]]
        else:
            bip = BitString()
        wr.append_bits(bip)
        labels_rank.append(wr.seal())
        t_bits = sum(dict_bits[a][j].length for j in range(2 * len(tv)))
        sections[order[a]] = (
            w, 2, A, 2 * len(S), 2 * len(tv), len(R), n_slots * dir_width, t_bits,
            dict_bits[a][slot_nonhub].length, dict_bits[a][slot_ovf].length,
            dict_bits[a][slot_g1].length, bip.length,
        )

    labels = [None] * n
    for a in range(n):
        labels[order[a]] = labels_rank[a]

    def ids(xs):
        return [int(order[x]) for x in xs]

    info = EncodingInfo(
        params=params, backend=backend, order=order, heavy_count=int(heavy.sum()),
        cover_set=ids(S), residual_heavy=[(int(order[a]), int(order[b])) for a, b in zip(ra, rb)],
        hubs=ids(np.flatnonzero(hubs)), pair_cover=[(int(order[x]), int(order[y])) for x, y in T],
        residual_hubs=ids(R), v_plus=ids(plus), v_minus=ids(minus),
        overflow_edges=overflow_edges, overflow_degeneracy=ovf_d, g1_degeneracy=g1.d,
        light_out_max=light_out_max, light_in_max=light_in_max,
        nonhub_out_max=nonhub_out_max, nonhub_in_max=nonhub_in_max,
        sections=sections, dicts=records,
    )
    info.encode_seconds = time.perf_counter() - started
    return Labeling(profile, n, global_bits, labels, info)
