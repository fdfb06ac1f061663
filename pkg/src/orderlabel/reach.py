"""Reachability labels for arbitrary digraphs.

Strong components are collapsed, the component DAG is transitively closed and
labelled with the comparability scheme. A vertex label is::

    component id (w) | component rank (w) | inner label of the component

with ``w = ceil(log n)``. Two vertices of one component reach each other.
The global section is the outer vertex count (32 bits) followed by the inner
scheme's global section.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitio import BitCursor, BitString, BitWriter, ceil_log2
from .graph_core import Condensation, Digraph, close_matrix, condense
from .scheme import decoder
from .scheme.container import Container
from .scheme.encoder import Labeling, encode
from .scheme.layout import LabelFormatError
from .scheme.params import SchemeParams


@dataclass
class ReachLabeling:
    n: int
    global_bits: BitString
    labels: tuple
    component_ids: tuple
    inner: Labeling | None = None
    condensation: Condensation | None = None

    def reaches(self, u: int, v: int) -> bool:
        return reaches(self.global_bits, self.labels[u], self.labels[v])

    def query(self, u: int, v: int) -> tuple[bool, int]:
        return reach_query(self.global_bits, self.labels[u], self.labels[v])

    def max_label_bits(self) -> int:
        return self.global_bits.length + max((b.length for b in self.labels), default=0)

    def to_container(self) -> Container:
        return Container("reach", self.global_bits, self.labels, self.component_ids)

    @classmethod
    def from_container(cls, c: Container) -> "ReachLabeling":
        if c.profile != "reach":
            raise LabelFormatError("container does not hold reachability labels")
        return cls(c.n, c.global_bits, c.labels, c.component_ids)


def label_digraph(d: Digraph, params: SchemeParams | None = None, *, s: int | None = None,
                  profile: str = "tradeoff", backend: str | None = None) -> ReachLabeling:
    cond = condense(d)
    m = len(cond.members)
    adj = np.zeros((m, m), dtype=bool)
    for a, b in cond.dag.edges:
        adj[a, b] = True
    inner = encode(close_matrix(adj), params, s=s, profile=profile, backend=backend)
    w = ceil_log2(d.n)
    comp_rank = [0] * m
    for r, c in enumerate(inner.info.order.tolist()):
        comp_rank[c] = r
    labels = []
    for v in range(d.n):
        c = cond.component_of[v]
        wr = BitWriter().append_uint(c, w).append_uint(comp_rank[c], w)
        labels.append(wr.append_bits(inner.labels[c]).seal())
    global_bits = BitWriter().append_uint(d.n, 32).append_bits(inner.global_bits).seal()
    return ReachLabeling(d.n, global_bits, tuple(labels), tuple(cond.component_of), inner, cond)


def split_global(global_bits: BitString) -> tuple[int, BitString]:
    """(outer vertex count, inner global section)."""
    if global_bits.length < 32:
        raise LabelFormatError("reach global section too short")
    return global_bits.slice(0, 32).value, global_bits.slice(32, global_bits.length)


def reach_query(global_bits: BitString, label_u: BitString, label_v: BitString) -> tuple[bool, int]:
    """(u reaches v?, inspected bits). A vertex reaches itself."""
    n, inner_global = split_global(global_bits)
    w = ceil_log2(n)
    if min(label_u.length, label_v.length) < 2 * w:
        raise LabelFormatError("reach label too short")
    cu, cv = BitCursor(label_u), BitCursor(label_v)
    if cu.read_uint(w) == cv.read_uint(w):
        return True, cu.inspected + cv.inspected
    spent = cu.inspected + cv.inspected
    inner_u = label_u.slice(2 * w, label_u.length)
    inner_v = label_v.slice(2 * w, label_v.length)
    verdict, inspected = decoder.comparable(inner_global, inner_u, inner_v)
    return verdict == "u<v", spent + inspected


def reaches(global_bits: BitString, label_u: BitString, label_v: BitString) -> bool:
    return reach_query(global_bits, label_u, label_v)[0]
