"""Exhaustive check that the labels embed every small poset.

Every labelled strict order on n <= 6 points is encoded; each must get
pairwise distinct labels and decode back to exactly its own relation. The
emitted labels, with the decoder as the pair relation, form the universal
object restricted to the labels that actually occur; it is materialized when
small enough.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .graph_core import StrictOrder
from .scheme import decoder
from .scheme.encoder import encode
from .scheme.layout import LabelFormatError

MAX_N = 6


class GuardError(ValueError):
    pass


def enumerate_posets(n: int) -> list[StrictOrder]:
    """All strict orders on [0, n), built one point at a time.

    The new point gets a down-set D and an up-set U of the smaller order;
    D must be down-closed, U up-closed and every element of D below every
    element of U.
    """
    if n > MAX_N:
        raise GuardError("enumeration is limited to n <= {}".format(MAX_N))
    if n < 0:
        raise GuardError("n must be nonnegative")
    current = [np.zeros((0, 0), dtype=bool)]
    for m in range(n):
        nxt = []
        for less in current:
            for choice in product((0, 1, 2), repeat=m):  # 0 none, 1 below, 2 above
                down = np.array([c == 1 for c in choice], dtype=bool)
                up = np.array([c == 2 for c in choice], dtype=bool)
                if m and (less[:, down].any(axis=1) & ~down).any():
                    continue  # something below a member of D is missing from D
                if m and (less[up, :].any(axis=0) & ~up).any():
                    continue
                if m and down.any() and up.any() and not less[np.ix_(down, up)].all():
                    continue
                grown = np.zeros((m + 1, m + 1), dtype=bool)
                grown[:m, :m] = less
                grown[:m, m] = down
                grown[m, :m] = up
                nxt.append(grown)
        current = nxt
    return [StrictOrder(less, validate=False) for less in current]


@dataclass
class UniversalReport:
    n: int
    poset_count: int
    labels_emitted: int
    distinct_labels: int
    injective: bool
    embeds: bool
    failures: list = field(default_factory=list)
    universal_vertices: int | None = None
    universal_edges: list | None = None

    def lines(self) -> list[str]:
        out = [
            "n = {}".format(self.n),
            "posets enumerated: {}".format(self.poset_count),
            "labels emitted: {} ({} distinct)".format(self.labels_emitted, self.distinct_labels),
            "labels pairwise distinct within every poset: {}".format("yes" if self.injective else "no"),
            "every poset decodes to itself: {}".format("yes" if self.embeds else "no"),
        ]
        if self.universal_edges is None:
            out.append("universal poset not materialized (label count above cap)")
        else:
            out.append("universal poset on realized labels: {} vertices, {} arcs".format(
                self.universal_vertices, len(self.universal_edges)))
        for f in self.failures[:10]:
            out.append("failure: " + f)
        return out


def universal_check(n: int, *, profile: str = "tradeoff", s: int | None = None,
                    backend: str | None = None, cap: int = 2000) -> UniversalReport:
    posets = enumerate_posets(n)
    emitted = 0
    seen: dict = {}  # (global, label) -> vertex index in the universal object
    injective = embeds = True
    failures = []
    for idx, o in enumerate(posets):
        lab = encode(o, s=s, profile=profile, backend=backend)
        if len(set(lab.labels)) != n:
            injective = False
            failures.append("poset #{}: repeated label".format(idx))
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                expect = "u<v" if o.less[u, v] else ("v<u" if o.less[v, u] else "incomparable")
                got = lab.comparable(u, v)
                if got != expect:
                    embeds = False
                    failures.append("poset #{}: pair ({}, {}) decoded {} expected {}".format(idx, u, v, got, expect))
        for b in lab.labels:
            emitted += 1
            seen.setdefault((lab.global_bits, b), len(seen))
    report = UniversalReport(n, len(posets), emitted, len(seen), injective, embeds, failures)
    if len(seen) <= cap:
        report.universal_vertices = len(seen)
        report.universal_edges = _materialize(seen)
    return report


def _materialize(seen: dict) -> list[tuple[int, int]]:
    """Arcs x -> y of the decoder relation between labels sharing a global section."""
    groups: dict = {}
    for (g, b), i in seen.items():
        groups.setdefault(g, []).append((i, b))
    arcs = []
    for g, members in groups.items():
        for i, bi in members:
            for j, bj in members:
                if i == j:
                    continue
                try:
                    verdict, _ = decoder.comparable(g, bi, bj)
                except LabelFormatError:
                    continue  # equal ranks: never both in one poset
                if verdict == "u<v":
                    arcs.append((i, j))
    return sorted(arcs)


def format_edges(report: UniversalReport) -> str:
    if report.universal_edges is None:
        raise ValueError("universal poset was not materialized")
    lines = ["{} {}".format(report.universal_vertices, len(report.universal_edges))]
    lines.extend("{} {}".format(a, b) for a, b in report.universal_edges)
    return "\n".join(lines) + "\n"
