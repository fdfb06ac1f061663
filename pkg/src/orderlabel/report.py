"""Size ledgers and benchmark rows."""
from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .bitio import ceil_log2
from .graph_core import random_digraph, random_poset
from .scheme.encoder import Labeling, encode
from .scheme.layout import SECTIONS
from .setdict import compressed_payload_bits, entropy


def _h(p: float) -> float:
    # the entropy terms are only meaningful up to 1/2; beyond that H is capped at 1
    return entropy(min(max(p, 0.0), 0.5))


def tradeoff_bound(n: int, s: int) -> float:
    return n / 4 + 1000 * s ** (-1 / 3) * n * math.log2(n) ** 2 + 2 * s


def fast_bound(n: int, s: int, gamma: float, delta: float, t: int) -> float:
    return n / 4 + 4 * (_h(2 * gamma) + t * _h(gamma)) * n + 6 * _h(delta) * n + 2 * s


def inspection_bound(n: int, s: int) -> float:
    return 2 * s + 1000 * math.log2(n) ** 2


@dataclass
class SizeReport:
    n: int
    profile: str
    s: int
    global_bits: int
    bound: float
    label_bits: list  # per vertex, global section included
    section_totals: dict
    entropy_terms: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passes(self) -> list:
        return [b <= self.bound for b in self.label_bits]

    @property
    def ok(self) -> bool:
        return all(self.passes) and not self.violations

    def lines(self) -> list[str]:
        out = ["profile {} n={} s={}".format(self.profile, self.n, self.s),
               "global section: {} bits (counted in every label)".format(self.global_bits)]
        for name, total in self.section_totals.items():
            out.append("  {:<14} {:>10} bits total".format(name, total))
        for name, val in self.entropy_terms.items():
            out.append("  {} = {:.4f}".format(name, val))
        out.append("bound {:.1f} bits; max label {} bits; {} of {} labels within bound".format(
            self.bound, max(self.label_bits, default=0), sum(self.passes), len(self.label_bits)))
        out.extend("violation: " + v for v in self.violations)
        return out


def ledger_violations(lab: Labeling) -> list[str]:
    """Component bounds on every section of every label."""
    info = lab.info
    n = lab.n
    out = []
    logn = math.log2(n) if n > 1 else 1.0
    for rec in info.dicts:
        if rec.backend == "sorted":
            if rec.bits > 4 * rec.size * logn:
                out.append("sorted dictionary of {} elements uses {} bits".format(rec.size, rec.bits))
        else:
            limit = ceil_log2(math.comb(n + rec.capacity, rec.capacity)) + ceil_log2(rec.capacity + 1)
            if rec.bits > limit or rec.bits != compressed_payload_bits(n, rec.capacity):
                out.append("compressed dictionary (cap {}) uses {} bits".format(rec.capacity, rec.bits))
            if rec.size > rec.capacity:
                out.append("compressed dictionary over capacity")
    sec = info.sections
    s_col = SECTIONS.index("s_strings")
    if (sec[:, s_col] != 2 * len(info.cover_set)).any():
        out.append("S-strings differ from 2|S| bits")
    b_col = SECTIONS.index("bipartite")
    p, q = len(info.v_plus), len(info.v_minus)
    if sec[:, b_col].sum() != p * q:
        out.append("bipartite payloads total {} bits, expected pq = {}".format(sec[:, b_col].sum(), p * q))
    if sec[:, b_col].max(initial=0) > -(-n // 4) + 1:
        out.append("bipartite payload above ceil(n/4)+1")
    return out


def size_report(lab: Labeling) -> SizeReport:
    info = lab.info
    if info is None:
        raise ValueError("size report needs the encoder diagnostics")
    params = info.params
    n = lab.n
    terms = {}
    if params.profile == "tradeoff":
        bound = tradeoff_bound(n, params.s) if n >= 2 else float("inf")
    else:
        bound = fast_bound(n, params.s, params.gamma, params.delta, params.t)
        terms = {"H(2 gamma)": _h(2 * params.gamma), "H(gamma)": _h(params.gamma), "H(delta)": _h(params.delta)}
    return SizeReport(
        n=n, profile=params.profile, s=params.s, global_bits=lab.global_bits.length, bound=bound,
        label_bits=[lab.label_bits(v) for v in range(n)], section_totals=info.section_totals(),
        entropy_terms=terms, violations=ledger_violations(lab),
    )


def sample_pairs(n: int, seed: int, limit: int = 100_000) -> np.ndarray:
    """min(n^2, limit) seeded ordered pairs of distinct vertices."""
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    count = min(n * n, limit)
    rng = np.random.default_rng(seed)
    u = rng.integers(0, n, count)
    v = (u + rng.integers(1, n, count)) % n
    return np.stack([u, v], axis=1)


def max_inspected(query, n: int, seed: int, limit: int = 100_000) -> int:
    best = 0
    for u, v in sample_pairs(n, seed, limit).tolist():
        best = max(best, query(u, v)[1])
    return best


BENCH_FIELDS = (
    ["n", "model", "seed", "profile", "s", "max_label_bits", "mean_label_bits", "global_bits"]
    + ["bits_" + name for name in SECTIONS]
    + ["overflow_edges", "max_inspected_bits", "encode_seconds"]
)


@dataclass
class BenchRow:
    n: int
    model: str
    seed: int
    profile: str
    s: int
    max_label_bits: int
    mean_label_bits: float
    global_bits: int
    sections: dict
    overflow_edges: int
    max_inspected_bits: int
    encode_seconds: float

    def as_dict(self) -> dict:
        d = asdict(self)
        sections = d.pop("sections")
        for name in SECTIONS:
            d["bits_" + name] = sections.get(name, 0)
        d["mean_label_bits"] = round(self.mean_label_bits, 3)
        d["encode_seconds"] = round(self.encode_seconds, 4)
        return {k: d[k] for k in BENCH_FIELDS}


def bench_instance(n: int, model: str, seed: int, profile: str, s: int | None = None,
                   p: float = 0.5, backend: str | None = None, sample_limit: int = 100_000) -> BenchRow:
    if profile == "reach":
        from .reach import label_digraph
        d = random_digraph(n, p, seed)
        started = time.perf_counter()
        rl = label_digraph(d, s=s, backend=backend)
        elapsed = time.perf_counter() - started
        inner = rl.inner
        lengths = [b.length for b in rl.labels]
        return BenchRow(
            n, "digraph", seed, profile, inner.info.params.s,
            rl.global_bits.length + max(lengths, default=0),
            rl.global_bits.length + (sum(lengths) / n if n else 0.0), rl.global_bits.length,
            inner.info.section_totals(), inner.info.overflow_edges,
            max_inspected(rl.query, n, seed, sample_limit), elapsed,
        )
    o = random_poset(n, model, p, seed)
    lab = encode(o, s=s, profile=profile, backend=backend)
    info = lab.info
    return BenchRow(
        n, model, seed, profile, info.params.s, lab.max_label_bits(), lab.mean_label_bits(),
        lab.global_bits.length, info.section_totals(), info.overflow_edges,
        max_inspected(lab.query, n, seed, sample_limit), info.encode_seconds,
    )


def write_csv(rows, fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_dict())
