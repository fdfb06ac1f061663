"""Command line front-end: gen, encode, query, verify, bench, universal-check."""
from __future__ import annotations

import argparse
import sys

from .graph_core import (
    CycleError, FormatError, MODELS, format_digraph, order_as_digraph, parse_digraph,
    random_digraph, random_poset, reach_sets, transitive_closure,
)
from .reach import ReachLabeling, label_digraph
from .report import BenchRow, bench_instance, size_report, write_csv
from .scheme.container import Container, read_file, write_file
from .scheme.encoder import Labeling, encode
from .scheme.layout import LabelFormatError
from .setdict import CapacityError
from .universal import GuardError, format_edges, universal_check

PROFILES = ("tradeoff", "fast", "reach")


def parse_sizes(text: str) -> list[int]:
    """'a..b' (step a), 'a..b:step' or a comma list."""
    text = text.strip()
    if ".." in text:
        lo, _, rest = text.partition("..")
        hi, _, step = rest.partition(":")
        lo, hi = int(lo), int(hi)
        step = int(step) if step else lo
        if lo < 1 or hi < lo or step < 1:
            raise argparse.ArgumentTypeError("bad size range {!r}".format(text))
        return list(range(lo, hi + 1, step))
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("bad size list {!r}".format(text)) from exc
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("bad size list {!r}".format(text))
    return sizes


def _read_digraph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


def _load_labels(path):
    c = read_file(path)
    if c.profile == "reach":
        return ReachLabeling.from_container(c)
    return Labeling(c.profile, c.n, c.global_bits, c.labels)


def _check_vertex(v: int, n: int):
    if not 0 <= v < n:
        raise LabelFormatError("vertex {} outside [0, {})".format(v, n))


def cmd_gen(args) -> int:
    if args.model == "digraph":
        d = random_digraph(args.n, args.p, args.seed)
    else:
        d = order_as_digraph(random_poset(args.n, args.model, args.p, args.seed))
    text = format_digraph(d, "model={} n={} p={} seed={}".format(args.model, args.n, args.p, args.seed))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_encode(args) -> int:
    d = _read_digraph(args.input)
    if args.profile == "reach":
        rl = label_digraph(d, s=args.s, backend=args.dict)
        container = rl.to_container()
        summary = "{} vertices, {} components, max label {} bits".format(
            d.n, len(rl.condensation.members), rl.max_label_bits())
    else:
        o = transitive_closure(d)
        lab = encode(o, s=args.s, profile=args.profile, backend=args.dict)
        container = Container(args.profile, lab.global_bits, lab.labels)
        summary = "{} vertices, max label {} bits".format(d.n, lab.max_label_bits())
        if args.report:
            print("\n".join(size_report(lab).lines()))
    write_file(args.out, container)
    print("wrote {}: {}".format(args.out, summary))
    return 0


def cmd_query(args) -> int:
    labels = _load_labels(args.labels)
    n = len(labels.labels)
    _check_vertex(args.u, n)
    _check_vertex(args.v, n)
    if isinstance(labels, ReachLabeling):
        ok, inspected = labels.query(args.u, args.v)
        print("reaches:{} inspected_bits={}".format("yes" if ok else "no", inspected))
        return 0
    if args.u == args.v:
        raise LabelFormatError("query needs two distinct vertices")
    verdict, inspected = labels.query(args.u, args.v)
    print("{} inspected_bits={}".format(verdict, inspected))
    return 0


def cmd_verify(args) -> int:
    d = _read_digraph(args.input)
    labels = _load_labels(args.labels)
    if len(labels.labels) != d.n:
        raise LabelFormatError("label file has {} vertices, input has {}".format(len(labels.labels), d.n))
    n = d.n
    good = total = 0
    if isinstance(labels, ReachLabeling):
        reach = reach_sets(d)
        for u in range(n):
            for v in range(n):
                total += 1
                good += labels.reaches(u, v) == (v in reach[u])
    else:
        o = transitive_closure(d)
        for u in range(n):
            for v in range(u + 1, n):
                expect = "u<v" if o.less[u, v] else ("v<u" if o.less[v, u] else "incomparable")
                flipped = {"u<v": "v<u", "v<u": "u<v"}.get(expect, expect)
                total += 1
                good += labels.comparable(u, v) == expect and labels.comparable(v, u) == flipped
    print("{}/{} pairs match".format(good, total))
    return 0 if good == total else 1


def cmd_bench(args) -> int:
    profiles = args.profile or ["tradeoff", "fast"]
    rows: list[BenchRow] = []
    for n in args.n:
        for seed in range(args.seed, args.seed + args.seeds):
            for profile in profiles:
                rows.append(bench_instance(n, args.model, seed, profile, s=args.s, p=args.p,
                                           backend=args.dict, sample_limit=args.pairs))
                if args.verbose:
                    r = rows[-1]
                    print("n={} seed={} {}: max {} bits".format(n, seed, profile, r.max_label_bits),
                          file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def cmd_universal(args) -> int:
    profile = "tradeoff" if args.profile == "reach" else args.profile
    report = universal_check(args.n, profile=profile, s=args.s, backend=args.dict, cap=args.cap)
    print("\n".join(report.lines()))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_edges(report))
    return 0 if report.injective and report.embeds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orderlabel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_flags(p, profile_default="tradeoff"):
        p.add_argument("--profile", choices=PROFILES, default=profile_default)
        p.add_argument("--s", type=int, default=None, help="cover-set budget (default ceil(n^0.75))")
        p.add_argument("--dict", choices=("sorted", "compressed"), default=None,
                       help="dictionary backend (default depends on the profile)")

    g = sub.add_parser("gen", help="write a random digraph")
    g.add_argument("--model", choices=MODELS + ("digraph",), default="dag-closure")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("encode", help="label a digraph file")
    e.add_argument("input")
    scheme_flags(e)
    e.add_argument("--out", required=True)
    e.add_argument("--report", action="store_true", help="print the per-section size ledger")
    e.set_defaults(func=cmd_encode)

    q = sub.add_parser("query", help="decode one ordered pair")
    q.add_argument("labels")
    q.add_argument("u", type=int)
    q.add_argument("v", type=int)
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="compare every pair against the oracle")
    v.add_argument("input")
    v.add_argument("labels")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="size sweep as CSV")
    b.add_argument("--model", choices=MODELS, default="layered")
    b.add_argument("--n", type=parse_sizes, default=parse_sizes("100,300,1000"))
    b.add_argument("--p", type=float, default=0.5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    b.add_argument("--profile", choices=PROFILES, action="append")
    b.add_argument("--s", type=int, default=None)
    b.add_argument("--dict", choices=("sorted", "compressed"), default=None)
    b.add_argument("--pairs", type=int, default=100_000, help="sampled queries per instance")
    b.add_argument("--out", default=None)
    b.add_argument("-v", "--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)

    u = sub.add_parser("universal-check", help="embed every poset on n points")
    u.add_argument("n", type=int)
    scheme_flags(u)
    u.add_argument("--cap", type=int, default=2000, help="materialize up to this many labels")
    u.add_argument("--out", default=None, help="edge list of the materialized universal poset")
    u.set_defaults(func=cmd_universal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, CycleError, LabelFormatError, GuardError, CapacityError, ValueError, OSError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
