"""Digraphs, strict orders and the brute-force machinery around them.

Strict orders are held as dense boolean matrices (``less[x, y]`` is ``x < y``);
the schemes are quadratic-time encoders so nothing here tries to be sparse.
Closures are computed with Python ints as row bitsets.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np


class CycleError(ValueError):
    pass


class FormatError(ValueError):
    pass


def bits_to_row(bits: int, n: int) -> np.ndarray:
    """Bitset (bit i = vertex i) to a boolean vector of length n."""
    if n == 0:
        return np.zeros(0, dtype=bool)
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def row_to_bits(row: np.ndarray) -> int:
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise FormatError("self-loop at {}".format(u))
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise FormatError("edge ({}, {}) outside [0, {})".format(u, v, self.n))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    def successors(self) -> list[list[int]]:
        succ = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            succ[u].append(v)
        return succ


class StrictOrder:
    """Irreflexive transitive relation on ``range(n)``, stored as a matrix."""

    def __init__(self, less: np.ndarray, validate: bool = True):
        less = np.asarray(less, dtype=bool)
        if less.ndim != 2 or less.shape[0] != less.shape[1]:
            raise ValueError("relation matrix must be square")
        self.less = less
        self.less.setflags(write=False)
        self.n = less.shape[0]
        if validate:
            self.check()

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], validate: bool = True) -> "StrictOrder":
        m = np.zeros((n, n), dtype=bool)
        for x, y in pairs:
            m[x, y] = True
        return cls(m, validate=validate)

    @classmethod
    def chain(cls, n: int) -> "StrictOrder":
        return cls(np.triu(np.ones((n, n), dtype=bool), 1), validate=False)

    @classmethod
    def antichain(cls, n: int) -> "StrictOrder":
        return cls(np.zeros((n, n), dtype=bool), validate=False)

    def check(self) -> None:
        m = self.less
        if m.diagonal().any():
            raise ValueError("relation is not irreflexive")
        if (m & m.T).any():
            raise ValueError("relation is not antisymmetric")
        if self.n:
            mf = m.astype(np.float64)
            if ((mf @ mf > 0) & ~m).any():
                raise ValueError("relation is not transitively closed")

    @property
    def rel(self) -> frozenset:
        xs, ys = np.nonzero(self.less)
        return frozenset(zip(xs.tolist(), ys.tolist()))

    def lt(self, x: int, y: int) -> bool:
        return bool(self.less[x, y])

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.less[x, y] or self.less[y, x])

    def comparability(self) -> np.ndarray:
        return self.less | self.less.T

    def relabel(self, perm) -> "StrictOrder":
        """Order on new ids where new vertex perm[v] plays old vertex v."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return StrictOrder(self.less[np.ix_(inv, inv)], validate=False)

    def __eq__(self, other):
        return isinstance(other, StrictOrder) and np.array_equal(self.less, other.less)

    def __hash__(self):
        return hash((self.n, self.less.tobytes()))

    def __repr__(self):
        return "StrictOrder(n={}, pairs={})".format(self.n, int(self.less.sum()))


@dataclass(frozen=True)
class LinearExtension:
    rank: tuple  # rank[v] = position of v
    order: tuple  # order[i] = vertex at position i


@dataclass(frozen=True)
class Condensation:
    component_of: tuple
    members: tuple  # members[c] = sorted tuple of vertices
    dag: Digraph


@dataclass(frozen=True)
class Orientation:
    out: tuple  # out[v] = frozenset of heads
    d: int
    removal_order: tuple = field(default=(), compare=False)

    def edge_count(self) -> int:
        return sum(len(o) for o in self.out)


def topological_order(n: int, succ: list[list[int]]) -> list[int]:
    """Kahn's algorithm, smallest id first among available vertices."""
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) != n:
        raise CycleError("digraph has a directed cycle; condense it first")
    return order


def _closure_bitsets(n: int, succ: list[list[int]]) -> list[int]:
    order = topological_order(n, succ)
    reach = [0] * n
    for u in reversed(order):
        acc = 0
        for v in succ[u]:
            acc |= reach[v] | (1 << v)
        reach[u] = acc
    return reach


def transitive_closure(d: Digraph) -> StrictOrder:
    """Reachability order of an acyclic digraph. Raises CycleError otherwise."""
    reach = _closure_bitsets(d.n, d.successors())
    m = np.zeros((d.n, d.n), dtype=bool)
    for u, bits in enumerate(reach):
        if bits:
            m[u] = bits_to_row(bits, d.n)
    return StrictOrder(m, validate=False)


def close_matrix(adj: np.ndarray) -> StrictOrder:
    """Transitive closure of a DAG given as an adjacency matrix."""
    n = adj.shape[0]
    succ = [np.flatnonzero(adj[u]).tolist() for u in range(n)]
    reach = _closure_bitsets(n, succ)
    m = np.zeros((n, n), dtype=bool)
    for u, bits in enumerate(reach):
        if bits:
            m[u] = bits_to_row(bits, n)
    return StrictOrder(m, validate=False)


def transitive_reduction(o: StrictOrder) -> list[tuple[int, int]]:
    """Cover (Hasse) pairs of a strict order."""
    n = o.n
    up = [row_to_bits(o.less[x]) for x in range(n)]
    pairs = []
    for x in range(n):
        above = up[x]
        implied = 0
        rest = above
        while rest:
            low = rest & -rest
            implied |= up[low.bit_length() - 1]
            rest ^= low
        cover = above & ~implied
        while cover:
            low = cover & -cover
            pairs.append((x, low.bit_length() - 1))
            cover ^= low
    return pairs


def linear_extension(o: StrictOrder) -> LinearExtension:
    """Topological order of the relation, smallest vertex id first among ties."""
    n = o.n
    indeg = o.less.sum(axis=0).astype(np.int64)
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        above = np.flatnonzero(o.less[u])
        if above.size:
            indeg[above] -= 1
            for v in above[indeg[above] == 0].tolist():
                heapq.heappush(heap, v)
    if len(order) != n:
        raise ValueError("relation has a cycle")
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    return LinearExtension(tuple(rank), tuple(order))


def covered_set(o: StrictOrder, x: int, y: int) -> frozenset:
    """Vertices z with x < z < y."""
    if not o.less[x, y]:
        return frozenset()
    return frozenset(np.flatnonzero(o.less[x] & o.less[:, y]).tolist())


def condense(d: Digraph) -> Condensation:
    """Strongly connected components (iterative Tarjan) and the quotient DAG.

    Components are numbered in topological order of the quotient, ties broken
    by smallest member vertex.
    """
    n = d.n
    succ = d.successors()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))

    raw_of = [0] * n
    for c, comp in enumerate(comps):
        for v in comp:
            raw_of[v] = c
    k = len(comps)
    raw_succ = [set() for _ in range(k)]
    for u, v in d.edges:
        a, b = raw_of[u], raw_of[v]
        if a != b:
            raw_succ[a].add(b)
    # topological numbering, ties by smallest member
    indeg = [0] * k
    for a in range(k):
        for b in raw_succ[a]:
            indeg[b] += 1
    heap = [(comps[a][0], a) for a in range(k) if indeg[a] == 0]
    heapq.heapify(heap)
    new_id = [0] * k
    nxt = 0
    while heap:
        _, a = heapq.heappop(heap)
        new_id[a] = nxt
        nxt += 1
        for b in raw_succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (comps[b][0], b))
    members = [()] * k
    for a in range(k):
        members[new_id[a]] = tuple(comps[a])
    component_of = tuple(new_id[raw_of[v]] for v in range(n))
    dag_edges = frozenset((new_id[a], new_id[b]) for a in range(k) for b in raw_succ[a])
    return Condensation(component_of, tuple(members), Digraph(k, dag_edges))


def degeneracy_orientation(n: int, edges: Iterable[tuple[int, int]]) -> Orientation:
    """Orient an undirected graph by repeated minimum-degree removal.

    Each vertex points at the neighbours still present when it is removed
    (ties on degree go to the smallest id), so the largest out-degree is the
    degeneracy of the graph.
    """
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        adj[u].add(v)
        adj[v].add(u)
    deg = [len(a) for a in adj]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    out = [frozenset()] * n
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        out[v] = frozenset(adj[v])
        d = max(d, len(adj[v]))
        for w in adj[v]:
            adj[w].discard(v)
            deg[w] -= 1
            heapq.heappush(heap, (deg[w], w))
        adj[v] = set()
    return Orientation(tuple(out), d, tuple(order))


def orientation_from_matrix(adj: np.ndarray) -> Orientation:
    """Degeneracy orientation of the undirected graph with symmetric-or-not ``adj``."""
    xs, ys = np.nonzero(np.triu(adj | adj.T, 1))
    return degeneracy_orientation(adj.shape[0], zip(xs.tolist(), ys.tolist()))


MODELS = ("dag-closure", "layered")


def _layer_of(n: int) -> np.ndarray:
    return (np.arange(n) * 3) // max(n, 1)


def random_dag_matrix(n: int, model: str, p: float, seed: int) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    coin = rng.random((n, n)) < p
    if model == "dag-closure":
        return np.triu(coin, 1)
    if model == "layered":
        layer = _layer_of(n)
        return coin & (layer[None, :] == layer[:, None] + 1)
    raise ValueError("unknown model {!r}".format(model))


def random_poset(n: int, model: str = "dag-closure", p: float = 0.5, seed: int = 0) -> StrictOrder:
    """Seeded random strict order.

    ``dag-closure`` keeps each pair i<j with probability p; ``layered`` splits
    the vertices into three consecutive layers and keeps pairs between
    neighbouring layers. Either way the result is transitively closed.
    """
    return close_matrix(random_dag_matrix(n, model, p, seed))


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """G(n, p) digraph, cycles allowed."""
    rng = np.random.default_rng(seed)
    m = rng.random((n, n)) < p
    np.fill_diagonal(m, False)
    xs, ys = np.nonzero(m)
    return Digraph(n, frozenset(zip(xs.tolist(), ys.tolist())))


def reach_oracle(d: Digraph, u: int, v: int, succ: list[list[int]] | None = None) -> bool:
    """Plain BFS; u always reaches itself."""
    if u == v:
        return True
    succ = succ if succ is not None else d.successors()
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in succ[x]:
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def reach_sets(d: Digraph) -> list[set]:
    """BFS reachability set (including the vertex itself) for every vertex."""
    succ = d.successors()
    result = []
    for u in range(d.n):
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        result.append(seen)
    return result


def order_as_digraph(o: StrictOrder, reduce: bool = True) -> Digraph:
    pairs = transitive_reduction(o) if reduce else sorted(o.rel)
    return Digraph.from_edges(o.n, pairs)


# -- text format -----------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Parse ``n m`` followed by m ``u v`` lines; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty digraph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("header must be 'n m'") from exc
    if n < 0 or m < 0:
        raise FormatError("negative size in header")
    body = lines[1:]
    if len(body) != m:
        raise FormatError("header announces {} edges, found {}".format(m, len(body)))
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError("bad edge line {!r}".format(ln))
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError("bad edge line {!r}".format(ln)) from exc
    return Digraph.from_edges(n, edges)


def format_digraph(d: Digraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend("# " + c for c in comment.splitlines())
    edges = sorted(d.edges)
    out.append("{} {}".format(d.n, len(edges)))
    out.extend("{} {}".format(u, v) for u, v in edges)
    return "\n".join(out) + "\n"


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    for u in range(n):
        for v in range(n):
            if u != v:
                yield u, v
