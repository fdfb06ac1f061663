import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orderlabel.bitio import ceil_log2
from orderlabel.graph_core import degeneracy_orientation
from orderlabel.setdict import (
    CapacityError, adjacent_via_dicts, colex_rank, colex_unrank, compressed_payload_bits,
    contains_compressed, contains_sorted, encode_compressed, encode_sorted, entropy,
    neighbourhood_labels, sorted_payload_bits,
)


def test_sorted_layout_examples():
    d = encode_sorted(8, {2, 5, 7}, 3)
    assert str(d.payload) == "0011" + "010101111"
    assert d.payload.length == 13 <= 4 * 3 * 3
    assert str(encode_sorted(8, set(), 3).payload) == "0000"
    full = encode_sorted(4, {0, 1, 2, 3}, 4)
    assert str(full.payload) == "100" + "00011011"


def test_sorted_membership_examples():
    d = encode_sorted(8, {2, 5, 7}, 3)
    assert contains_sorted(d, 5)
    assert not contains_sorted(d, 3)
    empty = encode_sorted(8, set(), 3)
    cur = empty.payload.cursor()
    assert not contains_sorted(empty, 6, cur)
    assert cur.inspected == 4


def test_capacity_error():
    with pytest.raises(CapacityError):
        encode_sorted(8, {1, 2, 3}, 2)
    with pytest.raises(CapacityError):
        encode_compressed(8, {1, 2, 3}, 2)


def test_sorted_inspection_bound():
    rng = np.random.default_rng(0)
    for n in (2, 5, 16, 100, 1000):
        for k in sorted({min(n, k) for k in (1, 2, 7, 40)}):
            s = set(rng.choice(n, size=k, replace=False).tolist())
            d = encode_sorted(n, s, k)
            for x in range(0, n, max(1, n // 50)):
                cur = d.payload.cursor()
                contains_sorted(d, x, cur)
                assert cur.inspected <= n.bit_length() + (int(math.log2(k)) + 2) * ceil_log2(n)


def _colex_all(universe, k):
    # reference order: sort k-subsets by their reversed tuple
    return sorted(combinations(range(universe), k), key=lambda c: tuple(reversed(c)))


@pytest.mark.parametrize("universe,k", [(4, 2), (6, 3), (7, 1), (5, 5), (6, 0)])
def test_colex_rank_matches_enumeration(universe, k):
    for r, comb in enumerate(_colex_all(universe, k)):
        assert colex_rank(list(comb)) == r
        assert sorted(colex_unrank(r, k, universe)) == list(comb)


def test_compressed_example_n4_k2():
    d = encode_compressed(4, {1, 3}, 2)
    assert {x: contains_compressed(d, x) for x in range(4)} == {0: False, 1: True, 2: False, 3: True}
    # padded universe of 6 points, elements reflected e -> 5 - e: {1,3} -> {2,4}
    assert d.rank == _colex_all(6, 2).index((2, 4)) == 8
    assert encode_compressed(4, set(), 2).rank == 0


def test_compressed_size_bounds():
    for n in range(1, 65):
        for k in range(0, min(n, 16) + 1):
            comp = compressed_payload_bits(n, k)
            assert comp <= ceil_log2(math.comb(n + k, k)) + ceil_log2(k + 1)
            sort = sorted_payload_bits(n, k)
            assert comp <= sort + (k.bit_length()) + 1
            if k * ceil_log2(n) > comp:
                assert comp < sort


def test_sorted_bound_formula():
    for n in range(2, 200):
        for k in range(1, n + 1, max(1, n // 13)):
            assert sorted_payload_bits(n, k) == n.bit_length() + k * ceil_log2(n)
            assert sorted_payload_bits(n, k) <= 4 * k * math.log2(n)


@given(st.integers(1, 64).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, min(n, 16)).flatmap(
        lambda k: st.tuples(st.just(k), st.sets(st.integers(0, n - 1), max_size=k))))))
@settings(max_examples=100, deadline=None)
def test_compressed_agrees_with_sorted(case):
    n, (k, s) = case
    c = encode_compressed(n, s, k)
    d = encode_sorted(n, s, max(k, 1)) if n >= 1 else None
    for x in range(n):
        assert contains_compressed(c, x) == contains_sorted(d, x) == (x in s)


def test_entropy_examples():
    assert entropy(0.5) == 1.0
    assert entropy(0.0) == 0.0 == entropy(1.0)
    assert entropy(0.25) == pytest.approx(2 - 0.75 * math.log2(3))
    assert entropy(0.3) == pytest.approx(entropy(0.7))
    with pytest.raises(ValueError):
        entropy(1.2)


@pytest.mark.parametrize("backend", ["sorted", "compressed"])
def test_neighbourhood_labels_triangle_and_empty(backend):
    tri = degeneracy_orientation(3, [(0, 1), (1, 2), (0, 2)])
    labels = neighbourhood_labels(tri, 3, backend)
    assert all(adjacent_via_dicts(labels[u], u, labels[v], v) for u in range(3) for v in range(3) if u != v)
    empty = degeneracy_orientation(4, [])
    labels = neighbourhood_labels(empty, 4, backend)
    assert not any(adjacent_via_dicts(labels[u], u, labels[v], v) for u in range(4) for v in range(4))


@pytest.mark.parametrize("backend", ["sorted", "compressed"])
@pytest.mark.parametrize("seed", range(3))
def test_neighbourhood_labels_random(backend, seed):
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((20, 20)) < 0.25, 1)
    adj = adj | adj.T
    xs, ys = np.nonzero(np.triu(adj, 1))
    orient = degeneracy_orientation(20, zip(xs.tolist(), ys.tolist()))
    labels = neighbourhood_labels(orient, 20, backend)
    for u in range(20):
        for v in range(20):
            if u != v:
                assert adjacent_via_dicts(labels[u], u, labels[v], v) == bool(adj[u, v])
