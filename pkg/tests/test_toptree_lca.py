import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmq.core import FIGURE1, RangeError, build_cartesian, rmq_all_pairs
from crmq.toptree import V, build_greedy_topdag
from crmq.toptree_lca import (horizontal_down, horizontal_up, lca, lca_with_stats, push_down, push_up, rmq,
                              vertical_down, vertical_up)
from oracles import SparseTable


def dag_of(vals):
    return build_greedy_topdag(build_cartesian(vals))


def test_local_arithmetic_examples():
    # lower cluster spans 3..6 (first 3, size 4); shared node at 4
    assert vertical_down(3, 4, 4, 5) == [(0, 3)]
    assert vertical_down(3, 4, 4, 8) == [(1, 5)]
    assert vertical_down(3, 4, 4, 2) == [(1, 2)]
    assert vertical_down(3, 4, 4, 4) == [(0, 2), (1, 3)]
    assert horizontal_down(4, 4) == [(1, 1), (0, 4)]
    assert horizontal_down(4, 2) == [(0, 2)]
    assert horizontal_down(4, 6) == [(1, 3)]


def test_inverse_of_examples():
    assert vertical_up(3, 4, 4, 0, 3) == 5
    assert vertical_up(3, 4, 4, 1, 5) == 8
    assert vertical_up(3, 4, 4, 1, 3) == 4
    assert vertical_up(3, 4, 4, 0, 2) == 4
    assert horizontal_up(4, 1, 1) == 4 and horizontal_up(4, 0, 4) == 4


def test_push_roundtrip_every_cluster():
    rng = random.Random(1)
    for _ in range(10):
        dag = dag_of([rng.randrange(3) for _ in range(rng.randint(3, 200))])
        s = dag.store
        for c in range(len(s)):
            if s.kind[c] < V:
                continue
            seen = {}
            for u in range(1, s.size[c] + 1):
                targets = push_down(dag, c, u)
                assert 1 <= len(targets) <= 2
                for child, p in targets:
                    assert push_up(dag, c, child, p) == u
                    assert (child, p) not in seen
                    seen[(child, p)] = u
            # every child position is hit exactly once
            assert len(seen) == s.size[s.a[c]] + s.size[s.b[c]]


def test_push_errors():
    dag = dag_of(FIGURE1)
    with pytest.raises(RangeError):
        push_down(dag, dag.root, 15)
    with pytest.raises(ValueError):
        push_down(dag, 0, 1)
    with pytest.raises(RangeError):
        push_up(dag, dag.root, 0, 0)


def test_atomic_root():
    for vals in ([1, 0], [0, 1]):
        dag = dag_of(vals)
        assert lca(dag, 1, 2) == rmq_all_pairs(vals)[1][2]
        assert lca(dag, 2, 2) == 2


def test_lca_examples():
    dag = dag_of(FIGURE1)
    assert lca(dag, 6, 9) == 6
    assert lca(dag, 9, 6) == 6
    assert lca(dag, 4, 4) == 4
    assert rmq(dag_of(list(range(1, 17))), 3, 11) == 3
    with pytest.raises(RangeError):
        lca(dag, 0, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=2, max_size=80))
def test_lca_matches_oracle(vals):
    dag = dag_of(vals)
    table = rmq_all_pairs(vals)
    n = len(vals)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            assert lca(dag, i, j) == table[i][j]
            assert lca(dag, j, i) == table[i][j]


def test_lca_exhaustive_larger():
    rng = random.Random(4)
    for _ in range(6):
        n = rng.randint(300, 512)
        vals = [rng.randrange(rng.choice([2, 16, 256])) for _ in range(n)]
        dag = dag_of(vals)
        sp = SparseTable(vals)
        for i in range(1, n + 1):
            for j in range(i, n + 1, 2):
                res, steps = lca_with_stats(dag, i, j)
                assert res == sp.query(i, j)
                assert steps <= dag.height
