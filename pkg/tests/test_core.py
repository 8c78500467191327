import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmq.core import (FIGURE1, RangeError, Sequence, build_cartesian, check_cartesian, lca_naive,
                       parse_sequence, format_sequence, rmq_all_pairs, rmq_naive)
from oracles import SparseTable, cartesian_recursive

seqs = st.lists(st.integers(0, 6), min_size=1, max_size=60)


def test_figure1_rmq():
    assert rmq_naive(FIGURE1, 1, 5) == 5
    assert rmq_naive(FIGURE1, 1, 14) == 5
    assert rmq_naive(FIGURE1, 7, 7) == 7


def test_rmq_range_errors():
    for i, j in [(0, 3), (2, 15), (5, 4)]:
        with pytest.raises(RangeError):
            rmq_naive(FIGURE1, i, j)


def test_increasing_is_right_path():
    ct = build_cartesian(list(range(1, 11)))
    assert ct.root == 1
    assert all(ct.left[v] == 0 for v in range(1, 11))
    assert [ct.right[v] for v in range(1, 10)] == list(range(2, 11))


def test_empty_tree():
    ct = build_cartesian(Sequence(()))
    assert ct.n == 0 and ct.root == 0 and ct.inorder() == []


def test_figure1_tree():
    ct = build_cartesian(FIGURE1)
    assert ct.root == 5
    size = ct.subtree_size()
    assert size[ct.left[5]] == 4 and size[ct.right[5]] == 9
    check_cartesian(ct, FIGURE1)


def test_lca_examples():
    ct = build_cartesian(FIGURE1)
    assert lca_naive(ct, 6, 9) == 6
    assert lca_naive(ct, 3, 3) == 3
    inc = build_cartesian(list(range(20)))
    assert lca_naive(inc, 2, 5) == 2
    with pytest.raises(RangeError):
        lca_naive(ct, 0, 3)


@settings(max_examples=200, deadline=None)
@given(seqs)
def test_stack_matches_recursive_definition(vals):
    ct = build_cartesian(vals)
    root, left, right = cartesian_recursive(vals)
    assert ct.root == root and list(ct.left) == left and list(ct.right) == right
    check_cartesian(ct, vals)


@settings(max_examples=200, deadline=None)
@given(seqs)
def test_left_path_strictly_increasing_and_root_paths_monotone(vals):
    ct = build_cartesian(vals)
    v, labels = ct.root, []
    while v:
        labels.append(vals[v - 1])
        v = ct.left[v]
    assert all(a < b for a, b in zip(labels, labels[1:]))
    for w in range(1, ct.n + 1):
        p = ct.parent[w]
        if p:
            assert vals[p - 1] <= vals[w - 1]


def test_lca_equals_rmq_exhaustive():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 256)
        vals = [rng.randrange(rng.choice([2, 5, 50])) for _ in range(n)]
        ct = build_cartesian(vals)
        table = rmq_all_pairs(vals)
        sp = SparseTable(vals)
        for i in range(1, n + 1):
            for j in range(i, n + 1, 3):
                assert lca_naive(ct, i, j) == table[i][j] == sp.query(i, j) == rmq_naive(vals, i, j)


def test_sequence_sigma_rules():
    assert Sequence((0, 3, 1)).sigma == 4
    assert Sequence((0, 3), 10).sigma == 10
    with pytest.raises(ValueError):
        Sequence((0, 5), 3)
    with pytest.raises(ValueError):
        Sequence((-1,))


def test_sequence_format_roundtrip():
    seq = Sequence((2, 0, 7), 12)
    back = parse_sequence(format_sequence(seq))
    assert back == seq
    assert parse_sequence("1 2\n3\n").values == (1, 2, 3)
    assert parse_sequence("# sigma=9\n1 2").sigma == 9
