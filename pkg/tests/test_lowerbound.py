import pytest

from constants import C0, C4
from crmq.core import Sequence, build_cartesian
from crmq.lowerbound import (FamilyError, FamilyParams, ShapeTable, block_a, block_b, count_zigzags, family_slp,
                             gen_family, predicted_zigzags, x_shape_classes, x_strings, x_trees_distinct, zigzags)
from crmq.slp import expand
from crmq.toptree import build_greedy_topdag

P = FamilyParams(10, 2)


def test_params():
    assert P.sigma_prime == 3 and P.m == 3 and P.s == 4 * 3 + 16
    with pytest.raises(FamilyError):
        FamilyParams(10, 1)  # 2**1 - 1 < 3
    with pytest.raises(FamilyError):
        FamilyParams(5, 2)
    with pytest.raises(FamilyError):
        FamilyParams(10, 0)


def test_x_enumeration():
    assert x_strings(P) == [(8, 8), (8, 9), (9, 8)]


def test_block_formulas():
    x = x_strings(P)

    def xp(k, i):
        return list(x[k - 1]) + [7] + list(x[i - 1])

    assert block_a(P, 2) == xp(1, 2) + [2] + xp(2, 2) + [4] + xp(3, 2) + [6]
    assert block_b(P, 3) == [5] + xp(3, 3) + [3] + xp(2, 3) + [1] + xp(1, 3)


def test_length_and_grammar():
    s = gen_family(P)
    assert s.n == 333 == P.length and s.sigma == 10
    assert expand(family_slp(P)).values == s.values
    for ell in (2, 3, 4):
        for sigma in (10, 12, 14):
            try:
                p = FamilyParams(sigma, ell)
            except FamilyError:
                continue
            slp = family_slp(p)
            assert expand(slp).values == gen_family(p).values
            assert expand(slp).n == p.length
            assert len(slp.rules) <= C4 * p.s


def test_global_right_path_of_blocks():
    for p in (P, FamilyParams(10, 3)):
        vals = gen_family(p).values
        ct = build_cartesian(vals)
        block = len(block_a(p, 1)) + len(block_b(p, 1)) + 1
        path = []
        v = ct.root
        while v:
            path.append(v)
            v = ct.right[v]
        assert path == [block * t for t in range(1, p.m ** 2 + 1)]
        table = ShapeTable()
        shape = table.shapes(ct)
        for t, z in enumerate(path):
            i, j = divmod(t, p.m)
            sub = build_cartesian(Sequence(tuple(block_a(p, i + 1) + block_b(p, j + 1)), p.sigma))
            assert shape[ct.left[z]] == table.of(sub)


def test_block_zigzag_path_orientation():
    p = FamilyParams(12, 3)
    table = ShapeTable()
    for i, j in [(1, 2), (5, 3), (7, 7)]:
        vals = block_a(p, i) + block_b(p, j)
        ct = build_cartesian(vals)
        shape = table.shapes(ct)
        x = x_strings(p)
        u = ct.root
        for k in range(1, p.sigma_prime + 1):
            v = ct.left[u]
            assert vals[u - 1] == 2 * k - 1 and vals[v - 1] == 2 * k
            xkj = build_cartesian(Sequence(x[k - 1] + (p.sigma - 3,) + x[j - 1], p.sigma))
            xki = build_cartesian(Sequence(x[k - 1] + (p.sigma - 3,) + x[i - 1], p.sigma))
            assert shape[ct.right[u]] == table.of(xkj)
            assert shape[ct.left[v]] == table.of(xki)
            # the path turns: u_{k+1} is the right child of v_k
            u = ct.right[v]


def test_x_tree_classes():
    # the last letter never changes the tree: "w a" and "w b" both hang it to the right
    for ell in range(2, 13):
        p = FamilyParams(10, ell)
        assert len(set(x_shape_classes(p))) == 2 ** (ell - 1)
        assert not x_trees_distinct(p)


def test_zigzag_counts():
    for p in (P, FamilyParams(10, 3)):
        cls = x_shape_classes(p)
        k_classes = len(set(cls[:p.sigma_prime]))
        full = count_zigzags(build_cartesian(gen_family(p)), p)
        assert full == k_classes * len(set(cls)) ** 2
        assert full < predicted_zigzags(p) == p.sigma_prime * p.m ** 2
        one = count_zigzags(build_cartesian(Sequence(tuple(block_a(p, 2) + block_b(p, 1)), p.sigma)), p)
        assert one == k_classes
    assert predicted_zigzags(P) == 27
    assert count_zigzags(build_cartesian(list(range(100))), P) == 0
    assert zigzags(build_cartesian([]), P) == set()


def test_greedy_size_vs_zigzags():
    # sigma = 12 needs 2**ell - 1 >= 4, so it is paired with ell = 3 only
    for ell, sigma in ((2, 10), (3, 10), (3, 12)):
        p = FamilyParams(sigma, ell)
        ct = build_cartesian(gen_family(p))
        size = build_greedy_topdag(ct).node_count
        assert size >= count_zigzags(ct, p) / C0
        assert size >= predicted_zigzags(p) / C0


def test_growth_with_ell():
    ratios = []
    for ell in (2, 3, 4):
        p = FamilyParams(10, ell)
        size = build_greedy_topdag(build_cartesian(gen_family(p))).node_count
        ratios.append(size / (4 ** ell * p.sigma_prime))
    assert max(ratios) / min(ratios) <= 2.0
