"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""
import math
import random
import time

import pytest

from constants import C0, C1, C2, C3, C4, DESCENT_STEP
from crmq.cli import bench_rows, format_csv
from crmq.core import Sequence, build_cartesian, rmq_all_pairs
from crmq.lowerbound import (FamilyParams, count_zigzags, family_slp, gen_family, predicted_zigzags,
                             x_shape_classes, x_trees_distinct)
from crmq.slp import build_pairing_slp, format_slp, parse_slp, slp_depth
from crmq.slp2toptree import convert
from crmq.slp_rmq import HeavyForest
from crmq.toptree import build_greedy_topdag, expand_topdag, format_topdag, parse_topdag
from crmq.toptree_lca import lca, lca_with_stats


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
        return ok
    return emit


def corpus():
    """200 sequences, n log-uniform over [2, 512] (both ends included), sigma cycling."""
    rng = random.Random(2024)
    sigmas = (2, 4, 16, 256)
    out = []
    for k in range(200):
        if k < 4:
            n = 2 if k % 2 == 0 else 512
        else:
            n = int(round(math.exp(rng.uniform(math.log(2), math.log(512)))))
        sigma = sigmas[k % 4]
        out.append(Sequence(tuple(rng.randrange(sigma) for _ in range(n)), sigma))
    return out


CORPUS = corpus()


def test_criterion_1_oracle_equivalence(report):
    t0 = time.time()
    bad = None
    pairs = 0
    for seq in CORPUS:
        n = seq.n
        table = rmq_all_pairs(seq)
        h = HeavyForest(build_pairing_slp(seq))
        dag = build_greedy_topdag(build_cartesian(seq))
        for i in range(1, n + 1):
            row = table[i]
            for j in range(i, n + 1):
                want = row[j]
                a, b = h.rmq(i, j), lca(dag, i, j)
                if a != want or b != want:
                    bad = (seq.values, i, j, want, a, b)
                    break
            if bad:
                break
            pairs += n - i + 1
        if bad:
            break
    dt = time.time() - t0
    ok = bad is None
    report("criterion 1 oracle equivalence", ok,
           f"{len(CORPUS)} sequences, {pairs} pairs, slp_rmq and topdag lca vs oracle, {dt:.1f}s"
           + ("" if ok else f", counterexample {bad[1:]}"))
    assert ok


def test_criterion_2_conversion(report):
    t0 = time.time()
    bad = None
    pairs = 0
    for seq in CORPUS:
        dag = convert(build_pairing_slp(seq))
        if expand_topdag(dag) != build_cartesian(seq):
            bad = ("tree", seq.values)
            break
        table = rmq_all_pairs(seq)
        n = seq.n
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if lca(dag, i, j) != table[i][j]:
                    bad = ("rmq", seq.values, i, j)
                    break
            if bad:
                break
            pairs += n - i + 1
        if bad:
            break
    ok = bad is None
    report("criterion 2 conversion correctness", ok,
           f"{len(CORPUS)} trees node-for-node, {pairs} pairs, {time.time() - t0:.1f}s"
           + ("" if ok else f", counterexample {bad}"))
    assert ok


def test_criterion_3_conversion_bounds(report):
    t0 = time.time()
    rng = random.Random(33)
    worst_size = worst_depth = 0.0
    failures = []
    for sigma in (2, 4, 8, 16):
        for k in (8, 10, 12, 14, 16):
            for _ in range(2):
                n = 2 ** k
                slp = build_pairing_slp([rng.randrange(sigma) for _ in range(n)])
                dag = convert(slp)
                rs = dag.node_count / (len(slp.rules) * sigma)
                rd = dag.height / (slp_depth(slp) * (1 + math.log2(sigma)))
                worst_size, worst_depth = max(worst_size, rs), max(worst_depth, rd)
                if rs > C1 or rd > C2:
                    failures.append((sigma, n, rs, rd))
    ok = not failures
    report("criterion 3 conversion bounds", ok,
           f"max size/(|S| sigma)={worst_size:.3f} <= c1={C1}, "
           f"max height/(depth (1+log sigma))={worst_depth:.3f} <= c2={C2}, {time.time() - t0:.1f}s"
           + ("" if ok else f", failures {failures[:3]}"))
    assert ok


def test_criterion_4_sorted_log_size(report):
    t0 = time.time()
    sizes = []
    for k in range(6, 21):
        n = 2 ** k
        sizes.append(build_greedy_topdag(build_cartesian(range(1, n + 1))).node_count)
    ratio_ok = all(s <= C3 * k for s, k in zip(sizes, range(6, 21)))
    steps = [b - a for a, b in zip(sizes, sizes[1:])]
    ok = ratio_ok and max(steps) <= 3
    report("criterion 4 sorted input log size", ok,
           f"sizes {sizes[0]}..{sizes[-1]} for k=6..20, max size/k={max(s / k for s, k in zip(sizes, range(6, 21))):.2f}"
           f" <= c3={C3}, doubling increments {sorted(set(steps))}, {time.time() - t0:.1f}s")
    assert ok


LOWER = [FamilyParams(10, 2), FamilyParams(10, 3)]


@pytest.mark.xfail(strict=True, reason="unattainable: X trees collide, see decisions ledger")
def test_criterion_5a_zigzag_count(report):
    got = [count_zigzags(build_cartesian(gen_family(p)), p) for p in LOWER]
    want = [predicted_zigzags(p) for p in LOWER]
    ok = got == want
    report("criterion 5a zigzag count", ok,
           f"found {got}, predicted sigma' (2^l-1)^2 = {want}; the found counts equal "
           f"(#X_k classes) x (#X classes)^2 because only 2^(l-1) X trees are distinct")
    assert ok


@pytest.mark.xfail(strict=True, reason="unattainable: 2^l - 1 words but only 2^(l-1) X tree shapes")
def test_criterion_5b_x_trees_distinct(report):
    classes = [len(set(x_shape_classes(p))) for p in LOWER]
    ok = all(x_trees_distinct(p) for p in LOWER)
    report("criterion 5b X trees distinct", ok,
           f"distinct X trees {classes} out of {[p.m for p in LOWER]} words; "
           f"words differing only in the last letter share a tree")
    assert ok


def test_criterion_5cde_lower_bound_sizes(report):
    t0 = time.time()
    lines = []
    ok = True
    for p in LOWER:
        ct = build_cartesian(gen_family(p))
        size = build_greedy_topdag(ct).node_count
        z = count_zigzags(ct, p)
        zp = predicted_zigzags(p)
        rules = len(family_slp(p).rules)
        c_ok = size >= z / C0 and size >= zp / C0
        d_ok = rules <= C4 * p.s
        ok &= c_ok and d_ok
        lines.append(f"l={p.ell}: topdag {size} >= {max(z, zp)}/{C0}, rules {rules} <= {C4}*{p.s}")
    ratios = []
    for sigma in (10, 14, 18):
        p = FamilyParams(sigma, 3)
        ratios.append(build_greedy_topdag(build_cartesian(gen_family(p))).node_count / len(family_slp(p).rules))
    e_ok = all(a < b for a, b in zip(ratios, ratios[1:]))
    ok &= e_ok
    report("criterion 5cde lower-bound sizes", ok,
           "; ".join(lines) + f"; topdag/slp at l=3 for sigma 10,14,18: "
           + ", ".join(f"{r:.3f}" for r in ratios) + f", {time.time() - t0:.1f}s")
    assert ok


def test_criterion_6_query_cost(report):
    t0 = time.time()
    rng = random.Random(66)
    means = []
    hop_ok = True
    worst_hops = 0.0
    for k in range(10, 19):
        n = 2 ** k
        vals = [rng.randrange(16) for _ in range(n)]
        dag = build_greedy_topdag(build_cartesian(vals))
        total = 0
        for _ in range(3000):
            total += lca_with_stats(dag, rng.randint(1, n), rng.randint(1, n))[1]
        means.append(total / 3000)
        h = HeavyForest(build_pairing_slp(vals))
        positions = range(1, n + 1) if n <= 4096 else (rng.randint(1, n) for _ in range(4000))
        for i in positions:
            hops = h.access_with_hops(i)[1]
            worst_hops = max(worst_hops, hops - math.log2(n))
            if hops > math.log2(n) + 2:
                hop_ok = False
    steps = [b - a for a, b in zip(means, means[1:])]
    ok = hop_ok and max(steps) <= DESCENT_STEP
    report("criterion 6 query cost scaling", ok,
           f"mean descent {means[0]:.2f}..{means[-1]:.2f} for n=2^10..2^18, max step {max(steps):.2f}"
           f" <= {DESCENT_STEP}; max access hops - log2 n = {worst_hops:.2f} <= 2, {time.time() - t0:.1f}s")
    assert ok


def test_criterion_7_determinism_roundtrips(report):
    rng = random.Random(77)
    ok = True
    for _ in range(10):
        n = rng.randint(2, 300)
        seq = Sequence(tuple(rng.randrange(rng.choice([2, 16])) for _ in range(n)))
        slp = build_pairing_slp(seq)
        dag = build_greedy_topdag(build_cartesian(seq))
        conv = convert(slp)
        h1, h2 = HeavyForest(slp), HeavyForest(parse_slp(format_slp(slp)))
        d2, c2 = parse_topdag(format_topdag(dag)), parse_topdag(format_topdag(conv))
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                ok &= h1.rmq(i, j) == h2.rmq(i, j)
                ok &= lca(dag, i, j) == lca(d2, i, j)
                ok &= lca(conv, i, j) == lca(c2, i, j)
    args = dict(families=["increasing", "random", "periodic", "lowerbound"], sizes=[256, 1024],
                sigma=None, ells=[2], seed=7)
    first = format_csv(bench_rows(**args))
    second = format_csv(bench_rows(**args))
    same = first == second
    ok &= same
    report("criterion 7 determinism and round-trips", ok,
           f"serialize/load answers preserved for slp and top-DAG files; bench CSV byte-identical={same}")
    assert ok
